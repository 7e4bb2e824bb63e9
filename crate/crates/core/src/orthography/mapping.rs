use serde::{Deserialize, Serialize};

/// Deterministic grapheme correspondences between the two standards.
///
/// Patterns are stored lowercase and matched case-insensitively; rules are
/// kept sorted longest pattern first so the scan is greedy longest-match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingTable {
    cunia_to_diaro: Vec<(String, String)>,
    diaro_to_cunia: Vec<(String, String)>,
}

impl Default for MappingTable {
    fn default() -> Self {
        let pairs = |xs: &[(&str, &str)]| {
            xs.iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>()
        };
        MappingTable::new(
            pairs(&[("sh", "ș"), ("ts", "ț"), ("lj", "ľ"), ("nj", "ń")]),
            pairs(&[
                ("ș", "sh"),
                ("ş", "sh"),
                ("ț", "ts"),
                ("ţ", "ts"),
                ("ľ", "lj"),
                ("ń", "nj"),
                ("â", "ã"),
                ("î", "ã"),
                ("ă", "ã"),
            ]),
        )
    }
}

impl MappingTable {
    pub fn new(
        cunia_to_diaro: Vec<(String, String)>,
        diaro_to_cunia: Vec<(String, String)>,
    ) -> Self {
        let mut table = MappingTable {
            cunia_to_diaro,
            diaro_to_cunia,
        };
        table.normalize_order();
        table
    }

    fn normalize_order(&mut self) {
        for rules in [&mut self.cunia_to_diaro, &mut self.diaro_to_cunia] {
            for (p, r) in rules.iter_mut() {
                *p = p.chars().map(lower).collect();
                *r = r.chars().map(lower).collect();
            }
            rules.retain(|(p, _)| !p.is_empty());
            rules.sort_by_key(|(p, _)| std::cmp::Reverse(p.chars().count()));
        }
    }

    pub fn cunia_to_diaro(&self) -> &[(String, String)] {
        &self.cunia_to_diaro
    }

    pub fn diaro_to_cunia(&self) -> &[(String, String)] {
        &self.diaro_to_cunia
    }

    /// Applies the DIARO → Cunia rules.
    pub fn to_cunia(&self, text: &str) -> String {
        rewrite(text, &self.diaro_to_cunia)
    }

    /// Applies the Cunia → DIARO digraph rules. `ã` is left for the model.
    pub fn to_diaro_deterministic(&self, text: &str) -> String {
        rewrite(text, &self.cunia_to_diaro)
    }

    /// Restores the sort invariant after deserialization.
    pub(crate) fn reorder(mut self) -> Self {
        self.normalize_order();
        self
    }
}

pub(crate) fn lower(c: char) -> char {
    c.to_lowercase().next().unwrap_or(c)
}

pub(crate) fn upper(c: char) -> char {
    c.to_uppercase().next().unwrap_or(c)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Casing {
    Lower,
    /// Single uppercase character.
    Cap,
    /// Uppercase first character, lowercase rest ("Sh").
    Title,
    /// Every character uppercase ("SH").
    Upper,
    Mixed,
}

fn casing(chars: &[char]) -> Casing {
    let is_lower = |c: &char| lower(*c) == *c;
    if chars.iter().all(is_lower) {
        return Casing::Lower;
    }
    if chars.len() == 1 {
        return Casing::Cap;
    }
    if !is_lower(&chars[0]) && chars[1..].iter().all(is_lower) {
        return Casing::Title;
    }
    if chars.iter().all(|c| !is_lower(c)) {
        return Casing::Upper;
    }
    Casing::Mixed
}

// Case rule shared by both directions: a single uppercase char expands to
// all-caps when the following char is uppercase, otherwise to title case.
// Fusions of a cased digraph into one char are only taken when that rule
// would reproduce the digraph, so every rewrite is undone by its inverse.
fn cased_output(m: Casing, replacement: &[char], next_upper: bool) -> Option<String> {
    let all_upper = || replacement.iter().map(|c| upper(*c)).collect::<String>();
    let title = || {
        let mut s = String::new();
        if let Some((first, rest)) = replacement.split_first() {
            s.push(upper(*first));
            s.extend(rest.iter());
        }
        s
    };
    let single = replacement.len() == 1;
    match m {
        Casing::Lower => Some(replacement.iter().collect()),
        Casing::Mixed => None,
        Casing::Cap => Some(if single || next_upper {
            all_upper()
        } else {
            title()
        }),
        Casing::Title if single => (!next_upper).then(all_upper),
        Casing::Upper if single => next_upper.then(all_upper),
        Casing::Title => Some(title()),
        Casing::Upper => Some(all_upper()),
    }
}

fn rewrite(text: &str, rules: &[(String, String)]) -> String {
    let chars: Vec<char> = text.chars().collect();
    let rules: Vec<(Vec<char>, Vec<char>)> = rules
        .iter()
        .map(|(p, r)| (p.chars().collect(), r.chars().collect()))
        .collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    'scan: while i < chars.len() {
        for (pat, rep) in &rules {
            let end = i + pat.len();
            if end > chars.len() {
                continue;
            }
            let window = &chars[i..end];
            if window.iter().zip(pat).any(|(c, p)| lower(*c) != *p) {
                continue;
            }
            let next_upper = chars.get(end).is_some_and(|c| c.is_uppercase());
            if let Some(s) = cased_output(casing(window), rep, next_upper) {
                out.push_str(&s);
                i = end;
                continue 'scan;
            }
        }
        out.push(chars[i]);
        i += 1;
    }
    out
}
