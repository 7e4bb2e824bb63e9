use serde::{Deserialize, Serialize};

/// Rules for the rule-based sentence splitter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitterRules {
    pub terminators: Vec<char>,
    /// Words (without the trailing dot) that never end a sentence, e.g. `"dl"`.
    pub abbreviations: Vec<String>,
    /// Only split where whitespace follows the terminator.
    pub require_space: bool,
}

impl Default for SplitterRules {
    fn default() -> Self {
        SplitterRules {
            terminators: vec!['.', '!', '?', '…'],
            abbreviations: Vec::new(),
            require_space: true,
        }
    }
}

impl SplitterRules {
    pub fn with_abbreviations<I, S>(mut self, abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.abbreviations = abbreviations.into_iter().map(Into::into).collect();
        self
    }

    fn is_abbreviation(&self, word: &str) -> bool {
        let word = word.to_lowercase();
        self.abbreviations
            .iter()
            .any(|a| a.trim_end_matches('.').to_lowercase() == word)
    }
}

fn is_closer(c: char) -> bool {
    matches!(c, '»' | '"' | '”' | '’' | '\'' | ')' | ']' | '}')
}

fn is_opener(c: char) -> bool {
    matches!(c, '«' | '"' | '“' | '„' | '‘' | '\'' | '(' | '[')
}

/// Splits running text into sentences.
///
/// A boundary is placed after a run of terminators (plus any closing quotes
/// or brackets) when whitespace follows and the next sentence starts with an
/// uppercase letter or an opening quote. A `.` ending a listed abbreviation
/// never splits. Sentences are returned trimmed.
pub fn split_sentences(text: &str, rules: &SplitterRules) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        if !rules.terminators.contains(&chars[i]) {
            i += 1;
            continue;
        }
        let term_at = i;
        while i < chars.len() && rules.terminators.contains(&chars[i]) {
            i += 1;
        }
        while i < chars.len() && is_closer(chars[i]) {
            i += 1;
        }
        let end = i;
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if rules.require_space && i == end {
            continue;
        }
        let Some(&next) = chars.get(i) else {
            break;
        };
        if !(next.is_uppercase() || is_opener(next)) {
            continue;
        }
        if chars[term_at] == '.' {
            let word_start = chars[..term_at]
                .iter()
                .rposition(|c| !c.is_alphanumeric())
                .map_or(0, |p| p + 1);
            let word: String = chars[word_start..term_at].iter().collect();
            if !word.is_empty() && rules.is_abbreviation(&word) {
                continue;
            }
        }
        push_trimmed(&mut sentences, &chars[start..end]);
        start = i;
    }
    push_trimmed(&mut sentences, &chars[start..]);
    sentences
}

fn push_trimmed(out: &mut Vec<String>, chars: &[char]) {
    let s: String = chars.iter().collect();
    let s = s.trim();
    if !s.is_empty() {
        out.push(s.to_string());
    }
}
