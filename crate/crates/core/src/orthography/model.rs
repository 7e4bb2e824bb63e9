use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use super::mapping::{lower, upper, MappingTable};
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;

const CUNIA_A: char = 'ã';
const PAD: char = '#';

/// The two central vowels merged by Cunia's `ã`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VowelClass {
    /// [ɨ], written `â` mid-word and `î` at word edges.
    #[serde(rename = "close")]
    CloseCentral,
    /// [ə], written `ă`.
    #[serde(rename = "mid")]
    MidCentral,
}

impl VowelClass {
    pub fn of_glyph(c: char) -> Option<VowelClass> {
        match lower(c) {
            'â' | 'î' => Some(VowelClass::CloseCentral),
            'ă' => Some(VowelClass::MidCentral),
            _ => None,
        }
    }

    /// Lowercase DIARO glyph for a site at `pos` in a word of `len` chars.
    pub fn glyph(self, pos: usize, len: usize) -> char {
        match self {
            VowelClass::MidCentral => 'ă',
            VowelClass::CloseCentral if pos == 0 || pos + 1 == len => 'î',
            VowelClass::CloseCentral => 'â',
        }
    }
}

/// Per-context vote counts for the two classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub close: u64,
    pub mid: u64,
}

impl ClassCounts {
    fn add(&mut self, class: VowelClass) {
        match class {
            VowelClass::CloseCentral => self.close += 1,
            VowelClass::MidCentral => self.mid += 1,
        }
    }

    /// The majority class, or `None` on a tie.
    pub fn winner(&self) -> Option<VowelClass> {
        use std::cmp::Ordering::*;
        match self.close.cmp(&self.mid) {
            Greater => Some(VowelClass::CloseCentral),
            Less => Some(VowelClass::MidCentral),
            Equal => None,
        }
    }

    pub fn total(&self) -> u64 {
        self.close + self.mid
    }
}

/// Trained Cunia → DIARO converter.
///
/// Resolution of each `ã` runs through three stages: a whole-word dictionary
/// of observed DIARO spellings, then per-site votes keyed by the two letters
/// on either side, then `default_class`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoModel {
    pub version: u32,
    pub mapping: MappingTable,
    /// Lowercase Cunia word → lowercase DIARO spelling → occurrences.
    pub word_dict: BTreeMap<String, BTreeMap<String, u64>>,
    /// Four context chars (two left, two right, `#`-padded) → class votes.
    pub fourgram: BTreeMap<String, ClassCounts>,
    #[serde(rename = "default")]
    pub default_class: VowelClass,
}

impl OrthoModel {
    /// A model with no statistics; every site falls to the default class.
    pub fn untrained(mapping: MappingTable) -> Self {
        OrthoModel {
            version: MODEL_FORMAT_VERSION,
            mapping,
            word_dict: BTreeMap::new(),
            fourgram: BTreeMap::new(),
            default_class: VowelClass::MidCentral,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: OrthoModel = serde_json::from_str(text)?;
        if model.version != MODEL_FORMAT_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported model version {}",
                model.version
            )));
        }
        let bad_word = model.word_dict.iter().any(|(k, forms)| {
            !k.contains(CUNIA_A) || forms.is_empty() || forms.values().any(|&n| n == 0)
        });
        if bad_word || model.fourgram.values().any(|c| c.total() == 0) {
            return Err(Error::Invalid("model holds zero-count entries".into()));
        }
        Ok(OrthoModel {
            mapping: model.mapping.reorder(),
            ..model
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    /// Most frequent stored spelling for a Cunia word; `None` if unseen or tied.
    fn dictionary_form(&self, cunia_word: &str) -> Option<&str> {
        let forms = self.word_dict.get(cunia_word)?;
        let best = *forms.values().max()?;
        let mut winners = forms.iter().filter(|(_, &n)| n == best);
        let (form, _) = winners.next()?;
        winners.next().is_none().then_some(form.as_str())
    }

    fn site_class(&self, word: &[char], pos: usize) -> VowelClass {
        self.fourgram
            .get(&context_key(word, pos))
            .and_then(ClassCounts::winner)
            .unwrap_or(self.default_class)
    }

    /// Lowercase glyphs for every `ã` in a lowercase Cunia word, in order.
    fn resolve_word(&self, word: &[char]) -> Vec<char> {
        let sites: Vec<usize> = word
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| (c == CUNIA_A).then_some(i))
            .collect();
        let key: String = word.iter().collect();
        if let Some(form) = self.dictionary_form(&key) {
            let glyphs: Vec<char> = form
                .chars()
                .filter(|&c| VowelClass::of_glyph(c).is_some())
                .collect();
            if glyphs.len() == sites.len() {
                return glyphs;
            }
        }
        sites
            .into_iter()
            .map(|pos| self.site_class(word, pos).glyph(pos, word.len()))
            .collect()
    }
}

/// Two chars left and two right of `pos` within `word`, `#` past the edges.
pub(crate) fn context_key(word: &[char], pos: usize) -> String {
    let at = |i: isize| -> char {
        if i < 0 {
            PAD
        } else {
            word.get(i as usize).copied().unwrap_or(PAD)
        }
    };
    let p = pos as isize;
    [at(p - 2), at(p - 1), at(p + 1), at(p + 2)]
        .iter()
        .collect()
}

/// Maximal runs of alphabetic chars as `(start, end)` char offsets.
fn word_spans(chars: &[char]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = None;
    for (i, c) in chars.iter().enumerate() {
        match (c.is_alphabetic(), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                spans.push((s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        spans.push((s, chars.len()));
    }
    spans
}

/// Rewrites DIARO (or Romanian-style) text into Cunia spelling.
pub fn normalize_to_cunia(text: &str, mapping: &MappingTable) -> String {
    let nfc: String = text.nfc().collect();
    mapping.to_cunia(&nfc)
}

/// Collects dictionary and context statistics from DIARO-spelled text.
pub fn train_ortho_model<S: AsRef<str>>(
    diaro_corpus: &[S],
    mapping: &MappingTable,
) -> Result<OrthoModel> {
    let mut model = OrthoModel::untrained(mapping.clone());
    let mut sites = 0usize;
    for text in diaro_corpus {
        let chars: Vec<char> = text.as_ref().nfc().map(lower).collect();
        for (s, e) in word_spans(&chars) {
            let word = &chars[s..e];
            // a literal ã has no recoverable class
            if word.contains(&CUNIA_A) {
                continue;
            }
            let classes: Vec<VowelClass> = word
                .iter()
                .filter_map(|&c| VowelClass::of_glyph(c))
                .collect();
            if classes.is_empty() {
                continue;
            }
            let diaro: String = word.iter().collect();
            let cunia: Vec<char> = mapping.to_cunia(&diaro).chars().collect();
            let positions = cunia
                .iter()
                .enumerate()
                .filter_map(|(i, &c)| (c == CUNIA_A).then_some(i));
            for (pos, class) in positions.zip(&classes) {
                model
                    .fourgram
                    .entry(context_key(&cunia, pos))
                    .or_default()
                    .add(*class);
                sites += 1;
            }
            *model
                .word_dict
                .entry(cunia.iter().collect())
                .or_default()
                .entry(diaro)
                .or_default() += 1;
        }
    }
    if sites == 0 {
        return Err(Error::NoTrainingSites);
    }
    Ok(model)
}

/// Converts Cunia text to DIARO, restoring `â`/`î`/`ă` for every `ã`.
pub fn convert_to_diaro(text: &str, model: &OrthoModel) -> String {
    let chars: Vec<char> = text.nfc().collect();
    let mut glyphs = Vec::new();
    for (s, e) in word_spans(&chars) {
        let word: Vec<char> = chars[s..e].iter().map(|&c| lower(c)).collect();
        if word.contains(&CUNIA_A) {
            glyphs.extend(model.resolve_word(&word));
        }
    }
    let cased: String = chars.iter().collect();
    let mapped = model.mapping.to_diaro_deterministic(&cased);
    let mut glyphs = glyphs.into_iter();
    mapped
        .chars()
        .map(|c| {
            if lower(c) != CUNIA_A {
                return c;
            }
            let g = glyphs.next().unwrap_or(CUNIA_A);
            if c == CUNIA_A {
                g
            } else {
                upper(g)
            }
        })
        .collect()
}

/// Site-level reconstruction result on held-out DIARO text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SiteAccuracy {
    pub sites: usize,
    pub correct: usize,
}

impl SiteAccuracy {
    pub fn accuracy(&self) -> f64 {
        self.correct as f64 / self.sites as f64
    }
}

/// Round-trips held-out DIARO text through Cunia and scores every
/// `â`/`î`/`ă` site on whether the original glyph comes back.
pub fn evaluate_converter<S: AsRef<str>>(
    held_out_diaro: &[S],
    model: &OrthoModel,
) -> Result<SiteAccuracy> {
    let is_slot = |c: &char| VowelClass::of_glyph(*c).is_some() || lower(*c) == CUNIA_A;
    let mut score = SiteAccuracy {
        sites: 0,
        correct: 0,
    };
    for text in held_out_diaro {
        let gold: String = text.as_ref().nfc().collect();
        let cunia = normalize_to_cunia(&gold, &model.mapping);
        let restored = convert_to_diaro(&cunia, model);
        let gold_slots = gold.chars().filter(is_slot);
        let restored_slots = restored.chars().filter(is_slot);
        for (g, r) in gold_slots.zip(restored_slots) {
            if VowelClass::of_glyph(g).is_some() {
                score.sites += 1;
                score.correct += usize::from(lower(g) == lower(r));
            }
        }
    }
    if score.sites == 0 {
        return Err(Error::NoEvaluationSites);
    }
    Ok(score)
}
