//! Lexical statistics of a text collection.

use std::collections::HashSet;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::align::{split_sentences, SplitterRules};
use crate::error::{Error, Result};

static WORD: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\p{L}+").unwrap());

/// Maximal runs of Unicode letters. Hyphens, apostrophes, digits and
/// punctuation all separate words.
pub fn words(text: &str) -> impl Iterator<Item = &str> {
    WORD.find_iter(text).map(|m| m.as_str())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub words: usize,
    /// Distinct words, compared case-insensitively.
    pub unique_words: usize,
    pub type_token_ratio: f64,
    pub words_per_sentence: f64,
}

/// Counts words, types and sentence length.
///
/// With `per_sentence` every element counts as one sentence; otherwise each
/// element is first split with the default sentence splitter.
pub fn corpus_stats<S: AsRef<str>>(texts: &[S], per_sentence: bool) -> Result<CorpusStats> {
    let mut total = 0usize;
    let mut types = HashSet::new();
    let mut sentences = 0usize;
    let rules = SplitterRules::default();
    for text in texts {
        let text = text.as_ref();
        sentences += if per_sentence {
            1
        } else {
            split_sentences(text, &rules).len()
        };
        for w in words(text) {
            total += 1;
            types.insert(w.to_lowercase());
        }
    }
    if total == 0 {
        return Err(Error::NoWords);
    }
    Ok(CorpusStats {
        words: total,
        unique_words: types.len(),
        type_token_ratio: types.len() as f64 / total as f64,
        words_per_sentence: total as f64 / sentences.max(1) as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_regex() {
        let w: Vec<_> = words("s-lu l'om, Ana-are 3 mere!").collect();
        assert_eq!(w, ["s", "lu", "l", "om", "Ana", "are", "mere"]);
        let w: Vec<_> = words("ășchirladzľi cãndu").collect();
        assert_eq!(w, ["ășchirladzľi", "cãndu"]);
    }

    #[test]
    fn hand_counts() {
        let s = corpus_stats(&["a b a"], true).unwrap();
        assert_eq!((s.words, s.unique_words), (3, 2));
        assert!((s.type_token_ratio - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.words_per_sentence, 3.0);

        let s = corpus_stats(&["Ana are. Mere re", "da"], true).unwrap();
        assert_eq!(s.words, 5);
        assert_eq!(s.words_per_sentence, 2.5);

        assert_eq!(corpus_stats(&["x"], true).unwrap().type_token_ratio, 1.0);
    }

    #[test]
    fn uniqueness_ignores_case() {
        let s = corpus_stats(&["Ana ana ANA"], true).unwrap();
        assert_eq!(s.unique_words, 1);
    }

    #[test]
    fn documents_are_split_into_sentences() {
        let s = corpus_stats(&["Ana are mere. Ion are pere."], false).unwrap();
        assert_eq!(s.words_per_sentence, 3.0);
    }

    #[test]
    fn no_words_is_an_error() {
        assert!(matches!(
            corpus_stats(&["1, 2; 3!"], true),
            Err(Error::NoWords)
        ));
    }
}
