use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::stats::words;

/// A WordPiece vocabulary (one subword per line in BERT's `vocab.txt`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubwordVocab {
    entries: HashSet<String>,
    continuation_prefix: String,
    unknown_token: String,
    max_word_chars: usize,
}

impl SubwordVocab {
    /// Builds a vocabulary; the unknown token is added if missing.
    pub fn new<I, S>(entries: I, unknown_token: &str) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut entries: HashSet<String> = entries.into_iter().map(Into::into).collect();
        if entries.is_empty() {
            return Err(Error::Invalid("vocabulary is empty".into()));
        }
        entries.insert(unknown_token.to_string());
        Ok(SubwordVocab {
            entries,
            continuation_prefix: "##".into(),
            unknown_token: unknown_token.to_string(),
            max_word_chars: 100,
        })
    }

    pub fn with_continuation_prefix(mut self, prefix: &str) -> Self {
        self.continuation_prefix = prefix.to_string();
        self
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from);
        SubwordVocab::new(entries, "[UNK]")
    }

    pub fn contains(&self, piece: &str) -> bool {
        self.entries.contains(piece)
    }

    pub fn unknown_token(&self) -> &str {
        &self.unknown_token
    }

    pub fn continuation_prefix(&self) -> &str {
        &self.continuation_prefix
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Greedy longest-match-first segmentation of a single word.
///
/// Falls back to `[unknown]` when any remainder cannot be matched.
pub fn wordpiece_tokenize(word: &str, vocab: &SubwordVocab) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    if chars.is_empty() {
        return Vec::new();
    }
    let unknown = || vec![vocab.unknown_token.clone()];
    if chars.len() > vocab.max_word_chars {
        return unknown();
    }
    let mut pieces = Vec::new();
    let mut start = 0;
    while start < chars.len() {
        let mut end = chars.len();
        let mut found = None;
        while start < end {
            let mut piece: String = chars[start..end].iter().collect();
            if start > 0 {
                piece.insert_str(0, &vocab.continuation_prefix);
            }
            if vocab.entries.contains(&piece) {
                found = Some(piece);
                break;
            }
            end -= 1;
        }
        match found {
            Some(piece) => pieces.push(piece),
            None => return unknown(),
        }
        start = end;
    }
    pieces
}

/// Average subword tokens per word over the whole corpus.
pub fn fertility<S: AsRef<str>>(corpus: &[S], vocab: &SubwordVocab) -> Result<f64> {
    let (mut tokens, mut word_count) = (0usize, 0usize);
    for text in corpus {
        for w in words(text.as_ref()) {
            word_count += 1;
            tokens += wordpiece_tokenize(w, vocab).len();
        }
    }
    if word_count == 0 {
        return Err(Error::NoWords);
    }
    Ok(tokens as f64 / word_count as f64)
}
