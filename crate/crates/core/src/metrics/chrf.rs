use std::collections::HashMap;
use std::hash::Hash;
use std::ops::AddAssign;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// chrF / chrF++ parameters. Defaults give `nc:6|nw:0|space:no|eff:yes|case:mixed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChrfConfig {
    pub char_order: usize,
    /// 0 for plain chrF, 2 for chrF++.
    pub word_order: usize,
    pub beta: f64,
    /// Average only over orders that occur on both sides; otherwise use
    /// epsilon smoothing over all orders.
    pub effective_order: bool,
    pub remove_whitespace: bool,
    pub lowercase: bool,
}

impl Default for ChrfConfig {
    fn default() -> Self {
        ChrfConfig {
            char_order: 6,
            word_order: 0,
            beta: 2.0,
            effective_order: true,
            remove_whitespace: true,
            lowercase: false,
        }
    }
}

impl ChrfConfig {
    pub fn chrf_plus_plus() -> Self {
        ChrfConfig {
            word_order: 2,
            ..Self::default()
        }
    }

    fn order(&self) -> usize {
        self.char_order + self.word_order
    }

    pub fn signature(&self) -> String {
        format!(
            "nrefs:1|case:{}|eff:{}|nc:{}|nw:{}|space:{}",
            if self.lowercase { "lc" } else { "mixed" },
            if self.effective_order { "yes" } else { "no" },
            self.char_order,
            self.word_order,
            if self.remove_whitespace { "no" } else { "yes" },
        )
    }
}

/// Summed `[hyp, ref, match]` n-gram counts per order (char orders first).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChrfStats(pub Vec<[u64; 3]>);

impl AddAssign<&ChrfStats> for ChrfStats {
    fn add_assign(&mut self, rhs: &ChrfStats) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), [0; 3]);
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            for k in 0..3 {
                a[k] += b[k];
            }
        }
    }
}

fn count_ngrams<T: Eq + Hash>(items: &[T], n: usize) -> HashMap<&[T], u64> {
    let mut counts = HashMap::new();
    if n > 0 && items.len() >= n {
        for w in items.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

fn match_stats<K: Eq + Hash>(hyp: &HashMap<K, u64>, reference: &HashMap<K, u64>) -> [u64; 3] {
    let mut hyp_count = 0;
    let mut matched = 0;
    for (ng, &c) in hyp {
        hyp_count += c;
        if let Some(&r) = reference.get(ng) {
            matched += c.min(r);
        }
    }
    let ref_count = reference.values().sum();
    [
        if reference.is_empty() { 0 } else { hyp_count },
        ref_count,
        matched,
    ]
}

const PUNCTS: &str = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

/// Whitespace tokens with one leading or trailing ASCII punctuation mark split off.
fn chrf_words(sent: &str) -> Vec<String> {
    let mut out = Vec::new();
    for w in sent.split_whitespace() {
        let chars: Vec<char> = w.chars().collect();
        if chars.len() == 1 {
            out.push(w.to_string());
        } else if PUNCTS.contains(chars[chars.len() - 1]) {
            out.push(chars[..chars.len() - 1].iter().collect());
            out.push(chars[chars.len() - 1].to_string());
        } else if PUNCTS.contains(chars[0]) {
            out.push(chars[0].to_string());
            out.push(chars[1..].iter().collect());
        } else {
            out.push(w.to_string());
        }
    }
    out
}

impl ChrfStats {
    pub fn sentence(hyp: &str, reference: &str, cfg: &ChrfConfig) -> Self {
        let prep = |s: &str| {
            if cfg.lowercase {
                s.to_lowercase()
            } else {
                s.to_string()
            }
        };
        let (hyp, reference) = (prep(hyp), prep(reference));
        let chars = |s: &str| -> Vec<char> {
            if cfg.remove_whitespace {
                s.chars().filter(|c| !c.is_whitespace()).collect()
            } else {
                s.chars().collect()
            }
        };
        let (hc, rc) = (chars(&hyp), chars(&reference));
        let mut stats = Vec::with_capacity(cfg.order());
        for n in 1..=cfg.char_order {
            stats.push(match_stats(&count_ngrams(&hc, n), &count_ngrams(&rc, n)));
        }
        if cfg.word_order > 0 {
            let (hw, rw) = (chrf_words(&hyp), chrf_words(&reference));
            for n in 1..=cfg.word_order {
                stats.push(match_stats(&count_ngrams(&hw, n), &count_ngrams(&rw, n)));
            }
        }
        ChrfStats(stats)
    }

    pub fn score(&self, cfg: &ChrfConfig) -> f64 {
        const EPS: f64 = 1e-16;
        let factor = cfg.beta * cfg.beta;
        let mut smoothed = 0.0;
        let (mut avg_prec, mut avg_rec) = (0.0, 0.0);
        let mut effective = 0usize;
        for n in 0..cfg.order() {
            let [n_hyp, n_ref, n_match] = self.0.get(n).copied().unwrap_or([0; 3]);
            let prec = if n_hyp > 0 {
                n_match as f64 / n_hyp as f64
            } else {
                EPS
            };
            let rec = if n_ref > 0 {
                n_match as f64 / n_ref as f64
            } else {
                EPS
            };
            let denom = factor * prec + rec;
            smoothed += if denom > 0.0 {
                (1.0 + factor) * prec * rec / denom
            } else {
                EPS
            };
            if n_hyp > 0 && n_ref > 0 {
                avg_prec += prec;
                avg_rec += rec;
                effective += 1;
            }
        }
        let score = if !cfg.effective_order {
            100.0 * smoothed / cfg.order() as f64
        } else if effective == 0 {
            0.0
        } else {
            avg_prec /= effective as f64;
            avg_rec /= effective as f64;
            if avg_prec + avg_rec > 0.0 {
                100.0 * (1.0 + factor) * avg_prec * avg_rec / (factor * avg_prec + avg_rec)
            } else {
                0.0
            }
        };
        score.clamp(0.0, 100.0)
    }
}

pub(crate) fn check_lengths<A, B>(hyps: &[A], refs: &[B]) -> Result<()> {
    if hyps.len() != refs.len() {
        return Err(Error::LengthMismatch {
            left: hyps.len(),
            right: refs.len(),
        });
    }
    if hyps.is_empty() {
        return Err(Error::Invalid("empty corpus".into()));
    }
    Ok(())
}

/// Corpus-level chrF in `[0, 100]`, one reference per hypothesis.
pub fn chrf<S: AsRef<str> + Sync>(
    hypotheses: &[S],
    references: &[S],
    cfg: &ChrfConfig,
) -> Result<f64> {
    check_lengths(hypotheses, references)?;
    if cfg.char_order == 0 {
        return Err(Error::Invalid("char_order must be at least 1".into()));
    }
    let stats = hypotheses
        .par_iter()
        .zip(references)
        .map(|(h, r)| ChrfStats::sentence(h.as_ref(), r.as_ref(), cfg))
        .reduce(ChrfStats::default, |mut a, b| {
            a += &b;
            a
        });
    Ok(stats.score(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_100() {
        let c = ["Shi cãndu yinea.", "alt"];
        assert_eq!(chrf(&c, &c, &ChrfConfig::default()).unwrap(), 100.0);
        assert_eq!(chrf(&c, &c, &ChrfConfig::chrf_plus_plus()).unwrap(), 100.0);
    }

    #[test]
    fn empty_hypothesis_is_zero() {
        assert_eq!(chrf(&[""], &["abc"], &ChrfConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn length_mismatch_is_error() {
        assert!(chrf(&["a", "b"], &["a"], &ChrfConfig::default()).is_err());
        assert!(chrf::<&str>(&[], &[], &ChrfConfig::default()).is_err());
    }

    #[test]
    fn punctuation_split_rule() {
        assert_eq!(
            chrf_words("Hello, (world) a !x"),
            ["Hello", ",", "(world", ")", "a", "!", "x"]
        );
    }

    #[test]
    fn signature_matches_defaults() {
        assert_eq!(
            ChrfConfig::default().signature(),
            "nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no"
        );
    }
}
