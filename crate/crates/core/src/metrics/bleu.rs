use std::collections::HashMap;
use std::sync::LazyLock;

use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::chrf::check_lengths;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BleuTokenizer {
    /// mteval-v13a tokenization as used by WMT.
    #[serde(rename = "13a")]
    Tok13a,
    /// Split on whitespace only.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Smoothing {
    None,
    /// mteval-v13a "method 3": the k-th zero precision becomes 1 / (2^k · total).
    Exp,
    Floor(f64),
    AddK(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BleuConfig {
    pub max_order: usize,
    pub tokenizer: BleuTokenizer,
    pub smoothing: Smoothing,
    pub lowercase: bool,
}

impl Default for BleuConfig {
    fn default() -> Self {
        BleuConfig {
            max_order: 4,
            tokenizer: BleuTokenizer::Tok13a,
            smoothing: Smoothing::Exp,
            lowercase: false,
        }
    }
}

impl BleuConfig {
    pub fn signature(&self) -> String {
        let smooth = match self.smoothing {
            Smoothing::None => "none".to_string(),
            Smoothing::Exp => "exp".to_string(),
            Smoothing::Floor(v) => format!("floor[{v:.2}]"),
            Smoothing::AddK(v) => format!("add-k[{v:.2}]"),
        };
        format!(
            "nrefs:1|case:{}|eff:no|tok:{}|smooth:{}",
            if self.lowercase { "lc" } else { "mixed" },
            match self.tokenizer {
                BleuTokenizer::Tok13a => "13a",
                BleuTokenizer::None => "none",
            },
            smooth
        )
    }
}

static TOK13A_RULES: LazyLock<[(Regex, &'static str); 4]> = LazyLock::new(|| {
    [
        (
            Regex::new(r"([\x7B-\x7E\x5B-\x60\x20-\x26\x28-\x2B\x3A-\x40/])").unwrap(),
            " ${1} ",
        ),
        (Regex::new(r"([^0-9])([.,])").unwrap(), "${1} ${2} "),
        (Regex::new(r"([.,])([^0-9])").unwrap(), " ${1} ${2}"),
        (Regex::new(r"([0-9])(-)").unwrap(), "${1} ${2} "),
    ]
});

/// mteval-v13a tokenization: unescapes a few HTML entities and pads
/// punctuation with spaces (keeping `.`/`,` inside numbers).
pub fn tokenize_13a(line: &str) -> String {
    let mut line = line
        .replace("<skipped>", "")
        .replace("-\n", "")
        .replace('\n', " ");
    if line.contains('&') {
        line = line
            .replace("&quot;", "\"")
            .replace("&amp;", "&")
            .replace("&lt;", "<")
            .replace("&gt;", ">");
    }
    let mut line = format!(" {line} ");
    for (re, rep) in TOK13A_RULES.iter() {
        line = re.replace_all(&line, *rep).into_owned();
    }
    line.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Sufficient statistics: lengths plus matched and total n-grams per order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BleuStats {
    pub hyp_len: u64,
    pub ref_len: u64,
    pub correct: Vec<u64>,
    pub total: Vec<u64>,
}

impl BleuStats {
    fn merge(mut self, other: BleuStats) -> BleuStats {
        self.hyp_len += other.hyp_len;
        self.ref_len += other.ref_len;
        let n = self.correct.len().max(other.correct.len());
        self.correct.resize(n, 0);
        self.total.resize(n, 0);
        for k in 0..other.correct.len() {
            self.correct[k] += other.correct[k];
            self.total[k] += other.total[k];
        }
        self
    }

    pub fn sentence(hyp: &str, reference: &str, cfg: &BleuConfig) -> Self {
        let prep = |s: &str| {
            let s = if cfg.lowercase {
                s.to_lowercase()
            } else {
                s.to_string()
            };
            let s = s.trim_end();
            match cfg.tokenizer {
                BleuTokenizer::Tok13a => tokenize_13a(s),
                BleuTokenizer::None => s.to_string(),
            }
        };
        let (hyp, reference) = (prep(hyp), prep(reference));
        let hyp_tokens: Vec<&str> = hyp.split_whitespace().collect();
        let ref_tokens: Vec<&str> = reference.split_whitespace().collect();
        let mut correct = vec![0; cfg.max_order];
        let mut total = vec![0; cfg.max_order];
        for n in 1..=cfg.max_order {
            let mut ref_counts: HashMap<&[&str], u64> = HashMap::new();
            for w in ref_tokens.windows(n) {
                *ref_counts.entry(w).or_insert(0) += 1;
            }
            let mut hyp_counts: HashMap<&[&str], u64> = HashMap::new();
            for w in hyp_tokens.windows(n) {
                *hyp_counts.entry(w).or_insert(0) += 1;
            }
            for (ng, c) in hyp_counts {
                total[n - 1] += c;
                if let Some(&r) = ref_counts.get(ng) {
                    correct[n - 1] += c.min(r);
                }
            }
        }
        BleuStats {
            hyp_len: hyp_tokens.len() as u64,
            ref_len: ref_tokens.len() as u64,
            correct,
            total,
        }
    }

    pub fn score(&self, cfg: &BleuConfig) -> f64 {
        let (sys_len, ref_len) = (self.hyp_len as f64, self.ref_len as f64);
        let bp = if sys_len < ref_len {
            if sys_len > 0.0 {
                (1.0 - ref_len / sys_len).exp()
            } else {
                0.0
            }
        } else {
            1.0
        };
        if self.correct.iter().all(|&c| c == 0) {
            return 0.0;
        }
        let order = cfg.max_order;
        let mut correct: Vec<f64> = self.correct.iter().map(|&c| c as f64).collect();
        let mut total: Vec<f64> = self.total.iter().map(|&c| c as f64).collect();
        let mut precisions = vec![0.0; order];
        let mut smooth_mteval = 1.0;
        for n in 0..order {
            if let Smoothing::AddK(k) = cfg.smoothing {
                if n > 0 {
                    correct[n] += k;
                    total[n] += k;
                }
            }
            if total[n] == 0.0 {
                break;
            }
            precisions[n] = if correct[n] == 0.0 {
                match cfg.smoothing {
                    Smoothing::Exp => {
                        smooth_mteval *= 2.0;
                        100.0 / (smooth_mteval * total[n])
                    }
                    Smoothing::Floor(v) => 100.0 * v / total[n],
                    _ => 0.0,
                }
            } else {
                100.0 * correct[n] / total[n]
            };
        }
        // log(0) floored as in the reference implementation
        let log = |p: f64| if p == 0.0 { -9_999_999_999.0 } else { p.ln() };
        let mean = precisions.iter().map(|&p| log(p)).sum::<f64>() / order as f64;
        (bp * mean.exp()).clamp(0.0, 100.0)
    }
}

/// Corpus-level BLEU in `[0, 100]`, one reference per hypothesis.
pub fn bleu<S: AsRef<str> + Sync>(
    hypotheses: &[S],
    references: &[S],
    cfg: &BleuConfig,
) -> Result<f64> {
    check_lengths(hypotheses, references)?;
    if cfg.max_order == 0 {
        return Err(Error::Invalid("max_order must be at least 1".into()));
    }
    let stats = hypotheses
        .par_iter()
        .zip(references)
        .map(|(h, r)| BleuStats::sentence(h.as_ref(), r.as_ref(), cfg))
        .reduce(BleuStats::default, BleuStats::merge);
    Ok(stats.score(cfg))
}
