//! Automatic MT evaluation and tokenizer fertility.
//!
//! [`chrf`] and [`bleu`] reproduce sacreBLEU 2.x corpus scores for a single
//! reference. The defaults correspond to the signatures
//! `nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no` and
//! `nrefs:1|case:mixed|eff:no|tok:13a|smooth:exp`. Note that the default
//! chrF is the plain character metric (`nw:0`); use
//! [`ChrfConfig::chrf_plus_plus`] for chrF++ with word bigrams.

mod bleu;
mod chrf;
mod wordpiece;

pub use bleu::{bleu, tokenize_13a, BleuConfig, BleuStats, BleuTokenizer, Smoothing};
pub use chrf::{chrf, ChrfConfig, ChrfStats};
pub use wordpiece::{fertility, wordpiece_tokenize, SubwordVocab};
