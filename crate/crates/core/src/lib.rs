//! Corpus engineering for Aromanian–Romanian parallel text.
//!
//! The crate covers the whole path from raw bilingual material to a split,
//! evaluable corpus:
//!
//! - [`corpus`]: the JSONL record format and source manifests;
//! - [`orthography`]: Cunia ↔ DIARO conversion with a trained vowel model;
//! - [`embeddings`]: embedding providers and cosine similarity matrices;
//! - [`align`]: monotone sentence alignment, title matching, verse pairing;
//! - [`metrics`]: chrF, chrF++, BLEU and subword fertility;
//! - [`stats`] and [`split`]: corpus statistics and per-source splits.
//!
//! ```
//! use rupkit::metrics::{chrf, ChrfConfig};
//!
//! let hyp = ["Shi cãndu yinea"];
//! assert_eq!(chrf(&hyp, &hyp, &ChrfConfig::default()).unwrap(), 100.0);
//! ```

pub mod align;
pub mod corpus;
pub mod embeddings;
mod error;
pub mod metrics;
pub mod orthography;
pub mod split;
pub mod stats;

pub use error::{Error, Result};

/// The toolkit version, as printed by `rupkit --version`.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

// The guide's code blocks are compiled and run as doctests so it cannot drift.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/corpus.md")]
    mod corpus {}
    #[doc = include_str!("../../../book/src/orthography.md")]
    mod orthography {}
    #[doc = include_str!("../../../book/src/alignment.md")]
    mod alignment {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/splitting.md")]
    mod splitting {}
}
