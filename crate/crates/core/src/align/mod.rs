//! Pairing procedures: monotone sentence alignment over a similarity matrix,
//! greedy title matching, verse pairing, and the sentence splitter they share.
//!
//! ```
//! use rupkit::align::{align_dp, AlignConfig};
//! use rupkit::embeddings::SimilarityMatrix;
//!
//! let sim = SimilarityMatrix::from_rows(&[
//!     vec![0.9, 0.1, 0.0],
//!     vec![0.1, 0.2, 0.8],
//! ]).unwrap();
//! let path = align_dp(&sim, &AlignConfig::default());
//! assert_eq!(path.matches, [(0, 0), (1, 2)]);
//! assert_eq!(path.skipped_tgt, [1]);
//! ```

mod dp;
mod pairing;
mod splitter;

pub use dp::{align_dp, check_path, AlignConfig, AlignmentPath};
pub use pairing::{
    align_document_batch, align_documents, greedy_match, match_documents, pair_verse_tables,
    pair_verses, AlignmentReport, DocumentAlignment, VerseReport,
};
pub use splitter::{split_sentences, SplitterRules};
