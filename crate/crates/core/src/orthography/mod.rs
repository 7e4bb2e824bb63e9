//! Conversion between the Cunia and DIARO spellings of Aromanian.
//!
//! Most correspondences are one-to-one digraph rewrites (`sh`↔`ș`, `ts`↔`ț`,
//! `lj`↔`ľ`, `nj`↔`ń`) handled by [`MappingTable`]. The exception is Cunia's
//! `ã`, which stands for both central vowels; DIARO writes the close one as
//! `â`/`î` and the mid one as `ă`. [`OrthoModel`] learns which to use from
//! DIARO-spelled text.
//!
//! ```
//! use rupkit::orthography::{convert_to_diaro, normalize_to_cunia, train_ortho_model, MappingTable};
//!
//! let mapping = MappingTable::default();
//! let model = train_ortho_model(&["cându tricură"], &mapping).unwrap();
//! assert_eq!(convert_to_diaro("shi cãndu", &model), "și cându");
//! assert_eq!(normalize_to_cunia("și cându", &mapping), "shi cãndu");
//! ```

mod mapping;
mod model;

pub use mapping::MappingTable;
pub use model::{
    convert_to_diaro, evaluate_converter, normalize_to_cunia, train_ortho_model, ClassCounts,
    OrthoModel, SiteAccuracy, VowelClass, MODEL_FORMAT_VERSION,
};
