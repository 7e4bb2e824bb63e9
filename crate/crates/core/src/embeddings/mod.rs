//! Sentence embeddings and the similarity computations built on them.
//!
//! Vectors come from a pluggable [`EmbeddingProvider`]; every vector is kept at
//! unit length so a dot product is a cosine similarity.

mod provider;

pub use provider::{
    embed_batch, fnv1a64, EmbeddingProvider, FileProvider, HttpProvider, KeyFn, MockProvider,
    ProviderConfig, ProviderKind,
};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// A unit-norm dense embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector(Vec<f32>);

impl EmbeddingVector {
    /// Normalizes `values` to unit length. Fails on empty, zero or non-finite input.
    pub fn new(values: Vec<f32>) -> Result<Self> {
        let norm = values
            .iter()
            .map(|&v| f64::from(v) * f64::from(v))
            .sum::<f64>()
            .sqrt();
        if values.is_empty() || !norm.is_finite() || norm == 0.0 {
            return Err(Error::Invalid(
                "embedding must be non-empty, finite and non-zero".into(),
            ));
        }
        Ok(EmbeddingVector(
            values
                .into_iter()
                .map(|v| (f64::from(v) / norm) as f32)
                .collect(),
        ))
    }

    pub fn from_f64(values: &[f64]) -> Result<Self> {
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if values.is_empty() || !norm.is_finite() || norm == 0.0 {
            return Err(Error::Invalid(
                "embedding must be non-empty, finite and non-zero".into(),
            ));
        }
        Ok(EmbeddingVector(
            values.iter().map(|v| (v / norm) as f32).collect(),
        ))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Dot product accumulated in `f64`.
    pub fn dot(&self, other: &EmbeddingVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| f64::from(a) * f64::from(b))
            .sum()
    }
}

/// Storage type of a similarity cell.
pub trait Cell: Copy + Send + Sync + 'static {
    fn to_f64(self) -> f64;
    fn from_f64(v: f64) -> Self;
}

impl Cell for f64 {
    fn to_f64(self) -> f64 {
        self
    }
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl Cell for f32 {
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
    fn from_f64(v: f64) -> Self {
        v as f32
    }
}

/// Dense row-major `rows × cols` matrix of similarity scores.
///
/// `f64` cells by default; `SimilarityMatrix<f32>` halves memory for very
/// large documents.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix<T: Cell = f64> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Cell> SimilarityMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                left: data.len(),
                right: rows * cols,
            });
        }
        Ok(SimilarityMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        SimilarityMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                left: bad.len(),
                right: cols,
            });
        }
        Ok(SimilarityMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j].to_f64()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        SimilarityMatrix::from_fn(self.cols, self.rows, |i, j| self.data[j * self.cols + i])
    }
}

fn check_dims(a: &[EmbeddingVector], b: &[EmbeddingVector]) -> Result<usize> {
    let mut all = a.iter().chain(b);
    let Some(first) = all.next() else {
        return Ok(0);
    };
    let expected = first.dim();
    for v in all {
        if v.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: v.dim(),
            });
        }
    }
    Ok(expected)
}

/// All pairwise dot products `a[i]·b[j]`.
pub fn similarity_matrix(a: &[EmbeddingVector], b: &[EmbeddingVector]) -> Result<SimilarityMatrix> {
    check_dims(a, b)?;
    let cols = b.len();
    let mut data = vec![0.0; a.len() * cols];
    if cols > 0 {
        data.par_chunks_mut(cols)
            .zip(a.par_iter())
            .for_each(|(row, u)| {
                for (cell, v) in row.iter_mut().zip(b) {
                    *cell = u.dot(v);
                }
            });
    }
    SimilarityMatrix::new(a.len(), cols, data)
}

/// Index of the largest entry, first one on ties.
fn argmax(values: impl Iterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((j, v));
        }
    }
    best.map(|(j, _)| j)
}

/// Fraction of rows `i` whose most similar target is `tgt[i]`.
///
/// Ties go to the smallest target index, so a tie between the true target and
/// an earlier one counts as a miss.
pub fn matching_accuracy(src: &[EmbeddingVector], tgt: &[EmbeddingVector]) -> Result<f64> {
    if src.is_empty() {
        return Err(Error::Invalid(
            "matching accuracy needs at least one pair".into(),
        ));
    }
    if src.len() != tgt.len() {
        return Err(Error::LengthMismatch {
            left: src.len(),
            right: tgt.len(),
        });
    }
    check_dims(src, tgt)?;
    let hits = src
        .par_iter()
        .enumerate()
        .filter(|(i, u)| argmax(tgt.iter().map(|v| u.dot(v))) == Some(*i))
        .count();
    Ok(hits as f64 / src.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f32]) -> EmbeddingVector {
        EmbeddingVector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn vectors_are_normalized() {
        let e = v(&[3.0, 4.0]);
        assert!((e.norm() - 1.0).abs() < 1e-6);
        assert!(EmbeddingVector::new(vec![0.0, 0.0]).is_err());
        assert!(EmbeddingVector::new(vec![]).is_err());
        assert!(EmbeddingVector::new(vec![f32::NAN]).is_err());
    }

    #[test]
    fn self_similarity_is_one() {
        let a = [v(&[0.6, 0.8])];
        let m = similarity_matrix(&a, &a).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert!((m.get(0, 0) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn orthonormal_basis_gives_identity() {
        let e = [v(&[1.0, 0.0]), v(&[0.0, 1.0])];
        let m = similarity_matrix(&e, &e).unwrap();
        assert_eq!(m.row(0), &[1.0, 0.0]);
        assert_eq!(m.row(1), &[0.0, 1.0]);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = [v(&[1.0, 0.0])];
        let b = [v(&[1.0, 0.0, 0.0])];
        assert!(matches!(
            similarity_matrix(&a, &b),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn empty_side_gives_empty_matrix() {
        let a = [v(&[1.0])];
        assert_eq!(similarity_matrix(&a, &[]).unwrap().shape(), (1, 0));
        assert_eq!(similarity_matrix(&[], &a).unwrap().shape(), (0, 1));
    }

    #[test]
    fn matching_accuracy_basics() {
        let e = [v(&[1.0, 0.0]), v(&[0.0, 1.0])];
        let swapped = [e[1].clone(), e[0].clone()];
        assert_eq!(matching_accuracy(&e, &e).unwrap(), 1.0);
        assert_eq!(matching_accuracy(&e, &swapped).unwrap(), 0.0);
        assert!(matching_accuracy(&[], &[]).is_err());
        assert!(matching_accuracy(&e, &e[..1]).is_err());
    }

    #[test]
    fn tie_with_earlier_target_is_a_miss() {
        let x = v(&[1.0, 0.0]);
        let src = [v(&[0.0, 1.0]), x.clone()];
        let tgt = [x.clone(), x];
        // both rows tie between targets 0 and 1; 0 wins, so only row 0 hits
        assert_eq!(matching_accuracy(&src, &tgt).unwrap(), 0.5);
    }

    #[test]
    fn transpose_swaps_indices() {
        let m = SimilarityMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let t = m.transpose();
        assert_eq!(t.shape(), (3, 2));
        assert_eq!(t.get(2, 1), 6.0);
        assert!(SimilarityMatrix::<f64>::from_rows(&[vec![1.0], vec![]]).is_err());
    }
}
