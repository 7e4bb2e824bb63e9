use serde::{Deserialize, Serialize};

use crate::embeddings::{Cell, SimilarityMatrix};
use crate::error::{Error, Result};

/// Thresholds for the monotone aligner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlignConfig {
    /// Pairs below this similarity are never matched.
    pub min_sim: f64,
    /// Flat cost subtracted from every accepted match.
    pub match_penalty: f64,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            min_sim: 0.5,
            match_penalty: 0.3,
        }
    }
}

impl AlignConfig {
    pub fn validate(&self) -> Result<()> {
        if !(-1.0..=1.0).contains(&self.min_sim) {
            return Err(Error::Invalid(format!(
                "min_sim {} outside [-1, 1]",
                self.min_sim
            )));
        }
        if !(self.match_penalty >= 0.0 && self.match_penalty.is_finite()) {
            return Err(Error::Invalid(format!(
                "match penalty {} must be a finite non-negative number",
                self.match_penalty
            )));
        }
        Ok(())
    }
}

/// A monotone one-to-one alignment between two sentence sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentPath {
    /// Matched `(src, tgt)` indices, strictly increasing in both.
    pub matches: Vec<(usize, usize)>,
    pub skipped_src: Vec<usize>,
    pub skipped_tgt: Vec<usize>,
    /// Sum of `sim - match_penalty` over `matches`.
    pub score: f64,
}

impl AlignmentPath {
    fn skip_all(n: usize, m: usize) -> Self {
        AlignmentPath {
            matches: Vec::new(),
            skipped_src: (0..n).collect(),
            skipped_tgt: (0..m).collect(),
            score: 0.0,
        }
    }
}

const MATCH: u8 = 0;
const SKIP_SRC: u8 = 1;
const SKIP_TGT: u8 = 2;

/// Highest-scoring monotone alignment under `cfg`.
///
/// `S[i][j] = max(S[i-1][j-1] + sim[i][j] - λ  (if sim ≥ min_sim), S[i-1][j], S[i][j-1])`.
/// Scores live in two rolling rows; one byte of backtrace is kept per cell.
/// Equal scores resolve as match, then skip-src, then skip-tgt.
pub fn align_dp<T: Cell>(sim: &SimilarityMatrix<T>, cfg: &AlignConfig) -> AlignmentPath {
    let (n, m) = sim.shape();
    if n == 0 || m == 0 {
        return AlignmentPath::skip_all(n, m);
    }
    let width = m + 1;
    let mut back = vec![SKIP_TGT; (n + 1) * width];
    let mut prev = vec![0.0f64; width];
    let mut cur = vec![0.0f64; width];
    for i in 1..=n {
        back[i * width] = SKIP_SRC;
        cur[0] = 0.0;
        let row = sim.row(i - 1);
        let back_row = &mut back[i * width..(i + 1) * width];
        for j in 1..=m {
            let s = row[j - 1].to_f64();
            let mut best = prev[j];
            let mut step = SKIP_SRC;
            if cur[j - 1] > best {
                best = cur[j - 1];
                step = SKIP_TGT;
            }
            if s >= cfg.min_sim {
                let candidate = prev[j - 1] + (s - cfg.match_penalty);
                if candidate >= best {
                    best = candidate;
                    step = MATCH;
                }
            }
            cur[j] = best;
            back_row[j] = step;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let score = prev[m];

    let (mut i, mut j) = (n, m);
    let mut path = AlignmentPath {
        matches: Vec::new(),
        skipped_src: Vec::new(),
        skipped_tgt: Vec::new(),
        score,
    };
    while i > 0 || j > 0 {
        let step = if i == 0 {
            SKIP_TGT
        } else if j == 0 {
            SKIP_SRC
        } else {
            back[i * width + j]
        };
        match step {
            MATCH => {
                path.matches.push((i - 1, j - 1));
                i -= 1;
                j -= 1;
            }
            SKIP_SRC => {
                path.skipped_src.push(i - 1);
                i -= 1;
            }
            _ => {
                path.skipped_tgt.push(j - 1);
                j -= 1;
            }
        }
    }
    path.matches.reverse();
    path.skipped_src.reverse();
    path.skipped_tgt.reverse();
    path
}

/// Checks every structural invariant of `path` against `sim` and `cfg`.
pub fn check_path<T: Cell>(
    path: &AlignmentPath,
    sim: &SimilarityMatrix<T>,
    cfg: &AlignConfig,
) -> std::result::Result<(), String> {
    let (n, m) = sim.shape();
    for w in path.matches.windows(2) {
        if !(w[0].0 < w[1].0 && w[0].1 < w[1].1) {
            return Err(format!("matches not monotone at {:?} -> {:?}", w[0], w[1]));
        }
    }
    let mut src_seen = vec![0u8; n];
    let mut tgt_seen = vec![0u8; m];
    for &(i, j) in &path.matches {
        if i >= n || j >= m {
            return Err(format!("match ({i}, {j}) out of bounds"));
        }
        src_seen[i] += 1;
        tgt_seen[j] += 1;
        if sim.get(i, j) < cfg.min_sim {
            return Err(format!("match ({i}, {j}) below min_sim"));
        }
    }
    for &i in &path.skipped_src {
        *src_seen.get_mut(i).ok_or("skipped src out of bounds")? += 1;
    }
    for &j in &path.skipped_tgt {
        *tgt_seen.get_mut(j).ok_or("skipped tgt out of bounds")? += 1;
    }
    if src_seen.iter().chain(&tgt_seen).any(|&c| c != 1) {
        return Err("indices not covered exactly once".into());
    }
    let total = path.matches.iter().fold(0.0, |acc, &(i, j)| {
        acc + (sim.get(i, j) - cfg.match_penalty)
    });
    if total != path.score {
        return Err(format!("score {} != sum of matches {}", path.score, total));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[f64]]) -> SimilarityMatrix {
        SimilarityMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn diagonal_is_matched() {
        let sim = matrix(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let cfg = AlignConfig::default();
        let path = align_dp(&sim, &cfg);
        assert_eq!(path.matches, [(0, 0), (1, 1), (2, 2)]);
        assert!((path.score - 2.1).abs() < 1e-12);
        assert!(path.skipped_src.is_empty() && path.skipped_tgt.is_empty());
        check_path(&path, &sim, &cfg).unwrap();
    }

    #[test]
    fn below_threshold_skips_everything() {
        let sim = matrix(&[&[0.4]]);
        let path = align_dp(&sim, &AlignConfig::default());
        assert!(path.matches.is_empty());
        assert_eq!(path.skipped_src, [0]);
        assert_eq!(path.skipped_tgt, [0]);
        assert_eq!(path.score, 0.0);
    }

    #[test]
    fn empty_matrix() {
        let sim = SimilarityMatrix::<f64>::new(3, 0, vec![]).unwrap();
        let path = align_dp(&sim, &AlignConfig::default());
        assert_eq!(path.skipped_src, [0, 1, 2]);
        assert!(path.skipped_tgt.is_empty());
        assert_eq!(path.score, 0.0);
    }

    #[test]
    fn deletion_is_skipped() {
        // tgt lacks src sentence 1
        let sim = matrix(&[&[0.9, 0.1], &[0.2, 0.1], &[0.1, 0.95]]);
        let cfg = AlignConfig::default();
        let path = align_dp(&sim, &cfg);
        assert_eq!(path.matches, [(0, 0), (2, 1)]);
        assert_eq!(path.skipped_src, [1]);
        check_path(&path, &sim, &cfg).unwrap();
    }

    #[test]
    fn crossing_pairs_pick_the_better_one() {
        let sim = matrix(&[&[0.1, 0.9], &[0.8, 0.1]]);
        let path = align_dp(&sim, &AlignConfig::default());
        assert_eq!(path.matches, [(0, 1)]);
    }

    #[test]
    fn tie_prefers_match_then_skip_src() {
        // match worth exactly zero ties with skipping
        let cfg = AlignConfig {
            min_sim: 0.0,
            match_penalty: 0.5,
        };
        let path = align_dp(&matrix(&[&[0.5]]), &cfg);
        assert_eq!(path.matches, [(0, 0)]);
        // two equivalent single matches: (0,0) vs (0,1)
        let path = align_dp(&matrix(&[&[0.9, 0.9]]), &AlignConfig::default());
        assert_eq!(path.matches, [(0, 1)]);
        assert_eq!(path.skipped_tgt, [0]);
    }

    #[test]
    fn config_validation() {
        assert!(AlignConfig::default().validate().is_ok());
        let bad = AlignConfig {
            min_sim: 2.0,
            ..AlignConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = AlignConfig {
            match_penalty: -0.1,
            ..AlignConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
