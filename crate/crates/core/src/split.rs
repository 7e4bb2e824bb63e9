//! Per-source train/dev/test assignment.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{SentencePair, SourceManifest, SourceRole, Split};
use crate::embeddings::fnv1a64;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    /// Share of each trainable source that goes to train.
    pub ratio: f64,
    pub seed: u64,
    pub manifest: SourceManifest,
}

impl SplitPlan {
    pub fn new(manifest: SourceManifest, ratio: f64, seed: u64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::Invalid(format!("ratio {ratio} must be in (0, 1)")));
        }
        manifest.validate()?;
        Ok(SplitPlan {
            ratio,
            seed,
            manifest,
        })
    }

    /// Number of train items for a trainable source of `n` pairs: `⌊ratio·n⌋`.
    pub fn train_count(&self, n: usize) -> usize {
        // the epsilon absorbs products like 0.95 * 60 = 56.99999999999999
        ((self.ratio * n as f64) + 1e-9).floor() as usize
    }
}

/// Assigns a split to every pair, leaving input order unchanged.
///
/// Trainable sources are shuffled with a generator seeded from the plan seed
/// and the source name; the first `⌊ratio·n⌋` go to train, the rest to dev.
/// Dev-only and test-only sources are routed whole.
pub fn stratified_split(corpus: &[SentencePair], plan: &SplitPlan) -> Result<Vec<SentencePair>> {
    let mut by_source: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, p) in corpus.iter().enumerate() {
        by_source.entry(p.source.as_str()).or_default().push(i);
    }
    let mut assigned = vec![Split::Train; corpus.len()];
    for (source, mut indices) in by_source {
        let role = plan
            .manifest
            .role(source)
            .ok_or_else(|| Error::UnknownSource(source.to_string()))?;
        match role {
            SourceRole::DevOnly => indices.iter().for_each(|&i| assigned[i] = Split::Dev),
            SourceRole::TestOnly => indices.iter().for_each(|&i| assigned[i] = Split::Test),
            SourceRole::Trainable => {
                let mut rng = ChaCha8Rng::seed_from_u64(plan.seed ^ fnv1a64(source.as_bytes()));
                indices.shuffle(&mut rng);
                let k = plan.train_count(indices.len());
                for (rank, &i) in indices.iter().enumerate() {
                    assigned[i] = if rank < k { Split::Train } else { Split::Dev };
                }
            }
        }
    }
    Ok(corpus
        .iter()
        .zip(assigned)
        .map(|(p, s)| SentencePair {
            split: Some(s),
            ..p.clone()
        })
        .collect())
}
