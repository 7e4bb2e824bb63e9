use rayon::prelude::*;
use serde::Serialize;

use super::dp::{align_dp, AlignConfig, AlignmentPath};
use super::splitter::{split_sentences, SplitterRules};
use crate::corpus::{DocumentPair, SentencePair};
use crate::embeddings::{similarity_matrix, Cell, EmbeddingProvider, SimilarityMatrix};
use crate::error::Result;

/// Sentence pairs extracted from one document pair, plus the path behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentAlignment {
    pub pairs: Vec<SentencePair>,
    pub path: AlignmentPath,
}

/// Match and skip counts, printed by the CLI as one JSON line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct AlignmentReport {
    pub documents: usize,
    pub matches: usize,
    pub skipped_src: usize,
    pub skipped_tgt: usize,
    pub score: f64,
}

impl AlignmentReport {
    pub fn add(&mut self, a: &DocumentAlignment) {
        self.documents += 1;
        self.matches += a.path.matches.len();
        self.skipped_src += a.path.skipped_src.len();
        self.skipped_tgt += a.path.skipped_tgt.len();
        self.score += a.path.score;
    }
}

/// Embeds both sides of `doc`, aligns them and emits one pair per match.
pub fn align_documents(
    doc: &DocumentPair,
    cfg: &AlignConfig,
    provider: &dyn EmbeddingProvider,
) -> Result<DocumentAlignment> {
    let src = provider.embed(&doc.src_sentences)?;
    let tgt = provider.embed(&doc.tgt_sentences)?;
    let sim = similarity_matrix(&src, &tgt)?;
    let path = align_dp(&sim, cfg);
    let pairs = path
        .matches
        .iter()
        .map(|&(i, j)| {
            SentencePair::new(
                format!("{}:{}|{}:{}", doc.src_id, i, doc.tgt_id, j),
                doc.src_sentences[i].clone(),
                doc.tgt_sentences[j].clone(),
                doc.src_id.clone(),
            )
        })
        .collect();
    Ok(DocumentAlignment { pairs, path })
}

/// Aligns many document pairs on up to `jobs` threads; results keep input order.
pub fn align_document_batch(
    docs: &[DocumentPair],
    cfg: &AlignConfig,
    provider: &dyn EmbeddingProvider,
    jobs: usize,
) -> Result<Vec<DocumentAlignment>> {
    let run = || {
        docs.par_iter()
            .map(|d| align_documents(d, cfg, provider))
            .collect::<Result<Vec<_>>>()
    };
    if jobs <= 1 {
        return docs
            .iter()
            .map(|d| align_documents(d, cfg, provider))
            .collect();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| crate::error::Error::Invalid(e.to_string()))?
        .install(run)
}

/// Greedy best-first one-to-one matching.
///
/// Candidates are visited by similarity, highest first (ties by `(a, b)`
/// ascending); a pair is taken when both sides are still free and its
/// similarity reaches `threshold`. Output is sorted by the first index.
pub fn greedy_match<T: Cell>(sim: &SimilarityMatrix<T>, threshold: f64) -> Vec<(usize, usize)> {
    let (n, m) = sim.shape();
    let mut candidates: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, sim.get(i, j)))
        .filter(|&(_, _, s)| s >= threshold)
        .collect();
    candidates.sort_by(|x, y| y.2.total_cmp(&x.2).then(x.0.cmp(&y.0)).then(x.1.cmp(&y.1)));
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; m];
    let mut out = Vec::new();
    for (i, j, _) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            out.push((i, j));
        }
    }
    out.sort_unstable();
    out
}

/// Pairs titles of two article collections by embedding similarity,
/// leaving titles without a good partner unmatched.
pub fn match_documents(
    titles_a: &[String],
    titles_b: &[String],
    threshold: f64,
    provider: &dyn EmbeddingProvider,
) -> Result<Vec<(usize, usize)>> {
    let a = provider.embed(titles_a)?;
    let b = provider.embed(titles_b)?;
    Ok(greedy_match(&similarity_matrix(&a, &b)?, threshold))
}

/// Splits two translations of one verse and pairs sentences by position,
/// or returns `None` when the sentence counts differ.
pub fn pair_verses(
    verse_a: &str,
    verse_b: &str,
    rules: &SplitterRules,
) -> Option<Vec<(String, String)>> {
    let a = split_sentences(verse_a, rules);
    let b = split_sentences(verse_b, rules);
    (a.len() == b.len()).then(|| a.into_iter().zip(b).collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerseReport {
    pub verses: usize,
    pub paired: usize,
    pub dropped: usize,
    /// Verse ids present on only one side.
    pub unmatched_ids: usize,
}

/// Pairs verses that share an id across two `(id, text)` tables.
///
/// Output follows the order of `a`; sentence pairs get ids `<verse>:<k>`.
pub fn pair_verse_tables(
    a: &[(String, String)],
    b: &[(String, String)],
    rules: &SplitterRules,
    source: &str,
) -> (Vec<SentencePair>, VerseReport) {
    let lookup: std::collections::HashMap<&str, &str> =
        b.iter().map(|(id, t)| (id.as_str(), t.as_str())).collect();
    let mut report = VerseReport::default();
    let mut pairs = Vec::new();
    for (id, text_a) in a {
        let Some(text_b) = lookup.get(id.as_str()) else {
            report.unmatched_ids += 1;
            continue;
        };
        report.verses += 1;
        match pair_verses(text_a, text_b, rules) {
            Some(sentences) => {
                report.paired += 1;
                for (k, (x, y)) in sentences.into_iter().enumerate() {
                    pairs.push(SentencePair::new(format!("{id}:{k}"), x, y, source));
                }
            }
            None => report.dropped += 1,
        }
    }
    let ids_a: std::collections::HashSet<&str> = a.iter().map(|(id, _)| id.as_str()).collect();
    report.unmatched_ids += b
        .iter()
        .filter(|(id, _)| !ids_a.contains(id.as_str()))
        .count();
    (pairs, report)
}
