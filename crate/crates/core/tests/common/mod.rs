#![allow(dead_code)]

use proptest::prelude::*;
use rupkit::align::AlignConfig;
use rupkit::corpus::{Orthography, SentencePair, Split};
use rupkit::embeddings::{EmbeddingVector, SimilarityMatrix};

/// Best monotone alignment score by enumerating every partial matching.
///
/// Scores are folded in path order, the same way the aligner accumulates them.
pub fn brute_force_score(sim: &[Vec<f64>], cfg: &AlignConfig) -> f64 {
    fn go(sim: &[Vec<f64>], cfg: &AlignConfig, i0: usize, j0: usize, acc: f64) -> f64 {
        let mut best = acc;
        for i in i0..sim.len() {
            for j in j0..sim[i].len() {
                if sim[i][j] >= cfg.min_sim {
                    let s = go(
                        sim,
                        cfg,
                        i + 1,
                        j + 1,
                        acc + (sim[i][j] - cfg.match_penalty),
                    );
                    if s > best {
                        best = s;
                    }
                }
            }
        }
        best
    }
    go(sim, cfg, 0, 0, 0.0)
}

/// Per-row argmax by explicit loops over the stored components; ties go to
/// the first target.
pub fn brute_force_accuracy(src: &[EmbeddingVector], tgt: &[EmbeddingVector]) -> f64 {
    let mut hits = 0;
    for (i, u) in src.iter().enumerate() {
        let mut best_j = 0;
        let mut best = f64::NEG_INFINITY;
        for (j, v) in tgt.iter().enumerate() {
            let mut d = 0.0;
            for k in 0..u.dim() {
                d += f64::from(u.as_slice()[k]) * f64::from(v.as_slice()[k]);
            }
            if d > best {
                best = d;
                best_j = j;
            }
        }
        if best_j == i {
            hits += 1;
        }
    }
    hits as f64 / src.len() as f64
}

pub fn matrix(rows: &[Vec<f64>]) -> SimilarityMatrix {
    SimilarityMatrix::from_rows(rows).unwrap()
}

pub fn vectors(rows: &[Vec<f64>]) -> Vec<EmbeddingVector> {
    rows.iter()
        .map(|r| EmbeddingVector::new(r.iter().map(|&x| x as f32).collect()).unwrap())
        .collect()
}

/// Lowercase Romanian-like alphabet plus the Cunia-only letters.
pub const CUNIA_LETTERS: &[char] = &[
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'l', 'm', 'n', 'o', 'p', 'r', 's', 't', 'u',
    'v', 'z', 'y', 'ã',
];

/// The word-frequency list used as a stand-in for running Romanian text.
pub fn wordfreq() -> Vec<(String, f64)> {
    include_str!("../data/ro_wordfreq.tsv")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (w, cb) = l.split_once('\t').unwrap();
            (
                w.to_string(),
                10f64.powf(-cb.parse::<f64>().unwrap() / 100.0),
            )
        })
        .collect()
}

/// Cunia-spelled text: letters in mixed case, digraphs, whitespace, punctuation.
pub fn cunia_text() -> impl Strategy<Value = String> {
    let letter = prop::sample::select(CUNIA_LETTERS.to_vec());
    let piece = prop_oneof![
        6 => (letter, prop::bool::weighted(0.2)).prop_map(|(c, up)| {
            if up { c.to_uppercase().collect() } else { c.to_string() }
        }),
        2 => prop::sample::select(vec!["sh", "ts", "lj", "nj", "Sh", "SH", "sH", "Ts", "TS", "ã", "Ã"])
            .prop_map(String::from),
        1 => prop::sample::select(vec![" ", "  ", "\t", "\n", ",", ".", "-", "'", "1", "«", "»"])
            .prop_map(String::from),
    ];
    prop::collection::vec(piece, 0..40).prop_map(|ps| ps.concat())
}

fn text() -> impl Strategy<Value = String> {
    // NFC-stable letters, punctuation, quotes and escapes
    "[a-zA-ZãșțľńăâîĂÂÎ .,;:!?\"'\\\\\t«»-]{0,20}[a-zA-Zã]"
}

fn pair() -> impl Strategy<Value = SentencePair> {
    (
        text(),
        text(),
        proptest::option::of(text()),
        "[A-Za-z ]{1,12}",
        "[a-z]{0,8}",
        prop::bool::ANY,
        proptest::option::of(prop_oneof![
            Just(Split::Train),
            Just(Split::Dev),
            Just(Split::Test)
        ]),
    )
        .prop_map(
            |(rup, ron, eng, source, genre, diaro, split)| SentencePair {
                id: String::new(),
                rup,
                ron,
                eng,
                source,
                genre,
                orthography: if diaro {
                    Orthography::Diaro
                } else {
                    Orthography::Cunia
                },
                split,
            },
        )
}

/// Corpora with unique ids and arbitrary optional fields.
pub fn corpus() -> impl Strategy<Value = Vec<SentencePair>> {
    prop::collection::vec(pair(), 0..8).prop_map(|mut ps| {
        for (i, p) in ps.iter_mut().enumerate() {
            p.id = format!("doc-{i}");
        }
        ps
    })
}
