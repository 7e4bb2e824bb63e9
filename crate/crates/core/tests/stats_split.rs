use proptest::prelude::*;
use rupkit::corpus::{SentencePair, SourceEntry, SourceManifest, SourceRole, Split};
use rupkit::split::{stratified_split, SplitPlan};
use rupkit::stats::{corpus_stats, words};

fn manifest(sources: &[(&str, SourceRole)]) -> SourceManifest {
    SourceManifest::new(
        sources
            .iter()
            .map(|(s, role)| SourceEntry {
                source: s.to_string(),
                genre: String::new(),
                role: *role,
                input: None,
            })
            .collect(),
    )
    .unwrap()
}

fn corpus(sizes: &[(&str, usize)]) -> Vec<SentencePair> {
    let mut out = Vec::new();
    for (s, n) in sizes {
        for i in 0..*n {
            out.push(SentencePair::new(format!("{s}-{i}"), "rup", "ron", *s));
        }
    }
    out
}

proptest! {
    #[test]
    fn ttr_is_a_fraction(texts in prop::collection::vec("[a-zA-Z ,.]{0,30}", 1..6)) {
        match corpus_stats(&texts, true) {
            Ok(s) => {
                prop_assert!(s.unique_words <= s.words);
                prop_assert!(s.type_token_ratio > 0.0 && s.type_token_ratio <= 1.0);
                let total: usize = texts.iter().map(|t| words(t).count()).sum();
                prop_assert_eq!(s.words, total);
                prop_assert_eq!(s.words_per_sentence, total as f64 / texts.len() as f64);
            }
            Err(_) => prop_assert!(texts.iter().all(|t| words(t).next().is_none())),
        }
    }

    #[test]
    fn split_counts_follow_floor(n in 0usize..400, ratio in 0.05f64..0.99, seed in any::<u64>()) {
        let plan = SplitPlan::new(manifest(&[("A", SourceRole::Trainable)]), ratio, seed).unwrap();
        let out = stratified_split(&corpus(&[("A", n)]), &plan).unwrap();
        let train = out.iter().filter(|p| p.split == Some(Split::Train)).count();
        prop_assert_eq!(train, (ratio * n as f64 + 1e-9).floor() as usize);
        prop_assert_eq!(out.iter().filter(|p| p.split == Some(Split::Dev)).count(), n - train);
    }
}

#[test]
fn seed_changes_the_assignment() {
    let m = manifest(&[("A", SourceRole::Trainable)]);
    let c = corpus(&[("A", 200)]);
    let run = |seed| {
        stratified_split(&c, &SplitPlan::new(m.clone(), 0.9, seed).unwrap())
            .unwrap()
            .into_iter()
            .map(|p| p.split)
            .collect::<Vec<_>>()
    };
    assert_eq!(run(1), run(1));
    assert_ne!(run(1), run(2));
}

#[test]
fn adding_a_source_leaves_others_alone() {
    let one = manifest(&[("A", SourceRole::Trainable)]);
    let two = manifest(&[("A", SourceRole::Trainable), ("B", SourceRole::Trainable)]);
    let a = stratified_split(
        &corpus(&[("A", 100)]),
        &SplitPlan::new(one, 0.95, 5).unwrap(),
    )
    .unwrap();
    let ab = stratified_split(
        &corpus(&[("A", 100), ("B", 50)]),
        &SplitPlan::new(two, 0.95, 5).unwrap(),
    )
    .unwrap();
    assert_eq!(a[..], ab[..100]);
}

#[test]
fn manifest_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(
        &path,
        r#"{"entries": [{"source": "Bible", "genre": "religious", "role": "trainable"},
                        {"source": "Writings", "role": "test_only"}]}"#,
    )
    .unwrap();
    let m = SourceManifest::read(&path).unwrap();
    assert_eq!(m.role("Writings"), Some(SourceRole::TestOnly));
    std::fs::write(
        &path,
        r#"{"entries": [{"source": "A", "role": "trainable"}, {"source": "A", "role": "dev_only"}]}"#,
    )
    .unwrap();
    assert!(SourceManifest::read(&path).is_err());
}
