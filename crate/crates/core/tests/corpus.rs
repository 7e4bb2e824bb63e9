mod common;

use proptest::prelude::*;
use rupkit::corpus::{
    export_tsv, format_corpus, parse_corpus, read_corpus, write_corpus, SentencePair, Split,
};
use rupkit::Error;

proptest! {
    #[test]
    fn write_then_read_is_identity(c in common::corpus()) {
        let mut buf = Vec::new();
        format_corpus(&c, &mut buf).unwrap();
        prop_assert_eq!(parse_corpus(&buf[..]).unwrap(), c);
    }

    #[test]
    fn tsv_has_one_line_per_pair(c in common::corpus()) {
        let mut buf = Vec::new();
        export_tsv(&c, &mut buf).unwrap();
        let out = String::from_utf8(buf).unwrap();
        prop_assert_eq!(out.lines().count(), c.len() + 1);
        for line in out.lines() {
            prop_assert_eq!(line.split('\t').count(), 4);
        }
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let mut p = SentencePair::new("a", "Shi", "Și", "Bible");
    p.eng = Some("And".into());
    p.split = Some(Split::Test);
    write_corpus(&[p.clone()], &path).unwrap();
    assert_eq!(read_corpus(&path).unwrap(), [p]);
}

#[test]
fn missing_file_is_io_error() {
    assert!(matches!(
        read_corpus("/nonexistent/corpus.jsonl"),
        Err(Error::Io { .. })
    ));
}

#[test]
fn errors_carry_line_numbers() {
    let good = r#"{"id":"1","rup":"a","ron":"b","source":"s","genre":"","orthography":"cunia"}"#;
    let cases = [
        (format!("{good}\n{good}"), "line 2"),
        (format!("{good}\nnot json"), "line 2"),
        (
            r#"{"id":"1","rup":"a","source":"s","genre":"","orthography":"cunia"}"#.to_string(),
            "ron",
        ),
        (
            r#"{"id":"1","rup":"a","ron":"b","source":"s","genre":"","orthography":"cunia","x":1}"#
                .to_string(),
            "line 1",
        ),
        (
            r#"{"id":"1","rup":"a","ron":"b","source":"s","genre":"","orthography":"latin"}"#
                .to_string(),
            "line 1",
        ),
    ];
    for (input, needle) in cases {
        let err = parse_corpus(input.as_bytes()).unwrap_err().to_string();
        assert!(err.contains(needle), "{err:?} should mention {needle:?}");
    }
}

#[test]
fn decomposed_input_is_composed() {
    let line = "{\"id\":\"1\",\"rup\":\"ca\u{0303}nd\",\"ron\":\"ca\u{0306}\",\"source\":\"s\",\"genre\":\"\",\"orthography\":\"cunia\"}";
    let p = &parse_corpus(line.as_bytes()).unwrap()[0];
    assert_eq!(p.rup, "cãnd");
    assert_eq!(p.ron, "că");
}

#[test]
fn blank_lines_are_skipped() {
    let input = "\n{\"id\":\"1\",\"rup\":\"a\",\"ron\":\"b\",\"source\":\"s\",\"genre\":\"\",\"orthography\":\"diaro\"}\n\n";
    assert_eq!(parse_corpus(input.as_bytes()).unwrap().len(), 1);
}
