//! Parallel-corpus records and their JSON-lines / TSV representations.
//!
//! A corpus file holds one [`SentencePair`] per line. Keys are exactly
//! `id, rup, ron, eng, source, genre, orthography, split`; optional fields are
//! omitted rather than written as `null`. Text is NFC-normalized on read.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Writing standard of the Aromanian side of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orthography {
    #[default]
    Cunia,
    Diaro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

/// One aligned Aromanian / Romanian (/ English) sentence record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentencePair {
    pub id: String,
    pub rup: String,
    pub ron: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eng: Option<String>,
    pub source: String,
    pub genre: String,
    pub orthography: Orthography,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
}

impl SentencePair {
    pub fn new(
        id: impl Into<String>,
        rup: impl Into<String>,
        ron: impl Into<String>,
        source: impl Into<String>,
    ) -> Self {
        SentencePair {
            id: id.into(),
            rup: rup.into(),
            ron: ron.into(),
            eng: None,
            source: source.into(),
            genre: String::new(),
            orthography: Orthography::Cunia,
            split: None,
        }
    }

    /// Checks the per-record invariants (non-blank `rup` and `ron`).
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.rup.trim().is_empty() {
            return Err("empty field rup".into());
        }
        if self.ron.trim().is_empty() {
            return Err("empty field ron".into());
        }
        Ok(())
    }

    fn normalized(mut self) -> Self {
        let nfc = |s: &mut String| *s = s.nfc().collect();
        nfc(&mut self.id);
        nfc(&mut self.rup);
        nfc(&mut self.ron);
        if let Some(e) = self.eng.as_mut() {
            nfc(e);
        }
        nfc(&mut self.source);
        nfc(&mut self.genre);
        self
    }
}

/// Wire form used while reading, so that missing fields can be reported by name.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    id: Option<String>,
    rup: Option<String>,
    ron: Option<String>,
    eng: Option<String>,
    source: Option<String>,
    genre: Option<String>,
    orthography: Option<Orthography>,
    split: Option<Split>,
}

impl RawPair {
    fn into_pair(self) -> std::result::Result<SentencePair, String> {
        fn req<T>(v: Option<T>, name: &str) -> std::result::Result<T, String> {
            v.ok_or_else(|| format!("missing field {name}"))
        }
        Ok(SentencePair {
            id: req(self.id, "id")?,
            rup: req(self.rup, "rup")?,
            ron: req(self.ron, "ron")?,
            eng: self.eng,
            source: req(self.source, "source")?,
            genre: req(self.genre, "genre")?,
            orthography: req(self.orthography, "orthography")?,
            split: self.split,
        })
    }
}

/// Parses a JSON-lines corpus from any reader. Blank lines are skipped.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<Vec<SentencePair>> {
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let raw: RawPair = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        let pair = raw.into_pair().map_err(parse_err)?.normalized();
        pair.validate().map_err(parse_err)?;
        if !seen.insert(pair.id.clone()) {
            return Err(Error::DuplicateId {
                line: line_no,
                id: pair.id,
            });
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<SentencePair>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(BufReader::new(file))
}

/// Serializes pairs as JSON lines, one record per line.
pub fn format_corpus<W: Write>(pairs: &[SentencePair], mut writer: W) -> std::io::Result<()> {
    for pair in pairs {
        serde_json::to_writer(&mut writer, pair)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

pub fn write_corpus(pairs: &[SentencePair], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    format_corpus(pairs, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

fn escape_tsv(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    for c in field.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// Spreadsheet export with columns `id, rup, ron, eng` and a header row.
pub fn export_tsv<W: Write>(pairs: &[SentencePair], mut writer: W) -> std::io::Result<()> {
    writeln!(writer, "id\trup\tron\teng")?;
    for p in pairs {
        writeln!(
            writer,
            "{}\t{}\t{}\t{}",
            escape_tsv(&p.id),
            escape_tsv(&p.rup),
            escape_tsv(&p.ron),
            escape_tsv(p.eng.as_deref().unwrap_or("")),
        )?;
    }
    writer.flush()
}

/// Two documents whose sentences are to be aligned, in document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentPair {
    pub src_id: String,
    pub tgt_id: String,
    pub src_sentences: Vec<String>,
    pub tgt_sentences: Vec<String>,
}

impl DocumentPair {
    pub fn new(
        src_id: impl Into<String>,
        src_sentences: Vec<String>,
        tgt_id: impl Into<String>,
        tgt_sentences: Vec<String>,
    ) -> Result<Self> {
        if src_sentences.is_empty() || tgt_sentences.is_empty() {
            return Err(Error::Invalid("documents must be non-empty".into()));
        }
        Ok(DocumentPair {
            src_id: src_id.into(),
            tgt_id: tgt_id.into(),
            src_sentences,
            tgt_sentences,
        })
    }
}

/// How a source participates in the train/dev/test split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceRole {
    Trainable,
    DevOnly,
    TestOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceEntry {
    pub source: String,
    #[serde(default)]
    pub genre: String,
    pub role: SourceRole,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
}

/// The list of corpus sources and their split roles.
///
/// On disk this is a JSON object `{"entries": [{"source", "genre", "role", "input"}]}`
/// with `role` one of `trainable`, `dev_only`, `test_only`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceManifest {
    pub entries: Vec<SourceEntry>,
}

impl SourceManifest {
    pub fn new(entries: Vec<SourceEntry>) -> Result<Self> {
        let manifest = SourceManifest { entries };
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.entries {
            if !seen.insert(e.source.as_str()) {
                return Err(Error::Invalid(format!(
                    "source {:?} listed twice in manifest",
                    e.source
                )));
            }
        }
        Ok(())
    }

    pub fn role(&self, source: &str) -> Option<SourceRole> {
        self.entries
            .iter()
            .find(|e| e.source == source)
            .map(|e| e.role)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut text = String::new();
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| Error::io(path, e))?;
        let manifest: SourceManifest = serde_json::from_str(&text)?;
        manifest.validate()?;
        Ok(manifest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(id: &str) -> SentencePair {
        SentencePair::new(id, "shi", "și", "Bible")
    }

    #[test]
    fn reads_records_in_order() {
        let input = concat!(
            r#"{"id":"a","rup":"x","ron":"y","source":"s","genre":"g","orthography":"cunia"}"#,
            "\n\n",
            r#"{"id":"b","rup":"x","ron":"y","eng":"z","source":"s","genre":"g","orthography":"diaro","split":"dev"}"#,
            "\n",
            r#"{"id":"c","rup":"x","ron":"y","source":"s","genre":"g","orthography":"cunia"}"#,
        );
        let pairs = parse_corpus(input.as_bytes()).unwrap();
        let ids: Vec<_> = pairs.iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert_eq!(pairs[1].eng.as_deref(), Some("z"));
        assert_eq!(pairs[1].split, Some(Split::Dev));
        assert_eq!(pairs[1].orthography, Orthography::Diaro);
    }

    #[test]
    fn empty_input_is_empty_corpus() {
        assert!(parse_corpus(&b""[..]).unwrap().is_empty());
    }

    #[test]
    fn missing_field_names_line_and_field() {
        let input = concat!(
            r#"{"id":"a","rup":"x","ron":"y","source":"s","genre":"g","orthography":"cunia"}"#,
            "\n",
            r#"{"id":"b","rup":"x","source":"s","genre":"g","orthography":"cunia"}"#,
        );
        let err = parse_corpus(input.as_bytes()).unwrap_err();
        assert_eq!(err.to_string(), "line 2: missing field ron");
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let line =
            r#"{"id":"a","rup":"x","ron":"y","source":"s","genre":"g","orthography":"cunia"}"#;
        let input = format!("{line}\n{line}\n");
        match parse_corpus(input.as_bytes()) {
            Err(Error::DuplicateId { line, id }) => assert_eq!((line, id.as_str()), (2, "a")),
            other => panic!("expected duplicate id, got {other:?}"),
        }
    }

    #[test]
    fn blank_text_is_rejected() {
        let input =
            r#"{"id":"a","rup":"  ","ron":"y","source":"s","genre":"g","orthography":"cunia"}"#;
        let err = parse_corpus(input.as_bytes()).unwrap_err();
        assert_eq!(err.to_string(), "line 1: empty field rup");
    }

    #[test]
    fn unknown_key_is_rejected() {
        let input = r#"{"id":"a","rup":"x","ron":"y","source":"s","genre":"g","orthography":"cunia","lang":"rup"}"#;
        assert!(matches!(
            parse_corpus(input.as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn absent_eng_is_omitted() {
        let mut out = Vec::new();
        format_corpus(&[pair("1")], &mut out).unwrap();
        let line = String::from_utf8(out).unwrap();
        assert!(!line.contains("eng"));
        assert!(!line.contains("split"));
        assert!(!line.contains("null"));
    }

    #[test]
    fn empty_corpus_writes_empty_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        write_corpus(&[], &path).unwrap();
        assert_eq!(std::fs::read(&path).unwrap().len(), 0);
        assert!(read_corpus(&path).unwrap().is_empty());
    }

    #[test]
    fn text_is_nfc_on_read() {
        // "ă" written as a + combining breve
        let input = "{\"id\":\"a\",\"rup\":\"ca\u{0306}\",\"ron\":\"y\",\"source\":\"s\",\"genre\":\"g\",\"orthography\":\"diaro\"}";
        let pairs = parse_corpus(input.as_bytes()).unwrap();
        assert_eq!(pairs[0].rup, "c\u{0103}");
    }

    #[test]
    fn tsv_escapes_tabs_and_newlines() {
        let mut p = pair("1");
        p.rup = "a\tb\nc".into();
        let mut out = Vec::new();
        export_tsv(&[p], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "id\trup\tron\teng\n1\ta\\tb\\nc\tși\t\n");
    }

    #[test]
    fn manifest_rejects_duplicate_sources() {
        let e = SourceEntry {
            source: "Bible".into(),
            genre: String::new(),
            role: SourceRole::Trainable,
            input: None,
        };
        assert!(SourceManifest::new(vec![e.clone(), e]).is_err());
    }

    #[test]
    fn manifest_roles_parse() {
        let m: SourceManifest = serde_json::from_str(
            r#"{"entries":[{"source":"LP","role":"dev_only"},{"source":"W","role":"test_only","genre":"prose"}]}"#,
        )
        .unwrap();
        assert_eq!(m.role("LP"), Some(SourceRole::DevOnly));
        assert_eq!(m.role("W"), Some(SourceRole::TestOnly));
        assert_eq!(m.role("X"), None);
    }
}
