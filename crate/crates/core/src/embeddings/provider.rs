use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use super::EmbeddingVector;
use crate::error::{Error, Result};

/// Anything that turns sentences into unit-norm vectors, index-aligned with the input.
pub trait EmbeddingProvider: Send + Sync {
    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProviderKind {
    Http,
    File,
    Mock,
}

fn default_batch_size() -> usize {
    32
}
fn default_timeout_ms() -> u64 {
    30_000
}
fn default_retries() -> u32 {
    2
}
fn default_in_flight() -> usize {
    1
}
fn default_dim() -> usize {
    32
}

/// Provider selection and transport settings, as read from a JSON config file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProviderConfig {
    pub kind: ProviderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file_path: Option<PathBuf>,
    #[serde(default = "default_batch_size")]
    pub batch_size: usize,
    #[serde(default = "default_timeout_ms")]
    pub timeout_ms: u64,
    #[serde(default = "default_retries")]
    pub retries: u32,
    /// Upper bound on concurrent HTTP batch requests.
    #[serde(default = "default_in_flight")]
    pub max_in_flight: usize,
    /// Vector size of the mock provider.
    #[serde(default = "default_dim")]
    pub dim: usize,
}

impl ProviderConfig {
    fn with_kind(kind: ProviderKind) -> Self {
        ProviderConfig {
            kind,
            endpoint: None,
            file_path: None,
            batch_size: default_batch_size(),
            timeout_ms: default_timeout_ms(),
            retries: default_retries(),
            max_in_flight: default_in_flight(),
            dim: default_dim(),
        }
    }

    pub fn mock() -> Self {
        Self::with_kind(ProviderKind::Mock)
    }

    pub fn http(endpoint: impl Into<String>) -> Self {
        ProviderConfig {
            endpoint: Some(endpoint.into()),
            ..Self::with_kind(ProviderKind::Http)
        }
    }

    pub fn file(path: impl Into<PathBuf>) -> Self {
        ProviderConfig {
            file_path: Some(path.into()),
            ..Self::with_kind(ProviderKind::File)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::Invalid("batch_size must be at least 1".into()));
        }
        match self.kind {
            ProviderKind::Http if self.endpoint.is_none() => {
                Err(Error::Invalid("http provider needs an endpoint".into()))
            }
            ProviderKind::File if self.file_path.is_none() => {
                Err(Error::Invalid("file provider needs file_path".into()))
            }
            ProviderKind::Mock if self.dim == 0 => {
                Err(Error::Invalid("mock dim must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: ProviderConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Instantiates the configured provider (loads the vector file for `file`).
    pub fn build(&self) -> Result<Box<dyn EmbeddingProvider>> {
        self.validate()?;
        Ok(match self.kind {
            ProviderKind::Mock => Box::new(MockProvider::new(self.dim)),
            ProviderKind::File => Box::new(FileProvider::load(
                self.file_path.as_ref().expect("validated"),
            )?),
            ProviderKind::Http => Box::new(HttpProvider::new(self)),
        })
    }
}

/// Embeds `texts` with the provider described by `cfg`.
pub fn embed_batch(cfg: &ProviderConfig, texts: &[String]) -> Result<Vec<EmbeddingVector>> {
    cfg.build()?.embed(texts)
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub type KeyFn = Arc<dyn Fn(&str) -> String + Send + Sync>;

/// Deterministic pseudo-embeddings for tests and dry runs.
///
/// Each text is mapped through a key function (identity by default) and the
/// key's hash seeds a generator that fills the vector, so texts sharing a key
/// share a vector exactly.
#[derive(Clone)]
pub struct MockProvider {
    dim: usize,
    key: KeyFn,
}

impl fmt::Debug for MockProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MockProvider")
            .field("dim", &self.dim)
            .finish()
    }
}

impl MockProvider {
    pub fn new(dim: usize) -> Self {
        MockProvider {
            dim,
            key: Arc::new(|s: &str| s.to_owned()),
        }
    }

    pub fn with_key_fn(dim: usize, key: impl Fn(&str) -> String + Send + Sync + 'static) -> Self {
        MockProvider {
            dim,
            key: Arc::new(key),
        }
    }

    pub fn vector_for(&self, text: &str) -> EmbeddingVector {
        let key = (self.key)(text);
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a64(key.as_bytes()));
        loop {
            let values: Vec<f64> = (0..self.dim).map(|_| rng.random_range(-1.0..1.0)).collect();
            if let Ok(v) = EmbeddingVector::from_f64(&values) {
                return v;
            }
        }
    }
}

impl Default for MockProvider {
    fn default() -> Self {
        MockProvider::new(default_dim())
    }
}

impl EmbeddingProvider for MockProvider {
    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>> {
        Ok(texts.iter().map(|t| self.vector_for(t)).collect())
    }
}

#[derive(Deserialize)]
struct StoredVector {
    text: String,
    vec: Vec<f32>,
}

/// Precomputed vectors read from JSON lines `{"text": ..., "vec": [...]}`.
#[derive(Debug, Clone)]
pub struct FileProvider {
    dim: usize,
    vectors: HashMap<String, EmbeddingVector>,
}

impl FileProvider {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::parse(BufReader::new(file))
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut vectors = HashMap::new();
        let mut dim = None;
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let stored: StoredVector = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            let expected = *dim.get_or_insert(stored.vec.len());
            if stored.vec.len() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: stored.vec.len(),
                });
            }
            let v = EmbeddingVector::new(stored.vec).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            vectors.insert(stored.text.nfc().collect(), v);
        }
        Ok(FileProvider {
            dim: dim.unwrap_or(0),
            vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl EmbeddingProvider for FileProvider {
    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>> {
        texts
            .iter()
            .map(|t| {
                let key: String = t.nfc().collect();
                self.vectors
                    .get(&key)
                    .cloned()
                    .ok_or(Error::MissingEmbedding(key))
            })
            .collect()
    }
}

#[derive(Serialize)]
struct HttpRequest<'a> {
    texts: &'a [String],
}

#[derive(Deserialize)]
struct HttpReply {
    dim: usize,
    embeddings: Vec<Vec<f32>>,
}

/// Remote encoder: `POST {"texts": [...]}` → `{"dim": d, "embeddings": [[...], ...]}`.
///
/// Input is cut into `batch_size` chunks; up to `max_in_flight` chunks are
/// requested at once and results are reassembled in input order.
#[derive(Debug, Clone)]
pub struct HttpProvider {
    endpoint: String,
    batch_size: usize,
    retries: u32,
    max_in_flight: usize,
    agent: ureq::Agent,
}

impl HttpProvider {
    pub fn new(cfg: &ProviderConfig) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_millis(cfg.timeout_ms)))
            .build()
            .into();
        HttpProvider {
            endpoint: cfg.endpoint.clone().unwrap_or_default(),
            batch_size: cfg.batch_size.max(1),
            retries: cfg.retries,
            max_in_flight: cfg.max_in_flight.max(1),
            agent,
        }
    }

    fn request_once(&self, texts: &[String]) -> Result<HttpReply> {
        let transport = |e: ureq::Error| Error::Transport(format!("{}: {e}", self.endpoint));
        let mut response = self
            .agent
            .post(&self.endpoint)
            .send_json(HttpRequest { texts })
            .map_err(transport)?;
        if response.status() != 200 {
            return Err(Error::Transport(format!(
                "{}: status {}",
                self.endpoint,
                response.status()
            )));
        }
        response.body_mut().read_json().map_err(transport)
    }

    fn request(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>> {
        let mut attempt = 0;
        let reply = loop {
            match self.request_once(texts) {
                Ok(reply) => break reply,
                Err(e) if attempt >= self.retries => return Err(e),
                Err(_) => attempt += 1,
            }
        };
        if reply.embeddings.len() != texts.len() {
            return Err(Error::Transport(format!(
                "expected {} embeddings, got {}",
                texts.len(),
                reply.embeddings.len()
            )));
        }
        reply
            .embeddings
            .into_iter()
            .map(|values| {
                if values.len() != reply.dim {
                    return Err(Error::Transport(format!(
                        "declared dim {} but got a vector of {}",
                        reply.dim,
                        values.len()
                    )));
                }
                EmbeddingVector::new(values).map_err(|e| Error::Transport(e.to_string()))
            })
            .collect()
    }
}

impl EmbeddingProvider for HttpProvider {
    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>> {
        let batches: Vec<&[String]> = texts.chunks(self.batch_size).collect();
        let mut results: Vec<Option<Vec<EmbeddingVector>>> = vec![None; batches.len()];
        for (wave_idx, wave) in batches.chunks(self.max_in_flight).enumerate() {
            let replies: Vec<Result<Vec<EmbeddingVector>>> = std::thread::scope(|scope| {
                let handles: Vec<_> = wave
                    .iter()
                    .map(|batch| scope.spawn(move || self.request(batch)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("embedding request thread panicked"))
                    .collect()
            });
            for (k, reply) in replies.into_iter().enumerate() {
                results[wave_idx * self.max_in_flight + k] = Some(reply?);
            }
        }
        let vectors: Vec<EmbeddingVector> = results.into_iter().flatten().flatten().collect();
        if let Some(first) = vectors.first() {
            if let Some(bad) = vectors.iter().find(|v| v.dim() != first.dim()) {
                return Err(Error::Transport(format!(
                    "inconsistent dimensions across batches: {} vs {}",
                    first.dim(),
                    bad.dim()
                )));
            }
        }
        Ok(vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn mock_is_deterministic_and_normalized() {
        let out = embed_batch(&ProviderConfig::mock(), &strings(&["x", "x", "y"])).unwrap();
        assert_eq!(out[0], out[1]);
        assert_ne!(out[0], out[2]);
        for v in &out {
            assert_eq!(v.dim(), 32);
            assert!((v.norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn keyed_mock_shares_vectors() {
        let p = MockProvider::with_key_fn(16, |s| s.split('|').next().unwrap().to_string());
        let out = p.embed(&strings(&["k1|Shi", "k1|Și", "k2|Și"])).unwrap();
        assert_eq!(out[0], out[1]);
        assert_ne!(out[1], out[2]);
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn file_provider_returns_stored_vectors_in_query_order() {
        let data = concat!(
            r#"{"text":"una","vec":[1,0,0]}"#,
            "\n",
            r#"{"text":"doua","vec":[0,2,0]}"#,
            "\n",
            r#"{"text":"trei","vec":[0,0,3]}"#,
            "\n",
        );
        let p = FileProvider::parse(data.as_bytes()).unwrap();
        assert_eq!(p.len(), 3);
        let out = p.embed(&strings(&["trei", "una", "doua"])).unwrap();
        assert_eq!(out[0].as_slice(), &[0.0, 0.0, 1.0]);
        assert_eq!(out[1].as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(out[2].as_slice(), &[0.0, 1.0, 0.0]);
        match p.embed(&strings(&["patru"])) {
            Err(Error::MissingEmbedding(t)) => assert_eq!(t, "patru"),
            other => panic!("expected lookup error, got {other:?}"),
        }
    }

    #[test]
    fn file_provider_rejects_mixed_dims() {
        let data = "{\"text\":\"a\",\"vec\":[1,0]}\n{\"text\":\"b\",\"vec\":[1]}\n";
        assert!(matches!(
            FileProvider::parse(data.as_bytes()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(ProviderConfig::mock().validate().is_ok());
        let mut http = ProviderConfig::http("http://localhost:1");
        http.endpoint = None;
        assert!(http.validate().is_err());
        let mut mock = ProviderConfig::mock();
        mock.batch_size = 0;
        assert!(mock.validate().is_err());
        let cfg: ProviderConfig =
            serde_json::from_str(r#"{"kind":"http","endpoint":"http://x/embed","batch_size":8}"#)
                .unwrap();
        assert_eq!(cfg.batch_size, 8);
        assert_eq!(cfg.retries, 2);
    }
}
