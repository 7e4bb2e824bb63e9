mod config;

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rupkit::align::{
    align_document_batch, match_documents, pair_verse_tables, split_sentences, AlignmentReport,
};
use rupkit::corpus::{
    format_corpus, read_corpus, DocumentPair, SentencePair, SourceManifest, Split,
};
use rupkit::metrics::{bleu, chrf, fertility, BleuConfig, ChrfConfig, SubwordVocab};
use rupkit::orthography::{
    convert_to_diaro, evaluate_converter, normalize_to_cunia, train_ortho_model, MappingTable,
    OrthoModel, MODEL_FORMAT_VERSION,
};
use rupkit::split::{stratified_split, SplitPlan};
use rupkit::stats::corpus_stats;
use serde_json::json;

use config::{FileConfig, PipelineConfig};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Transport(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Transport(_) => 3,
        }
    }

    fn report(&self) -> serde_json::Value {
        let (kind, msg) = match self {
            Failure::Usage(m) => ("usage", m),
            Failure::Data(m) => ("data", m),
            Failure::Transport(m) => ("transport", m),
        };
        json!({"error": kind, "message": msg})
    }
}

impl From<rupkit::Error> for Failure {
    fn from(e: rupkit::Error) -> Self {
        if e.is_transport() {
            Failure::Transport(e.to_string())
        } else {
            Failure::Data(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

#[derive(Parser)]
#[command(
    name = "rupkit",
    about = "Aromanian corpus toolkit",
    arg_required_else_help = true
)]
struct Cli {
    /// TOML file with shared settings; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for batch work (output does not depend on it)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Standard {
    Cunia,
    Diaro,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Rup,
    Ron,
    Eng,
}

#[derive(Subcommand)]
enum Command {
    /// Align the sentences of Aromanian (--src) and Romanian (--tgt) documents
    Align {
        /// Source documents; repeat together with --tgt for a batch
        #[arg(long, required = true)]
        src: Vec<PathBuf>,
        #[arg(long, required = true)]
        tgt: Vec<PathBuf>,
        /// Provider config file, or `mock`
        #[arg(long)]
        provider: Option<String>,
        #[arg(long)]
        min_sim: Option<f64>,
        #[arg(long)]
        penalty: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pair two lists of titles (one per line) by embedding similarity
    MatchDocs {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        #[arg(long)]
        provider: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pair verses with the same id from two `id<TAB>text` files
    PairVerses {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value = "Bible")]
        source: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert text between Cunia and DIARO spelling
    Convert {
        #[arg(long, value_enum)]
        to: Standard,
        /// Trained model, needed for --to diaro
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train a Cunia → DIARO model on DIARO-spelled text
    TrainOrtho {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a model on held-out DIARO text
    EvalOrtho {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        held_out: PathBuf,
    },
    /// Corpus chrF (chrF++ with --word-order 2)
    Chrf {
        #[arg(long)]
        hyp: PathBuf,
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long, default_value_t = 0)]
        word_order: usize,
    },
    /// Corpus BLEU
    Bleu {
        #[arg(long)]
        hyp: PathBuf,
        #[arg(long = "ref")]
        reference: PathBuf,
    },
    /// Average WordPiece tokens per word
    Fertility {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Word, type and sentence-length statistics of one corpus field
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "rup")]
        field: Field,
        /// Treat each record as one sentence (`false` splits records first)
        #[arg(long, action = ArgAction::Set, default_value_t = true)]
        per_sentence: bool,
    },
    /// Assign train/dev/test per source
    Split {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        ratio: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) => {
            File::open(p)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?;
        }
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn read_lines(path: &Path) -> Result<Vec<String>, Failure> {
    Ok(read_text(Some(path))?.lines().map(String::from).collect())
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn report(value: serde_json::Value) {
    eprintln!("{value}");
}

fn need<T>(value: Option<T>, what: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing {what}")))
}

fn load_model(flag: Option<PathBuf>, cfg: &PipelineConfig) -> Result<OrthoModel, Failure> {
    let path = need(flag.or_else(|| cfg.ortho_model_path.clone()), "--model")?;
    Ok(OrthoModel::load(path)?)
}

/// A document file: every non-empty line is split into sentences.
fn read_document(path: &Path, cfg: &PipelineConfig) -> Result<Vec<String>, Failure> {
    Ok(read_text(Some(path))?
        .lines()
        .flat_map(|l| split_sentences(l, &cfg.splitter))
        .collect())
}

fn doc_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run(cli: Cli) -> Outcome {
    let mut cfg = PipelineConfig::new(FileConfig::load(cli.config.as_deref())?, cli.jobs)?;
    // metric shards use the global pool; ignore a second initialisation
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build_global();
    match cli.command {
        Command::Align {
            src,
            tgt,
            provider,
            min_sim,
            penalty,
            out,
        } => {
            if src.len() != tgt.len() {
                return Err(Failure::Usage(
                    "--src and --tgt must be given equally often".into(),
                ));
            }
            if let Some(p) = provider {
                cfg.provider = Some(config::provider(&p)?);
            }
            cfg.align.min_sim = min_sim.unwrap_or(cfg.align.min_sim);
            cfg.align.match_penalty = penalty.unwrap_or(cfg.align.match_penalty);
            cfg.align
                .validate()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let provider = need(cfg.provider.as_ref(), "--provider")?.build()?;
            let docs = src
                .iter()
                .zip(&tgt)
                .map(|(s, t)| {
                    DocumentPair::new(
                        doc_id(s),
                        read_document(s, &cfg)?,
                        doc_id(t),
                        read_document(t, &cfg)?,
                    )
                    .map_err(Failure::from)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let aligned = align_document_batch(&docs, &cfg.align, provider.as_ref(), cfg.jobs)?;
            let mut rep = AlignmentReport::default();
            let mut pairs = Vec::new();
            for a in &aligned {
                rep.add(a);
                pairs.extend(a.pairs.iter().cloned());
            }
            format_corpus(&pairs, output(out.as_deref())?)?;
            report(json!({"command": "align", "report": rep}));
        }
        Command::MatchDocs {
            a,
            b,
            threshold,
            provider,
            out,
        } => {
            if let Some(p) = provider {
                cfg.provider = Some(config::provider(&p)?);
            }
            let provider = need(cfg.provider.as_ref(), "--provider")?.build()?;
            let (ta, tb) = (read_lines(&a)?, read_lines(&b)?);
            let pairs = match_documents(&ta, &tb, threshold, provider.as_ref())?;
            let mut w = output(out.as_deref())?;
            for &(i, j) in &pairs {
                writeln!(
                    w,
                    "{}",
                    json!({"a": i, "b": j, "title_a": ta[i], "title_b": tb[j]})
                )?;
            }
            w.flush()?;
            report(json!({
                "command": "match-docs",
                "matched": pairs.len(),
                "unmatched_a": ta.len() - pairs.len(),
                "unmatched_b": tb.len() - pairs.len(),
            }));
        }
        Command::PairVerses { a, b, source, out } => {
            let table = |p: &Path| -> Result<Vec<(String, String)>, Failure> {
                read_lines(p)?
                    .into_iter()
                    .enumerate()
                    .filter(|(_, l)| !l.trim().is_empty())
                    .map(|(k, l)| {
                        l.split_once('\t')
                            .map(|(id, t)| (id.to_string(), t.to_string()))
                            .ok_or_else(|| {
                                Failure::Data(format!("{}: line {}: no tab", p.display(), k + 1))
                            })
                    })
                    .collect()
            };
            let (pairs, rep) = pair_verse_tables(&table(&a)?, &table(&b)?, &cfg.splitter, &source);
            format_corpus(&pairs, output(out.as_deref())?)?;
            report(json!({"command": "pair-verses", "report": rep}));
        }
        Command::Convert {
            to,
            model,
            input,
            out,
        } => {
            let text = read_text(input.as_deref())?;
            let converted = match to {
                Standard::Cunia => normalize_to_cunia(&text, &MappingTable::default()),
                Standard::Diaro => convert_to_diaro(&text, &load_model(model, &cfg)?),
            };
            let mut w = output(out.as_deref())?;
            w.write_all(converted.as_bytes())?;
            w.flush()?;
        }
        Command::TrainOrtho { input, out } => {
            let lines = read_lines(&input)?;
            let model = train_ortho_model(&lines, &MappingTable::default())?;
            model.save(&out)?;
            report(json!({
                "command": "train-ortho",
                "words": model.word_dict.len(),
                "contexts": model.fourgram.len(),
                "version": model.version,
            }));
        }
        Command::EvalOrtho { model, held_out } => {
            let model = load_model(model, &cfg)?;
            let acc = evaluate_converter(&read_lines(&held_out)?, &model)?;
            println!(
                "{}",
                json!({"sites": acc.sites, "correct": acc.correct, "accuracy": acc.accuracy()})
            );
        }
        Command::Chrf {
            hyp,
            reference,
            word_order,
        } => {
            let c = ChrfConfig {
                word_order,
                ..ChrfConfig::default()
            };
            let score = chrf(&read_lines(&hyp)?, &read_lines(&reference)?, &c)?;
            let name = if word_order > 0 { "chrF2++" } else { "chrF2" };
            println!(
                "{}",
                json!({"name": name, "score": score, "signature": c.signature()})
            );
        }
        Command::Bleu { hyp, reference } => {
            let c = BleuConfig::default();
            let score = bleu(&read_lines(&hyp)?, &read_lines(&reference)?, &c)?;
            println!(
                "{}",
                json!({"name": "BLEU", "score": score, "signature": c.signature()})
            );
        }
        Command::Fertility { vocab, input } => {
            let vocab = SubwordVocab::load(vocab)?;
            let f = fertility(&read_lines(&input)?, &vocab)?;
            println!("{}", json!({"fertility": f}));
        }
        Command::Stats {
            input,
            field,
            per_sentence,
        } => {
            let corpus = read_corpus(&input)?;
            let texts: Vec<&str> = corpus
                .iter()
                .filter_map(|p| match field {
                    Field::Rup => Some(p.rup.as_str()),
                    Field::Ron => Some(p.ron.as_str()),
                    Field::Eng => p.eng.as_deref(),
                })
                .collect();
            let stats = corpus_stats(&texts, per_sentence)?;
            println!(
                "{}",
                serde_json::to_string(&stats).expect("stats serialize")
            );
        }
        Command::Split {
            input,
            manifest,
            ratio,
            seed,
            out,
        } => {
            let manifest_path = need(manifest.or(cfg.manifest.clone()), "--manifest")?;
            let manifest = SourceManifest::read(manifest_path)?;
            let plan = SplitPlan::new(
                manifest,
                ratio.unwrap_or(cfg.ratio),
                seed.unwrap_or(cfg.seed),
            )
            .map_err(|e| Failure::Usage(e.to_string()))?;
            let corpus: Vec<SentencePair> = read_corpus(&input)?;
            let split = stratified_split(&corpus, &plan)?;
            format_corpus(&split, output(out.as_deref())?)?;
            let count = |s| split.iter().filter(|p| p.split == Some(s)).count();
            report(json!({
                "command": "split",
                "train": count(Split::Train),
                "dev": count(Split::Dev),
                "test": count(Split::Test),
            }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let version = format!(
        "{} (ortho model format {MODEL_FORMAT_VERSION})",
        rupkit::VERSION
    );
    let command = Cli::command().version(&*version.leak());
    let cli = match command
        .try_get_matches()
        .and_then(|m| Cli::from_arg_matches(&m))
    {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            report(f.report());
            ExitCode::from(f.code())
        }
    }
}
