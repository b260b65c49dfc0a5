use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;

use fintext::corruption::{corrupt, CorruptionConfig};
use fintext::io::read_documents;
use fintext::record::MaskedExample;
use fintext::segment::{split_sentences, tokenize};
use fintext::{derive_seed, SeedKey};

use crate::commands::tokenize_mode;
use crate::config::{merged, require, required_path, FileConfig};
use crate::error::CliError;
use crate::runner::{for_each_parallel, resolve_workers, AtomicWriter};

const CONFIG_KEYS: &[&str] = &[
    "in",
    "out",
    "seed",
    "workers",
    "mask-rate",
    "mean-span",
    "sentinel-format",
    "max-sentinels",
    "unit",
    "vocab",
];

/// What one example covers: a single sentence or the whole document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorruptUnit {
    Sentence,
    Document,
}

impl FromStr for CorruptUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sentence" => Ok(CorruptUnit::Sentence),
            "document" => Ok(CorruptUnit::Document),
            other => Err(format!("expected `sentence` or `document`, got {other:?}")),
        }
    }
}

/// Generate span-corruption examples: contiguous token runs are replaced by
/// sentinels, the target lists the hidden spans.
#[derive(Args, Debug)]
pub struct CorruptArgs {
    /// Input documents (jsonl, .gz ok)
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Where to write masked examples
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Master seed; per-record seeds derive from it and the record identity
    #[arg(long)]
    pub seed: Option<u64>,
    /// Flat `key = value` config mirroring these flags
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Worker threads (default: FINTEXT_WORKERS, then all cores)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Fraction of tokens to mask (default 0.15)
    #[arg(long)]
    pub mask_rate: Option<f64>,
    /// Mean masked-span length in tokens (default 3.0)
    #[arg(long)]
    pub mean_span: Option<f64>,
    /// Sentinel template with one `{i}` slot (default "<extra_id_{i}>")
    #[arg(long)]
    pub sentinel_format: Option<String>,
    /// Most sentinels one example may use (default 100)
    #[arg(long)]
    pub max_sentinels: Option<usize>,
    /// Example granularity: sentence (default) or document
    #[arg(long)]
    pub unit: Option<CorruptUnit>,
    /// Vocabulary file for longest-match tokenization (default: per-char)
    #[arg(long, value_name = "PATH")]
    pub vocab: Option<PathBuf>,
}

pub fn run(args: CorruptArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load_opt(args.config.as_deref(), CONFIG_KEYS)?;
    let input = required_path(args.input, &cfg, "in")?;
    let out = required_path(args.out, &cfg, "out")?;
    let master = require(merged(args.seed, &cfg, "seed")?, "seed")?;
    let workers = resolve_workers(args.workers, &cfg)?;
    let unit = merged(args.unit, &cfg, "unit")?.unwrap_or(CorruptUnit::Sentence);
    let vocab = merged::<PathBuf>(args.vocab, &cfg, "vocab")?;
    let mode = tokenize_mode(vocab.as_deref())?;

    let mut ccfg = CorruptionConfig::default();
    if let Some(v) = merged(args.mask_rate, &cfg, "mask-rate")? {
        ccfg.mask_rate = v;
    }
    if let Some(v) = merged(args.mean_span, &cfg, "mean-span")? {
        ccfg.mean_span_length = v;
    }
    if let Some(v) = merged(args.sentinel_format, &cfg, "sentinel-format")? {
        ccfg.sentinel_format = v;
    }
    if let Some(v) = merged(args.max_sentinels, &cfg, "max-sentinels")? {
        ccfg.max_sentinels = v;
    }
    ccfg.validate()?;

    let docs = read_documents(&input)?.map(|r| r.map_err(CliError::from));
    let mut writer = AtomicWriter::create(&out)?;
    let mut docs_seen = 0u64;
    for_each_parallel(
        workers,
        docs,
        |doc| -> Result<Vec<MaskedExample>, CliError> {
            match unit {
                CorruptUnit::Sentence => split_sentences(&doc)
                    .iter()
                    .map(|s| {
                        let tok = tokenize(&s.text, &mode);
                        let seed = derive_seed(
                            master,
                            &[SeedKey::from(&doc.id), SeedKey::from(s.sent_index)],
                        );
                        corrupt(&tok, &ccfg, &doc.id, seed).map_err(CliError::from)
                    })
                    .collect(),
                CorruptUnit::Document => {
                    let tok = tokenize(&doc.text, &mode);
                    let seed = derive_seed(master, &[SeedKey::from(&doc.id)]);
                    Ok(vec![corrupt(&tok, &ccfg, &doc.id, seed)?])
                }
            }
        },
        |examples| {
            docs_seen += 1;
            for ex in &examples {
                writer.write(ex)?;
            }
            Ok(())
        },
    )?;
    let written = writer.finish()?;
    eprintln!("corrupt: {written} examples from {docs_seen} documents");
    Ok(())
}
