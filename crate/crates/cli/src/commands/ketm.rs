use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;

use fintext::io::{read_all, RecordReader};
use fintext::ketm::{build_ketm_stream, KetmConfig};
use fintext::record::{AlignedSentence, KnowledgeTriple};

use crate::config::{merged, require, required_path, FileConfig};
use crate::error::CliError;
use crate::runner::{for_each_parallel, resolve_workers, AtomicWriter};

const CONFIG_KEYS: &[&str] = &[
    "aligned",
    "triples",
    "out",
    "seed",
    "workers",
    "element-sep",
    "sentence-mask-rate",
    "element-probs",
    "mean-span",
    "sentinel-format",
    "max-sentinels",
];

/// Generate triple-masking examples: each aligned (sentence, triple) pair
/// yields one example hiding a triple element plus sentence spans.
#[derive(Args, Debug)]
pub struct KetmArgs {
    /// Aligned sentences from the align subcommand
    #[arg(long, value_name = "PATH")]
    pub aligned: Option<PathBuf>,
    /// The same triple file the alignment was built from
    #[arg(long, value_name = "PATH")]
    pub triples: Option<PathBuf>,
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
    /// Separator between triple slots and sentence (default "[SEP]")
    #[arg(long)]
    pub element_sep: Option<String>,
    /// Mask rate for the sentence part (default 0.15)
    #[arg(long)]
    pub sentence_mask_rate: Option<f64>,
    /// head,relation,tail masking probabilities, e.g. "0.4,0.3,0.3"
    /// (default: uniform)
    #[arg(long)]
    pub element_probs: Option<String>,
    /// Mean masked-span length in the sentence part (default 3.0)
    #[arg(long)]
    pub mean_span: Option<f64>,
    /// Sentinel template with one `{i}` slot (default "<extra_id_{i}>")
    #[arg(long)]
    pub sentinel_format: Option<String>,
    /// Most sentinels one example may use (default 100)
    #[arg(long)]
    pub max_sentinels: Option<usize>,
}

fn parse_element_probs(raw: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Validation(format!(
            "element-probs needs three comma-separated numbers, got {raw:?}"
        )));
    }
    let mut probs = [0.0f64; 3];
    for (slot, part) in probs.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|e| {
            CliError::Validation(format!("element-probs: cannot parse {part:?}: {e}"))
        })?;
    }
    Ok(probs)
}

pub fn run(args: KetmArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load_opt(args.config.as_deref(), CONFIG_KEYS)?;
    let aligned_path = required_path(args.aligned, &cfg, "aligned")?;
    let triples_path = required_path(args.triples, &cfg, "triples")?;
    let out = required_path(args.out, &cfg, "out")?;
    let master = require(merged(args.seed, &cfg, "seed")?, "seed")?;
    let workers = resolve_workers(args.workers, &cfg)?;

    let mut kcfg = KetmConfig::default();
    if let Some(v) = merged(args.element_sep, &cfg, "element-sep")? {
        kcfg.element_sep = v;
    }
    if let Some(v) = merged(args.sentence_mask_rate, &cfg, "sentence-mask-rate")? {
        kcfg.sentence_mask_rate = v;
    }
    if let Some(raw) = merged::<String>(args.element_probs, &cfg, "element-probs")? {
        kcfg.element_probs = parse_element_probs(&raw)?;
    }
    if let Some(v) = merged(args.mean_span, &cfg, "mean-span")? {
        kcfg.corruption.mean_span_length = v;
    }
    if let Some(v) = merged(args.sentinel_format, &cfg, "sentinel-format")? {
        kcfg.corruption.sentinel_format = v;
    }
    if let Some(v) = merged(args.max_sentinels, &cfg, "max-sentinels")? {
        kcfg.corruption.max_sentinels = v;
    }
    kcfg.validate()?;

    // Triple ids are positions in the triple file, matching what align used.
    let triples: BTreeMap<u64, KnowledgeTriple> = read_all::<KnowledgeTriple>(&triples_path)?
        .into_iter()
        .enumerate()
        .map(|(i, t)| (i as u64, t))
        .collect();

    let aligned = RecordReader::<AlignedSentence>::open(&aligned_path)?
        .map(|r| r.map(|l| l.value).map_err(CliError::from));
    let mut writer = AtomicWriter::create(&out)?;
    let mut sentences = 0u64;
    for_each_parallel(
        workers,
        aligned,
        |al| build_ketm_stream([&al], &triples, &kcfg, master).map_err(CliError::from),
        |examples| {
            sentences += 1;
            for ex in &examples {
                writer.write(ex)?;
            }
            Ok(())
        },
    )?;
    let written = writer.finish()?;
    eprintln!("ketm: {written} examples from {sentences} aligned sentences");
    Ok(())
}
