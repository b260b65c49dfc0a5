use std::path::PathBuf;

use clap::Args;

use fintext::filter::{clean_document, CleanOutcome, FilterConfig, FilterReport};
use fintext::io::read_documents;

use crate::config::{merged, required_path, FileConfig};
use crate::error::CliError;
use crate::runner::{for_each_parallel, resolve_workers, AtomicWriter};

const CONFIG_KEYS: &[&str] = &[
    "in",
    "out",
    "report",
    "workers",
    "min-doc-chars",
    "min-line-chars",
    "cjk-ratio-min",
    "blocklist",
    "require-terminal-punct",
    "dedup-lines",
];

/// Clean raw documents with line- and document-level quality rules.
#[derive(Args, Debug)]
pub struct FilterArgs {
    /// Input documents, one JSON object per line (.gz ok)
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Where to write kept documents (.gz compresses)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Flat `key = value` config mirroring these flags
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Worker threads (default: FINTEXT_WORKERS, then all cores)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Minimum document length in chars after cleaning (default 50)
    #[arg(long)]
    pub min_doc_chars: Option<usize>,
    /// Minimum line length in chars (default 5)
    #[arg(long)]
    pub min_line_chars: Option<usize>,
    /// Minimum CJK fraction of non-whitespace chars (default 0.3)
    #[arg(long)]
    pub cjk_ratio_min: Option<f64>,
    /// File with one banned substring per line
    #[arg(long, value_name = "PATH")]
    pub blocklist: Option<PathBuf>,
    /// Drop lines lacking terminal punctuation (default true)
    #[arg(long, value_name = "BOOL")]
    pub require_terminal_punct: Option<bool>,
    /// Keep only the first occurrence of repeated lines (default true)
    #[arg(long, value_name = "BOOL")]
    pub dedup_lines: Option<bool>,
    /// Where to write the JSON drop-count report
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

pub fn run(args: FilterArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load_opt(args.config.as_deref(), CONFIG_KEYS)?;
    let input = required_path(args.input, &cfg, "in")?;
    let out = required_path(args.out, &cfg, "out")?;
    let report_path = merged(args.report, &cfg, "report")?;
    let workers = resolve_workers(args.workers, &cfg)?;

    let mut fcfg = FilterConfig::default();
    if let Some(v) = merged(args.min_doc_chars, &cfg, "min-doc-chars")? {
        fcfg.min_doc_chars = v;
    }
    if let Some(v) = merged(args.min_line_chars, &cfg, "min-line-chars")? {
        fcfg.min_line_chars = v;
    }
    if let Some(v) = merged(args.cjk_ratio_min, &cfg, "cjk-ratio-min")? {
        fcfg.cjk_ratio_min = v;
    }
    if let Some(v) = merged(args.require_terminal_punct, &cfg, "require-terminal-punct")? {
        fcfg.require_terminal_punct = v;
    }
    if let Some(v) = merged(args.dedup_lines, &cfg, "dedup-lines")? {
        fcfg.dedup_lines = v;
    }
    if let Some(path) = merged::<PathBuf>(args.blocklist, &cfg, "blocklist")? {
        fcfg.load_blocklist(&path).map_err(|e| {
            CliError::Io(format!("cannot read blocklist {}: {e}", path.display()))
        })?;
    }

    let docs = read_documents(&input)?.map(|r| r.map_err(CliError::from));
    let mut writer = AtomicWriter::create(&out)?;
    let mut report = FilterReport::default();
    for_each_parallel(
        workers,
        docs,
        |doc| Ok(clean_document(&doc, &fcfg)),
        |outcome| {
            report.record(&outcome);
            if let CleanOutcome::Kept { doc, .. } = outcome {
                writer.write(&doc)?;
            }
            Ok(())
        },
    )?;
    writer.finish()?;

    let by_rule: Vec<String> = report
        .docs_dropped_by_rule
        .iter()
        .map(|(rule, n)| format!("{rule} {n}"))
        .collect();
    eprintln!(
        "filter: {} documents in, {} kept, {} dropped ({}), {} lines dropped",
        report.docs_in,
        report.docs_out,
        report.dropped_total(),
        if by_rule.is_empty() {
            "-".to_string()
        } else {
            by_rule.join(", ")
        },
        report.lines_dropped
    );
    if let Some(path) = report_path {
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Io(format!("cannot encode report: {e}")))?;
        std::fs::write(&path, json + "\n")
            .map_err(|e| CliError::Io(format!("cannot write report {}: {e}", path.display())))?;
    }
    Ok(())
}
