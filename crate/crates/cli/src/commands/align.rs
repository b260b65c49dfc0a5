use std::path::PathBuf;

use clap::Args;

use fintext::align::{align_document, build_lexicon, LexiconConfig};
use fintext::io::{read_all, read_documents};
use fintext::record::KnowledgeTriple;

use crate::config::{merged, required_path, FileConfig};
use crate::error::CliError;
use crate::runner::{for_each_parallel, resolve_workers, AtomicWriter};

const CONFIG_KEYS: &[&str] = &["docs", "triples", "out", "workers", "min-entity-chars"];

/// Match knowledge-graph triples to the sentences that mention both
/// entities.
#[derive(Args, Debug)]
pub struct AlignArgs {
    /// Documents to scan (jsonl, .gz ok)
    #[arg(long, value_name = "PATH")]
    pub docs: Option<PathBuf>,
    /// Knowledge triples, one {"head","relation","tail"} per line
    #[arg(long, value_name = "PATH")]
    pub triples: Option<PathBuf>,
    /// Where to write aligned sentences
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Flat `key = value` config mirroring these flags
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Worker threads (default: FINTEXT_WORKERS, then all cores)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Skip entity surfaces shorter than this many chars (default 2)
    #[arg(long)]
    pub min_entity_chars: Option<usize>,
}

pub fn run(args: AlignArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load_opt(args.config.as_deref(), CONFIG_KEYS)?;
    let docs_path = required_path(args.docs, &cfg, "docs")?;
    let triples_path = required_path(args.triples, &cfg, "triples")?;
    let out = required_path(args.out, &cfg, "out")?;
    let workers = resolve_workers(args.workers, &cfg)?;
    let mut lcfg = LexiconConfig::default();
    if let Some(v) = merged(args.min_entity_chars, &cfg, "min-entity-chars")? {
        lcfg.min_entity_chars = v;
    }

    let triples: Vec<KnowledgeTriple> = read_all(&triples_path)?;
    let triple_count = triples.len();
    let lexicon = build_lexicon(
        triples.into_iter().enumerate().map(|(i, t)| (i as u64, t)),
        &lcfg,
    )?;
    eprintln!(
        "align: lexicon holds {} surfaces from {} triples ({} skipped)",
        lexicon.len(),
        triple_count,
        lexicon.skipped()
    );

    let docs = read_documents(&docs_path)?.map(|r| r.map_err(CliError::from));
    let mut writer = AtomicWriter::create(&out)?;
    let mut docs_seen = 0u64;
    for_each_parallel(
        workers,
        docs,
        |doc| Ok(align_document(&lexicon, &doc)),
        |aligned| {
            docs_seen += 1;
            for sentence in &aligned {
                writer.write(sentence)?;
            }
            Ok(())
        },
    )?;
    let written = writer.finish()?;
    eprintln!("align: {written} aligned sentences from {docs_seen} documents");
    Ok(())
}
