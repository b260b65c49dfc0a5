use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;

use fintext::io::read_documents;
use fintext::segment::{split_sentences, tokenize};

use crate::commands::tokenize_mode;
use crate::config::{merged, required_path, FileConfig};
use crate::error::CliError;
use crate::runner::{for_each_parallel, resolve_workers};

const CONFIG_KEYS: &[&str] = &["in", "vocab", "workers"];

/// Corpus statistics: source, sentence, and token histograms.
#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Input documents (jsonl, .gz ok)
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Flat `key = value` config mirroring these flags
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Vocabulary file for longest-match tokenization (default: per-char)
    #[arg(long, value_name = "PATH")]
    pub vocab: Option<PathBuf>,
    /// Worker threads (default: FINTEXT_WORKERS, then all cores)
    #[arg(long)]
    pub workers: Option<usize>,
}

const BUCKETS: [(usize, &str); 9] = [
    (0, "0"),
    (1, "1"),
    (2, "2"),
    (4, "3-4"),
    (9, "5-9"),
    (19, "10-19"),
    (49, "20-49"),
    (99, "50-99"),
    (usize::MAX, "100+"),
];

fn bucket(n: usize) -> usize {
    BUCKETS.iter().position(|(upper, _)| n <= *upper).unwrap()
}

struct DocStats {
    source: &'static str,
    chars: u64,
    sentence_tokens: Vec<usize>,
}

#[derive(Default)]
struct Totals {
    docs: u64,
    chars: u64,
    sentences: u64,
    tokens: u64,
    by_source: BTreeMap<&'static str, u64>,
    sentences_per_doc: [u64; BUCKETS.len()],
    tokens_per_sentence: [u64; BUCKETS.len()],
}

fn print_histogram(title: &str, counts: &[u64; BUCKETS.len()]) {
    println!("{title}");
    for ((_, label), count) in BUCKETS.iter().zip(counts) {
        if *count > 0 {
            println!("  {label:<7} {count}");
        }
    }
}

pub fn run(args: StatsArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load_opt(args.config.as_deref(), CONFIG_KEYS)?;
    let input = required_path(args.input, &cfg, "in")?;
    let workers = resolve_workers(args.workers, &cfg)?;
    let vocab = merged::<PathBuf>(args.vocab, &cfg, "vocab")?;
    let mode = tokenize_mode(vocab.as_deref())?;

    let docs = read_documents(&input)?.map(|r| r.map_err(CliError::from));
    let mut totals = Totals::default();
    for_each_parallel(
        workers,
        docs,
        |doc| {
            Ok(DocStats {
                source: doc.source.name(),
                chars: doc.text.chars().count() as u64,
                sentence_tokens: split_sentences(&doc)
                    .iter()
                    .map(|s| tokenize(&s.text, &mode).len())
                    .collect(),
            })
        },
        |stats: DocStats| {
            totals.docs += 1;
            totals.chars += stats.chars;
            *totals.by_source.entry(stats.source).or_insert(0) += 1;
            totals.sentences += stats.sentence_tokens.len() as u64;
            totals.sentences_per_doc[bucket(stats.sentence_tokens.len())] += 1;
            for tokens in stats.sentence_tokens {
                totals.tokens += tokens as u64;
                totals.tokens_per_sentence[bucket(tokens)] += 1;
            }
            Ok(())
        },
    )?;

    println!("documents  {}", totals.docs);
    println!("characters {}", totals.chars);
    println!("sentences  {}", totals.sentences);
    println!("tokens     {}", totals.tokens);
    println!("documents by source");
    for (source, count) in &totals.by_source {
        println!("  {source:<12} {count}");
    }
    print_histogram("sentences per document", &totals.sentences_per_doc);
    print_histogram("tokens per sentence", &totals.tokens_per_sentence);
    Ok(())
}
