use std::path::PathBuf;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fintext::io::RecordReader;
use fintext::record::MaskedExample;

use crate::config::{merged, require, required_path, FileConfig};
use crate::error::CliError;
use crate::runner::{resolve_workers, AtomicWriter};

const CONFIG_KEYS: &[&str] = &["corrupt", "ketm", "ratio", "out", "seed", "workers"];

/// Interleave a span-corruption stream with a triple-masking stream.
///
/// Each output slot draws a seeded coin with `ratio` probability of taking
/// the next triple-masking record, otherwise the next corruption record; the
/// run stops when the chosen stream is exhausted.
#[derive(Args, Debug)]
pub struct MixArgs {
    /// Span-corruption examples (from the corrupt subcommand)
    #[arg(long, value_name = "PATH")]
    pub corrupt: Option<PathBuf>,
    /// Triple-masking examples (from the ketm subcommand)
    #[arg(long, value_name = "PATH")]
    pub ketm: Option<PathBuf>,
    /// Fraction of slots offered to the triple-masking stream, in [0, 1]
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Where to write the mixed stream
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for the interleaving coin
    #[arg(long)]
    pub seed: Option<u64>,
    /// Flat `key = value` config mirroring these flags
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Accepted for interface uniformity; interleaving is order-dependent
    /// and always runs on one thread
    #[arg(long)]
    pub workers: Option<usize>,
}

pub fn run(args: MixArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load_opt(args.config.as_deref(), CONFIG_KEYS)?;
    let corrupt_path = required_path(args.corrupt, &cfg, "corrupt")?;
    let ketm_path = required_path(args.ketm, &cfg, "ketm")?;
    let out = required_path(args.out, &cfg, "out")?;
    let ratio = require(merged(args.ratio, &cfg, "ratio")?, "ratio")?;
    let seed = require(merged(args.seed, &cfg, "seed")?, "seed")?;
    resolve_workers(args.workers, &cfg)?;
    if !(0.0..=1.0).contains(&ratio) {
        return Err(CliError::Validation(format!(
            "ratio must be inside [0, 1], got {ratio}"
        )));
    }

    let mut corrupt_stream = RecordReader::<MaskedExample>::open(&corrupt_path)?;
    let mut ketm_stream = RecordReader::<MaskedExample>::open(&ketm_path)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut writer = AtomicWriter::create(&out)?;
    let mut from_ketm = 0u64;
    let mut from_corrupt = 0u64;
    loop {
        let take_ketm = rng.random::<f64>() < ratio;
        let next = if take_ketm {
            ketm_stream.next()
        } else {
            corrupt_stream.next()
        };
        let Some(item) = next else { break };
        writer.write(&item?.value)?;
        if take_ketm {
            from_ketm += 1;
        } else {
            from_corrupt += 1;
        }
    }
    let written = writer.finish()?;
    eprintln!("mix: {written} examples ({from_ketm} triple-masking, {from_corrupt} corruption)");
    Ok(())
}
