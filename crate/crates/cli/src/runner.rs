//! Worker-count-independent parallel execution and crash-safe output files.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use tempfile::NamedTempFile;

use fintext::io::{is_gz, RecordWriter};

use crate::config::FileConfig;
use crate::error::CliError;

/// Environment variable supplying the default worker count.
pub const WORKERS_ENV: &str = "FINTEXT_WORKERS";

/// Records handed to the pool per batch. Large enough to amortize dispatch,
/// small enough to keep memory flat on huge corpora.
const CHUNK: usize = 4096;

/// Worker count by precedence: `--workers` flag, config key, `FINTEXT_WORKERS`,
/// then the machine's available parallelism.
pub fn resolve_workers(flag: Option<usize>, cfg: &FileConfig) -> Result<usize, CliError> {
    let workers = match flag {
        Some(w) => w,
        None => match cfg.get::<usize>("workers")? {
            Some(w) => w,
            None => match std::env::var(WORKERS_ENV) {
                Ok(raw) => raw.trim().parse().map_err(|_| {
                    CliError::Validation(format!(
                        "{WORKERS_ENV} must be a positive integer, got {raw:?}"
                    ))
                })?,
                Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            },
        },
    };
    if workers == 0 {
        return Err(CliError::Validation(
            "worker count must be at least 1".to_string(),
        ));
    }
    Ok(workers)
}

/// Maps `items` through `map` on `workers` threads and feeds the results to
/// `sink` in input order. Output is byte-identical for any worker count:
/// items are processed in fixed chunks whose results are collected in order
/// before the sequential sink runs.
pub fn for_each_parallel<In, Out, I, F, S>(
    workers: usize,
    items: I,
    map: F,
    mut sink: S,
) -> Result<(), CliError>
where
    In: Send,
    Out: Send,
    I: Iterator<Item = Result<In, CliError>>,
    F: Fn(In) -> Result<Out, CliError> + Sync,
    S: FnMut(Out) -> Result<(), CliError>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start {workers} workers: {e}")))?;
    let mut items = items;
    loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        for item in items.by_ref().take(CHUNK) {
            chunk.push(item?);
        }
        if chunk.is_empty() {
            return Ok(());
        }
        let outs: Vec<Out> =
            pool.install(|| chunk.into_par_iter().map(&map).collect::<Result<_, _>>())?;
        for out in outs {
            sink(out)?;
        }
    }
}

/// Line-record writer that lands on `dest` only when complete: records go to
/// a temp file in the destination directory, renamed over `dest` by
/// `finish`. A killed run leaves at most a stray temp file, never a partial
/// output, and a rerun produces the identical final file.
pub struct AtomicWriter {
    writer: RecordWriter,
    tmp: NamedTempFile,
    dest: PathBuf,
}

impl AtomicWriter {
    pub fn create(dest: &Path) -> Result<Self, CliError> {
        let dir = match dest.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let tmp = NamedTempFile::new_in(dir).map_err(|e| {
            CliError::Io(format!(
                "cannot create temp file next to {}: {e}",
                dest.display()
            ))
        })?;
        let file = tmp
            .as_file()
            .try_clone()
            .map_err(|e| CliError::Io(format!("cannot reopen temp file: {e}")))?;
        Ok(AtomicWriter {
            writer: RecordWriter::from_writer(Box::new(file), is_gz(dest)),
            tmp,
            dest: dest.to_path_buf(),
        })
    }

    pub fn write<T: Serialize>(&mut self, record: &T) -> Result<(), CliError> {
        self.writer.write(record).map_err(CliError::from)
    }

    /// Flushes and renames onto the destination; returns records written.
    pub fn finish(self) -> Result<u64, CliError> {
        let AtomicWriter { writer, tmp, dest } = self;
        let written = writer.finish()?;
        tmp.persist(&dest)
            .map_err(|e| CliError::Io(format!("cannot finalize {}: {}", dest.display(), e.error)))?;
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect_with_workers(workers: usize) -> Vec<u32> {
        let items = (0u32..10_000).map(Ok);
        let mut out = Vec::new();
        for_each_parallel(workers, items, |x| Ok(x * 2), |y| {
            out.push(y);
            Ok(())
        })
        .unwrap();
        out
    }

    #[test]
    fn output_order_is_input_order_for_any_worker_count() {
        let baseline = collect_with_workers(1);
        assert_eq!(baseline.len(), 10_000);
        assert!(baseline.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(collect_with_workers(4), baseline);
        assert_eq!(collect_with_workers(16), baseline);
    }

    #[test]
    fn map_errors_stop_the_run() {
        let items = (0u32..100).map(Ok);
        let err = for_each_parallel(
            2,
            items,
            |x| {
                if x == 57 {
                    Err(CliError::Validation("bad item".to_string()))
                } else {
                    Ok(x)
                }
            },
            |_| Ok(()),
        )
        .unwrap_err();
        assert!(err.to_string().contains("bad item"));
    }

    #[test]
    fn read_errors_surface_before_mapping() {
        let items = vec![Ok(1u32), Err(CliError::Io("disk gone".to_string()))].into_iter();
        let err = for_each_parallel(2, items, Ok, |_| Ok(())).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn zero_workers_is_rejected_and_flag_wins() {
        assert!(resolve_workers(Some(0), &FileConfig::empty()).is_err());
        assert_eq!(resolve_workers(Some(3), &FileConfig::empty()).unwrap(), 3);
    }

    #[test]
    fn atomic_writer_leaves_no_partial_file() {
        let dir = tempfile::tempdir().unwrap();
        let dest = dir.path().join("out.jsonl");
        let mut w = AtomicWriter::create(&dest).unwrap();
        w.write(&serde_json::json!({"a": 1})).unwrap();
        assert!(!dest.exists(), "dest must not exist before finish");
        assert_eq!(w.finish().unwrap(), 1);
        let text = std::fs::read_to_string(&dest).unwrap();
        assert_eq!(text, "{\"a\":1}\n");
    }

    #[test]
    fn atomic_writer_handles_gz_and_bare_names() {
        let dir = tempfile::tempdir().unwrap();
        let dest = dir.path().join("out.jsonl.gz");
        let mut w = AtomicWriter::create(&dest).unwrap();
        w.write(&serde_json::json!({"a": 1})).unwrap();
        w.finish().unwrap();
        let raw = std::fs::read(&dest).unwrap();
        assert_eq!(&raw[..2], &[0x1f, 0x8b], "gzip magic");

        // A destination with no parent directory component.
        let cwd = std::env::current_dir().unwrap();
        std::env::set_current_dir(dir.path()).unwrap();
        let w = AtomicWriter::create(Path::new("bare.jsonl")).unwrap();
        w.finish().unwrap();
        let ok = Path::new("bare.jsonl").exists();
        std::env::set_current_dir(cwd).unwrap();
        assert!(ok);
    }
}
