//! Line-delimited record I/O.
//!
//! One JSON object per line, UTF-8, `\n` terminated. Paths ending in `.gz`
//! are transparently (de)compressed. Read errors carry the 1-based line
//! number and the byte offset of the offending line.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::marker::PhantomData;
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::record::Document;

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("{path}: {source}")]
    Open {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {source}")]
    Io {
        line: u64,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse {
        line: u64,
        byte_offset: u64,
        message: String,
    },
    #[error("line {line}{}: invalid UTF-8", doc_label(.doc_id))]
    InvalidUtf8 {
        line: u64,
        byte_offset: u64,
        doc_id: Option<String>,
    },
    #[error("line {line}: document id must be non-empty")]
    EmptyDocId { line: u64 },
    #[error("line {line}: document {id:?} text contains a NUL character")]
    NulInText { line: u64, id: String },
    #[error("line {line}: duplicate document id {id:?}")]
    DuplicateDocId { line: u64, id: String },
}

fn doc_label(id: &Option<String>) -> String {
    match id {
        Some(id) => format!(" (document {id:?})"),
        None => String::new(),
    }
}

#[derive(Debug, Error)]
pub enum WriteError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("failed to serialize record: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Whether `path` names a gzip-compressed file by its extension.
pub fn is_gz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

/// Opens `path` for buffered reading, decompressing when it ends in `.gz`.
pub fn open_text(path: &Path) -> Result<Box<dyn BufRead + Send>, ReadError> {
    let file = File::open(path).map_err(|source| ReadError::Open {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(if is_gz(path) {
        Box::new(BufReader::new(GzDecoder::new(BufReader::new(file))))
    } else {
        Box::new(BufReader::new(file))
    })
}

enum Sink {
    Plain(BufWriter<Box<dyn Write + Send>>),
    Gz(GzEncoder<BufWriter<Box<dyn Write + Send>>>),
}

/// Serializes records one JSON object per line.
pub struct RecordWriter {
    sink: Sink,
    written: u64,
    path: PathBuf,
}

impl RecordWriter {
    /// Writes lines to `w`, gzip-compressing when `gz` is set.
    pub fn from_writer(w: Box<dyn Write + Send>, gz: bool) -> Self {
        let buf = BufWriter::new(w);
        let sink = if gz {
            Sink::Gz(GzEncoder::new(buf, Compression::default()))
        } else {
            Sink::Plain(buf)
        };
        RecordWriter {
            sink,
            written: 0,
            path: PathBuf::from("<writer>"),
        }
    }

    /// Creates `path`, inferring compression from the file name.
    pub fn create(path: &Path) -> Result<Self, WriteError> {
        let file = File::create(path).map_err(|source| WriteError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut w = Self::from_writer(Box::new(file), is_gz(path));
        w.path = path.to_path_buf();
        Ok(w)
    }

    pub fn write<T: Serialize>(&mut self, record: &T) -> Result<(), WriteError> {
        let line = serde_json::to_string(record)?;
        self.write_line(&line)
    }

    /// Writes one pre-serialized line (without trailing newline).
    pub fn write_line(&mut self, line: &str) -> Result<(), WriteError> {
        let w: &mut dyn Write = match &mut self.sink {
            Sink::Plain(b) => b,
            Sink::Gz(g) => g,
        };
        let wrap = |source| WriteError::Io {
            path: self.path.clone(),
            source,
        };
        w.write_all(line.as_bytes()).map_err(wrap)?;
        w.write_all(b"\n").map_err(wrap)?;
        self.written += 1;
        Ok(())
    }

    pub fn written(&self) -> u64 {
        self.written
    }

    /// Flushes all buffers and finalizes compression. Must be called; errors
    /// on drop are silent otherwise.
    pub fn finish(self) -> Result<u64, WriteError> {
        let wrap = |source| WriteError::Io {
            path: self.path.clone(),
            source,
        };
        match self.sink {
            Sink::Plain(mut b) => b.flush().map_err(wrap)?,
            Sink::Gz(g) => {
                g.finish().map_err(wrap)?.flush().map_err(wrap)?;
            }
        }
        Ok(self.written)
    }
}

/// Writes every record in `records` to `path` and returns how many.
pub fn write_records<T, I>(path: &Path, records: I) -> Result<u64, WriteError>
where
    T: Serialize,
    I: IntoIterator<Item = T>,
{
    let mut w = RecordWriter::create(path)?;
    for record in records {
        w.write(&record)?;
    }
    w.finish()
}

/// One parsed line with its position in the stream.
#[derive(Debug, Clone)]
pub struct Located<T> {
    pub line: u64,
    pub byte_offset: u64,
    pub value: T,
}

/// Streams `T` records out of a line-delimited file. Blank lines are skipped.
pub struct RecordReader<T> {
    reader: Box<dyn BufRead + Send>,
    line: u64,
    byte_offset: u64,
    buf: Vec<u8>,
    _marker: PhantomData<fn() -> T>,
}

impl<T: DeserializeOwned> RecordReader<T> {
    pub fn open(path: &Path) -> Result<Self, ReadError> {
        Ok(Self::from_reader(open_text(path)?))
    }

    pub fn from_reader(reader: Box<dyn BufRead + Send>) -> Self {
        RecordReader {
            reader,
            line: 0,
            byte_offset: 0,
            buf: Vec::new(),
            _marker: PhantomData,
        }
    }
}

/// Parses one line of record text, reporting `line` in any error.
pub fn parse_record_line<T: DeserializeOwned>(line: u64, text: &str) -> Result<T, ReadError> {
    serde_json::from_str(text).map_err(|e| ReadError::Parse {
        line,
        byte_offset: 0,
        message: trim_position(&e.to_string()),
    })
}

/// Drops serde_json's trailing " at line N column M" locator; the stream
/// line number we report is the useful coordinate.
fn trim_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(idx) => message[..idx].to_string(),
        None => message.to_string(),
    }
}

impl<T: DeserializeOwned> Iterator for RecordReader<T> {
    type Item = Result<Located<T>, ReadError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            let start = self.byte_offset;
            let n = match self.reader.read_until(b'\n', &mut self.buf) {
                Ok(n) => n,
                Err(source) => {
                    return Some(Err(ReadError::Io {
                        line: self.line + 1,
                        source,
                    }))
                }
            };
            if n == 0 {
                return None;
            }
            self.line += 1;
            self.byte_offset += n as u64;
            let mut slice = &self.buf[..];
            if slice.ends_with(b"\n") {
                slice = &slice[..slice.len() - 1];
            }
            if slice.ends_with(b"\r") {
                slice = &slice[..slice.len() - 1];
            }
            if slice.is_empty() {
                continue;
            }
            let text = match std::str::from_utf8(slice) {
                Ok(t) => t,
                Err(_) => {
                    let lossy = String::from_utf8_lossy(slice);
                    let doc_id = serde_json::from_str::<serde_json::Value>(&lossy)
                        .ok()
                        .and_then(|v| v.get("id").and_then(|i| i.as_str()).map(String::from));
                    return Some(Err(ReadError::InvalidUtf8 {
                        line: self.line,
                        byte_offset: start,
                        doc_id,
                    }));
                }
            };
            return Some(match serde_json::from_str::<T>(text) {
                Ok(value) => Ok(Located {
                    line: self.line,
                    byte_offset: start,
                    value,
                }),
                Err(e) => Err(ReadError::Parse {
                    line: self.line,
                    byte_offset: start,
                    message: trim_position(&e.to_string()),
                }),
            });
        }
    }
}

/// Checks the per-document invariants `RecordReader` cannot see: non-empty
/// id, no NUL in text, id unique within the stream.
#[derive(Debug, Default)]
pub struct DocumentValidator {
    seen: HashSet<String>,
}

impl DocumentValidator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, line: u64, doc: &Document) -> Result<(), ReadError> {
        if doc.id.is_empty() {
            return Err(ReadError::EmptyDocId { line });
        }
        if doc.text.contains('\0') {
            return Err(ReadError::NulInText {
                line,
                id: doc.id.clone(),
            });
        }
        if !self.seen.insert(doc.id.clone()) {
            return Err(ReadError::DuplicateDocId {
                line,
                id: doc.id.clone(),
            });
        }
        Ok(())
    }
}

/// Streams validated documents from `path`.
pub fn read_documents(
    path: &Path,
) -> Result<impl Iterator<Item = Result<Document, ReadError>>, ReadError> {
    let reader: RecordReader<Document> = RecordReader::open(path)?;
    let mut validator = DocumentValidator::new();
    Ok(reader.map(move |item| {
        let located = item?;
        validator.check(located.line, &located.value)?;
        Ok(located.value)
    }))
}

/// Reads a whole record file into memory.
pub fn read_all<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, ReadError> {
    let reader: RecordReader<T> = RecordReader::open(path)?;
    reader.map(|item| item.map(|l| l.value)).collect()
}
