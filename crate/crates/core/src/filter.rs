//! Rule-based corpus cleaning.
//!
//! Cleaning is line-oriented: short lines, lines without terminal
//! punctuation, and duplicate lines are dropped, whitespace runs collapse to
//! single spaces, and control characters are stripped. A document survives
//! only if what remains is long enough, ideograph-dense enough, and free of
//! blocklisted substrings. Cleaning is idempotent: re-cleaning an accepted
//! document changes nothing.

use std::collections::{BTreeMap, HashSet};
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::record::Document;

/// Line-final punctuation that marks a complete sentence or clause.
pub const TERMINAL_PUNCT: [char; 9] = ['。', '！', '？', '；', '…', '!', '?', ';', '.'];

#[derive(Debug, Clone, PartialEq)]
pub struct FilterConfig {
    /// Minimum surviving document length in chars.
    pub min_doc_chars: usize,
    /// Minimum line length in chars after whitespace collapse.
    pub min_line_chars: usize,
    /// Drop lines that do not end in one of [`TERMINAL_PUNCT`].
    pub require_terminal_punct: bool,
    /// Minimum fraction of CJK ideographs among non-whitespace chars.
    pub cjk_ratio_min: f64,
    /// Documents containing any of these substrings are rejected.
    pub blocklist: Vec<String>,
    /// Keep only the first occurrence of each exact line.
    pub dedup_lines: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            min_doc_chars: 50,
            min_line_chars: 5,
            require_terminal_punct: true,
            cjk_ratio_min: 0.30,
            blocklist: Vec::new(),
            dedup_lines: true,
        }
    }
}

impl FilterConfig {
    /// Loads a blocklist file: one banned substring per line, blanks skipped.
    pub fn load_blocklist(&mut self, path: &Path) -> std::io::Result<()> {
        let reader = std::io::BufReader::new(std::fs::File::open(path)?);
        for line in reader.lines() {
            let line = line?;
            if !line.is_empty() {
                self.blocklist.push(line);
            }
        }
        Ok(())
    }
}

/// Which rule rejected a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectRule {
    MinDocChars,
    CjkRatio,
    Blocklist,
}

impl RejectRule {
    pub fn name(self) -> &'static str {
        match self {
            RejectRule::MinDocChars => "min_doc_chars",
            RejectRule::CjkRatio => "cjk_ratio",
            RejectRule::Blocklist => "blocklist",
        }
    }
}

/// Result of cleaning one document.
#[derive(Debug, Clone, PartialEq)]
pub enum CleanOutcome {
    Kept {
        doc: Document,
        lines_dropped: u64,
    },
    Dropped {
        rule: RejectRule,
        lines_dropped: u64,
    },
}

/// Aggregate counts over a filtered stream.
///
/// Invariant: `docs_in == docs_out + docs_dropped_by_rule.values().sum()`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub docs_in: u64,
    pub docs_out: u64,
    pub docs_dropped_by_rule: BTreeMap<String, u64>,
    pub lines_dropped: u64,
}

impl FilterReport {
    pub fn record(&mut self, outcome: &CleanOutcome) {
        self.docs_in += 1;
        match outcome {
            CleanOutcome::Kept { lines_dropped, .. } => {
                self.docs_out += 1;
                self.lines_dropped += lines_dropped;
            }
            CleanOutcome::Dropped {
                rule,
                lines_dropped,
            } => {
                *self
                    .docs_dropped_by_rule
                    .entry(rule.name().to_string())
                    .or_insert(0) += 1;
                self.lines_dropped += lines_dropped;
            }
        }
    }

    pub fn merge(&mut self, other: &FilterReport) {
        self.docs_in += other.docs_in;
        self.docs_out += other.docs_out;
        self.lines_dropped += other.lines_dropped;
        for (rule, n) in &other.docs_dropped_by_rule {
            *self.docs_dropped_by_rule.entry(rule.clone()).or_insert(0) += n;
        }
    }

    pub fn dropped_total(&self) -> u64 {
        self.docs_dropped_by_rule.values().sum()
    }

    /// True when the in/out/dropped accounting balances.
    pub fn balanced(&self) -> bool {
        self.docs_in == self.docs_out + self.dropped_total()
    }
}

/// True for chars in the CJK Unified Ideographs blocks (base block plus
/// extensions A through G).
pub fn is_cjk_ideograph(c: char) -> bool {
    matches!(
        c as u32,
        0x4E00..=0x9FFF | 0x3400..=0x4DBF | 0x20000..=0x2A6DF | 0x2A700..=0x2EBEF | 0x30000..=0x3134A
    )
}

/// Fraction of CJK ideographs among non-whitespace chars; 0 for empty text.
pub fn cjk_ratio(text: &str) -> f64 {
    let mut cjk = 0usize;
    let mut total = 0usize;
    for c in text.chars() {
        if c.is_whitespace() {
            continue;
        }
        total += 1;
        if is_cjk_ideograph(c) {
            cjk += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        cjk as f64 / total as f64
    }
}

/// Collapses whitespace runs to single spaces, strips control characters,
/// and trims. Operates on a single line (no `\n` expected).
fn clean_line(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.chars() {
        if c.is_whitespace() {
            pending_space = true;
        } else if c.is_control() {
            // Non-whitespace control characters vanish without leaving a gap.
        } else {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        }
    }
    out
}

/// Cleans one document, returning the kept document or the rejecting rule.
///
/// Rejection rules are checked in a fixed order (`min_doc_chars`,
/// `cjk_ratio`, `blocklist`), so per-rule counts are deterministic.
pub fn clean_document(doc: &Document, cfg: &FilterConfig) -> CleanOutcome {
    let mut kept: Vec<String> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut lines_dropped = 0u64;

    for raw in doc.text.split('\n') {
        let line = clean_line(raw);
        if line.chars().count() < cfg.min_line_chars {
            lines_dropped += 1;
            continue;
        }
        if cfg.require_terminal_punct && !line.ends_with(TERMINAL_PUNCT) {
            lines_dropped += 1;
            continue;
        }
        if cfg.dedup_lines {
            if seen.contains(&line) {
                lines_dropped += 1;
                continue;
            }
            seen.insert(line.clone());
        }
        kept.push(line);
    }

    let text = kept.join("\n");
    if text.chars().count() < cfg.min_doc_chars {
        return CleanOutcome::Dropped {
            rule: RejectRule::MinDocChars,
            lines_dropped,
        };
    }
    if cjk_ratio(&text) < cfg.cjk_ratio_min {
        return CleanOutcome::Dropped {
            rule: RejectRule::CjkRatio,
            lines_dropped,
        };
    }
    if cfg.blocklist.iter().any(|b| text.contains(b.as_str())) {
        return CleanOutcome::Dropped {
            rule: RejectRule::Blocklist,
            lines_dropped,
        };
    }
    CleanOutcome::Kept {
        doc: Document {
            text,
            ..doc.clone()
        },
        lines_dropped,
    }
}

/// Filters a document stream, preserving input order among kept documents.
pub fn filter_stream<I>(docs: I, cfg: &FilterConfig) -> (Vec<Document>, FilterReport)
where
    I: IntoIterator<Item = Document>,
{
    let mut report = FilterReport::default();
    let mut out = Vec::new();
    for doc in docs {
        let outcome = clean_document(&doc, cfg);
        report.record(&outcome);
        if let CleanOutcome::Kept { doc, .. } = outcome {
            out.push(doc);
        }
    }
    (out, report)
}
