//! Record types shared across the pipeline.
//!
//! Every on-disk artifact is a stream of one JSON object per line. Field
//! names and enum spellings below are part of the format contract; maps use
//! ordered keys so serializing the same record twice yields identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::normalize_surface;

/// Origin of a raw document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Announcement,
    Report,
    News,
    Social,
}

impl Source {
    pub const ALL: [Source; 4] = [
        Source::Announcement,
        Source::Report,
        Source::News,
        Source::Social,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Source::Announcement => "announcement",
            Source::Report => "report",
            Source::News => "news",
            Source::Social => "social",
        }
    }
}

/// One raw or cleaned document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub source: Source,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, String>>,
}

/// A (head, relation, tail) fact from the knowledge graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeTriple {
    pub head: String,
    pub relation: String,
    pub tail: String,
}

/// Why a triple is unusable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleInvalid {
    #[error("triple {0} is empty after normalization")]
    EmptyField(&'static str),
    #[error("triple head and tail normalize to the same surface {0:?}")]
    SelfLoop(String),
}

impl KnowledgeTriple {
    /// Checks the triple invariants: all three fields non-empty after
    /// normalization, and head distinct from tail after normalization.
    pub fn validate(&self) -> Result<(), TripleInvalid> {
        let head = normalize_surface(&self.head);
        let relation = normalize_surface(&self.relation);
        let tail = normalize_surface(&self.tail);
        if head.is_empty() {
            return Err(TripleInvalid::EmptyField("head"));
        }
        if relation.is_empty() {
            return Err(TripleInvalid::EmptyField("relation"));
        }
        if tail.is_empty() {
            return Err(TripleInvalid::EmptyField("tail"));
        }
        if head == tail {
            return Err(TripleInvalid::SelfLoop(head));
        }
        Ok(())
    }
}

/// Which masking recipe produced an example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExampleKind {
    SpanCorruption,
    Ketm,
}

/// One text-to-text training example.
///
/// `seed` records the per-record seed actually used, so any example can be
/// regenerated in isolation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskedExample {
    pub input: String,
    pub target: String,
    pub doc_id: String,
    pub kind: ExampleKind,
    pub seed: u64,
}

/// Leftmost occurrence of a triple's head and tail within one sentence.
///
/// Spans are `[start, end)` char offsets into the (normalized) sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleMatch {
    pub triple_id: u64,
    pub head_span: (usize, usize),
    pub tail_span: (usize, usize),
}

/// A sentence paired with every knowledge triple it evidences.
///
/// `sentence` holds the normalized sentence text, so slicing any recorded
/// span out of it yields exactly the normalized surface form it matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignedSentence {
    pub sentence: String,
    pub doc_id: String,
    pub sent_index: usize,
    pub triples: Vec<TripleMatch>,
}
