//! Deterministic corpus pipeline for Chinese financial text-to-text
//! pre-training, plus the scoring side of a six-task evaluation benchmark.
//!
//! The pipeline stages, in order:
//!
//! 1. [`filter`]: rule-based cleaning of raw documents.
//! 2. [`segment`]: sentence splitting and tokenization.
//! 3. [`corruption`]: span-corruption examples (mask contiguous token spans,
//!    predict them back).
//! 4. [`align`]: distant supervision — find sentences that mention both the
//!    head and the tail of a knowledge triple.
//! 5. [`ketm`]: knowledge-enhanced examples that mask one triple element
//!    alongside a corrupted sentence.
//! 6. [`eval`]: metrics and leaderboard aggregation for the six benchmark
//!    tasks.
//!
//! Everything downstream of a master seed is reproducible record by record:
//! see [`seed::derive_seed`].

pub mod align;
pub mod corruption;
pub mod eval;
pub mod filter;
pub mod io;
pub mod ketm;
pub mod normalize;
pub mod record;
pub mod seed;
pub mod segment;

pub use record::{
    AlignedSentence, Document, ExampleKind, KnowledgeTriple, MaskedExample, Source, TripleMatch,
};
pub use seed::{derive_seed, SeedKey};
