//! Knowledge-enhanced triple masking.
//!
//! Each example concatenates a triple with an aligned sentence:
//!
//! ```text
//! head [SEP] relation [SEP] tail [SEP] sentence
//! ```
//!
//! Exactly one triple element is hidden behind sentinel 0, and the sentence
//! is span-corrupted with sentinels starting at index 1. The target lists
//! sentinel 0 with the hidden element, then the sentence spans, then the
//! terminator.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corruption::{corrupt_with, CorruptionConfig, CorruptionError};
use crate::record::{AlignedSentence, ExampleKind, KnowledgeTriple, MaskedExample};
use crate::seed::{derive_seed, SeedKey};
use crate::segment::{tokenize, TokenizeMode};

#[derive(Debug, Clone, PartialEq)]
pub struct KetmConfig {
    /// Separator rendered between the triple slots and the sentence.
    pub element_sep: String,
    /// Mask rate applied to the sentence part (overrides
    /// `corruption.mask_rate` for the sentence).
    pub sentence_mask_rate: f64,
    /// Probability of masking head, relation, tail respectively; sums to 1.
    pub element_probs: [f64; 3],
    pub corruption: CorruptionConfig,
}

impl Default for KetmConfig {
    fn default() -> Self {
        KetmConfig {
            element_sep: "[SEP]".to_string(),
            sentence_mask_rate: 0.15,
            element_probs: [1.0 / 3.0; 3],
            corruption: CorruptionConfig::default(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum KetmError {
    #[error("element_probs must be non-negative and sum to 1, got {0:?}")]
    ElementProbs([f64; 3]),
    #[error("sentence_mask_rate must be inside (0, 1), got {0}")]
    SentenceMaskRate(f64),
    #[error("element_sep must be non-empty")]
    EmptySep,
    #[error(transparent)]
    Corruption(#[from] CorruptionError),
    #[error("triple {triple_id} is not aligned to this sentence")]
    TripleNotAligned { triple_id: u64 },
    #[error("aligned sentence references unknown triple id {triple_id}")]
    UnknownTriple { triple_id: u64 },
}

impl KetmConfig {
    pub fn validate(&self) -> Result<(), KetmError> {
        if self.element_sep.is_empty() {
            return Err(KetmError::EmptySep);
        }
        if !(self.sentence_mask_rate > 0.0 && self.sentence_mask_rate < 1.0) {
            return Err(KetmError::SentenceMaskRate(self.sentence_mask_rate));
        }
        let sum: f64 = self.element_probs.iter().sum();
        if self.element_probs.iter().any(|p| *p < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(KetmError::ElementProbs(self.element_probs));
        }
        self.corruption.validate()?;
        Ok(())
    }

    /// The corruption settings actually applied to the sentence part.
    fn sentence_corruption(&self) -> CorruptionConfig {
        CorruptionConfig {
            mask_rate: self.sentence_mask_rate,
            ..self.corruption.clone()
        }
    }
}

/// Which slot of the triple gets hidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleElement {
    Head,
    Relation,
    Tail,
}

fn pick_element(probs: &[f64; 3], rng: &mut impl Rng) -> TripleElement {
    let x: f64 = rng.random();
    if x < probs[0] {
        TripleElement::Head
    } else if x < probs[0] + probs[1] {
        TripleElement::Relation
    } else {
        TripleElement::Tail
    }
}

/// Builds one knowledge-masking example, deterministic in `seed`.
///
/// `triple_id` must be one of `al.triples`. The sentence part is tokenized
/// character-wise; the triple slots use the knowledge-graph surface forms
/// verbatim.
pub fn build_ketm_example(
    al: &AlignedSentence,
    triple_id: u64,
    triple: &KnowledgeTriple,
    cfg: &KetmConfig,
    seed: u64,
) -> Result<MaskedExample, KetmError> {
    if !al.triples.iter().any(|tm| tm.triple_id == triple_id) {
        return Err(KetmError::TripleNotAligned { triple_id });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let element = pick_element(&cfg.element_probs, &mut rng);

    let ccfg = cfg.sentence_corruption();
    let tok = tokenize(&al.sentence, &TokenizeMode::Char);
    let corrupted = corrupt_with(&tok, &ccfg, &mut rng, 1)?;

    let sentinel0 = ccfg.sentinel(0);
    let (head, relation, tail) = match element {
        TripleElement::Head => (sentinel0.as_str(), triple.relation.as_str(), triple.tail.as_str()),
        TripleElement::Relation => (triple.head.as_str(), sentinel0.as_str(), triple.tail.as_str()),
        TripleElement::Tail => (triple.head.as_str(), triple.relation.as_str(), sentinel0.as_str()),
    };
    let hidden = match element {
        TripleElement::Head => &triple.head,
        TripleElement::Relation => &triple.relation,
        TripleElement::Tail => &triple.tail,
    };

    let sep = &cfg.element_sep;
    let input = format!(
        "{head} {sep} {relation} {sep} {tail} {sep} {}",
        corrupted.input
    );
    let target = format!("{sentinel0} {hidden} {}", corrupted.target);

    Ok(MaskedExample {
        input,
        target,
        doc_id: al.doc_id.clone(),
        kind: ExampleKind::Ketm,
        seed,
    })
}

/// Builds one example per (aligned sentence, matched triple) pair.
///
/// The per-record seed is `derive_seed(master_seed, [doc_id, sent_index,
/// triple_id])`, so output is independent of worker layout. Order follows
/// the aligned stream, then the recorded triple order within each sentence.
pub fn build_ketm_stream<'a, I>(
    aligned: I,
    triples: &BTreeMap<u64, KnowledgeTriple>,
    cfg: &KetmConfig,
    master_seed: u64,
) -> Result<Vec<MaskedExample>, KetmError>
where
    I: IntoIterator<Item = &'a AlignedSentence>,
{
    let mut out = Vec::new();
    for al in aligned {
        for tm in &al.triples {
            let triple = triples
                .get(&tm.triple_id)
                .ok_or(KetmError::UnknownTriple {
                    triple_id: tm.triple_id,
                })?;
            let seed = derive_seed(
                master_seed,
                &[
                    SeedKey::Str(&al.doc_id),
                    SeedKey::Int(al.sent_index as u64),
                    SeedKey::Int(tm.triple_id),
                ],
            );
            out.push(build_ketm_example(al, tm.triple_id, triple, cfg, seed)?);
        }
    }
    Ok(out)
}
