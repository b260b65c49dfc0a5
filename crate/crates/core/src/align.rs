//! Distant supervision: align knowledge triples to the sentences that
//! mention them.
//!
//! A sentence evidences a triple when both the head and the tail entity
//! occur as substrings of the normalized sentence. All entity surfaces are
//! compiled into one multi-pattern automaton, so a sentence is scanned once
//! regardless of how many triples the graph holds.

use std::collections::{BTreeMap, HashMap};

use aho_corasick::AhoCorasick;
use thiserror::Error;

use crate::normalize::{normalize_mapped, normalize_surface};
use crate::record::{AlignedSentence, Document, KnowledgeTriple, TripleMatch};
use crate::segment::{split_sentences, Sentence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconConfig {
    /// Entity surfaces shorter than this many chars (after normalization)
    /// are left out of the lexicon.
    pub min_entity_chars: usize,
}

impl Default for LexiconConfig {
    fn default() -> Self {
        LexiconConfig {
            min_entity_chars: 2,
        }
    }
}

/// Which side of a triple a surface form plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Head,
    Tail,
}

#[derive(Debug, Error)]
pub enum AlignError {
    #[error("failed to build the entity automaton: {0}")]
    Automaton(#[from] aho_corasick::BuildError),
}

/// Entity surface forms indexed for one-pass sentence scanning.
///
/// Duplicate surfaces are merged: one pattern may carry many (triple, role)
/// entries. Triples whose head or tail fell below `min_entity_chars`, or
/// that fail [`KnowledgeTriple::validate`], are skipped and counted.
pub struct EntityLexicon {
    surfaces: Vec<String>,
    roles: Vec<Vec<(u64, Role)>>,
    automaton: AhoCorasick,
    entries: usize,
    skipped: u64,
}

impl EntityLexicon {
    /// Number of distinct normalized surface forms.
    pub fn len(&self) -> usize {
        self.surfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surfaces.is_empty()
    }

    /// Triples skipped for failing validation or the length floor.
    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    /// Total (triple, role) entries across all surfaces.
    pub fn entries(&self) -> usize {
        self.entries
    }

    /// The (triple id, role) list for a normalized surface form.
    pub fn roles_for(&self, surface: &str) -> &[(u64, Role)] {
        self.surfaces
            .iter()
            .position(|s| s == surface)
            .map(|i| self.roles[i].as_slice())
            .unwrap_or(&[])
    }
}

/// Compiles the lexicon from `(triple_id, triple)` pairs.
pub fn build_lexicon<I>(triples: I, cfg: &LexiconConfig) -> Result<EntityLexicon, AlignError>
where
    I: IntoIterator<Item = (u64, KnowledgeTriple)>,
{
    let mut index: BTreeMap<String, Vec<(u64, Role)>> = BTreeMap::new();
    let mut skipped = 0u64;
    for (id, triple) in triples {
        if triple.validate().is_err() {
            skipped += 1;
            continue;
        }
        let head = normalize_surface(&triple.head);
        let tail = normalize_surface(&triple.tail);
        if head.chars().count() < cfg.min_entity_chars
            || tail.chars().count() < cfg.min_entity_chars
        {
            skipped += 1;
            continue;
        }
        index.entry(head).or_default().push((id, Role::Head));
        index.entry(tail).or_default().push((id, Role::Tail));
    }
    let surfaces: Vec<String> = index.keys().cloned().collect();
    let roles: Vec<Vec<(u64, Role)>> = index.into_values().collect();
    let entries = roles.iter().map(Vec::len).sum();
    let automaton = AhoCorasick::new(&surfaces)?;
    Ok(EntityLexicon {
        surfaces,
        roles,
        automaton,
        entries,
        skipped,
    })
}

/// Aligns one sentence against the lexicon.
///
/// The returned sentence text is the normalized form, and spans are
/// `[start, end)` char offsets into it: slicing a span back out yields
/// exactly the normalized entity surface. For each matched triple the
/// leftmost occurrence of head and tail is recorded. `triples` is sorted by
/// triple id and may be empty.
pub fn align_sentence(lex: &EntityLexicon, sentence: &Sentence) -> AlignedSentence {
    let (norm, _) = normalize_mapped(&sentence.text);

    // Byte offset -> char offset, for converting automaton matches.
    let mut char_at_byte = vec![0usize; norm.len() + 1];
    for (char_idx, (byte_idx, _)) in norm.char_indices().enumerate() {
        char_at_byte[byte_idx] = char_idx;
    }
    char_at_byte[norm.len()] = norm.chars().count();

    // Leftmost occurrence of each pattern. Overlapping matches arrive in
    // increasing end position, so the first hit per pattern is leftmost.
    let mut first_hit: HashMap<usize, (usize, usize)> = HashMap::new();
    for m in lex.automaton.find_overlapping_iter(&norm) {
        first_hit
            .entry(m.pattern().as_usize())
            .or_insert_with(|| (char_at_byte[m.start()], char_at_byte[m.end()]));
    }

    // A triple matches when both of its sides were seen.
    type HalfSpans = (Option<(usize, usize)>, Option<(usize, usize)>);
    let mut halves: BTreeMap<u64, HalfSpans> = BTreeMap::new();
    for (pattern, span) in &first_hit {
        for (triple_id, role) in &lex.roles[*pattern] {
            let slot = halves.entry(*triple_id).or_insert((None, None));
            match role {
                Role::Head => slot.0 = Some(*span),
                Role::Tail => slot.1 = Some(*span),
            }
        }
    }
    let triples = halves
        .into_iter()
        .filter_map(|(triple_id, slot)| match slot {
            (Some(head_span), Some(tail_span)) => Some(TripleMatch {
                triple_id,
                head_span,
                tail_span,
            }),
            _ => None,
        })
        .collect();

    AlignedSentence {
        sentence: norm,
        doc_id: sentence.doc_id.clone(),
        sent_index: sentence.sent_index,
        triples,
    }
}

/// Splits a document and aligns each sentence, keeping only sentences that
/// matched at least one triple.
pub fn align_document(lex: &EntityLexicon, doc: &Document) -> Vec<AlignedSentence> {
    split_sentences(doc)
        .iter()
        .map(|s| align_sentence(lex, s))
        .filter(|al| !al.triples.is_empty())
        .collect()
}

/// Aligns a whole corpus in document order, then sentence order.
pub fn align_corpus<'a, I>(docs: I, lex: &EntityLexicon) -> Vec<AlignedSentence>
where
    I: IntoIterator<Item = &'a Document>,
{
    docs.into_iter()
        .flat_map(|d| align_document(lex, d))
        .collect()
}
