//! Sentence splitting and tokenization.
//!
//! Offsets are char-based (Unicode scalar values), never bytes. A sentence
//! slices back out of its parent document at `char_offset`; a token slices
//! back out of its sentence via `offsets`.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::Path;

use thiserror::Error;

use crate::record::Document;

/// Characters that end a sentence. A newline also ends one.
pub const SENTENCE_ENDERS: [char; 6] = ['。', '！', '？', '!', '?', '…'];

/// One sentence, positioned within its parent document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub text: String,
    pub doc_id: String,
    pub sent_index: usize,
    /// Char offset of `text` within the parent document's text.
    pub char_offset: usize,
}

/// Splits a document into sentences after any of [`SENTENCE_ENDERS`] or a
/// newline. Surrounding whitespace is trimmed off each sentence, empty
/// pieces are dropped, and a trailing fragment without a terminator is kept.
pub fn split_sentences(doc: &Document) -> Vec<Sentence> {
    let chars: Vec<char> = doc.text.chars().collect();
    let mut sentences = Vec::new();
    let mut piece_start = 0usize;
    let push = |start: usize, end: usize, sentences: &mut Vec<Sentence>| {
        let mut s = start;
        let mut e = end;
        while s < e && chars[s].is_whitespace() {
            s += 1;
        }
        while e > s && chars[e - 1].is_whitespace() {
            e -= 1;
        }
        if s < e {
            sentences.push(Sentence {
                text: chars[s..e].iter().collect(),
                doc_id: doc.id.clone(),
                sent_index: sentences.len(),
                char_offset: s,
            });
        }
    };
    for (i, c) in chars.iter().enumerate() {
        if SENTENCE_ENDERS.contains(c) || *c == '\n' {
            push(piece_start, i + 1, &mut sentences);
            piece_start = i + 1;
        }
    }
    push(piece_start, chars.len(), &mut sentences);
    sentences
}

/// A tokenized sentence. Tokens never contain whitespace; whitespace between
/// tokens survives in the gaps between `offsets`, and `text` keeps the
/// original sentence so the exact surface can always be rebuilt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSeq {
    pub text: String,
    pub tokens: Vec<String>,
    /// `[start, end)` char ranges of each token within `text`.
    pub offsets: Vec<(usize, usize)>,
}

impl TokenSeq {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum VocabError {
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: duplicate vocabulary entry {token:?}")]
    Duplicate { line: u64, token: String },
}

#[derive(Debug, Clone, Default)]
struct TrieNode {
    children: BTreeMap<char, usize>,
    terminal: bool,
}

/// Fixed vocabulary for greedy longest-match tokenization.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    nodes: Vec<TrieNode>,
}

impl Vocabulary {
    pub fn new<I, S>(tokens: I) -> Result<Self, VocabError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut vocab = Vocabulary {
            nodes: vec![TrieNode::default()],
        };
        for (idx, token) in tokens.into_iter().enumerate() {
            vocab.insert(token.as_ref()).map_err(|token| VocabError::Duplicate {
                line: idx as u64 + 1,
                token,
            })?;
        }
        Ok(vocab)
    }

    /// Loads one token per line, skipping blank lines.
    pub fn load(path: &Path) -> Result<Self, VocabError> {
        let wrap = |source| VocabError::Io {
            path: path.to_path_buf(),
            source,
        };
        let reader = std::io::BufReader::new(std::fs::File::open(path).map_err(wrap)?);
        let mut vocab = Vocabulary {
            nodes: vec![TrieNode::default()],
        };
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(wrap)?;
            if line.is_empty() {
                continue;
            }
            vocab.insert(&line).map_err(|token| VocabError::Duplicate {
                line: idx as u64 + 1,
                token,
            })?;
        }
        Ok(vocab)
    }

    fn insert(&mut self, token: &str) -> Result<(), String> {
        let mut node = 0usize;
        for c in token.chars() {
            node = match self.nodes[node].children.get(&c) {
                Some(&next) => next,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[node].children.insert(c, next);
                    next
                }
            };
        }
        if self.nodes[node].terminal {
            return Err(token.to_string());
        }
        self.nodes[node].terminal = true;
        Ok(())
    }

    /// Length in chars of the longest vocabulary entry starting at
    /// `chars[start]`, if any.
    fn longest_match(&self, chars: &[char], start: usize) -> Option<usize> {
        let mut node = 0usize;
        let mut best = None;
        for (depth, c) in chars[start..].iter().enumerate() {
            match self.nodes[node].children.get(c) {
                Some(&next) => node = next,
                None => break,
            }
            if self.nodes[node].terminal {
                best = Some(depth + 1);
            }
        }
        best
    }
}

/// How to break sentences into tokens.
#[derive(Debug, Clone)]
pub enum TokenizeMode {
    /// One token per non-whitespace Unicode scalar.
    Char,
    /// Greedy longest match against a vocabulary, falling back to single
    /// chars where nothing matches.
    Vocab(Vocabulary),
}

/// Tokenizes `text`. Whitespace never lands inside a token in either mode.
pub fn tokenize(text: &str, mode: &TokenizeMode) -> TokenSeq {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut offsets = Vec::new();
    match mode {
        TokenizeMode::Char => {
            for (i, c) in chars.iter().enumerate() {
                if !c.is_whitespace() {
                    tokens.push(c.to_string());
                    offsets.push((i, i + 1));
                }
            }
        }
        TokenizeMode::Vocab(vocab) => {
            let mut i = 0usize;
            while i < chars.len() {
                if let Some(len) = vocab.longest_match(&chars, i) {
                    tokens.push(chars[i..i + len].iter().collect());
                    offsets.push((i, i + len));
                    i += len;
                } else if chars[i].is_whitespace() {
                    i += 1;
                } else {
                    tokens.push(chars[i].to_string());
                    offsets.push((i, i + 1));
                    i += 1;
                }
            }
        }
    }
    TokenSeq {
        text: text.to_string(),
        tokens,
        offsets,
    }
}
