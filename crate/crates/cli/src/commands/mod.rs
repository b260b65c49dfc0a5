pub mod align;
pub mod corrupt;
pub mod eval;
pub mod filter;
pub mod ketm;
pub mod mix;
pub mod stats;

use std::path::Path;

use fintext::segment::{TokenizeMode, Vocabulary};

use crate::error::CliError;

/// Character tokenization unless a vocabulary file is given.
pub(crate) fn tokenize_mode(vocab: Option<&Path>) -> Result<TokenizeMode, CliError> {
    match vocab {
        Some(path) => Ok(TokenizeMode::Vocab(Vocabulary::load(path)?)),
        None => Ok(TokenizeMode::Char),
    }
}
