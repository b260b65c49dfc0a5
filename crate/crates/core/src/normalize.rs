//! Matching-oriented text normalization.
//!
//! Entity surfaces and sentences are compared in a normal form that is
//! insensitive to full-width/half-width variants and Latin letter case while
//! leaving CJK ideographs untouched.

use unicode_normalization::UnicodeNormalization;

/// Normalizes an entity surface form or query string.
///
/// Applies compatibility decomposition (NFKC), which folds full-width ASCII
/// variants to their half-width forms, then lower-cases Latin letters and
/// strips surrounding whitespace. CJK ideographs pass through unchanged.
pub fn normalize_surface(s: &str) -> String {
    normalize_mapped(s.trim()).0
}

/// Normalizes `s` and returns, for every output char, the index of the
/// source char it came from.
///
/// Normalization is applied one scalar at a time so the mapping is total:
/// `map.len() == normalized.chars().count()` and `map` is non-decreasing.
pub fn normalize_mapped(s: &str) -> (String, Vec<usize>) {
    let mut out = String::with_capacity(s.len());
    let mut map = Vec::with_capacity(s.len());
    for (src_idx, c) in s.chars().enumerate() {
        for folded in std::iter::once(c).nfkc() {
            for lower in folded.to_lowercase() {
                out.push(lower);
                map.push(src_idx);
            }
        }
    }
    (out, map)
}
