//! Span corruption: mask contiguous token spans, predict them back.
//!
//! The input side replaces each masked span with a sentinel token; the
//! target side lists each sentinel followed by the span it hid, closed by a
//! terminator sentinel. [`reconstruct`] inverts the transform and doubles as
//! the test oracle: splicing the target back into the input must recover the
//! original sentence exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::record::{ExampleKind, MaskedExample};
use crate::segment::TokenSeq;

#[derive(Debug, Clone, PartialEq)]
pub struct CorruptionConfig {
    /// Fraction of tokens to mask, in (0, 1).
    pub mask_rate: f64,
    /// Average tokens per masked span, >= 1.
    pub mean_span_length: f64,
    /// Sentinel template; `{i}` is replaced by the sentinel index.
    pub sentinel_format: String,
    /// Most sentinels (masked spans) allowed per example.
    pub max_sentinels: usize,
}

impl Default for CorruptionConfig {
    fn default() -> Self {
        CorruptionConfig {
            mask_rate: 0.15,
            mean_span_length: 3.0,
            sentinel_format: "<extra_id_{i}>".to_string(),
            max_sentinels: 100,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CorruptionError {
    #[error("mask_rate must be inside (0, 1), got {0}")]
    MaskRate(f64),
    #[error("mean_span_length must be at least 1, got {0}")]
    MeanSpanLength(f64),
    #[error("sentinel_format must contain the placeholder {{i}} exactly once, got {0:?}")]
    SentinelFormat(String),
    #[error("max_sentinels must be at least 1")]
    MaxSentinels,
    #[error("{spans} masked spans exceed max_sentinels {max}; pre-split long inputs")]
    TooManySpans { spans: usize, max: usize },
}

impl CorruptionConfig {
    pub fn validate(&self) -> Result<(), CorruptionError> {
        if !(self.mask_rate > 0.0 && self.mask_rate < 1.0) {
            return Err(CorruptionError::MaskRate(self.mask_rate));
        }
        if self.mean_span_length < 1.0 || self.mean_span_length.is_nan() {
            return Err(CorruptionError::MeanSpanLength(self.mean_span_length));
        }
        if self.sentinel_format.matches("{i}").count() != 1 {
            return Err(CorruptionError::SentinelFormat(self.sentinel_format.clone()));
        }
        if self.max_sentinels == 0 {
            return Err(CorruptionError::MaxSentinels);
        }
        Ok(())
    }

    /// Renders the sentinel with index `i`.
    pub fn sentinel(&self, i: usize) -> String {
        self.sentinel_format.replace("{i}", &i.to_string())
    }
}

/// Round-half-up for non-negative quantities.
fn round_count(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Uniform composition of `total` into `parts` positive integers.
fn sample_positive_parts(total: usize, parts: usize, rng: &mut impl Rng) -> Vec<usize> {
    debug_assert!(parts >= 1 && parts <= total);
    if parts == 1 {
        return vec![total];
    }
    // Cut points: parts-1 distinct positions out of total-1 interior gaps.
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, total - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut lengths = Vec::with_capacity(parts);
    let mut prev = 0usize;
    for cut in cuts {
        lengths.push(cut - prev);
        prev = cut;
    }
    lengths.push(total - prev);
    lengths
}

/// Uniform composition of `total` into `parts` non-negative integers.
fn sample_nonneg_parts(total: usize, parts: usize, rng: &mut impl Rng) -> Vec<usize> {
    debug_assert!(parts >= 1);
    if parts == 1 {
        return vec![total];
    }
    // Stars and bars: parts-1 distinct bar positions among total+parts-1 slots.
    let slots = total + parts - 1;
    let mut bars: Vec<usize> = rand::seq::index::sample(rng, slots, parts - 1)
        .into_iter()
        .collect();
    bars.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0usize;
    for bar in bars {
        out.push(bar - prev);
        prev = bar + 1;
    }
    out.push(slots - prev);
    debug_assert_eq!(out.iter().sum::<usize>(), total);
    out
}

/// Samples masked token spans for a sentence of `n_tokens` tokens.
///
/// Exactly `round(mask_rate * n_tokens)` tokens end up covered, split into
/// `max(1, round(covered / mean_span_length))` spans (clamped so that spans
/// stay non-adjacent), placed uniformly with at least one unmasked token
/// between consecutive spans. Returns `[start, end)` token ranges sorted
/// ascending; empty when the rounded coverage is zero.
pub fn sample_spans(
    n_tokens: usize,
    cfg: &CorruptionConfig,
    rng: &mut impl Rng,
) -> Vec<(usize, usize)> {
    let covered = round_count(cfg.mask_rate * n_tokens as f64).min(n_tokens);
    if covered == 0 {
        return Vec::new();
    }
    let unmasked = n_tokens - covered;
    let wanted = round_count(covered as f64 / cfg.mean_span_length).max(1);
    let spans = wanted.min(covered).min(unmasked + 1);

    let lengths = sample_positive_parts(covered, spans, rng);
    // Interior gaps owe one guaranteed separator token each.
    let spare = unmasked - (spans - 1);
    let gaps = sample_nonneg_parts(spare, spans + 1, rng);

    let mut out = Vec::with_capacity(spans);
    let mut pos = gaps[0];
    for (i, len) in lengths.iter().enumerate() {
        let start = pos;
        let end = start + len;
        out.push((start, end));
        pos = end + gaps[i + 1] + if i + 1 < spans { 1 } else { 0 };
    }
    debug_assert_eq!(pos, n_tokens);
    out
}

/// Byte positions of each char boundary in `text` (length = chars + 1).
fn char_boundaries(text: &str) -> Vec<usize> {
    let mut bounds: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
    bounds.push(text.len());
    bounds
}

/// Renders an input/target pair for explicit token spans.
///
/// In the input, each span's char range (first token start to last token
/// end) is replaced by one sentinel. The target is the space-joined sequence
/// `sentinel(base) span0 sentinel(base+1) span1 ... sentinel(base+k)`, where
/// each span contributes its original surface slice.
pub fn render_spans(
    tok: &TokenSeq,
    spans: &[(usize, usize)],
    cfg: &CorruptionConfig,
    base: usize,
) -> Result<(String, String), CorruptionError> {
    if spans.len() > cfg.max_sentinels {
        return Err(CorruptionError::TooManySpans {
            spans: spans.len(),
            max: cfg.max_sentinels,
        });
    }
    let bounds = char_boundaries(&tok.text);
    let n_chars = bounds.len() - 1;
    let slice = |cs: usize, ce: usize| &tok.text[bounds[cs]..bounds[ce]];

    let mut input = String::with_capacity(tok.text.len());
    let mut target_parts: Vec<String> = Vec::with_capacity(2 * spans.len() + 1);
    let mut cursor = 0usize; // char position in tok.text
    for (i, (s, e)) in spans.iter().enumerate() {
        let span_start = tok.offsets[*s].0;
        let span_end = tok.offsets[*e - 1].1;
        input.push_str(slice(cursor, span_start));
        input.push_str(&cfg.sentinel(base + i));
        cursor = span_end;
        target_parts.push(cfg.sentinel(base + i));
        target_parts.push(slice(span_start, span_end).to_string());
    }
    input.push_str(slice(cursor, n_chars));
    target_parts.push(cfg.sentinel(base + spans.len()));
    Ok((input, target_parts.join(" ")))
}

/// Output of one corruption pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corrupted {
    pub input: String,
    pub target: String,
    pub spans: usize,
}

/// Samples spans from `rng` and renders them with sentinel indices starting
/// at `base`.
pub fn corrupt_with(
    tok: &TokenSeq,
    cfg: &CorruptionConfig,
    rng: &mut impl Rng,
    base: usize,
) -> Result<Corrupted, CorruptionError> {
    let spans = sample_spans(tok.len(), cfg, rng);
    let (input, target) = render_spans(tok, &spans, cfg, base)?;
    Ok(Corrupted {
        input,
        target,
        spans: spans.len(),
    })
}

/// Builds one span-corruption training example, deterministic in `seed`.
pub fn corrupt(
    tok: &TokenSeq,
    cfg: &CorruptionConfig,
    doc_id: &str,
    seed: u64,
) -> Result<MaskedExample, CorruptionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = corrupt_with(tok, cfg, &mut rng, 0)?;
    Ok(MaskedExample {
        input: out.input,
        target: out.target,
        doc_id: doc_id.to_string(),
        kind: ExampleKind::SpanCorruption,
        seed,
    })
}

#[derive(Debug, Error, PartialEq)]
pub enum ReconstructError {
    #[error("sentinel {0:?} appears more than once in the input")]
    DuplicateInputSentinel(String),
    #[error("sentinel {0:?} out of ascending order in the input")]
    InputOrder(String),
    #[error("target is missing sentinel {0:?} present in the input")]
    MissingTargetSentinel(String),
    #[error("target sentinel {0:?} out of order")]
    TargetOrder(String),
    #[error("malformed target around sentinel {0:?}")]
    MalformedTarget(String),
    #[error("unexpected content after the terminator sentinel")]
    TrailingContent,
    #[error("target does not start with its first sentinel")]
    LeadingContent,
}

/// Inverts a corruption pair whose sentinel indices start at `base`,
/// returning the original sentence text.
pub fn reconstruct_from(
    input: &str,
    target: &str,
    cfg: &CorruptionConfig,
    base: usize,
) -> Result<String, ReconstructError> {
    // Locate the ascending sentinel chain in the input.
    let mut marks: Vec<(usize, usize)> = Vec::new();
    loop {
        let s = cfg.sentinel(base + marks.len());
        let mut occurrences = input.match_indices(&s);
        match occurrences.next() {
            None => break,
            Some((pos, _)) => {
                if occurrences.next().is_some() {
                    return Err(ReconstructError::DuplicateInputSentinel(s));
                }
                if let Some(&(_, prev_end)) = marks.last() {
                    if pos < prev_end {
                        return Err(ReconstructError::InputOrder(s));
                    }
                }
                marks.push((pos, pos + s.len()));
            }
        }
    }
    let k = marks.len();

    // Parse the target: sentinel(base) content ... sentinel(base+k).
    let first = cfg.sentinel(base);
    if k == 0 {
        if target != first {
            return Err(ReconstructError::MalformedTarget(first));
        }
        return Ok(input.to_string());
    }
    if !target.starts_with(&first) {
        return Err(ReconstructError::LeadingContent);
    }
    let mut contents: Vec<&str> = Vec::with_capacity(k);
    let mut cursor = first.len();
    for j in 1..=k {
        let s = cfg.sentinel(base + j);
        let rel = target[cursor..]
            .find(&s)
            .ok_or_else(|| ReconstructError::MissingTargetSentinel(s.clone()))?;
        let raw = &target[cursor..cursor + rel];
        let inner = raw
            .strip_prefix(' ')
            .and_then(|r| r.strip_suffix(' '))
            .ok_or_else(|| ReconstructError::MalformedTarget(cfg.sentinel(base + j - 1)))?;
        contents.push(inner);
        cursor += rel + s.len();
    }
    if cursor != target.len() {
        return Err(ReconstructError::TrailingContent);
    }

    // Splice each hidden span back over its sentinel.
    let mut out = String::with_capacity(input.len() + target.len());
    let mut pos = 0usize;
    for ((start, end), content) in marks.iter().zip(&contents) {
        out.push_str(&input[pos..*start]);
        out.push_str(content);
        pos = *end;
    }
    out.push_str(&input[pos..]);
    Ok(out)
}

/// Inverts [`corrupt`]: recovers the original sentence text.
pub fn reconstruct(
    input: &str,
    target: &str,
    cfg: &CorruptionConfig,
) -> Result<String, ReconstructError> {
    reconstruct_from(input, target, cfg, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::{tokenize, TokenizeMode};

    fn cfg_x() -> CorruptionConfig {
        CorruptionConfig {
            sentinel_format: "<X{i}>".to_string(),
            ..CorruptionConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(CorruptionConfig::default().validate().is_ok());
        let bad = CorruptionConfig {
            mask_rate: 0.0,
            ..CorruptionConfig::default()
        };
        assert!(matches!(bad.validate(), Err(CorruptionError::MaskRate(_))));
        let bad = CorruptionConfig {
            mean_span_length: 0.5,
            ..CorruptionConfig::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(CorruptionError::MeanSpanLength(_))
        ));
        let bad = CorruptionConfig {
            sentinel_format: "<mask>".to_string(),
            ..CorruptionConfig::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(CorruptionError::SentinelFormat(_))
        ));
    }

    #[test]
    fn sentinel_rendering() {
        let cfg = CorruptionConfig::default();
        assert_eq!(cfg.sentinel(0), "<extra_id_0>");
        assert_eq!(cfg.sentinel(17), "<extra_id_17>");
        assert_eq!(cfg_x().sentinel(3), "<X3>");
    }

    fn check_spans(n: usize, spans: &[(usize, usize)], cfg: &CorruptionConfig) {
        let covered: usize = spans.iter().map(|(s, e)| e - s).sum();
        let expected = ((cfg.mask_rate * n as f64) + 0.5).floor() as usize;
        assert_eq!(covered, expected.min(n), "coverage for n={n}");
        for w in spans.windows(2) {
            assert!(
                w[1].0 > w[0].1,
                "spans {:?} and {:?} overlap or touch",
                w[0],
                w[1]
            );
        }
        for (s, e) in spans {
            assert!(s < e && *e <= n, "span ({s},{e}) out of range for n={n}");
        }
    }

    #[test]
    fn hundred_tokens_give_fifteen_masked_in_five_spans() {
        let cfg = CorruptionConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let spans = sample_spans(100, &cfg, &mut rng);
            assert_eq!(spans.len(), 5);
            check_spans(100, &spans, &cfg);
        }
    }

    #[test]
    fn zero_tokens_give_no_spans() {
        let cfg = CorruptionConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_spans(0, &cfg, &mut rng).is_empty());
        // Rate 0.15 on one token rounds to zero coverage.
        assert!(sample_spans(1, &cfg, &mut rng).is_empty());
    }

    #[test]
    fn spans_are_valid_across_sizes_and_configs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for mean in [1.0, 2.0, 3.0, 7.5] {
            for rate in [0.05, 0.15, 0.5, 0.9] {
                let cfg = CorruptionConfig {
                    mask_rate: rate,
                    mean_span_length: mean,
                    ..CorruptionConfig::default()
                };
                for n in [1usize, 2, 3, 5, 8, 20, 100, 999] {
                    let spans = sample_spans(n, &cfg, &mut rng);
                    check_spans(n, &spans, &cfg);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_spans() {
        let cfg = CorruptionConfig::default();
        let a = sample_spans(200, &cfg, &mut ChaCha8Rng::seed_from_u64(99));
        let b = sample_spans(200, &cfg, &mut ChaCha8Rng::seed_from_u64(99));
        assert_eq!(a, b);
    }

    #[test]
    fn forced_span_renders_worked_example() {
        // Tokens a..j over a space-separated sentence; mask tokens 3..5.
        let tok = tokenize("a b c d e f g h i j", &TokenizeMode::Char);
        assert_eq!(tok.len(), 10);
        let (input, target) = render_spans(&tok, &[(3, 5)], &cfg_x(), 0).unwrap();
        assert_eq!(input, "a b c <X0> f g h i j");
        assert_eq!(target, "<X0> d e <X1>");
    }

    #[test]
    fn contiguous_cjk_renders_without_inserted_spaces() {
        let tok = tokenize("马云创办了阿里巴巴。", &TokenizeMode::Char);
        let (input, target) = render_spans(&tok, &[(2, 4)], &cfg_x(), 1).unwrap();
        assert_eq!(input, "马云<X1>了阿里巴巴。");
        assert_eq!(target, "<X1> 创办 <X2>");
    }

    #[test]
    fn degenerate_coverage_yields_terminator_only() {
        let cfg = CorruptionConfig::default();
        let tok = tokenize("涨", &TokenizeMode::Char);
        let ex = corrupt(&tok, &cfg, "d", 5).unwrap();
        assert_eq!(ex.input, "涨");
        assert_eq!(ex.target, "<extra_id_0>");
        assert_eq!(
            reconstruct(&ex.input, &ex.target, &cfg).unwrap(),
            "涨"
        );
    }

    #[test]
    fn too_many_spans_error() {
        let cfg = CorruptionConfig {
            max_sentinels: 2,
            ..cfg_x()
        };
        let tok = tokenize("a b c d e f g h i j", &TokenizeMode::Char);
        let err = render_spans(&tok, &[(0, 1), (2, 3), (4, 5)], &cfg, 0).unwrap_err();
        assert_eq!(
            err,
            CorruptionError::TooManySpans { spans: 3, max: 2 }
        );
    }

    #[test]
    fn reconstruct_round_trips_random_sentences() {
        let cfg = CorruptionConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let alphabet: Vec<char> = "涨跌停板市场金融股票基金债券银行保险公司报告 abc".chars().collect();
        for case in 0..500 {
            let len = rng.random_range(1..120);
            let text: String = (0..len)
                .map(|_| alphabet[rng.random_range(0..alphabet.len())])
                .collect();
            let tok = tokenize(&text, &TokenizeMode::Char);
            let seed = rng.random::<u64>();
            let ex = corrupt(&tok, &cfg, "d", seed).unwrap();
            let back = reconstruct(&ex.input, &ex.target, &cfg)
                .unwrap_or_else(|e| panic!("case {case}: {e} on {text:?}"));
            assert_eq!(back, text, "case {case} seed {seed}");
        }
    }

    #[test]
    fn reconstruct_rejects_mismatched_pairs() {
        let cfg = cfg_x();
        // Input has <X0> but the target lacks it entirely.
        let err = reconstruct("a <X0> c", "<X1>", &cfg).unwrap_err();
        assert!(matches!(err, ReconstructError::MalformedTarget(_) | ReconstructError::LeadingContent));

        // Target missing the terminator.
        let err = reconstruct("a <X0> c", "<X0> b", &cfg).unwrap_err();
        assert_eq!(
            err,
            ReconstructError::MissingTargetSentinel("<X1>".into())
        );

        // Trailing garbage after the terminator.
        let err = reconstruct("a <X0> c", "<X0> b <X1> junk", &cfg).unwrap_err();
        assert_eq!(err, ReconstructError::TrailingContent);

        // Duplicate sentinel in the input.
        let err = reconstruct("<X0> a <X0>", "<X0> b <X1>", &cfg).unwrap_err();
        assert_eq!(
            err,
            ReconstructError::DuplicateInputSentinel("<X0>".into())
        );
    }

    #[test]
    fn aggregate_mask_fraction_stays_near_rate() {
        let cfg = CorruptionConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut masked = 0usize;
        let mut total = 0usize;
        for _ in 0..2000 {
            let spans = sample_spans(100, &cfg, &mut rng);
            masked += spans.iter().map(|(s, e)| e - s).sum::<usize>();
            total += 100;
        }
        let fraction = masked as f64 / total as f64;
        assert!(
            (0.149..=0.151).contains(&fraction),
            "mask fraction {fraction} outside [0.149, 0.151]"
        );
    }
}
