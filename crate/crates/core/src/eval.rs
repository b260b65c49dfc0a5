//! Scoring for the six-task Chinese financial benchmark and its three
//! leaderboards.
//!
//! Each task is scored from an id-keyed prediction map against an id-keyed
//! gold map; leaderboards average per-task percentages. All metrics return
//! unrounded percentages in `[0, 100]`; rounding to two decimals happens at
//! presentation time only.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::{ReadError, RecordReader};

/// The six benchmark tasks, in leaderboard column order.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum TaskName {
    FinFE,
    FinNL,
    FinNSP,
    FinRE,
    FinNA,
    FinQA,
}

/// How each task is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    MicroF1Multilabel,
    Rouge,
    ClassF1,
    Accuracy,
    QaF1,
    NspF1,
}

pub const ALL_TASKS: [TaskName; 6] = [
    TaskName::FinFE,
    TaskName::FinNL,
    TaskName::FinNSP,
    TaskName::FinRE,
    TaskName::FinNA,
    TaskName::FinQA,
];

/// Tasks averaged by the understanding leaderboard.
pub const UNDERSTANDING_TASKS: [TaskName; 4] = [
    TaskName::FinFE,
    TaskName::FinNL,
    TaskName::FinNSP,
    TaskName::FinRE,
];

/// Tasks averaged by the generation leaderboard.
pub const GENERATION_TASKS: [TaskName; 2] = [TaskName::FinNA, TaskName::FinQA];

/// Sentiment labels accepted for FinFE.
pub const FINFE_LABELS: [&str; 3] = ["negative", "neutral", "positive"];

impl TaskName {
    pub fn name(&self) -> &'static str {
        match self {
            TaskName::FinFE => "FinFE",
            TaskName::FinNL => "FinNL",
            TaskName::FinNSP => "FinNSP",
            TaskName::FinRE => "FinRE",
            TaskName::FinNA => "FinNA",
            TaskName::FinQA => "FinQA",
        }
    }

    pub fn from_name(s: &str) -> Option<TaskName> {
        ALL_TASKS.iter().copied().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    pub fn metric(&self) -> Metric {
        match self {
            TaskName::FinNL => Metric::MicroF1Multilabel,
            TaskName::FinNA => Metric::Rouge,
            TaskName::FinRE => Metric::ClassF1,
            TaskName::FinFE => Metric::Accuracy,
            TaskName::FinQA => Metric::QaF1,
            TaskName::FinNSP => Metric::NspF1,
        }
    }

    /// (train, dev, test) example counts of the released splits.
    pub fn split_sizes(&self) -> (usize, usize, usize) {
        match self {
            TaskName::FinNL => (8000, 1000, 1000),
            TaskName::FinNA => (24000, 3000, 3000),
            TaskName::FinRE => (7454, 1489, 3727),
            TaskName::FinFE => (8000, 1000, 1000),
            TaskName::FinQA => (16000, 2000, 2000),
            TaskName::FinNSP => (4800, 600, 600),
        }
    }
}

impl std::fmt::Display for TaskName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("empty evaluation set")]
    EmptySet,
    #[error("prediction and gold id sets differ: missing from predictions {missing_in_pred:?}, unexpected in predictions {missing_in_gold:?}")]
    IdMismatch {
        missing_in_pred: Vec<String>,
        missing_in_gold: Vec<String>,
    },
    #[error("unknown label {label:?} for id {id:?}")]
    UnknownLabel { id: String, label: String },
    #[error("loaded labels have the wrong shape for task {task}")]
    WrongShape { task: TaskName },
    #[error("score {score} for model {model:?} task {task} is outside [0, 100]")]
    ScoreOutOfRange {
        model: String,
        task: TaskName,
        score: f64,
    },
}

fn check_ids<P, G>(
    preds: &BTreeMap<String, P>,
    golds: &BTreeMap<String, G>,
) -> Result<(), MetricError> {
    if golds.is_empty() && preds.is_empty() {
        return Err(MetricError::EmptySet);
    }
    let missing_in_pred: Vec<String> = golds
        .keys()
        .filter(|id| !preds.contains_key(*id))
        .cloned()
        .collect();
    let missing_in_gold: Vec<String> = preds
        .keys()
        .filter(|id| !golds.contains_key(*id))
        .cloned()
        .collect();
    if !missing_in_pred.is_empty() || !missing_in_gold.is_empty() {
        return Err(MetricError::IdMismatch {
            missing_in_pred,
            missing_in_gold,
        });
    }
    Ok(())
}

/// F1 in [0, 1] from pooled unit counts. Empty-vs-empty counts as perfect.
fn f1_from_counts(tp: usize, pred_total: usize, gold_total: usize) -> f64 {
    if pred_total == 0 && gold_total == 0 {
        return 1.0;
    }
    if tp == 0 {
        return 0.0;
    }
    let p = tp as f64 / pred_total as f64;
    let r = tp as f64 / gold_total as f64;
    2.0 * p * r / (p + r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum F1Average {
    #[default]
    Micro,
    Macro,
}

/// Multi-label F1 over label sets (FinNL). Micro pools (id, label) pairs;
/// macro averages per-label F1 over every label seen in gold or predictions.
pub fn score_multilabel_f1(
    preds: &BTreeMap<String, BTreeSet<String>>,
    golds: &BTreeMap<String, BTreeSet<String>>,
    average: F1Average,
) -> Result<f64, MetricError> {
    check_ids(preds, golds)?;
    match average {
        F1Average::Micro => {
            let mut tp = 0usize;
            let mut pred_total = 0usize;
            let mut gold_total = 0usize;
            for (id, g) in golds {
                let p = &preds[id];
                tp += p.intersection(g).count();
                pred_total += p.len();
                gold_total += g.len();
            }
            Ok(100.0 * f1_from_counts(tp, pred_total, gold_total))
        }
        F1Average::Macro => {
            let mut labels: BTreeSet<&String> = BTreeSet::new();
            for set in golds.values().chain(preds.values()) {
                labels.extend(set);
            }
            if labels.is_empty() {
                return Ok(100.0);
            }
            let mut sum = 0.0;
            for label in &labels {
                let mut tp = 0usize;
                let mut pred_total = 0usize;
                let mut gold_total = 0usize;
                for (id, g) in golds {
                    let in_p = preds[id].contains(*label);
                    let in_g = g.contains(*label);
                    tp += (in_p && in_g) as usize;
                    pred_total += in_p as usize;
                    gold_total += in_g as usize;
                }
                sum += f1_from_counts(tp, pred_total, gold_total);
            }
            Ok(100.0 * sum / labels.len() as f64)
        }
    }
}

/// Character-level Rouge scores, each a percentage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RougeScore {
    pub rouge1: f64,
    pub rouge2: f64,
    pub rouge_l: f64,
    /// Mean of the other three; the single number reported for summarization.
    pub combined: f64,
}

fn non_space_chars(s: &str) -> Vec<char> {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn ngram_counts(chars: &[char], n: usize) -> HashMap<&[char], usize> {
    let mut counts = HashMap::new();
    if chars.len() >= n {
        for w in chars.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// N-gram overlap F1 in [0, 1] with clipped counts. Equal strings score 1
/// even when too short to hold an n-gram; unequal strings where either side
/// has no n-grams score 0.
fn rouge_n_item(pred: &[char], gold: &[char], n: usize) -> f64 {
    if pred == gold {
        return 1.0;
    }
    let pc = ngram_counts(pred, n);
    let gc = ngram_counts(gold, n);
    let pred_total: usize = pc.values().sum();
    let gold_total: usize = gc.values().sum();
    if pred_total == 0 || gold_total == 0 {
        return 0.0;
    }
    let tp: usize = pc
        .iter()
        .map(|(w, c)| (*c).min(gc.get(w).copied().unwrap_or(0)))
        .sum();
    f1_from_counts(tp, pred_total, gold_total)
}

/// Longest common subsequence length via a two-row dynamic program.
pub fn lcs_len(a: &[char], b: &[char]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &ca in a {
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = if ca == cb {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

fn rouge_l_item(pred: &[char], gold: &[char]) -> f64 {
    if pred == gold {
        return 1.0;
    }
    f1_from_counts(lcs_len(pred, gold), pred.len(), gold.len())
}

/// Character-level Rouge-1/2/L averaged over items (FinNA). Whitespace is
/// ignored. An item whose prediction equals its reference scores 1 at every
/// granularity, even when too short to hold a bigram, so exact matches
/// always total 100; otherwise a side with no n-grams scores the item 0.
pub fn score_rouge(
    preds: &BTreeMap<String, String>,
    golds: &BTreeMap<String, String>,
) -> Result<RougeScore, MetricError> {
    check_ids(preds, golds)?;
    let mut sums = [0.0f64; 3];
    for (id, g) in golds {
        let p = non_space_chars(&preds[id]);
        let g = non_space_chars(g);
        sums[0] += rouge_n_item(&p, &g, 1);
        sums[1] += rouge_n_item(&p, &g, 2);
        sums[2] += rouge_l_item(&p, &g);
    }
    let n = golds.len() as f64;
    let (r1, r2, rl) = (
        100.0 * sums[0] / n,
        100.0 * sums[1] / n,
        100.0 * sums[2] / n,
    );
    Ok(RougeScore {
        rouge1: r1,
        rouge2: r2,
        rouge_l: rl,
        combined: (r1 + r2 + rl) / 3.0,
    })
}

/// Options for single-label macro F1 (FinRE).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassF1Options {
    /// Label standing for "no relation".
    pub null_label: String,
    /// Average over the null class too, instead of excluding it.
    pub include_null: bool,
    /// When set, every prediction and gold label must belong to this set.
    pub labels: Option<BTreeSet<String>>,
}

impl Default for ClassF1Options {
    fn default() -> Self {
        ClassF1Options {
            null_label: "NA".to_string(),
            include_null: false,
            labels: None,
        }
    }
}

/// Macro F1 over the classes present in gold (FinRE). The null class is
/// excluded from the average by default but still produces false positives
/// and negatives for other classes. With no positive gold class at all, the
/// score is 100 when predictions are also all-null, else 0.
pub fn score_class_f1(
    preds: &BTreeMap<String, String>,
    golds: &BTreeMap<String, String>,
    opts: &ClassF1Options,
) -> Result<f64, MetricError> {
    check_ids(preds, golds)?;
    if let Some(universe) = &opts.labels {
        for (id, label) in golds.iter().chain(preds.iter()) {
            if !universe.contains(label) {
                return Err(MetricError::UnknownLabel {
                    id: id.clone(),
                    label: label.clone(),
                });
            }
        }
    }
    let classes: BTreeSet<&String> = golds
        .values()
        .filter(|l| opts.include_null || **l != opts.null_label)
        .collect();
    if classes.is_empty() {
        let clean = preds.values().all(|l| *l == opts.null_label);
        return Ok(if clean { 100.0 } else { 0.0 });
    }
    let mut sum = 0.0;
    for class in &classes {
        let mut tp = 0usize;
        let mut fp = 0usize;
        let mut fneg = 0usize;
        for (id, g) in golds {
            let p = &preds[id];
            let hit_p = p == *class;
            let hit_g = g == *class;
            tp += (hit_p && hit_g) as usize;
            fp += (hit_p && !hit_g) as usize;
            fneg += (!hit_p && hit_g) as usize;
        }
        sum += 2.0 * tp as f64 / (2 * tp + fp + fneg) as f64;
    }
    Ok(100.0 * sum / classes.len() as f64)
}

/// Exact-match percentage (FinFE). When `allowed` is set, every label must
/// belong to it.
pub fn score_accuracy(
    preds: &BTreeMap<String, String>,
    golds: &BTreeMap<String, String>,
    allowed: Option<&BTreeSet<String>>,
) -> Result<f64, MetricError> {
    check_ids(preds, golds)?;
    if let Some(universe) = allowed {
        for (id, label) in golds.iter().chain(preds.iter()) {
            if !universe.contains(label) {
                return Err(MetricError::UnknownLabel {
                    id: id.clone(),
                    label: label.clone(),
                });
            }
        }
    }
    let correct = golds.iter().filter(|(id, g)| &&preds[*id] == g).count();
    Ok(100.0 * correct as f64 / golds.len() as f64)
}

/// Bag-of-characters answer F1 averaged over items (FinQA). Whitespace is
/// ignored; an empty prediction scores 0 against a non-empty answer and 1
/// against an empty one.
pub fn score_qa_f1(
    preds: &BTreeMap<String, String>,
    golds: &BTreeMap<String, String>,
) -> Result<f64, MetricError> {
    check_ids(preds, golds)?;
    let mut sum = 0.0;
    for (id, g) in golds {
        let p = non_space_chars(&preds[id]);
        let g = non_space_chars(g);
        sum += rouge_n_item_bag(&p, &g);
    }
    Ok(100.0 * sum / golds.len() as f64)
}

fn char_counts(chars: &[char]) -> HashMap<char, usize> {
    let mut counts = HashMap::new();
    for &c in chars {
        *counts.entry(c).or_insert(0) += 1;
    }
    counts
}

fn rouge_n_item_bag(pred: &[char], gold: &[char]) -> f64 {
    if pred == gold {
        return 1.0;
    }
    let pc = char_counts(pred);
    let gc = char_counts(gold);
    let tp: usize = pc
        .iter()
        .map(|(c, n)| (*n).min(gc.get(c).copied().unwrap_or(0)))
        .sum();
    f1_from_counts(tp, pred.len(), gold.len())
}

/// One FinNSP answer: a negativity flag plus the entities the negative news
/// is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NspItem {
    pub is_negative: bool,
    pub subject_entities: BTreeSet<String>,
}

/// Micro F1 over pooled units (FinNSP): each id contributes one negativity
/// unit — correct when the flags agree — plus one unit per subject entity,
/// matched as sets.
pub fn score_nsp_f1(
    preds: &BTreeMap<String, NspItem>,
    golds: &BTreeMap<String, NspItem>,
) -> Result<f64, MetricError> {
    check_ids(preds, golds)?;
    let mut tp = 0usize;
    let mut pred_total = 0usize;
    let mut gold_total = 0usize;
    for (id, g) in golds {
        let p = &preds[id];
        pred_total += 1 + p.subject_entities.len();
        gold_total += 1 + g.subject_entities.len();
        tp += (p.is_negative == g.is_negative) as usize;
        tp += p.subject_entities.intersection(&g.subject_entities).count();
    }
    Ok(100.0 * f1_from_counts(tp, pred_total, gold_total))
}

/// Labels for one task, in the shape its metric needs.
#[derive(Debug, Clone, PartialEq)]
pub enum TaskLabels {
    Strings(BTreeMap<String, String>),
    Sets(BTreeMap<String, BTreeSet<String>>),
    Nsp(BTreeMap<String, NspItem>),
}

/// Scores one task with its standard metric and options.
pub fn score_task(
    task: TaskName,
    preds: &TaskLabels,
    golds: &TaskLabels,
) -> Result<f64, MetricError> {
    use TaskLabels::*;
    match (task.metric(), preds, golds) {
        (Metric::MicroF1Multilabel, Sets(p), Sets(g)) => {
            score_multilabel_f1(p, g, F1Average::Micro)
        }
        (Metric::Rouge, Strings(p), Strings(g)) => Ok(score_rouge(p, g)?.combined),
        (Metric::ClassF1, Strings(p), Strings(g)) => {
            score_class_f1(p, g, &ClassF1Options::default())
        }
        (Metric::Accuracy, Strings(p), Strings(g)) => {
            let allowed: BTreeSet<String> =
                FINFE_LABELS.iter().map(|s| s.to_string()).collect();
            score_accuracy(p, g, Some(&allowed))
        }
        (Metric::QaF1, Strings(p), Strings(g)) => score_qa_f1(p, g),
        (Metric::NspF1, Nsp(p), Nsp(g)) => score_nsp_f1(p, g),
        _ => Err(MetricError::WrongShape { task }),
    }
}

#[derive(Debug, Error)]
pub enum LabelFileError {
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: u64, id: String },
    #[error("line {line}: {field} for id {id:?} has the wrong shape: expected {expected}")]
    BadValue {
        line: u64,
        id: String,
        field: &'static str,
        expected: &'static str,
    },
}

#[derive(Debug, Deserialize)]
struct LabeledLine {
    id: String,
    #[serde(alias = "label", alias = "prediction")]
    value: serde_json::Value,
}

fn value_error(
    line: u64,
    id: &str,
    field: &'static str,
    expected: &'static str,
) -> LabelFileError {
    LabelFileError::BadValue {
        line,
        id: id.to_string(),
        field,
        expected,
    }
}

/// Reads a line-delimited label file for `task`. Each line is an object with
/// an `"id"` plus a `"prediction"` (prediction files) or `"label"` (gold
/// files): a string for most tasks, an array of label strings for FinNL, or
/// a `{"is_negative", "subject_entities"}` object for FinNSP.
pub fn read_labels(
    reader: Box<dyn BufRead + Send>,
    task: TaskName,
    field: &'static str,
) -> Result<TaskLabels, LabelFileError> {
    let mut strings = BTreeMap::new();
    let mut sets = BTreeMap::new();
    let mut nsp = BTreeMap::new();
    for located in RecordReader::<LabeledLine>::from_reader(reader) {
        let located = located?;
        let line = located.line;
        let rec = located.value;
        let dup = match task.metric() {
            Metric::MicroF1Multilabel => {
                let labels = rec
                    .value
                    .as_array()
                    .ok_or_else(|| {
                        value_error(line, &rec.id, field, "an array of label strings")
                    })?
                    .iter()
                    .map(|v| {
                        v.as_str().map(str::to_string).ok_or_else(|| {
                            value_error(line, &rec.id, field, "an array of label strings")
                        })
                    })
                    .collect::<Result<BTreeSet<String>, _>>()?;
                sets.insert(rec.id.clone(), labels).is_some()
            }
            Metric::NspF1 => {
                let item: NspItem = serde_json::from_value(rec.value).map_err(|_| {
                    value_error(
                        line,
                        &rec.id,
                        field,
                        "an object with is_negative and subject_entities",
                    )
                })?;
                nsp.insert(rec.id.clone(), item).is_some()
            }
            _ => {
                let s = rec
                    .value
                    .as_str()
                    .ok_or_else(|| value_error(line, &rec.id, field, "a string"))?;
                strings.insert(rec.id.clone(), s.to_string()).is_some()
            }
        };
        if dup {
            return Err(LabelFileError::DuplicateId { line, id: rec.id });
        }
    }
    Ok(match task.metric() {
        Metric::MicroF1Multilabel => TaskLabels::Sets(sets),
        Metric::NspF1 => TaskLabels::Nsp(nsp),
        _ => TaskLabels::Strings(strings),
    })
}

/// Raw per-task percentages for one model, as read from a scores file. The
/// JSON shape is flat: `{"model_name": "...", "FinFE": 79.05, ...}` with one
/// field per scored task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelScores {
    pub model_name: String,
    #[serde(flatten)]
    pub scores: BTreeMap<TaskName, f64>,
}

/// One aggregated leaderboard row. Averages are rounded half-up to two
/// decimals; an average is absent when the model lacks a score for one of
/// that board's tasks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeaderboardRow {
    pub model_name: String,
    #[serde(flatten)]
    pub scores: BTreeMap<TaskName, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub un_avg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ge_avg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub avg: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Board {
    Understanding,
    Generation,
    Overall,
}

impl Board {
    pub const ALL: [Board; 3] = [Board::Understanding, Board::Generation, Board::Overall];

    pub fn tasks(&self) -> &'static [TaskName] {
        match self {
            Board::Understanding => &UNDERSTANDING_TASKS,
            Board::Generation => &GENERATION_TASKS,
            Board::Overall => &ALL_TASKS,
        }
    }

    pub fn title(&self) -> &'static str {
        match self {
            Board::Understanding => "Understanding leaderboard",
            Board::Generation => "Generation leaderboard",
            Board::Overall => "Overall leaderboard",
        }
    }

    pub fn avg_label(&self) -> &'static str {
        match self {
            Board::Understanding => "Un.Avg.",
            Board::Generation => "Ge.Avg.",
            Board::Overall => "Avg.",
        }
    }

    fn avg_of(&self, row: &LeaderboardRow) -> Option<f64> {
        match self {
            Board::Understanding => row.un_avg,
            Board::Generation => row.ge_avg,
            Board::Overall => row.avg,
        }
    }
}

/// Rounds half-up to two decimals. A tiny stabilizer keeps exact halves
/// (e.g. 59.705) rounding up even when the float sits a hair below the
/// boundary; it is far above representation error and far below the spacing
/// of distinct two-decimal averages.
pub fn round2(x: f64) -> f64 {
    ((x * 100.0) + 0.5 + 1e-6).floor() / 100.0
}

/// Unrounded mean over `tasks`, or `None` if any score is missing.
pub fn board_mean(scores: &BTreeMap<TaskName, f64>, tasks: &[TaskName]) -> Option<f64> {
    let mut sum = 0.0;
    for t in tasks {
        sum += scores.get(t)?;
    }
    Some(sum / tasks.len() as f64)
}

/// All three leaderboards over one set of models.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaderboards {
    /// One row per input model, in input order.
    pub rows: Vec<LeaderboardRow>,
    /// One note per (model, board) exclusion.
    pub warnings: Vec<String>,
}

impl Leaderboards {
    /// The rows eligible for `board`, sorted by its average descending with
    /// ties broken by model name.
    pub fn board(&self, board: Board) -> Vec<&LeaderboardRow> {
        let mut rows: Vec<&LeaderboardRow> = self
            .rows
            .iter()
            .filter(|r| board.avg_of(r).is_some())
            .collect();
        rows.sort_by(|a, b| {
            board
                .avg_of(b)
                .unwrap()
                .total_cmp(&board.avg_of(a).unwrap())
                .then_with(|| a.model_name.cmp(&b.model_name))
        });
        rows
    }
}

/// Builds the three leaderboards from raw per-task scores.
pub fn aggregate(models: &[ModelScores]) -> Result<Leaderboards, MetricError> {
    let mut rows = Vec::with_capacity(models.len());
    let mut warnings = Vec::new();
    for m in models {
        for (task, score) in &m.scores {
            if !(0.0..=100.0).contains(score) {
                return Err(MetricError::ScoreOutOfRange {
                    model: m.model_name.clone(),
                    task: *task,
                    score: *score,
                });
            }
        }
        let mut avgs = [None; 3];
        for (i, board) in Board::ALL.iter().enumerate() {
            match board_mean(&m.scores, board.tasks()) {
                Some(mean) => avgs[i] = Some(round2(mean)),
                None => {
                    let missing: Vec<&str> = board
                        .tasks()
                        .iter()
                        .filter(|t| !m.scores.contains_key(t))
                        .map(|t| t.name())
                        .collect();
                    warnings.push(format!(
                        "{} excluded from {}: no score for {}",
                        m.model_name,
                        board.title().to_lowercase(),
                        missing.join(", ")
                    ));
                }
            }
        }
        rows.push(LeaderboardRow {
            model_name: m.model_name.clone(),
            scores: m.scores.clone(),
            un_avg: avgs[0],
            ge_avg: avgs[1],
            avg: avgs[2],
        });
    }
    Ok(Leaderboards { rows, warnings })
}

/// Formats one board as a fixed-width text table.
pub fn render_table(board: Board, rows: &[&LeaderboardRow]) -> String {
    let name_width = rows
        .iter()
        .map(|r| r.model_name.chars().count())
        .chain([5])
        .max()
        .unwrap();
    let mut out = String::new();
    out.push_str(board.title());
    out.push('\n');
    out.push_str(&format!("{:<name_width$}", "model"));
    for t in board.tasks() {
        out.push_str(&format!("  {:>7}", t.name()));
    }
    out.push_str(&format!("  {:>7}\n", board.avg_label()));
    for row in rows {
        out.push_str(&format!("{:<name_width$}", row.model_name));
        for t in board.tasks() {
            out.push_str(&format!("  {:>7.2}", row.scores[t]));
        }
        out.push_str(&format!("  {:>7.2}\n", board.avg_of(row).unwrap()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids<V: Clone>(pairs: &[(&str, V)]) -> BTreeMap<String, V> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    fn label_set(labels: &[&str]) -> BTreeSet<String> {
        labels.iter().map(|s| s.to_string()).collect()
    }

    fn strings(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    fn assert_2dp(actual: f64, expected: f64) {
        assert!(
            (round2(actual) - expected).abs() < 1e-9,
            "got {actual} (rounds to {}), want {expected}",
            round2(actual)
        );
    }

    #[test]
    fn multilabel_micro_fixture() {
        let golds = ids(&[("1", label_set(&["a", "b"])), ("2", label_set(&["c"]))]);
        let preds = ids(&[("1", label_set(&["a"])), ("2", label_set(&["c", "d"]))]);
        let score = score_multilabel_f1(&preds, &golds, F1Average::Micro).unwrap();
        assert_2dp(score, 66.67);
    }

    #[test]
    fn multilabel_perfect_and_empty() {
        let golds = ids(&[("1", label_set(&["a", "b"])), ("2", label_set(&["c"]))]);
        assert_eq!(
            score_multilabel_f1(&golds, &golds, F1Average::Micro).unwrap(),
            100.0
        );
        let empty_preds = ids(&[("1", label_set(&[])), ("2", label_set(&[]))]);
        assert_eq!(
            score_multilabel_f1(&empty_preds, &golds, F1Average::Micro).unwrap(),
            0.0
        );
        // Nothing asked for, nothing predicted: vacuously perfect.
        assert_eq!(
            score_multilabel_f1(&empty_preds, &empty_preds, F1Average::Micro).unwrap(),
            100.0
        );
    }

    #[test]
    fn multilabel_macro_differs_from_micro() {
        // Label "a" perfect (F1 1), label "b" missed (F1 0) -> macro 50.
        // Micro: tp=2, pred=2, gold=3 -> F1 = 0.8.
        let golds = ids(&[
            ("1", label_set(&["a", "b"])),
            ("2", label_set(&["a"])),
        ]);
        let preds = ids(&[("1", label_set(&["a"])), ("2", label_set(&["a"]))]);
        assert_2dp(
            score_multilabel_f1(&preds, &golds, F1Average::Macro).unwrap(),
            50.0,
        );
        assert_2dp(
            score_multilabel_f1(&preds, &golds, F1Average::Micro).unwrap(),
            80.0,
        );
    }

    #[test]
    fn micro_f1_on_singletons_equals_accuracy() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let labels = ["w", "x", "y", "z"];
        for _ in 0..20 {
            let mut golds_s = BTreeMap::new();
            let mut preds_s = BTreeMap::new();
            let mut golds_1 = BTreeMap::new();
            let mut preds_1 = BTreeMap::new();
            for i in 0..200 {
                let g = labels[rng.random_range(0..4)];
                let p = labels[rng.random_range(0..4)];
                golds_s.insert(i.to_string(), g.to_string());
                preds_s.insert(i.to_string(), p.to_string());
                golds_1.insert(i.to_string(), label_set(&[g]));
                preds_1.insert(i.to_string(), label_set(&[p]));
            }
            let acc = score_accuracy(&preds_s, &golds_s, None).unwrap();
            let f1 = score_multilabel_f1(&preds_1, &golds_1, F1Average::Micro).unwrap();
            assert!((acc - f1).abs() < 1e-9, "accuracy {acc} != micro F1 {f1}");
        }
    }

    #[test]
    fn rouge_fixture() {
        let preds = strings(&[("1", "今天上涨")]);
        let golds = strings(&[("1", "今天下跌")]);
        let s = score_rouge(&preds, &golds).unwrap();
        assert_2dp(s.rouge1, 50.0);
        assert_2dp(s.rouge2, 33.33);
        assert_2dp(s.rouge_l, 50.0);
        assert_2dp(s.combined, 44.44);
    }

    #[test]
    fn rouge_identity_and_empty() {
        let golds = strings(&[("1", "股价大涨"), ("2", "涨")]);
        let s = score_rouge(&golds, &golds).unwrap();
        assert_eq!(
            (s.rouge1, s.rouge2, s.rouge_l, s.combined),
            (100.0, 100.0, 100.0, 100.0)
        );
        let empty = strings(&[("1", ""), ("2", "")]);
        let s = score_rouge(&empty, &golds).unwrap();
        assert_eq!((s.rouge1, s.rouge2, s.rouge_l), (0.0, 0.0, 0.0));

        // Two different single characters share no bigrams either.
        let preds = strings(&[("1", "股价大涨"), ("2", "跌")]);
        let s = score_rouge(&preds, &golds).unwrap();
        assert_eq!((s.rouge1, s.rouge2, s.rouge_l), (50.0, 50.0, 50.0));
    }

    #[test]
    fn rouge_ignores_whitespace() {
        let preds = strings(&[("1", "今天 上涨")]);
        let golds = strings(&[("1", "今天上涨")]);
        let s = score_rouge(&preds, &golds).unwrap();
        assert_eq!(s.combined, 100.0);
    }

    #[test]
    fn rouge_l_matches_brute_force_lcs() {
        use rand::{Rng, SeedableRng};

        // Longest common subsequence by trying all 2^n subsequences of a.
        fn brute_lcs(a: &[char], b: &[char]) -> usize {
            let mut best = 0;
            for mask in 0u32..(1 << a.len()) {
                let sub: Vec<char> = a
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, c)| *c)
                    .collect();
                let mut it = b.iter();
                if sub.iter().all(|c| it.any(|bc| bc == c)) {
                    best = best.max(sub.len());
                }
            }
            best
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let alphabet = ['涨', '跌', '平', '停'];
        for _ in 0..300 {
            let la = rng.random_range(0..=12);
            let lb = rng.random_range(0..=12);
            let a: Vec<char> =
                (0..la).map(|_| alphabet[rng.random_range(0..4)]).collect();
            let b: Vec<char> =
                (0..lb).map(|_| alphabet[rng.random_range(0..4)]).collect();
            assert_eq!(lcs_len(&a, &b), brute_lcs(&a, &b), "a={a:?} b={b:?}");
        }
    }

    #[test]
    fn class_f1_fixture() {
        let golds = strings(&[("1", "r1"), ("2", "r1"), ("3", "r2"), ("4", "r2")]);
        let preds = strings(&[("1", "r1"), ("2", "r1"), ("3", "NA"), ("4", "NA")]);
        let score = score_class_f1(&preds, &golds, &ClassF1Options::default()).unwrap();
        assert_2dp(score, 50.0);
    }

    #[test]
    fn class_f1_null_feeds_other_classes_errors() {
        // Gold r1 twice; preds hit one and also claim r1 on a null item:
        // tp=1, fp=1, fn=1 -> F1 = 0.5.
        let golds = strings(&[("1", "r1"), ("2", "r1"), ("3", "NA")]);
        let preds = strings(&[("1", "r1"), ("2", "NA"), ("3", "r1")]);
        let score = score_class_f1(&preds, &golds, &ClassF1Options::default()).unwrap();
        assert_2dp(score, 50.0);
    }

    #[test]
    fn class_f1_all_null_conventions() {
        let nulls = strings(&[("1", "NA"), ("2", "NA")]);
        assert_eq!(
            score_class_f1(&nulls, &nulls, &ClassF1Options::default()).unwrap(),
            100.0
        );
        let claims = strings(&[("1", "r1"), ("2", "NA")]);
        assert_eq!(
            score_class_f1(&claims, &nulls, &ClassF1Options::default()).unwrap(),
            0.0
        );
    }

    #[test]
    fn class_f1_include_null_and_universe() {
        let golds = strings(&[("1", "r1"), ("2", "NA")]);
        let preds = strings(&[("1", "r1"), ("2", "NA")]);
        let opts = ClassF1Options {
            include_null: true,
            ..ClassF1Options::default()
        };
        assert_eq!(score_class_f1(&preds, &golds, &opts).unwrap(), 100.0);

        let opts = ClassF1Options {
            labels: Some(label_set(&["r1", "NA"])),
            ..ClassF1Options::default()
        };
        assert_eq!(score_class_f1(&preds, &golds, &opts).unwrap(), 100.0);
        let bad_preds = strings(&[("1", "typo"), ("2", "NA")]);
        assert_eq!(
            score_class_f1(&bad_preds, &golds, &opts).unwrap_err(),
            MetricError::UnknownLabel {
                id: "1".to_string(),
                label: "typo".to_string()
            }
        );
    }

    #[test]
    fn accuracy_fixture() {
        let golds = strings(&[
            ("1", "positive"),
            ("2", "negative"),
            ("3", "neutral"),
            ("4", "positive"),
        ]);
        let preds = strings(&[
            ("1", "positive"),
            ("2", "positive"),
            ("3", "positive"),
            ("4", "negative"),
        ]);
        assert_eq!(score_accuracy(&preds, &golds, None).unwrap(), 25.0);
        assert_eq!(score_accuracy(&golds, &golds, None).unwrap(), 100.0);

        let allowed = label_set(&FINFE_LABELS);
        assert_eq!(
            score_accuracy(&preds, &golds, Some(&allowed)).unwrap(),
            25.0
        );
        let bad = strings(&[("1", "bullish"), ("2", "negative"), ("3", "neutral"), ("4", "positive")]);
        assert!(matches!(
            score_accuracy(&bad, &golds, Some(&allowed)),
            Err(MetricError::UnknownLabel { .. })
        ));
    }

    #[test]
    fn qa_f1_fixture() {
        let preds = strings(&[("1", "上海")]);
        let golds = strings(&[("1", "上海市")]);
        assert_2dp(score_qa_f1(&preds, &golds).unwrap(), 80.0);
        assert_eq!(score_qa_f1(&golds, &golds).unwrap(), 100.0);
        let empty = strings(&[("1", "")]);
        assert_eq!(score_qa_f1(&empty, &golds).unwrap(), 0.0);
    }

    #[test]
    fn qa_f1_clips_repeated_chars() {
        // pred 涨涨涨 vs gold 涨: overlap clipped to 1 -> P=1/3, R=1 -> 0.5.
        let preds = strings(&[("1", "涨涨涨")]);
        let golds = strings(&[("1", "涨")]);
        assert_2dp(score_qa_f1(&preds, &golds).unwrap(), 50.0);
    }

    #[test]
    fn nsp_fixture() {
        let golds = ids(&[(
            "1",
            NspItem {
                is_negative: true,
                subject_entities: label_set(&["E1", "E2"]),
            },
        )]);
        let preds = ids(&[(
            "1",
            NspItem {
                is_negative: true,
                subject_entities: label_set(&["E1"]),
            },
        )]);
        assert_2dp(score_nsp_f1(&preds, &golds).unwrap(), 80.0);
        assert_eq!(score_nsp_f1(&golds, &golds).unwrap(), 100.0);

        let wrong = ids(&[(
            "1",
            NspItem {
                is_negative: false,
                subject_entities: BTreeSet::new(),
            },
        )]);
        assert_eq!(score_nsp_f1(&wrong, &golds).unwrap(), 0.0);
    }

    #[test]
    fn empty_sets_and_id_mismatches_are_rejected() {
        let empty: BTreeMap<String, String> = BTreeMap::new();
        assert_eq!(
            score_accuracy(&empty, &empty, None).unwrap_err(),
            MetricError::EmptySet
        );
        assert_eq!(
            score_qa_f1(&empty, &empty).unwrap_err(),
            MetricError::EmptySet
        );

        let golds = strings(&[("1", "a"), ("2", "b")]);
        let preds = strings(&[("1", "a"), ("3", "b")]);
        let err = score_accuracy(&preds, &golds, None).unwrap_err();
        assert_eq!(
            err,
            MetricError::IdMismatch {
                missing_in_pred: vec!["2".to_string()],
                missing_in_gold: vec!["3".to_string()],
            }
        );
        assert!(err.to_string().contains('2') && err.to_string().contains('3'));
    }

    #[test]
    fn task_names_round_trip_and_split_sizes() {
        for t in ALL_TASKS {
            assert_eq!(TaskName::from_name(t.name()), Some(t));
            assert_eq!(TaskName::from_name(&t.name().to_lowercase()), Some(t));
        }
        assert_eq!(TaskName::from_name("FinXX"), None);
        assert_eq!(TaskName::FinNL.split_sizes(), (8000, 1000, 1000));
        assert_eq!(TaskName::FinNA.split_sizes(), (24000, 3000, 3000));
        assert_eq!(TaskName::FinRE.split_sizes(), (7454, 1489, 3727));
        assert_eq!(TaskName::FinFE.split_sizes(), (8000, 1000, 1000));
        assert_eq!(TaskName::FinQA.split_sizes(), (16000, 2000, 2000));
        assert_eq!(TaskName::FinNSP.split_sizes(), (4800, 600, 600));
    }

    #[test]
    fn score_task_dispatches_and_checks_shape() {
        let preds = TaskLabels::Strings(strings(&[("1", "上海")]));
        let golds = TaskLabels::Strings(strings(&[("1", "上海市")]));
        assert_2dp(score_task(TaskName::FinQA, &preds, &golds).unwrap(), 80.0);
        assert_eq!(
            score_task(TaskName::FinNL, &preds, &golds).unwrap_err(),
            MetricError::WrongShape {
                task: TaskName::FinNL
            }
        );
    }

    fn reader(s: &str) -> Box<dyn BufRead + Send> {
        Box::new(std::io::Cursor::new(s.to_string()))
    }

    #[test]
    fn label_files_parse_per_task_shape() {
        let got = read_labels(
            reader("{\"id\":\"1\",\"prediction\":[\"industry\",\"company\"]}\n"),
            TaskName::FinNL,
            "prediction",
        )
        .unwrap();
        assert_eq!(
            got,
            TaskLabels::Sets(ids(&[("1", label_set(&["company", "industry"]))]))
        );

        let got = read_labels(
            reader("{\"id\":\"7\",\"label\":\"positive\"}\n"),
            TaskName::FinFE,
            "label",
        )
        .unwrap();
        assert_eq!(got, TaskLabels::Strings(strings(&[("7", "positive")])));

        let got = read_labels(
            reader(
                "{\"id\":\"n1\",\"label\":{\"is_negative\":true,\"subject_entities\":[\"甲公司\"]}}\n",
            ),
            TaskName::FinNSP,
            "label",
        )
        .unwrap();
        assert_eq!(
            got,
            TaskLabels::Nsp(ids(&[(
                "n1",
                NspItem {
                    is_negative: true,
                    subject_entities: label_set(&["甲公司"]),
                }
            )]))
        );
    }

    #[test]
    fn label_file_errors() {
        let err = read_labels(
            reader("{\"id\":\"1\",\"prediction\":\"industry\"}\n"),
            TaskName::FinNL,
            "prediction",
        )
        .unwrap_err();
        assert!(err.to_string().contains("array of label strings"), "{err}");

        let err = read_labels(
            reader("{\"id\":\"1\",\"label\":\"a\"}\n{\"id\":\"1\",\"label\":\"b\"}\n"),
            TaskName::FinFE,
            "label",
        )
        .unwrap_err();
        assert!(
            matches!(err, LabelFileError::DuplicateId { line: 2, ref id } if id == "1"),
            "{err}"
        );

        let err = read_labels(reader("{\"id\":\"1\"}\n"), TaskName::FinFE, "label").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn rounding_is_half_up_at_two_decimals() {
        assert_eq!(round2(59.705), 59.71);
        assert_eq!(round2(68.685), 68.69);
        assert_eq!(round2(76.843333333), 76.84);
        assert_eq!(round2(72.7025), 72.70);
        assert_eq!(round2(77.078333333), 77.08);
        assert_eq!(round2(0.0), 0.0);
        assert_eq!(round2(100.0), 100.0);
    }

    fn published_scores() -> Vec<ModelScores> {
        let rows: [(&str, &[(TaskName, f64)]); 7] = [
            (
                "GPT2-base",
                &[
                    (TaskName::FinFE, 79.05),
                    (TaskName::FinNL, 84.09),
                    (TaskName::FinNSP, 91.30),
                    (TaskName::FinRE, 36.37),
                    (TaskName::FinNA, 44.19),
                    (TaskName::FinQA, 75.22),
                ],
            ),
            (
                "T5-base",
                &[
                    (TaskName::FinFE, 79.40),
                    (TaskName::FinNL, 87.48),
                    (TaskName::FinNSP, 95.43),
                    (TaskName::FinRE, 54.93),
                    (TaskName::FinNA, 48.54),
                    (TaskName::FinQA, 83.58),
                ],
            ),
            (
                "FinBERT-base",
                &[
                    (TaskName::FinFE, 79.45),
                    (TaskName::FinNL, 84.69),
                    (TaskName::FinNSP, 69.01),
                    (TaskName::FinRE, 55.33),
                ],
            ),
            (
                "Mengzi-BERT-base-fin",
                &[
                    (TaskName::FinFE, 79.50),
                    (TaskName::FinNL, 85.88),
                    (TaskName::FinNSP, 71.72),
                    (TaskName::FinRE, 58.25),
                ],
            ),
            (
                "BBT-FinT5-base",
                &[
                    (TaskName::FinFE, 80.19),
                    (TaskName::FinNL, 87.55),
                    (TaskName::FinNSP, 94.50),
                    (TaskName::FinRE, 60.62),
                    (TaskName::FinNA, 50.06),
                    (TaskName::FinQA, 84.82),
                ],
            ),
            (
                "BBT-FinT5-base-KE",
                &[
                    (TaskName::FinFE, 79.43),
                    (TaskName::FinNL, 87.77),
                    (TaskName::FinNSP, 95.05),
                    (TaskName::FinRE, 61.79),
                    (TaskName::FinNA, 51.36),
                    (TaskName::FinQA, 85.66),
                ],
            ),
            (
                "BBT-FinT5-large",
                &[
                    (TaskName::FinFE, 80.24),
                    (TaskName::FinNL, 88.44),
                    (TaskName::FinNSP, 94.54),
                    (TaskName::FinRE, 61.88),
                    (TaskName::FinNA, 51.42),
                    (TaskName::FinQA, 85.95),
                ],
            ),
        ];
        rows.iter()
            .map(|(name, scores)| ModelScores {
                model_name: name.to_string(),
                scores: scores.iter().copied().collect(),
            })
            .collect()
    }

    #[test]
    fn published_rows_aggregate_to_their_printed_averages() {
        let boards = aggregate(&published_scores()).unwrap();
        let by_name: BTreeMap<&str, &LeaderboardRow> = boards
            .rows
            .iter()
            .map(|r| (r.model_name.as_str(), r))
            .collect();

        // Cells that are exact arithmetic means of the row they belong to.
        let gpt2 = by_name["GPT2-base"];
        assert_eq!(gpt2.un_avg, Some(72.70));
        assert_eq!(gpt2.ge_avg, Some(59.71));
        assert_eq!(gpt2.avg, Some(68.37));
        assert_eq!(by_name["T5-base"].ge_avg, Some(66.06));
        assert_eq!(by_name["T5-base"].avg, Some(74.89));
        assert_eq!(by_name["BBT-FinT5-base"].ge_avg, Some(67.44));
        assert_eq!(by_name["BBT-FinT5-base"].avg, Some(76.29));
        assert_eq!(by_name["BBT-FinT5-base-KE"].ge_avg, Some(68.51));
        assert_eq!(by_name["BBT-FinT5-base-KE"].avg, Some(76.84));
        assert_eq!(by_name["BBT-FinT5-large"].ge_avg, Some(68.69));

        // Encoder-only rows never reach the generation or overall boards.
        assert_eq!(by_name["FinBERT-base"].ge_avg, None);
        assert_eq!(by_name["FinBERT-base"].avg, None);
        assert_eq!(
            by_name["FinBERT-base"].un_avg,
            Some(round2((79.45 + 84.69 + 69.01 + 55.33) / 4.0))
        );
        assert_eq!(boards.warnings.len(), 4);
        assert!(boards.warnings[0].contains("FinBERT-base"));
        assert!(boards.warnings[0].contains("FinNA"));

        let overall = boards.board(Board::Overall);
        let names: Vec<&str> = overall.iter().map(|r| r.model_name.as_str()).collect();
        assert_eq!(
            names,
            [
                "BBT-FinT5-large",
                "BBT-FinT5-base-KE",
                "BBT-FinT5-base",
                "T5-base",
                "GPT2-base"
            ]
        );
        assert_eq!(boards.board(Board::Understanding).len(), 7);
        assert_eq!(boards.board(Board::Generation).len(), 5);
    }

    #[test]
    fn ties_sort_by_model_name() {
        let scores: BTreeMap<TaskName, f64> = ALL_TASKS.iter().map(|t| (*t, 50.0)).collect();
        let models = vec![
            ModelScores {
                model_name: "zeta".to_string(),
                scores: scores.clone(),
            },
            ModelScores {
                model_name: "alpha".to_string(),
                scores,
            },
        ];
        let boards = aggregate(&models).unwrap();
        let overall = boards.board(Board::Overall);
        assert_eq!(overall[0].model_name, "alpha");
        assert_eq!(overall[1].model_name, "zeta");
        assert_eq!(overall[0].avg, overall[1].avg);
    }

    #[test]
    fn out_of_range_scores_are_rejected() {
        let models = vec![ModelScores {
            model_name: "m".to_string(),
            scores: [(TaskName::FinFE, 101.0)].into_iter().collect(),
        }];
        assert!(matches!(
            aggregate(&models).unwrap_err(),
            MetricError::ScoreOutOfRange { score, .. } if score == 101.0
        ));
    }

    #[test]
    fn model_scores_json_round_trips() {
        let line = "{\"model_name\":\"GPT2-base\",\"FinFE\":79.05,\"FinNA\":44.19}";
        let m: ModelScores = serde_json::from_str(line).unwrap();
        assert_eq!(m.model_name, "GPT2-base");
        assert_eq!(m.scores[&TaskName::FinFE], 79.05);
        assert_eq!(serde_json::to_string(&m).unwrap(), line);

        let err = serde_json::from_str::<ModelScores>(
            "{\"model_name\":\"m\",\"FinXX\":1.0}",
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown variant"), "{err}");
    }

    #[test]
    fn rendered_table_lines_up() {
        let boards = aggregate(&published_scores()).unwrap();
        let table = render_table(Board::Overall, &boards.board(Board::Overall));
        let mut lines = table.lines();
        assert_eq!(lines.next(), Some("Overall leaderboard"));
        let header = lines.next().unwrap();
        assert!(header.contains("FinFE") && header.contains("Avg."));
        let top = lines.next().unwrap();
        assert!(top.starts_with("BBT-FinT5-large"), "{top}");
        assert!(top.contains("77.08"), "{top}");
        let gpt2 = lines.last().unwrap();
        assert!(gpt2.contains("68.37"), "{gpt2}");
    }
}
