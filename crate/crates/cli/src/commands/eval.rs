use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};

use fintext::eval::{
    aggregate, read_labels, render_table, round2, score_class_f1, score_multilabel_f1,
    score_rouge, score_task, Board, ClassF1Options, F1Average, Metric, ModelScores, TaskLabels,
    TaskName,
};
use fintext::io::{open_text, read_all};

use crate::config::{merged, require, required_path, FileConfig};
use crate::error::CliError;
use crate::runner::AtomicWriter;

const CONFIG_KEYS: &[&str] = &[
    "task",
    "pred",
    "gold",
    "average",
    "null-label",
    "include-null",
    "labels",
];

/// Score one task's predictions, or aggregate model scores into the three
/// leaderboards.
#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(subcommand)]
    pub cmd: Option<EvalCmd>,
    /// Task to score: FinFE, FinNL, FinNSP, FinRE, FinNA, or FinQA
    #[arg(long)]
    pub task: Option<String>,
    /// Predictions: one {"id", "prediction"} per line
    #[arg(long, value_name = "PATH")]
    pub pred: Option<PathBuf>,
    /// Gold answers: one {"id", "label"} per line
    #[arg(long, value_name = "PATH")]
    pub gold: Option<PathBuf>,
    /// Flat `key = value` config mirroring these flags
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// FinNL label-set averaging: micro (default) or macro
    #[arg(long)]
    pub average: Option<String>,
    /// FinRE label standing for "no relation" (default "NA")
    #[arg(long)]
    pub null_label: Option<String>,
    /// Include the null class in the FinRE macro average (default false)
    #[arg(long, value_name = "BOOL")]
    pub include_null: Option<bool>,
    /// File with one allowed FinRE label per line; others become errors
    #[arg(long, value_name = "PATH")]
    pub labels: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum EvalCmd {
    /// Aggregate per-task model scores into understanding, generation, and
    /// overall leaderboards
    Leaderboard {
        /// One {"model_name", "<Task>": score, ...} per line
        #[arg(long, value_name = "PATH")]
        scores: PathBuf,
        /// Also write the aggregated rows as line-delimited JSON
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

pub fn run(args: EvalArgs) -> Result<(), CliError> {
    match args.cmd {
        Some(EvalCmd::Leaderboard { ref scores, ref out }) => {
            if args.task.is_some() || args.pred.is_some() || args.gold.is_some() {
                return Err(CliError::Validation(
                    "eval leaderboard takes --scores/--out, not --task/--pred/--gold".to_string(),
                ));
            }
            leaderboard(scores, out.as_deref())
        }
        None => single_task(args),
    }
}

fn parse_average(raw: &str) -> Result<F1Average, CliError> {
    match raw {
        "micro" => Ok(F1Average::Micro),
        "macro" => Ok(F1Average::Macro),
        other => Err(CliError::Validation(format!(
            "average must be `micro` or `macro`, got {other:?}"
        ))),
    }
}

fn load_label_universe(path: &Path) -> Result<BTreeSet<String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read labels {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn single_task(args: EvalArgs) -> Result<(), CliError> {
    let cfg = FileConfig::load_opt(args.config.as_deref(), CONFIG_KEYS)?;
    let task_raw = require(merged(args.task, &cfg, "task")?, "task")?;
    let task = TaskName::from_name(&task_raw).ok_or_else(|| {
        CliError::Validation(format!(
            "unknown task {task_raw:?} (expected FinFE, FinNL, FinNSP, FinRE, FinNA, or FinQA)"
        ))
    })?;
    let pred_path = required_path(args.pred, &cfg, "pred")?;
    let gold_path = required_path(args.gold, &cfg, "gold")?;

    let average = merged::<String>(args.average, &cfg, "average")?;
    let null_label = merged::<String>(args.null_label, &cfg, "null-label")?;
    let include_null = merged(args.include_null, &cfg, "include-null")?;
    let labels_path = merged::<PathBuf>(args.labels, &cfg, "labels")?;
    if average.is_some() && task != TaskName::FinNL {
        return Err(CliError::Validation(
            "--average only applies to FinNL".to_string(),
        ));
    }
    if (null_label.is_some() || include_null.is_some() || labels_path.is_some())
        && task != TaskName::FinRE
    {
        return Err(CliError::Validation(
            "--null-label/--include-null/--labels only apply to FinRE".to_string(),
        ));
    }

    let preds = read_labels(open_text(&pred_path)?, task, "prediction")?;
    let golds = read_labels(open_text(&gold_path)?, task, "label")?;

    match task.metric() {
        Metric::Rouge => {
            let (TaskLabels::Strings(p), TaskLabels::Strings(g)) = (&preds, &golds) else {
                unreachable!("string tasks always load string labels")
            };
            let r = score_rouge(p, g)?;
            println!(
                "{task}: {:.2} (Rouge-1 {:.2}, Rouge-2 {:.2}, Rouge-L {:.2})",
                round2(r.combined),
                round2(r.rouge1),
                round2(r.rouge2),
                round2(r.rouge_l)
            );
        }
        Metric::MicroF1Multilabel if average.is_some() => {
            let avg = parse_average(average.as_deref().unwrap())?;
            let (TaskLabels::Sets(p), TaskLabels::Sets(g)) = (&preds, &golds) else {
                unreachable!("FinNL always loads label sets")
            };
            println!("{task}: {:.2}", round2(score_multilabel_f1(p, g, avg)?));
        }
        Metric::ClassF1 => {
            let mut opts = ClassF1Options::default();
            if let Some(l) = null_label {
                opts.null_label = l;
            }
            if let Some(b) = include_null {
                opts.include_null = b;
            }
            if let Some(p) = labels_path {
                opts.labels = Some(load_label_universe(&p)?);
            }
            let (TaskLabels::Strings(p), TaskLabels::Strings(g)) = (&preds, &golds) else {
                unreachable!("FinRE always loads string labels")
            };
            println!("{task}: {:.2}", round2(score_class_f1(p, g, &opts)?));
        }
        _ => println!("{task}: {:.2}", round2(score_task(task, &preds, &golds)?)),
    }
    Ok(())
}

fn leaderboard(scores: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let models: Vec<ModelScores> = read_all(scores)?;
    let boards = aggregate(&models)?;
    for warning in &boards.warnings {
        eprintln!("warning: {warning}");
    }
    let mut first = true;
    for board in Board::ALL {
        if !first {
            println!();
        }
        first = false;
        print!("{}", render_table(board, &boards.board(board)));
    }
    if let Some(path) = out {
        let mut writer = AtomicWriter::create(path)?;
        for row in &boards.rows {
            writer.write(row)?;
        }
        writer.finish()?;
    }
    Ok(())
}
