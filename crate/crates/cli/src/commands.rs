//! The seven subcommands. Each one maps on-disk inputs to on-disk
//! artifacts plus a short stdout summary, holding no state between runs,
//! so any command can be re-run from its inputs alone.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use rand::Rng;
use serde::{Deserialize, Serialize};

use statelink_core::balance::{balance_dataset, imbalance_degree};
use statelink_core::classifier::{train, GbdtEnsemble};
use statelink_core::clustering::{cluster, ClusterModel, PcaModel};
use statelink_core::datalink::{compress_repeats, fuse_links, FuseReport, StateDataLink};
use statelink_core::matrix::Matrix;
use statelink_core::metrics::{adjusted_rand_index, evaluation_report, EvaluationReport};
use statelink_core::scenario::generate;

use crate::config::RunConfig;
use crate::csvio::{self, RawCyber};
use crate::error::{CliError, Result};
use crate::manifest;
use crate::persist;

/// Flags shared by every configurable subcommand.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// JSON configuration file; omitted keys keep their defaults.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Global random seed, overriding the config file.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut config = RunConfig::load(self.config.as_deref())?;
        if let Some(seed) = self.seed {
            config.set_seed(seed);
        }
        Ok(config)
    }
}

/// On-disk format of a data-link table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Other(format!("cannot create {}: {e}", dir.display())))
}

fn write_link_any(path: &Path, link: &StateDataLink, format: Format) -> Result<()> {
    match format {
        Format::Csv => csvio::write_link(path, link),
        Format::Json => persist::save(path, "link", link),
    }
}

/// Reads a link table in either format, dispatching on the extension.
pub fn read_link_any(path: &Path) -> Result<StateDataLink> {
    if path.extension().is_some_and(|e| e == "json") {
        let link: StateDataLink = persist::load(path, "link")?;
        link.validate()?;
        Ok(link)
    } else {
        csvio::read_link(path)
    }
}

// ---------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Directory receiving link.csv (or link.json).
    #[arg(long, value_name = "DIR")]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

pub fn run_generate(args: &GenerateArgs) -> Result<()> {
    let config = args.config.resolve()?;
    let link = generate(&config.scenario)?;
    ensure_dir(&args.output)?;
    let name = match args.format {
        Format::Csv => "link.csv",
        Format::Json => "link.json",
    };
    let path = args.output.join(name);
    write_link_any(&path, &link, args.format)?;
    println!(
        "generated {} records with {} features -> {}",
        link.records.len(),
        link.feature_width(),
        path.display()
    );
    Ok(())
}

// ---------------------------------------------------------------------
// fuse
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct FuseArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Physical snapshots: timestamp,device_id,a0,...
    #[arg(long, value_name = "PATH")]
    pub physical: PathBuf,
    /// Link packet counters: timestamp,ip,link_id,packets_sent,packets_lost,loss_threshold
    #[arg(long, value_name = "PATH")]
    pub stats: PathBuf,
    /// Packet timings: timestamp,ip,packet_id,send_time,receive_time
    #[arg(long, value_name = "PATH")]
    pub timings: PathBuf,
    /// Alarm threat scores: timestamp,ip,threat_degree
    #[arg(long, value_name = "PATH")]
    pub alarms: PathBuf,
    /// Component/IP index: area,line,component_id,ip
    #[arg(long, value_name = "PATH")]
    pub index: PathBuf,
    /// Directory receiving link.csv (or link.json) and fuse_report.json.
    #[arg(long, value_name = "DIR")]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Everything dropped or kept on the way to a fused link.
#[derive(Debug, Serialize, Deserialize)]
pub struct FuseSummary {
    pub report: FuseReport,
    /// (timestamp, ip) instants missing at least one cyber table.
    pub incomplete_cyber_instants: usize,
    pub fused_records: usize,
    pub compressed_records: usize,
}

pub fn run_fuse(args: &FuseArgs) -> Result<()> {
    let config = args.config.resolve()?;
    let physical = csvio::read_physical(&args.physical)?;
    let raw = RawCyber {
        stats: csvio::read_stats(&args.stats)?,
        timings: csvio::read_timings(&args.timings)?,
        alarms: csvio::read_alarms(&args.alarms)?,
    };
    let index = csvio::read_index(&args.index)?;
    let (cyber, incomplete) = csvio::assemble_cyber(&raw)?;
    let (fused, report) = fuse_links(&physical, &cyber, &index, &config.window)?;
    let compressed = compress_repeats(&fused, config.window.dedup_tolerance);

    ensure_dir(&args.output)?;
    let name = match args.format {
        Format::Csv => "link.csv",
        Format::Json => "link.json",
    };
    write_link_any(&args.output.join(name), &compressed, args.format)?;
    let summary = FuseSummary {
        report,
        incomplete_cyber_instants: incomplete,
        fused_records: fused.records.len(),
        compressed_records: compressed.records.len(),
    };
    persist::save(&args.output.join("fuse_report.json"), "fuse", &summary)?;
    println!(
        "fused {} records, compressed to {} rows (dropped: {} out-of-window, \
         {} unpaired physical, {} unpaired cyber, {} incomplete cyber instants)",
        summary.fused_records,
        summary.compressed_records,
        report.out_of_window,
        report.unpaired_physical,
        report.unpaired_cyber,
        incomplete
    );
    Ok(())
}

// ---------------------------------------------------------------------
// cluster
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Fused link table, .csv or .json.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Directory receiving labels.csv and cluster_model.json.
    #[arg(long, value_name = "DIR")]
    pub output: PathBuf,
}

/// Persisted clustering artifact: enough to assign future records.
#[derive(Debug, Serialize, Deserialize)]
pub struct ClusterArtifact {
    pub pca: PcaModel,
    pub model: ClusterModel,
    pub subcluster_count: usize,
    pub bic: Vec<f64>,
    pub candidates: Vec<usize>,
}

pub fn run_cluster(args: &ClusterArgs) -> Result<()> {
    let config = args.config.resolve()?;
    let link = read_link_any(&args.input)?;
    let outcome = cluster(&link, &config.cluster)?;
    ensure_dir(&args.output)?;
    csvio::write_cluster_labels(
        &args.output.join("labels.csv"),
        &outcome.model.labels,
        &outcome.model.outlier_flags,
    )?;
    let artifact = ClusterArtifact {
        pca: outcome.pca,
        model: outcome.model,
        subcluster_count: outcome.subcluster_count,
        bic: outcome.bic,
        candidates: outcome.candidates,
    };
    persist::save(&args.output.join("cluster_model.json"), "cluster", &artifact)?;
    let mut line = format!(
        "clustered {} records into k={} ({} outliers)",
        link.records.len(),
        artifact.model.k,
        artifact.model.outlier_count()
    );
    if let Some(truth) = full_labels(&link) {
        let ari = adjusted_rand_index(&truth, &artifact.model.labels)?;
        line.push_str(&format!(", ARI vs labels {ari:.3}"));
    }
    println!("{line}");
    Ok(())
}

/// True labels when every record carries one.
fn full_labels(link: &StateDataLink) -> Option<Vec<u32>> {
    link.records.iter().map(|r| r.label).collect()
}

// ---------------------------------------------------------------------
// balance
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct BalanceArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Labeled feature table (fused link, balanced, or label,f0.. form).
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Directory receiving balanced.csv.
    #[arg(long, value_name = "DIR")]
    pub output: PathBuf,
}

/// Per-class record counts in ascending label order.
fn class_counts(labels: &[u32]) -> Vec<usize> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_insert(0) += 1;
    }
    counts.into_values().collect()
}

pub fn run_balance(args: &BalanceArgs) -> Result<()> {
    let config = args.config.resolve()?;
    let table = csvio::read_labeled(&args.input)?;
    let before = imbalance_degree(&class_counts(&table.labels))?;
    let balanced = balance_dataset(&table.features, &table.labels, &config.balance)?;
    let after_labels: Vec<u32> = balanced.records.iter().map(|r| r.label).collect();
    let after = imbalance_degree(&class_counts(&after_labels))?;
    let synthetic = balanced.records.iter().filter(|r| r.is_synthetic()).count();
    ensure_dir(&args.output)?;
    csvio::write_balanced(&args.output.join("balanced.csv"), &balanced)?;
    println!(
        "balanced {} -> {} records ({} synthetic), imbalance {before:.3} -> {after:.3}",
        table.labels.len(),
        balanced.records.len(),
        synthetic
    );
    Ok(())
}

// ---------------------------------------------------------------------
// train
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Labeled feature table (fused link, balanced, or label,f0.. form).
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Directory receiving model.json and loss_trace.csv.
    #[arg(long, value_name = "DIR")]
    pub output: PathBuf,
}

fn train_on(config: &RunConfig, x: &Matrix, y: &[u32]) -> Result<statelink_core::classifier::TrainOutcome> {
    let classes = class_counts(y).len();
    let cost = config.cost_model(classes)?;
    Ok(train(x, y, &config.train, &cost)?)
}

pub fn run_train(args: &TrainArgs) -> Result<()> {
    let config = args.config.resolve()?;
    let table = csvio::read_labeled(&args.input)?;
    let outcome = train_on(&config, &table.features, &table.labels)?;
    ensure_dir(&args.output)?;
    persist::save(&args.output.join("model.json"), "gbdt", &outcome.ensemble)?;
    csvio::write_loss_trace(&args.output.join("loss_trace.csv"), &outcome.loss_trace)?;
    println!(
        "trained {} rounds over {} classes, loss {:.4} -> {:.4}",
        outcome.ensemble.trees.len(),
        outcome.ensemble.classes,
        outcome.loss_trace.first().copied().unwrap_or(f64::NAN),
        outcome.loss_trace.last().copied().unwrap_or(f64::NAN)
    );
    Ok(())
}

// ---------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Trained model JSON; scores --input and evaluates the result.
    #[arg(long, value_name = "PATH", requires = "input", conflicts_with = "predictions")]
    pub model: Option<PathBuf>,
    /// Labeled feature table to score with --model.
    #[arg(long, value_name = "PATH", conflicts_with = "predictions")]
    pub input: Option<PathBuf>,
    /// Pre-computed prediction table to evaluate as-is.
    #[arg(long, value_name = "PATH")]
    pub predictions: Option<PathBuf>,
    /// Directory receiving report.json, roc.csv, pr.csv, and
    /// predictions.csv when scoring with --model.
    #[arg(long, value_name = "DIR")]
    pub output: PathBuf,
}

/// Model predictions over a labeled table, in both original labels and
/// dense class indices.
struct Scored {
    true_labels: Vec<u32>,
    predicted: Vec<u32>,
    proba: Matrix,
    report: EvaluationReport,
}

fn score(ensemble: &GbdtEnsemble, x: &Matrix, y: &[u32]) -> Result<Scored> {
    let classes = ensemble.labels.len();
    let index_of: BTreeMap<u32, usize> = ensemble
        .labels
        .iter()
        .enumerate()
        .map(|(k, &l)| (l, k))
        .collect();
    let mut true_idx = Vec::with_capacity(y.len());
    for &label in y {
        let Some(&k) = index_of.get(&label) else {
            return Err(CliError::Other(format!(
                "label {label} was never seen at training time"
            )));
        };
        true_idx.push(k as u32);
    }
    let mut proba_rows = Vec::with_capacity(x.rows());
    let mut pred_idx = Vec::with_capacity(x.rows());
    let mut predicted = Vec::with_capacity(x.rows());
    for i in 0..x.rows() {
        let p = ensemble.predict_proba(x.row(i))?;
        let mut best = 0usize;
        for k in 1..p.len() {
            if p[k] > p[best] {
                best = k;
            }
        }
        pred_idx.push(best as u32);
        predicted.push(ensemble.labels[best]);
        proba_rows.push(p);
    }
    let proba = Matrix::from_rows(&proba_rows)?;
    let report = evaluation_report(&true_idx, &pred_idx, Some(&proba), classes)?;
    Ok(Scored {
        true_labels: y.to_vec(),
        predicted,
        proba,
        report,
    })
}

/// Writes report.json plus curve CSVs; predictions.csv only in model mode.
fn write_report(dir: &Path, report: &EvaluationReport) -> Result<()> {
    persist::save(&dir.join("report.json"), "report", report)?;
    if let Some(roc) = &report.roc {
        csvio::write_roc(&dir.join("roc.csv"), roc)?;
    }
    if let Some(pr) = &report.pr {
        csvio::write_pr(&dir.join("pr.csv"), pr)?;
    }
    Ok(())
}

fn report_line(report: &EvaluationReport) -> String {
    let mut line = format!(
        "evaluated {} classes: accuracy {:.3}, macro F1 {:.3}",
        report.classes, report.scores.accuracy, report.scores.macro_f1
    );
    if let Some(auc) = report.macro_auc {
        line.push_str(&format!(", macro AUC {auc:.3}"));
    }
    line
}

pub fn run_evaluate(args: &EvaluateArgs) -> Result<()> {
    ensure_dir(&args.output)?;
    let report = match (&args.model, &args.input, &args.predictions) {
        (Some(model_path), Some(input), None) => {
            let ensemble: GbdtEnsemble = persist::load(model_path, "gbdt")?;
            ensemble.validate()?;
            let table = csvio::read_labeled(input)?;
            let scored = score(&ensemble, &table.features, &table.labels)?;
            csvio::write_predictions(
                &args.output.join("predictions.csv"),
                &scored.true_labels,
                &scored.predicted,
                &scored.proba,
            )?;
            write_report(&args.output, &scored.report)?;
            scored.report
        }
        (None, None, Some(pred_path)) => {
            let table = csvio::read_predictions(pred_path)?;
            let (true_idx, pred_idx, classes) = densify(&table.true_labels, &table.predicted)?;
            let report = evaluation_report(
                &true_idx,
                &pred_idx,
                table.probabilities.as_ref(),
                classes,
            )?;
            write_report(&args.output, &report)?;
            report
        }
        _ => {
            return Err(CliError::Config(
                "pass either --model with --input, or --predictions".into(),
            ))
        }
    };
    println!("{}", report_line(&report));
    Ok(())
}

/// Maps arbitrary label values onto dense indices 0..K, ascending.
fn densify(true_labels: &[u32], predicted: &[u32]) -> Result<(Vec<u32>, Vec<u32>, usize)> {
    let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
    for &l in true_labels.iter().chain(predicted) {
        seen.entry(l).or_insert(0);
    }
    for (k, v) in seen.values_mut().enumerate() {
        *v = k as u32;
    }
    let map = |labels: &[u32]| labels.iter().map(|l| seen[l]).collect::<Vec<u32>>();
    Ok((map(true_labels), map(predicted), seen.len()))
}

// ---------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Directory receiving every stage artifact plus manifest.json.
    #[arg(long, value_name = "DIR")]
    pub output: PathBuf,
}

/// Deterministic stratified split on record indices.
///
/// Indices of each class are shuffled with one shared derived stream and
/// the first round(fraction * n_c) go to train, clamped so every class
/// with at least two records keeps one on each side. Classes are visited
/// in ascending label order and both outputs are returned sorted.
pub fn stratified_split(labels: &[u32], fraction: f64, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut by_class: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    let mut rng = statelink_core::seed::rng(seed, "split");
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for (_, mut idx) in by_class {
        for j in (1..idx.len()).rev() {
            let k = rng.gen_range(0..=j);
            idx.swap(j, k);
        }
        let n = idx.len();
        let take = if n >= 2 {
            ((fraction * n as f64).round() as usize).clamp(1, n - 1)
        } else {
            n
        };
        train_idx.extend_from_slice(&idx[..take]);
        test_idx.extend_from_slice(&idx[take..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    (train_idx, test_idx)
}

/// Features and labels of a fully labeled link.
fn labeled_matrix(link: &StateDataLink) -> Result<(Matrix, Vec<u32>)> {
    let mut rows = Vec::with_capacity(link.records.len());
    let mut labels = Vec::with_capacity(link.records.len());
    for (i, r) in link.records.iter().enumerate() {
        let Some(label) = r.label else {
            return Err(CliError::Other(format!("record {i} carries no label")));
        };
        rows.push(r.features.clone());
        labels.push(label);
    }
    let x = Matrix::from_rows(&rows)?;
    Ok((x, labels))
}

fn take_rows(x: &Matrix, labels: &[u32], idx: &[usize]) -> Result<(Matrix, Vec<u32>)> {
    let rows: Vec<Vec<f64>> = idx.iter().map(|&i| x.row(i).to_vec()).collect();
    let y: Vec<u32> = idx.iter().map(|&i| labels[i]).collect();
    Ok((Matrix::from_rows(&rows)?, y))
}

pub fn run_pipeline(args: &PipelineArgs) -> Result<()> {
    let config = args.config.resolve()?;
    let dir = &args.output;
    ensure_dir(dir)?;

    let link = generate(&config.scenario)?;
    csvio::write_link(&dir.join("link.csv"), &link)?;
    println!(
        "generated {} records with {} features",
        link.records.len(),
        link.feature_width()
    );

    let outcome = cluster(&link, &config.cluster)?;
    csvio::write_cluster_labels(
        &dir.join("labels.csv"),
        &outcome.model.labels,
        &outcome.model.outlier_flags,
    )?;
    let (x, y) = labeled_matrix(&link)?;
    let ari = adjusted_rand_index(&y, &outcome.model.labels)?;
    let artifact = ClusterArtifact {
        pca: outcome.pca,
        model: outcome.model,
        subcluster_count: outcome.subcluster_count,
        bic: outcome.bic,
        candidates: outcome.candidates,
    };
    persist::save(&dir.join("cluster_model.json"), "cluster", &artifact)?;
    println!(
        "clustering selected k={} (ARI vs labels {ari:.3}, {} outliers)",
        artifact.model.k,
        artifact.model.outlier_count()
    );

    let (train_idx, test_idx) = stratified_split(&y, config.split_fraction, config.seed);
    println!(
        "split {} train / {} test records",
        train_idx.len(),
        test_idx.len()
    );
    let (x_train, y_train) = take_rows(&x, &y, &train_idx)?;
    let (x_test, y_test) = take_rows(&x, &y, &test_idx)?;

    let before = imbalance_degree(&class_counts(&y_train))?;
    let balanced = balance_dataset(&x_train, &y_train, &config.balance)?;
    csvio::write_balanced(&dir.join("balanced.csv"), &balanced)?;
    let y_balanced: Vec<u32> = balanced.records.iter().map(|r| r.label).collect();
    let after = imbalance_degree(&class_counts(&y_balanced))?;
    let synthetic = balanced.records.iter().filter(|r| r.is_synthetic()).count();
    println!(
        "balanced training set: imbalance {before:.3} -> {after:.3} ({synthetic} synthetic)"
    );

    let x_balanced = Matrix::from_rows(
        &balanced
            .records
            .iter()
            .map(|r| r.features.clone())
            .collect::<Vec<_>>(),
    )?;
    let trained = train_on(&config, &x_balanced, &y_balanced)?;
    persist::save(&dir.join("model.json"), "gbdt", &trained.ensemble)?;
    csvio::write_loss_trace(&dir.join("loss_trace.csv"), &trained.loss_trace)?;
    println!(
        "trained {} rounds, loss {:.4} -> {:.4}",
        trained.ensemble.trees.len(),
        trained.loss_trace.first().copied().unwrap_or(f64::NAN),
        trained.loss_trace.last().copied().unwrap_or(f64::NAN)
    );

    let scored = score(&trained.ensemble, &x_test, &y_test)?;
    csvio::write_predictions(
        &dir.join("predictions.csv"),
        &scored.true_labels,
        &scored.predicted,
        &scored.proba,
    )?;
    write_report(dir, &scored.report)?;
    println!("{}", report_line(&scored.report));

    let names = [
        "balanced.csv",
        "cluster_model.json",
        "labels.csv",
        "link.csv",
        "loss_trace.csv",
        "model.json",
        "pr.csv",
        "predictions.csv",
        "report.json",
        "roc.csv",
    ];
    let manifest = manifest::build(dir, &names)?;
    manifest::save(&dir.join("manifest.json"), &manifest)?;
    println!(
        "wrote {} files -> {}",
        manifest.files.len() + 1,
        dir.join("manifest.json").display()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratified_split_keeps_class_shares_and_determinism() {
        let labels: Vec<u32> = (0..100)
            .map(|i| if i < 60 { 0 } else if i < 90 { 1 } else { 2 })
            .collect();
        let (train, test) = stratified_split(&labels, 0.7, 42);
        assert_eq!(train.len(), 70);
        assert_eq!(test.len(), 30);
        let count = |idx: &[usize], class: u32| {
            idx.iter().filter(|&&i| labels[i] == class).count()
        };
        assert_eq!(count(&train, 0), 42);
        assert_eq!(count(&train, 1), 21);
        assert_eq!(count(&train, 2), 7);

        // Disjoint and exhaustive.
        let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..100).collect::<Vec<_>>());

        // Same seed reproduces, another seed differs.
        assert_eq!(stratified_split(&labels, 0.7, 42), (train.clone(), test));
        assert_ne!(stratified_split(&labels, 0.7, 43).0, train);
    }

    #[test]
    fn stratified_split_keeps_tiny_classes_on_both_sides() {
        let labels = vec![0, 0, 1, 1, 2];
        let (train, test) = stratified_split(&labels, 0.9, 1);
        // Classes 0 and 1 put one record on each side; the singleton
        // class 2 trains only.
        assert_eq!(train.len(), 3);
        assert_eq!(test.len(), 2);
        assert!(train.contains(&4));
    }

    #[test]
    fn densify_maps_sparse_labels_to_dense_indices() {
        let (t, p, k) = densify(&[7, 2, 7, 9], &[2, 2, 9, 9]).unwrap();
        assert_eq!(k, 3);
        assert_eq!(t, vec![1, 0, 1, 2]);
        assert_eq!(p, vec![0, 0, 2, 2]);
    }
}
