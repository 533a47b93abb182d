//! Adaptive synthetic oversampling for imbalanced labeled datasets.
//!
//! Minority classes are grown by interpolating new records between existing
//! same-class members. Samples whose neighborhoods are dominated by other
//! classes receive proportionally more synthetics, which concentrates the
//! new mass along decision boundaries instead of deep inside a class.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::matrix::Matrix;
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Settings for adaptive oversampling.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AdasynConfig {
    /// Largest tolerated ratio of majority count to a class count before
    /// that class is oversampled. Must exceed 1.
    pub imbalance_threshold: f64,
    /// Fraction of the majority-minority gap to fill, in [0, 1].
    pub beta: f64,
    /// Neighborhood size for density estimation and partner selection.
    pub neighbors: usize,
    /// Master seed for partner choice and interpolation draws.
    pub seed: u64,
}

impl Default for AdasynConfig {
    fn default() -> Self {
        Self {
            imbalance_threshold: 1.2,
            beta: 1.0,
            neighbors: 5,
            seed: 0,
        }
    }
}

impl AdasynConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.imbalance_threshold.is_finite() || self.imbalance_threshold <= 1.0 {
            return Err(Error::InvalidConfig(format!(
                "imbalance threshold must be finite and exceed 1, got {}",
                self.imbalance_threshold
            )));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::InvalidConfig(format!(
                "beta must lie in [0, 1], got {}",
                self.beta
            )));
        }
        if self.neighbors == 0 {
            return Err(Error::InvalidConfig(
                "neighborhood size must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Where a synthetic record came from: the two parent rows of the input
/// dataset and the interpolation factor between them.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SyntheticOrigin {
    /// Input row the synthetic grew from.
    pub source_index: usize,
    /// Same-class input row it interpolated toward.
    pub neighbor_index: usize,
    /// Interpolation factor in [0, 1); 0 reproduces the source.
    pub eta: f64,
}

/// One record of a balanced dataset; synthetic records carry their origin.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BalancedRecord {
    pub features: Vec<f64>,
    pub label: u32,
    pub origin: Option<SyntheticOrigin>,
}

impl BalancedRecord {
    pub fn is_synthetic(&self) -> bool {
        self.origin.is_some()
    }
}

/// Original records in input order followed by synthesized records.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BalancedDataset {
    pub records: Vec<BalancedRecord>,
    /// Classes too small to oversample (fewer than 2 members); left as-is.
    pub skipped_classes: Vec<u32>,
}

impl BalancedDataset {
    pub fn class_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for r in &self.records {
            *counts.entry(r.label).or_insert(0) += 1;
        }
        counts
    }

    pub fn synthetic_count(&self) -> usize {
        self.records.iter().filter(|r| r.is_synthetic()).count()
    }
}

/// Ratio of the largest class count to the smallest.
pub fn imbalance_degree(class_counts: &[usize]) -> Result<f64> {
    if class_counts.len() < 2 {
        return Err(Error::InsufficientData(
            "imbalance degree needs at least two classes",
        ));
    }
    let mut min = usize::MAX;
    let mut max = 0usize;
    for &c in class_counts {
        if c == 0 {
            return Err(Error::InsufficientData(
                "every class needs at least one sample",
            ));
        }
        min = min.min(c);
        max = max.max(c);
    }
    Ok(max as f64 / min as f64)
}

/// Number of synthetics to create for a class: the gap to the majority
/// count scaled by `beta` and rounded to the nearest integer.
pub fn synthesis_budget(majority_count: usize, minority_count: usize, beta: f64) -> usize {
    let gap = majority_count.saturating_sub(minority_count) as f64;
    (gap * beta).round() as usize
}

/// Normalizes raw neighbor ratios to sum to one; falls back to uniform
/// weights when every ratio is zero.
pub fn normalize_ratios(raw: &[f64]) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    if total > 0.0 {
        raw.iter().map(|r| r / total).collect()
    } else {
        let n = raw.len().max(1);
        vec![1.0 / n as f64; raw.len()]
    }
}

/// Normalized foreign-neighbor share for each minority sample, in the order
/// the minority samples appear in `x`. A sample's raw ratio is the fraction
/// of its `k` nearest rows (Euclidean, self excluded) with another label.
pub fn neighbor_ratios(x: &Matrix, y: &[u32], minority_class: u32, k: usize) -> Result<Vec<f64>> {
    if y.len() != x.rows() {
        return Err(Error::ShapeMismatch {
            what: "label count",
            expected: x.rows(),
            got: y.len(),
        });
    }
    if k == 0 || k >= x.rows() {
        return Err(Error::InvalidConfig(format!(
            "neighborhood size must be in [1, {}), got {k}",
            x.rows()
        )));
    }
    let minority: Vec<usize> = (0..x.rows()).filter(|&i| y[i] == minority_class).collect();
    if minority.is_empty() {
        return Err(Error::MissingClass(minority_class));
    }
    let raw: Vec<f64> = minority
        .iter()
        .map(|&i| {
            let foreign = nearest_rows(x, i, k)
                .iter()
                .filter(|&&j| y[j] != minority_class)
                .count();
            foreign as f64 / k as f64
        })
        .collect();
    Ok(normalize_ratios(&raw))
}

/// Integer synthesis counts per sample: nearest-integer targets corrected
/// by largest remainder so the counts sum to `budget` exactly.
pub fn per_sample_counts(ratios: &[f64], budget: usize) -> Vec<usize> {
    if ratios.is_empty() {
        return Vec::new();
    }
    let targets: Vec<f64> = ratios.iter().map(|r| r * budget as f64).collect();
    let mut counts: Vec<i64> = targets.iter().map(|t| t.round() as i64).collect();
    let mut assigned: i64 = counts.iter().sum();
    let want = budget as i64;
    while assigned < want {
        let mut pick = 0;
        let mut best = f64::NEG_INFINITY;
        for (i, (&t, &c)) in targets.iter().zip(&counts).enumerate() {
            let residual = t - c as f64;
            if residual > best {
                best = residual;
                pick = i;
            }
        }
        counts[pick] += 1;
        assigned += 1;
    }
    while assigned > want {
        let mut pick = usize::MAX;
        let mut best = f64::INFINITY;
        for (i, (&t, &c)) in targets.iter().zip(&counts).enumerate() {
            let residual = t - c as f64;
            if c > 0 && residual < best {
                best = residual;
                pick = i;
            }
        }
        counts[pick] -= 1;
        assigned -= 1;
    }
    counts.into_iter().map(|c| c as usize).collect()
}

/// Linear interpolation between two parent vectors: source + (partner - source) * eta.
pub fn synthesize_sample(xi: &[f64], xzi: &[f64], eta: f64) -> Result<Vec<f64>> {
    if xi.len() != xzi.len() {
        return Err(Error::ShapeMismatch {
            what: "interpolation parent width",
            expected: xi.len(),
            got: xzi.len(),
        });
    }
    Ok(xi.iter().zip(xzi).map(|(a, b)| a + (b - a) * eta).collect())
}

/// Oversamples every class whose count trails the majority by more than the
/// configured threshold. Original records come first, unchanged and in input
/// order; synthetics follow, each tagged with its parents and draw.
///
/// Internally the rows are processed in a canonical order (lexicographic by
/// features, then label), and each source sample draws from its own counter
/// stream, so the synthesized content does not depend on input row order.
pub fn balance_dataset(x: &Matrix, y: &[u32], config: &AdasynConfig) -> Result<BalancedDataset> {
    config.validate()?;
    if x.rows() != y.len() {
        return Err(Error::ShapeMismatch {
            what: "label count",
            expected: x.rows(),
            got: y.len(),
        });
    }
    if x.rows() == 0 {
        return Err(Error::EmptyInput("balance_dataset"));
    }
    if config.neighbors >= x.rows() {
        return Err(Error::InvalidConfig(format!(
            "neighborhood size {} needs a dataset larger than itself, got {} rows",
            config.neighbors,
            x.rows()
        )));
    }

    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &label in y {
        *counts.entry(label).or_insert(0) += 1;
    }
    if counts.len() < 2 {
        return Err(Error::InsufficientData(
            "balancing needs at least two classes",
        ));
    }
    let majority = counts.values().copied().max().unwrap_or(0);

    // Canonical processing order: permuting the input rows permutes only
    // this sort's tie-breaks among identical records, so every canonical
    // position holds the same (features, label) content regardless.
    let mut canon: Vec<usize> = (0..x.rows()).collect();
    canon.sort_by(|&a, &b| {
        lex_cmp(x.row(a), x.row(b))
            .then(y[a].cmp(&y[b]))
            .then(a.cmp(&b))
    });
    let rows_sorted: Vec<Vec<f64>> = canon.iter().map(|&i| x.row(i).to_vec()).collect();
    let sorted = Matrix::from_rows(&rows_sorted)?;
    let labels_sorted: Vec<u32> = canon.iter().map(|&i| y[i]).collect();

    let mut records: Vec<BalancedRecord> = (0..x.rows())
        .map(|i| BalancedRecord {
            features: x.row(i).to_vec(),
            label: y[i],
            origin: None,
        })
        .collect();
    let mut skipped = Vec::new();

    for (&class, &count) in &counts {
        let ratio = majority as f64 / count as f64;
        if ratio <= config.imbalance_threshold {
            continue;
        }
        if count < 2 {
            skipped.push(class);
            continue;
        }
        let budget = synthesis_budget(majority, count, config.beta);
        if budget == 0 {
            continue;
        }

        let members: Vec<usize> = (0..sorted.rows())
            .filter(|&p| labels_sorted[p] == class)
            .collect();
        let neighborhoods: Vec<Vec<usize>> = members
            .iter()
            .map(|&p| nearest_rows(&sorted, p, config.neighbors))
            .collect();
        let raw: Vec<f64> = neighborhoods
            .iter()
            .map(|nn| {
                let foreign = nn.iter().filter(|&&q| labels_sorted[q] != class).count();
                foreign as f64 / config.neighbors as f64
            })
            .collect();
        let weights = normalize_ratios(&raw);
        let per_sample = per_sample_counts(&weights, budget);

        for ((&p, nn), &g) in members.iter().zip(&neighborhoods).zip(&per_sample) {
            if g == 0 {
                continue;
            }
            let partners: Vec<usize> = nn
                .iter()
                .copied()
                .filter(|&q| labels_sorted[q] == class)
                .collect();
            // A partner must share the class; when the neighborhood has
            // none, fall back to the nearest same-class row overall.
            let fallback = if partners.is_empty() {
                Some(nearest_class_member(&sorted, &labels_sorted, p, class))
            } else {
                None
            };
            let mut rng = crate::seed::rng_counted(config.seed, "balance", p as u64);
            for _ in 0..g {
                let partner = match fallback {
                    Some(q) => q,
                    None => partners[rng.gen_range(0..partners.len())],
                };
                let eta: f64 = rng.gen();
                let features = synthesize_sample(sorted.row(p), sorted.row(partner), eta)?;
                records.push(BalancedRecord {
                    features,
                    label: class,
                    origin: Some(SyntheticOrigin {
                        source_index: canon[p],
                        neighbor_index: canon[partner],
                        eta,
                    }),
                });
            }
        }
    }

    Ok(BalancedDataset {
        records,
        skipped_classes: skipped,
    })
}

/// Positions of the `k` nearest rows to `query` (self excluded), ordered by
/// distance with index ties broken low.
fn nearest_rows(x: &Matrix, query: usize, k: usize) -> Vec<usize> {
    let mut order: Vec<(f64, usize)> = (0..x.rows())
        .filter(|&j| j != query)
        .map(|j| (sq_dist(x.row(query), x.row(j)), j))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order.truncate(k);
    order.into_iter().map(|(_, j)| j).collect()
}

fn nearest_class_member(x: &Matrix, y: &[u32], query: usize, class: u32) -> usize {
    let mut best = (f64::INFINITY, usize::MAX);
    for (j, &label) in y.iter().enumerate() {
        if j == query || label != class {
            continue;
        }
        let d = sq_dist(x.row(query), x.row(j));
        if d < best.0 {
            best = (d, j);
        }
    }
    best.1
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> core::cmp::Ordering {
    for (p, q) in a.iter().zip(b) {
        let ord = p.total_cmp(q);
        if ord != core::cmp::Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}
