//! Evaluation metrics: partition agreement, confusion counts, threshold
//! curves, and per-class summary scores.
//!
//! The adjusted Rand index is computed in exact integer arithmetic with a
//! single final division, so desk-size results can be compared bit-for-bit
//! against pair-counting oracles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::{Error, Result};

/// One point of a ROC sweep; the threshold admits records with scores at
/// or above it, so +inf anchors (0,0) and -inf closes at (1,1).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RocPoint {
    pub threshold: f64,
    pub false_positive_rate: f64,
    pub true_positive_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub auc: f64,
}

/// One point of a precision-recall sweep over descending thresholds.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrPoint {
    pub threshold: f64,
    pub recall: f64,
    pub precision: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrCurve {
    pub points: Vec<PrPoint>,
    pub average_precision: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Per-class precision/recall/F1 with unweighted macro means and overall
/// accuracy, all derived from one confusion matrix.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrfSummary {
    pub per_class: Vec<ClassMetrics>,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub accuracy: f64,
}

/// Full evaluation bundle; curve fields are present only when class
/// probabilities were available.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvaluationReport {
    pub classes: usize,
    /// Rows = true class, columns = predicted class.
    pub confusion: Vec<Vec<u64>>,
    pub scores: PrfSummary,
    pub adjusted_rand: f64,
    pub per_class_auc: Option<Vec<f64>>,
    pub macro_auc: Option<f64>,
    pub roc: Option<Vec<RocCurve>>,
    pub pr: Option<Vec<PrCurve>>,
}

/// Agreement between two labelings of the same records, corrected for
/// chance: 1 for identical partitions, near 0 for independent ones. Exact
/// integer pair counting with one final division.
pub fn adjusted_rand_index(a: &[u32], b: &[u32]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            what: "labeling length",
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::InsufficientData(
            "partition agreement needs at least two records",
        ));
    }

    let mut cells: BTreeMap<(u32, u32), i128> = BTreeMap::new();
    let mut rows: BTreeMap<u32, i128> = BTreeMap::new();
    let mut cols: BTreeMap<u32, i128> = BTreeMap::new();
    for (&la, &lb) in a.iter().zip(b) {
        *cells.entry((la, lb)).or_insert(0) += 1;
        *rows.entry(la).or_insert(0) += 1;
        *cols.entry(lb).or_insert(0) += 1;
    }
    let choose2 = |x: i128| x * (x - 1) / 2;
    let together: i128 = cells.values().map(|&c| choose2(c)).sum();
    let a2: i128 = rows.values().map(|&c| choose2(c)).sum();
    let b2: i128 = cols.values().map(|&c| choose2(c)).sum();
    let t = choose2(a.len() as i128);

    let num2 = 2 * (t * together - a2 * b2);
    let den2 = t * (a2 + b2) - 2 * a2 * b2;
    if den2 == 0 {
        return Ok(if same_partition(a, b) { 1.0 } else { 0.0 });
    }
    Ok(num2 as f64 / den2 as f64)
}

/// True when both labelings induce the same partition (equal up to a
/// renaming of labels).
fn same_partition(a: &[u32], b: &[u32]) -> bool {
    normalize_labels(a) == normalize_labels(b)
}

/// Relabels by first occurrence: the partition's canonical form.
fn normalize_labels(labels: &[u32]) -> Vec<u32> {
    let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = seen.len() as u32;
            *seen.entry(l).or_insert(next)
        })
        .collect()
}

/// K x K counts; entry (i, j) counts records with true class i predicted j.
pub fn confusion_matrix(
    true_labels: &[u32],
    predicted_labels: &[u32],
    classes: usize,
) -> Result<Vec<Vec<u64>>> {
    if true_labels.len() != predicted_labels.len() {
        return Err(Error::ShapeMismatch {
            what: "prediction count",
            expected: true_labels.len(),
            got: predicted_labels.len(),
        });
    }
    let mut matrix = vec![vec![0u64; classes]; classes];
    for (index, (&t, &p)) in true_labels.iter().zip(predicted_labels).enumerate() {
        for label in [t, p] {
            if label as usize >= classes {
                return Err(Error::LabelOutOfRange {
                    index,
                    label,
                    classes,
                });
            }
        }
        matrix[t as usize][p as usize] += 1;
    }
    Ok(matrix)
}

/// Sorted row order by descending class-k probability, index ties low.
fn descending_order(proba: &Matrix, class: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..proba.rows()).collect();
    order.sort_by(|&i, &j| {
        proba
            .get(j, class)
            .total_cmp(&proba.get(i, class))
            .then(i.cmp(&j))
    });
    order
}

fn curve_counts(true_labels: &[u32], proba: &Matrix, class: usize) -> Result<(u64, u64)> {
    if true_labels.len() != proba.rows() {
        return Err(Error::ShapeMismatch {
            what: "probability rows",
            expected: true_labels.len(),
            got: proba.rows(),
        });
    }
    if class >= proba.cols() {
        return Err(Error::ShapeMismatch {
            what: "class column",
            expected: proba.cols(),
            got: class,
        });
    }
    let positives = true_labels.iter().filter(|&&l| l as usize == class).count() as u64;
    if positives == 0 {
        return Err(Error::UndefinedClass(format!(
            "class {class} has no positive records"
        )));
    }
    Ok((positives, true_labels.len() as u64 - positives))
}

/// One-vs-rest ROC for one class: thresholds sweep the distinct class-k
/// probabilities descending, tied scores advance as one step, and the area
/// follows the trapezoid rule (equal to the rank statistic with ties at
/// half weight).
pub fn roc_auc(true_labels: &[u32], proba: &Matrix, class: usize) -> Result<RocCurve> {
    let (positives, negatives) = curve_counts(true_labels, proba, class)?;
    if negatives == 0 {
        return Err(Error::UndefinedClass(format!(
            "class {class} has no negative records"
        )));
    }

    let order = descending_order(proba, class);
    let mut points = vec![RocPoint {
        threshold: f64::INFINITY,
        false_positive_rate: 0.0,
        true_positive_rate: 0.0,
    }];
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut at = 0;
    while at < order.len() {
        let score = proba.get(order[at], class);
        while at < order.len() && proba.get(order[at], class) == score {
            if true_labels[order[at]] as usize == class {
                tp += 1;
            } else {
                fp += 1;
            }
            at += 1;
        }
        points.push(RocPoint {
            threshold: score,
            false_positive_rate: fp as f64 / negatives as f64,
            true_positive_rate: tp as f64 / positives as f64,
        });
    }
    points.push(RocPoint {
        threshold: f64::NEG_INFINITY,
        false_positive_rate: 1.0,
        true_positive_rate: 1.0,
    });

    let mut auc = 0.0;
    for pair in points.windows(2) {
        let dx = pair[1].false_positive_rate - pair[0].false_positive_rate;
        auc += dx * 0.5 * (pair[1].true_positive_rate + pair[0].true_positive_rate);
    }
    Ok(RocCurve { points, auc })
}

/// One-vs-rest precision-recall sweep for one class; precision at zero
/// predicted positives anchors at 1, and average precision is the
/// step-wise sum of precision times recall increments.
pub fn pr_curve(true_labels: &[u32], proba: &Matrix, class: usize) -> Result<PrCurve> {
    let (positives, _) = curve_counts(true_labels, proba, class)?;

    let order = descending_order(proba, class);
    let mut points = vec![PrPoint {
        threshold: f64::INFINITY,
        recall: 0.0,
        precision: 1.0,
    }];
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut average_precision = 0.0;
    let mut last_recall = 0.0;
    let mut at = 0;
    while at < order.len() {
        let score = proba.get(order[at], class);
        while at < order.len() && proba.get(order[at], class) == score {
            if true_labels[order[at]] as usize == class {
                tp += 1;
            } else {
                fp += 1;
            }
            at += 1;
        }
        let recall = tp as f64 / positives as f64;
        let precision = tp as f64 / (tp + fp) as f64;
        average_precision += (recall - last_recall) * precision;
        last_recall = recall;
        points.push(PrPoint {
            threshold: score,
            recall,
            precision,
        });
    }

    Ok(PrCurve {
        points,
        average_precision,
    })
}

/// Summary scores from a confusion matrix. Zero-denominator conventions:
/// an unpredicted class has precision 0, an absent class recall 0, and F1
/// is 0 whenever precision and recall are both 0.
pub fn precision_recall_f1(confusion: &[Vec<u64>]) -> Result<PrfSummary> {
    let k = confusion.len();
    if k == 0 {
        return Err(Error::EmptyInput("confusion matrix"));
    }
    for row in confusion {
        if row.len() != k {
            return Err(Error::ShapeMismatch {
                what: "confusion matrix row",
                expected: k,
                got: row.len(),
            });
        }
    }
    let total: u64 = confusion.iter().flatten().sum();
    if total == 0 {
        return Err(Error::EmptyInput("confusion matrix counts"));
    }

    let mut per_class = Vec::with_capacity(k);
    let mut trace = 0u64;
    for c in 0..k {
        let diag = confusion[c][c];
        trace += diag;
        let row_sum: u64 = confusion[c].iter().sum();
        let col_sum: u64 = confusion.iter().map(|row| row[c]).sum();
        let precision = if col_sum == 0 {
            0.0
        } else {
            diag as f64 / col_sum as f64
        };
        let recall = if row_sum == 0 {
            0.0
        } else {
            diag as f64 / row_sum as f64
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        per_class.push(ClassMetrics {
            precision,
            recall,
            f1,
        });
    }

    let mean = |pick: fn(&ClassMetrics) -> f64| -> f64 {
        per_class.iter().map(pick).sum::<f64>() / k as f64
    };
    Ok(PrfSummary {
        macro_precision: mean(|m| m.precision),
        macro_recall: mean(|m| m.recall),
        macro_f1: mean(|m| m.f1),
        accuracy: trace as f64 / total as f64,
        per_class,
    })
}

/// Assembles the full report; pass probabilities to include ROC/PR curves
/// and AUC values, which require every class to appear among the true
/// labels.
pub fn evaluation_report(
    true_labels: &[u32],
    predicted_labels: &[u32],
    probabilities: Option<&Matrix>,
    classes: usize,
) -> Result<EvaluationReport> {
    let confusion = confusion_matrix(true_labels, predicted_labels, classes)?;
    let scores = precision_recall_f1(&confusion)?;
    let adjusted_rand = adjusted_rand_index(true_labels, predicted_labels)?;

    let (mut per_class_auc, mut macro_auc, mut roc, mut pr) = (None, None, None, None);
    if let Some(proba) = probabilities {
        let mut roc_curves = Vec::with_capacity(classes);
        let mut pr_curves = Vec::with_capacity(classes);
        for k in 0..classes {
            roc_curves.push(roc_auc(true_labels, proba, k)?);
            pr_curves.push(pr_curve(true_labels, proba, k)?);
        }
        let aucs: Vec<f64> = roc_curves.iter().map(|c| c.auc).collect();
        macro_auc = Some(aucs.iter().sum::<f64>() / classes as f64);
        per_class_auc = Some(aucs);
        roc = Some(roc_curves);
        pr = Some(pr_curves);
    }

    Ok(EvaluationReport {
        classes,
        confusion,
        scores,
        adjusted_rand,
        per_class_auc,
        macro_auc,
        roc,
        pr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// Pair-enumeration oracle: walks every record pair and rebuilds the
    /// index from the four pair categories, sharing only the final
    /// integer division with the implementation.
    fn ari_pairs_oracle(a: &[u32], b: &[u32]) -> f64 {
        let n = a.len();
        let (mut both, mut only_a, mut only_b, mut neither) = (0i128, 0i128, 0i128, 0i128);
        for i in 0..n {
            for j in (i + 1)..n {
                match (a[i] == a[j], b[i] == b[j]) {
                    (true, true) => both += 1,
                    (true, false) => only_a += 1,
                    (false, true) => only_b += 1,
                    (false, false) => neither += 1,
                }
            }
        }
        let t = both + only_a + only_b + neither;
        let a2 = both + only_a;
        let b2 = both + only_b;
        let num2 = 2 * (t * both - a2 * b2);
        let den2 = t * (a2 + b2) - 2 * a2 * b2;
        if den2 == 0 {
            return if only_a == 0 && only_b == 0 { 1.0 } else { 0.0 };
        }
        num2 as f64 / den2 as f64
    }

    /// Rank-statistic oracle: share of positive-negative pairs ranked
    /// correctly, ties at half weight.
    fn mann_whitney_auc(y: &[u32], scores: &[f64], class: u32) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (i, &yi) in y.iter().enumerate() {
            if yi != class {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == class {
                    continue;
                }
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    fn column_matrix(scores: &[f64]) -> Matrix {
        let rows: Vec<Vec<f64>> = scores.iter().map(|&s| vec![1.0 - s, s]).collect();
        Matrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn identical_labelings_score_one() {
        let y = [0u32, 1, 1, 2, 0, 2, 1];
        assert_eq!(adjusted_rand_index(&y, &y).unwrap(), 1.0);
        let renamed: Vec<u32> = y.iter().map(|&l| (l + 5) * 3).collect();
        assert_eq!(adjusted_rand_index(&y, &renamed).unwrap(), 1.0);
    }

    #[test]
    fn one_cluster_versus_singletons_scores_zero() {
        let a = [0u32, 0, 0, 0];
        let b = [0u32, 1, 2, 3];
        assert_eq!(adjusted_rand_index(&a, &b).unwrap(), 0.0);
        assert_eq!(adjusted_rand_index(&b, &a).unwrap(), 0.0);
    }

    #[test]
    fn agreement_matches_pair_oracle_exactly() {
        let mut rng = crate::seed::rng(41, "metrics-test");
        for _ in 0..1000 {
            let n = 2 + rng.gen_range(0..7);
            let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let got = adjusted_rand_index(&a, &b).unwrap();
            let want = ari_pairs_oracle(&a, &b);
            assert_eq!(got.to_bits(), want.to_bits(), "a {a:?} b {b:?}");
            let swapped = adjusted_rand_index(&b, &a).unwrap();
            assert_eq!(got.to_bits(), swapped.to_bits());
        }
    }

    #[test]
    fn degenerate_partitions_follow_convention() {
        // Both all-singletons but different names: same partition.
        assert_eq!(adjusted_rand_index(&[3, 1, 2], &[0, 5, 9]).unwrap(), 1.0);
        // Both single-cluster: same partition.
        assert_eq!(adjusted_rand_index(&[7, 7], &[1, 1]).unwrap(), 1.0);
        // Two records, split vs together: degenerate denominator, different.
        assert_eq!(adjusted_rand_index(&[0, 1], &[0, 0]).unwrap(), 0.0);
        assert!(adjusted_rand_index(&[0, 1], &[0]).is_err());
        assert!(adjusted_rand_index(&[0], &[0]).is_err());
    }

    #[test]
    fn confusion_counts_match_hand_tally() {
        let t = [0u32, 0, 1, 1, 2, 2];
        let p = [0u32, 1, 1, 1, 2, 0];
        let m = confusion_matrix(&t, &p, 3).unwrap();
        assert_eq!(m, vec![vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1]]);

        let perfect = confusion_matrix(&t, &t, 3).unwrap();
        for (i, row) in perfect.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                assert_eq!(c, if i == j { 2 } else { 0 });
            }
        }

        let zeros = confusion_matrix(&t, &[0; 6], 3).unwrap();
        assert!(zeros.iter().all(|row| row[1] == 0 && row[2] == 0));
        assert!(matches!(
            confusion_matrix(&t, &[0, 0, 0, 0, 0, 9], 3),
            Err(Error::LabelOutOfRange { index: 5, label: 9, classes: 3 })
        ));
    }

    #[test]
    fn roc_separates_and_matches_rank_oracle() {
        let y = [1u32, 0, 1, 0];
        let scores = [0.9, 0.8, 0.4, 0.2];
        let curve = roc_auc(&y, &column_matrix(&scores), 1).unwrap();
        assert_eq!(curve.auc, 0.75);
        assert_eq!(curve.auc, mann_whitney_auc(&y, &scores, 1));

        // Random cases with deliberate ties from a coarse score grid.
        let mut rng = crate::seed::rng(42, "metrics-test");
        for _ in 0..50 {
            let n = 6 + rng.gen_range(0..20);
            let y: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            if y.iter().all(|&v| v == 0) || y.iter().all(|&v| v == 1) {
                continue;
            }
            let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64 / 5.0).collect();
            let curve = roc_auc(&y, &column_matrix(&scores), 1).unwrap();
            let want = mann_whitney_auc(&y, &scores, 1);
            assert!((curve.auc - want).abs() < 1e-12);
        }
    }

    #[test]
    fn roc_handles_perfect_and_chance_scores() {
        let y = [0u32, 0, 1, 1];
        let perfect = roc_auc(&y, &column_matrix(&[0.1, 0.2, 0.8, 0.9]), 1).unwrap();
        assert_eq!(perfect.auc, 1.0);
        let chance = roc_auc(&y, &column_matrix(&[0.5, 0.5, 0.5, 0.5]), 1).unwrap();
        assert_eq!(chance.auc, 0.5);

        assert!(matches!(
            roc_auc(&[0, 0, 0], &column_matrix(&[0.1, 0.2, 0.3]), 1),
            Err(Error::UndefinedClass(_))
        ));
        assert!(matches!(
            roc_auc(&[1, 1, 1], &column_matrix(&[0.1, 0.2, 0.3]), 1),
            Err(Error::UndefinedClass(_))
        ));
    }

    #[test]
    fn auc_ignores_monotone_score_transforms() {
        let mut rng = crate::seed::rng(43, "metrics-test");
        let n = 30;
        let y: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let scores: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let warped: Vec<f64> = scores.iter().map(|s| (3.0 * s).exp()).collect();
        let a = roc_auc(&y, &column_matrix(&scores), 1).unwrap();
        let b = roc_auc(&y, &column_matrix(&warped), 1).unwrap();
        assert_eq!(a.auc.to_bits(), b.auc.to_bits());
    }

    #[test]
    fn pr_ladder_matches_hand_trace() {
        let y = [1u32, 0, 1, 0];
        let curve = pr_curve(&y, &column_matrix(&[0.9, 0.8, 0.4, 0.2]), 1).unwrap();
        let got: Vec<(f64, f64)> = curve.points.iter().map(|p| (p.recall, p.precision)).collect();
        assert_eq!(
            got,
            vec![
                (0.0, 1.0),
                (0.5, 1.0),
                (0.5, 0.5),
                (1.0, 2.0 / 3.0),
                (1.0, 0.5),
            ]
        );
        assert!((curve.average_precision - (0.5 + 0.5 * (2.0 / 3.0))).abs() < 1e-12);

        let perfect = pr_curve(&y, &column_matrix(&[0.9, 0.1, 0.8, 0.2]), 1).unwrap();
        assert!(perfect
            .points
            .iter()
            .any(|p| p.recall == 1.0 && p.precision == 1.0));
        assert_eq!(perfect.average_precision, 1.0);

        assert!(matches!(
            pr_curve(&[0, 0, 0], &column_matrix(&[0.1, 0.2, 0.3]), 1),
            Err(Error::UndefinedClass(_))
        ));
    }

    #[test]
    fn summary_scores_from_confusion() {
        let diagonal = vec![vec![5u64, 0], vec![0, 9]];
        let s = precision_recall_f1(&diagonal).unwrap();
        assert_eq!(s.accuracy, 1.0);
        assert_eq!(s.macro_f1, 1.0);
        assert!(s.per_class.iter().all(|m| m.precision == 1.0 && m.recall == 1.0));

        let mixed = vec![vec![8u64, 2], vec![3, 7]];
        let s = precision_recall_f1(&mixed).unwrap();
        assert_eq!(s.per_class[0].precision, 8.0 / 11.0);
        assert_eq!(s.per_class[1].precision, 7.0 / 9.0);
        assert_eq!(s.per_class[0].recall, 0.8);
        assert_eq!(s.per_class[1].recall, 0.7);
        assert_eq!(s.accuracy, 0.75);

        let unpredicted = vec![vec![0u64, 3], vec![0, 5]];
        let s = precision_recall_f1(&unpredicted).unwrap();
        assert_eq!(s.per_class[0].precision, 0.0);
        assert_eq!(s.per_class[0].f1, 0.0);

        let max_f1 = s.per_class.iter().map(|m| m.f1).fold(0.0, f64::max);
        assert!(s.macro_f1 <= max_f1);
    }

    #[test]
    fn report_bundles_all_metrics() {
        let t = [0u32, 0, 1, 1, 2, 2];
        let p = [0u32, 0, 1, 2, 2, 2];
        let proba = Matrix::from_rows(&[
            vec![0.8, 0.1, 0.1],
            vec![0.7, 0.2, 0.1],
            vec![0.2, 0.6, 0.2],
            vec![0.1, 0.3, 0.6],
            vec![0.1, 0.2, 0.7],
            vec![0.0, 0.1, 0.9],
        ])
        .unwrap();
        let report = evaluation_report(&t, &p, Some(&proba), 3).unwrap();
        for (c, row) in report.confusion.iter().enumerate() {
            let row_sum: u64 = row.iter().sum();
            assert_eq!(row_sum, t.iter().filter(|&&l| l as usize == c).count() as u64);
        }
        let aucs = report.per_class_auc.as_ref().unwrap();
        assert_eq!(aucs.len(), 3);
        let mean: f64 = aucs.iter().sum::<f64>() / 3.0;
        assert_eq!(report.macro_auc.unwrap(), mean);
        assert_eq!(report.roc.as_ref().unwrap().len(), 3);
        assert_eq!(report.pr.as_ref().unwrap().len(), 3);
        assert!(report.adjusted_rand > 0.0 && report.adjusted_rand < 1.0);

        let bare = evaluation_report(&t, &p, None, 3).unwrap();
        assert!(bare.roc.is_none() && bare.macro_auc.is_none());
        assert_eq!(bare.confusion, report.confusion);
    }
}
