//! Cost-sensitive multiclass gradient boosting over regression trees.
//!
//! Each boosting round fits one tree per class against the cost-weighted
//! softmax residuals and advances the score matrix by a shrunken step.
//! Per-class weights let rare or expensive classes pull the decision
//! boundary toward higher recall at the price of more false alarms.

pub mod tree;

pub use tree::{fit_regression_tree, leaf_values, CartTree, FittedTree, TreeNode};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Probabilities are floored here inside the loss so a confident miss
/// stays finite.
const PROBABILITY_FLOOR: f64 = 1e-15;

/// Per-class misclassification costs plus the binary alarm trade-off.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CostModel {
    /// One positive weight per class index; heavier classes cost more to miss.
    pub class_weights: Vec<f64>,
    /// Cost of missing a positive in binary attack-vs-normal reporting.
    pub miss_weight: f64,
    /// Cost of a false alarm in binary attack-vs-normal reporting.
    pub false_alarm_weight: f64,
}

impl CostModel {
    /// Unit weights: reduces the loss to plain cross-entropy.
    pub fn uniform(classes: usize) -> Self {
        Self {
            class_weights: vec![1.0; classes],
            miss_weight: 1.0,
            false_alarm_weight: 1.0,
        }
    }

    /// Alarm threshold on the positive-class probability: alarms fire at
    /// p >= miss / (false_alarm + miss), always inside (0, 1).
    pub fn decision_threshold(&self) -> f64 {
        self.miss_weight / (self.false_alarm_weight + self.miss_weight)
    }

    pub fn validate(&self) -> Result<()> {
        if self.class_weights.is_empty() {
            return Err(Error::InvalidConfig("cost model needs class weights".into()));
        }
        for (k, w) in self.class_weights.iter().enumerate() {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "class weight {k} must be finite and positive, got {w}"
                )));
            }
        }
        for (name, w) in [
            ("miss weight", self.miss_weight),
            ("false alarm weight", self.false_alarm_weight),
        ] {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and positive, got {w}"
                )));
            }
        }
        Ok(())
    }
}

/// Boosting hyperparameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainConfig {
    /// Boosting rounds; each round adds one tree per class.
    pub iterations: usize,
    /// Edge count of the longest root-to-leaf path per tree.
    pub max_depth: usize,
    /// Step size applied to every leaf contribution, in (0, 1].
    pub shrinkage: f64,
    /// Smallest sample count a split may leave on either side.
    pub min_leaf: usize,
    /// Reserved for stochastic extensions; training itself is exact and
    /// deterministic, so this value does not affect the result.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            iterations: 130,
            max_depth: 7,
            shrinkage: 0.1,
            min_leaf: 5,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidConfig("max depth must be at least 1".into()));
        }
        if !(self.shrinkage > 0.0 && self.shrinkage <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "shrinkage must lie in (0, 1], got {}",
                self.shrinkage
            )));
        }
        if self.min_leaf == 0 {
            return Err(Error::InvalidConfig("min leaf must be at least 1".into()));
        }
        Ok(())
    }
}

/// Trained ensemble: one tree per class per round, plus the label
/// dictionary mapping class indices back to input labels.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GbdtEnsemble {
    pub classes: usize,
    pub feature_width: usize,
    pub shrinkage: f64,
    /// Class index -> original label value, ascending.
    pub labels: Vec<u32>,
    pub cost: CostModel,
    /// Round-major grid: trees[m][k] is round m's tree for class k.
    pub trees: Vec<Vec<CartTree>>,
}

impl GbdtEnsemble {
    /// Accumulated boosting scores for one record, one per class.
    pub fn predict_scores(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.feature_width {
            return Err(Error::ShapeMismatch {
                what: "prediction feature width",
                expected: self.feature_width,
                got: x.len(),
            });
        }
        let mut scores = vec![0.0; self.classes];
        for round in &self.trees {
            for (k, tree) in round.iter().enumerate() {
                scores[k] += self.shrinkage * tree.predict(x);
            }
        }
        Ok(scores)
    }

    /// Class probabilities for one record.
    pub fn predict_proba(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(softmax(&self.predict_scores(x)?))
    }

    /// Most probable label; ties go to the lowest class index.
    pub fn predict(&self, x: &[f64]) -> Result<u32> {
        let p = self.predict_proba(x)?;
        let mut best = 0;
        for (k, &v) in p.iter().enumerate() {
            if v > p[best] {
                best = k;
            }
        }
        Ok(self.labels[best])
    }

    /// Structural soundness for loaded models: complete grid, valid node
    /// references, finite values, dictionary consistent with K.
    pub fn validate(&self) -> Result<()> {
        if self.classes < 2 {
            return Err(Error::InvalidConfig("ensemble needs at least two classes".into()));
        }
        if self.labels.len() != self.classes {
            return Err(Error::ShapeMismatch {
                what: "label dictionary size",
                expected: self.classes,
                got: self.labels.len(),
            });
        }
        if self.cost.class_weights.len() != self.classes {
            return Err(Error::ShapeMismatch {
                what: "cost weight count",
                expected: self.classes,
                got: self.cost.class_weights.len(),
            });
        }
        self.cost.validate()?;
        if !(self.shrinkage > 0.0 && self.shrinkage <= 1.0) {
            return Err(Error::InvalidConfig("shrinkage out of range".into()));
        }
        for round in &self.trees {
            if round.len() != self.classes {
                return Err(Error::ShapeMismatch {
                    what: "trees per round",
                    expected: self.classes,
                    got: round.len(),
                });
            }
            for tree in round {
                tree.validate(self.feature_width)?;
            }
        }
        Ok(())
    }
}

/// Trained ensemble plus the mean training loss before each round and
/// after the last one (length = rounds + 1).
#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub ensemble: GbdtEnsemble,
    pub loss_trace: Vec<f64>,
}

/// Max-shifted softmax; stable for scores of any magnitude, and the argmax
/// is unchanged by a uniform shift of the scores.
pub fn softmax(scores: &[f64]) -> Vec<f64> {
    if scores.is_empty() {
        return Vec::new();
    }
    let max = scores.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let exps: Vec<f64> = scores.iter().map(|&s| (s - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Cost-weighted cross-entropy: -sum_k w_k * target_k * ln(p_k), with
/// probabilities floored so a zero at the true class stays finite.
pub fn cs_loss(probabilities: &[f64], one_hot: &[f64], cost: &CostModel) -> Result<f64> {
    if one_hot.len() != probabilities.len() {
        return Err(Error::ShapeMismatch {
            what: "one-hot width",
            expected: probabilities.len(),
            got: one_hot.len(),
        });
    }
    if cost.class_weights.len() != probabilities.len() {
        return Err(Error::ShapeMismatch {
            what: "cost weight count",
            expected: probabilities.len(),
            got: cost.class_weights.len(),
        });
    }
    let mut loss = 0.0;
    for ((&p, &c), &w) in probabilities
        .iter()
        .zip(one_hot)
        .zip(&cost.class_weights)
    {
        if c != 0.0 {
            loss -= w * c * p.max(PROBABILITY_FLOOR).ln();
        }
    }
    Ok(loss)
}

/// Residual vector r_k = w_true * (target_k - p_k): the negative gradient
/// of the cost-weighted loss with respect to the class scores.
pub fn negative_gradient(one_hot: &[f64], probabilities: &[f64], weight_of_true_class: f64) -> Vec<f64> {
    one_hot
        .iter()
        .zip(probabilities)
        .map(|(&c, &p)| weight_of_true_class * (c - p))
        .collect()
}

/// Boosted training: scores start at zero; every round computes softmax
/// probabilities, cost-weighted residuals, and one regression tree per
/// class whose shrunken leaf values advance the scores.
pub fn train(x: &Matrix, y: &[u32], config: &TrainConfig, cost: &CostModel) -> Result<TrainOutcome> {
    config.validate()?;
    cost.validate()?;
    if x.rows() == 0 {
        return Err(Error::EmptyInput("training data"));
    }
    if y.len() != x.rows() {
        return Err(Error::ShapeMismatch {
            what: "label count",
            expected: x.rows(),
            got: y.len(),
        });
    }

    // Label dictionary: ascending distinct labels define the class indices.
    let mut dictionary: Vec<u32> = Vec::new();
    let mut class_of: BTreeMap<u32, usize> = BTreeMap::new();
    for &label in y {
        class_of.entry(label).or_insert(0);
    }
    for (k, (&label, slot)) in class_of.iter_mut().enumerate() {
        *slot = k;
        dictionary.push(label);
    }
    let k_classes = dictionary.len();
    if k_classes < 2 {
        return Err(Error::InsufficientData("training needs at least two classes"));
    }
    if cost.class_weights.len() != k_classes {
        // A longer weight vector over a contiguous label range means some
        // declared class has no samples; name the first gap.
        let declared = cost.class_weights.len() as u32;
        if cost.class_weights.len() > k_classes && dictionary.iter().all(|&l| l < declared) {
            for candidate in 0..declared {
                if !class_of.contains_key(&candidate) {
                    return Err(Error::MissingClass(candidate));
                }
            }
        }
        return Err(Error::ShapeMismatch {
            what: "cost weight count",
            expected: k_classes,
            got: cost.class_weights.len(),
        });
    }

    let n = x.rows();
    let class_idx: Vec<usize> = y.iter().map(|l| class_of[l]).collect();
    let sample_weight: Vec<f64> = class_idx.iter().map(|&c| cost.class_weights[c]).collect();

    let mut scores = vec![0.0f64; n * k_classes];
    let mut trees: Vec<Vec<CartTree>> = Vec::with_capacity(config.iterations);
    let mut loss_trace = Vec::with_capacity(config.iterations + 1);
    let root_orders = tree::presort(x);
    let all_samples: Vec<usize> = (0..n).collect();

    let mut probabilities = vec![0.0f64; n * k_classes];
    for _ in 0..config.iterations {
        let mut loss = 0.0;
        for i in 0..n {
            let p = softmax(&scores[i * k_classes..(i + 1) * k_classes]);
            loss -= sample_weight[i] * p[class_idx[i]].max(PROBABILITY_FLOOR).ln();
            probabilities[i * k_classes..(i + 1) * k_classes].copy_from_slice(&p);
        }
        loss_trace.push(loss / n as f64);

        let mut round = Vec::with_capacity(k_classes);
        for k in 0..k_classes {
            // Weighted gradient w*(target - p) and its matching curvature
            // w*|target - p|*(1 - |target - p|); the curvature term keeps
            // the unweighted shape, so at unit weights the leaf values
            // reduce exactly to the plain residual formula. Weighting the
            // curvature inside |r|(1-|r|) instead would let |r| pass 1 and
            // turn the denominator negative.
            let mut residuals = vec![0.0f64; n];
            let mut curvature = vec![0.0f64; n];
            for i in 0..n {
                let target = if class_idx[i] == k { 1.0 } else { 0.0 };
                let raw = target - probabilities[i * k_classes + k];
                residuals[i] = sample_weight[i] * raw;
                let a = raw.abs();
                curvature[i] = sample_weight[i] * (a * (1.0 - a));
            }
            let fitted = tree::fit_with_orders(
                x,
                &residuals,
                config,
                all_samples.clone(),
                root_orders.clone(),
            )?;
            let valued = tree::leaf_values_from_parts(&fitted, &residuals, &curvature, k_classes)?;
            for (node, members) in &fitted.leaf_members {
                let TreeNode::Leaf { value } = valued.nodes[*node] else {
                    return Err(Error::InvalidConfig("leaf index points at a split".into()));
                };
                for &i in members {
                    scores[i * k_classes + k] += config.shrinkage * value;
                }
            }
            round.push(valued);
        }
        trees.push(round);
    }

    let mut final_loss = 0.0;
    for i in 0..n {
        let p = softmax(&scores[i * k_classes..(i + 1) * k_classes]);
        final_loss -= sample_weight[i] * p[class_idx[i]].max(PROBABILITY_FLOOR).ln();
    }
    loss_trace.push(final_loss / n as f64);

    Ok(TrainOutcome {
        ensemble: GbdtEnsemble {
            classes: k_classes,
            feature_width: x.cols(),
            shrinkage: config.shrinkage,
            labels: dictionary,
            cost: cost.clone(),
            trees,
        },
        loss_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn normal(rng: &mut impl Rng) -> f64 {
        let u1: f64 = rng.gen::<f64>().max(1e-12);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
    }

    #[test]
    fn softmax_uniform_and_shift_invariant() {
        let p = softmax(&[0.0; 5]);
        assert_eq!(p, vec![0.2; 5]);
        let q = softmax(&[7.5; 5]);
        assert_eq!(q, vec![0.2; 5]);

        let f = [0.3, -1.2, 2.1, 0.0];
        let shifted: Vec<f64> = f.iter().map(|v| v + 123.456).collect();
        for (a, b) in softmax(&f).iter().zip(softmax(&shifted)) {
            assert!((a - b).abs() < 1e-12);
        }

        let sum: f64 = softmax(&f).iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn softmax_survives_extreme_scores() {
        let p = softmax(&[1000.0, 0.0]);
        assert!(p[0] > 1.0 - 1e-10);
        assert!(p[1] < 1e-10);
        assert!(p.iter().all(|v| v.is_finite()));
        let q = softmax(&[-1000.0, 0.0]);
        assert!(q[1] > 1.0 - 1e-10);
    }

    #[test]
    fn loss_matches_cross_entropy_at_unit_weights() {
        let uniform = CostModel::uniform(5);
        let one_hot = [0.0, 0.0, 1.0, 0.0, 0.0];
        assert_eq!(
            cs_loss(&[0.0, 0.0, 1.0, 0.0, 0.0], &one_hot, &uniform).unwrap(),
            0.0
        );
        let p = [0.2; 5];
        let loss = cs_loss(&p, &one_hot, &uniform).unwrap();
        assert!((loss - 1.6094379124341003).abs() < 1e-12);

        let mut doubled = uniform.clone();
        doubled.class_weights[2] = 2.0;
        let loss2 = cs_loss(&p, &one_hot, &doubled).unwrap();
        assert!((loss2 - 2.0 * 1.6094379124341003).abs() < 1e-12);
    }

    #[test]
    fn loss_floors_zero_probability() {
        let cost = CostModel::uniform(2);
        let loss = cs_loss(&[0.0, 1.0], &[1.0, 0.0], &cost).unwrap();
        assert!(loss.is_finite());
        assert!((loss - 34.538776394910684).abs() < 1e-9);
    }

    #[test]
    fn residuals_match_direct_substitution() {
        assert_eq!(
            negative_gradient(&[1.0, 0.0], &[1.0, 0.0], 1.0),
            vec![0.0, 0.0]
        );
        assert_eq!(
            negative_gradient(&[1.0, 0.0], &[0.5, 0.5], 1.0),
            vec![0.5, -0.5]
        );
        assert_eq!(
            negative_gradient(&[1.0, 0.0], &[0.5, 0.5], 3.0),
            vec![1.5, -1.5]
        );
    }

    #[test]
    fn residuals_match_finite_differences() {
        let mut rng = crate::seed::rng(17, "classifier-test");
        let h = 1e-6;
        for _ in 0..100 {
            let k = 2 + rng.gen_range(0..4);
            let f: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() * 3.0 - 1.5).collect();
            let true_class = rng.gen_range(0..k);
            let mut one_hot = vec![0.0; k];
            one_hot[true_class] = 1.0;
            let mut cost = CostModel::uniform(k);
            for w in &mut cost.class_weights {
                *w = 0.5 + rng.gen::<f64>() * 2.5;
            }
            let w_true = cost.class_weights[true_class];

            let analytic = negative_gradient(&one_hot, &softmax(&f), w_true);
            for j in 0..k {
                let mut up = f.clone();
                up[j] += h;
                let mut down = f.clone();
                down[j] -= h;
                let lu = cs_loss(&softmax(&up), &one_hot, &cost).unwrap();
                let ld = cs_loss(&softmax(&down), &one_hot, &cost).unwrap();
                let numeric = -(lu - ld) / (2.0 * h);
                let rel = (numeric - analytic[j]).abs() / analytic[j].abs().max(1e-12);
                assert!(
                    rel <= 1e-6,
                    "component {j}: numeric {numeric} vs analytic {}",
                    analytic[j]
                );
            }
        }
    }

    #[test]
    fn separable_classes_reach_perfect_accuracy() {
        let mut rng = crate::seed::rng(18, "classifier-test");
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for class in 0..2u32 {
            let (cx, cy) = if class == 0 { (0.0, 0.0) } else { (10.0, 10.0) };
            for _ in 0..100 {
                rows.push(vec![cx + normal(&mut rng), cy + normal(&mut rng)]);
                y.push(class);
            }
        }
        let x = Matrix::from_rows(&rows).unwrap();
        let config = TrainConfig {
            iterations: 50,
            ..TrainConfig::default()
        };
        let out = train(&x, &y, &config, &CostModel::uniform(2)).unwrap();

        let correct = rows
            .iter()
            .zip(&y)
            .filter(|(row, &label)| out.ensemble.predict(row).unwrap() == label)
            .count();
        assert_eq!(correct, 200);

        assert_eq!(out.loss_trace.len(), 51);
        for pair in out.loss_trace.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9, "loss rose: {pair:?}");
        }
    }

    #[test]
    fn single_stump_round_matches_hand_trace() {
        // Four 1-d points, two classes, one depth-1 round. Initial scores
        // are zero, so p = 1/2 everywhere and the class-0 residuals are
        // +1/2 on the left pair, -1/2 on the right pair. The stump splits
        // at the midpoint (1+10)/2 and each leaf value resolves to
        // (1/2) * (+-1.0) / (0.5 + 1e-10).
        let x = Matrix::from_rows(&[vec![0.0], vec![1.0], vec![10.0], vec![11.0]]).unwrap();
        let y = [0u32, 0, 1, 1];
        let config = TrainConfig {
            iterations: 1,
            max_depth: 1,
            min_leaf: 1,
            ..TrainConfig::default()
        };
        let out = train(&x, &y, &config, &CostModel::uniform(2)).unwrap();

        assert!((out.loss_trace[0] - core::f64::consts::LN_2).abs() < 1e-12);
        assert!(out.loss_trace[1] < out.loss_trace[0]);

        let tree0 = &out.ensemble.trees[0][0];
        let TreeNode::Split { feature, threshold, .. } = tree0.nodes[0] else {
            panic!("expected a stump split");
        };
        assert_eq!(feature, 0);
        assert_eq!(threshold, 5.5);

        let leaf = 0.5 * 1.0 / (0.5 + 1e-10);
        assert!((tree0.predict(&[0.0]) - leaf).abs() < 1e-15);
        assert!((tree0.predict(&[11.0]) + leaf).abs() < 1e-15);

        let scores = out.ensemble.predict_scores(&[0.0]).unwrap();
        assert!((scores[0] - 0.1 * leaf).abs() < 1e-15);
        assert!((scores[1] + 0.1 * leaf).abs() < 1e-15);

        for (row, &label) in [0.0f64, 1.0, 10.0, 11.0].iter().zip(&y) {
            assert_eq!(out.ensemble.predict(&[*row]).unwrap(), label);
        }
    }

    #[test]
    fn training_is_deterministic() {
        let mut rng = crate::seed::rng(19, "classifier-test");
        let rows: Vec<Vec<f64>> = (0..90)
            .map(|_| vec![normal(&mut rng), normal(&mut rng)])
            .collect();
        let y: Vec<u32> = (0..90).map(|i| (i % 3) as u32).collect();
        let x = Matrix::from_rows(&rows).unwrap();
        let config = TrainConfig {
            iterations: 10,
            max_depth: 3,
            ..TrainConfig::default()
        };
        let a = train(&x, &y, &config, &CostModel::uniform(3)).unwrap();
        let b = train(&x, &y, &config, &CostModel::uniform(3)).unwrap();
        assert_eq!(a.ensemble, b.ensemble);
        assert_eq!(a.loss_trace, b.loss_trace);
        for row in &rows {
            let s1 = a.ensemble.predict_scores(row).unwrap();
            let s2 = b.ensemble.predict_scores(row).unwrap();
            let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(&s1), bits(&s2));
        }
    }

    #[test]
    fn heavier_class_weight_lifts_its_recall() {
        // Overlapping 1-d classes, the positive one rare. Weighting the
        // positive class must not lower its training recall.
        let mut rng = crate::seed::rng(20, "classifier-test");
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for _ in 0..300 {
            rows.push(vec![normal(&mut rng)]);
            y.push(0u32);
        }
        for _ in 0..100 {
            rows.push(vec![1.2 + normal(&mut rng)]);
            y.push(1u32);
        }
        let x = Matrix::from_rows(&rows).unwrap();
        let config = TrainConfig {
            iterations: 30,
            max_depth: 3,
            ..TrainConfig::default()
        };

        let recall = |weight: f64| -> f64 {
            let mut cost = CostModel::uniform(2);
            cost.class_weights[1] = weight;
            let out = train(&x, &y, &config, &cost).unwrap();
            let hits = rows
                .iter()
                .zip(&y)
                .filter(|(_, &label)| label == 1)
                .filter(|(row, _)| out.ensemble.predict(row).unwrap() == 1)
                .count();
            hits as f64 / 100.0
        };
        let plain = recall(1.0);
        let weighted = recall(5.0);
        assert!(
            weighted >= plain,
            "weighted recall {weighted} fell below plain {plain}"
        );
        assert!(weighted > 0.5);
    }

    #[test]
    fn empty_ensemble_predicts_uniformly() {
        let ensemble = GbdtEnsemble {
            classes: 3,
            feature_width: 2,
            shrinkage: 0.1,
            labels: vec![0, 1, 2],
            cost: CostModel::uniform(3),
            trees: vec![],
        };
        let p = ensemble.predict_proba(&[4.0, -1.0]).unwrap();
        assert_eq!(p, vec![1.0 / 3.0; 3]);
        assert_eq!(ensemble.predict(&[4.0, -1.0]).unwrap(), 0);
        assert!(ensemble.predict(&[1.0]).is_err());
    }

    #[test]
    fn absent_declared_class_is_reported() {
        let x = Matrix::from_rows(&[
            vec![0.0],
            vec![0.1],
            vec![1.0],
            vec![1.1],
            vec![4.0],
            vec![4.1],
        ])
        .unwrap();
        let y = [0u32, 0, 1, 1, 4, 4];
        let cost = CostModel::uniform(5);
        assert!(matches!(
            train(&x, &y, &TrainConfig::default(), &cost),
            Err(Error::MissingClass(2))
        ));
        let narrow = CostModel::uniform(2);
        assert!(matches!(
            train(&x, &y, &TrainConfig::default(), &narrow),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn loaded_grid_must_be_complete() {
        let mut rng = crate::seed::rng(21, "classifier-test");
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|_| vec![normal(&mut rng), normal(&mut rng)])
            .collect();
        let y: Vec<u32> = (0..40).map(|i| (i % 2) as u32).collect();
        let x = Matrix::from_rows(&rows).unwrap();
        let config = TrainConfig {
            iterations: 3,
            max_depth: 2,
            min_leaf: 2,
            ..TrainConfig::default()
        };
        let out = train(&x, &y, &config, &CostModel::uniform(2)).unwrap();
        out.ensemble.validate().unwrap();

        let mut broken = out.ensemble.clone();
        broken.trees[1].pop();
        assert!(broken.validate().is_err());
    }

    #[test]
    fn config_and_cost_are_validated() {
        let x = Matrix::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        let y = [0u32, 1];
        let bad = TrainConfig {
            iterations: 0,
            ..TrainConfig::default()
        };
        assert!(train(&x, &y, &bad, &CostModel::uniform(2)).is_err());
        let bad_nu = TrainConfig {
            shrinkage: 0.0,
            ..TrainConfig::default()
        };
        assert!(train(&x, &y, &bad_nu, &CostModel::uniform(2)).is_err());
        let mut bad_cost = CostModel::uniform(2);
        bad_cost.class_weights[0] = -1.0;
        assert!(train(&x, &y, &TrainConfig::default(), &bad_cost).is_err());
        assert!((CostModel::uniform(2).decision_threshold() - 0.5).abs() < 1e-15);
    }
}
