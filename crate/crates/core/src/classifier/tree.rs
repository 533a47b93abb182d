//! Regression trees for gradient boosting: exact greedy splits over
//! presorted feature orders, squared-error criterion on residuals.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::{Error, Result};

use super::TrainConfig;

/// Relative floor below which a split's squared-error reduction counts as
/// zero; keeps fp residue from splitting constant-residual nodes.
const GAIN_EPS: f64 = 1e-12;

/// Guard against vanishing curvature in the leaf-value denominator.
const LEAF_DENOM_GUARD: f64 = 1e-10;

/// Largest leaf magnitude; near-saturated residuals would otherwise blow up.
const LEAF_VALUE_CLIP: f64 = 10.0;

/// One node of a binary regression tree stored in a flat list. Children
/// reference positions in the same list; the root sits at index 0.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TreeNode {
    /// Routes value <= threshold to `left`, else to `right`.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf { value: f64 },
}

/// Binary regression tree as a flat node list.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CartTree {
    pub nodes: Vec<TreeNode>,
}

impl CartTree {
    /// Routes one record to its leaf and returns the leaf value.
    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                TreeNode::Leaf { value } => return *value,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    /// Index of the leaf node a record lands in.
    pub fn leaf_of(&self, x: &[f64]) -> usize {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                TreeNode::Leaf { .. } => return at,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    /// Longest root-to-leaf edge count; 0 for a single leaf.
    pub fn depth(&self) -> usize {
        self.depth_from(0)
    }

    fn depth_from(&self, at: usize) -> usize {
        match &self.nodes[at] {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => {
                1 + self.depth_from(*left).max(self.depth_from(*right))
            }
        }
    }

    /// Checks node references: every child index in range and reachable
    /// exactly once from the root, all thresholds and values finite.
    pub fn validate(&self, feature_width: usize) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::EmptyInput("tree node list"));
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        while let Some(at) = stack.pop() {
            if at >= self.nodes.len() || seen[at] {
                return Err(Error::InvalidConfig(
                    "tree node references are not a rooted binary tree".into(),
                ));
            }
            seen[at] = true;
            match &self.nodes[at] {
                TreeNode::Leaf { value } => {
                    if !value.is_finite() {
                        return Err(Error::InvalidConfig("non-finite leaf value".into()));
                    }
                }
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    if *feature >= feature_width {
                        return Err(Error::InvalidConfig(
                            "split feature beyond trained width".into(),
                        ));
                    }
                    if !threshold.is_finite() {
                        return Err(Error::InvalidConfig("non-finite split threshold".into()));
                    }
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::InvalidConfig("unreachable tree nodes".into()))
        }
    }
}

/// Tree structure plus the training rows that populate each leaf; leaf
/// values stay at zero until assigned from residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedTree {
    pub tree: CartTree,
    /// (leaf node index, member rows) pairs ordered by node index.
    pub leaf_members: Vec<(usize, Vec<usize>)>,
}

/// Grows a regression tree on the residual column by exact greedy splits:
/// each split maximizes the squared-error reduction, ties broken by lowest
/// feature index then lowest threshold. Growth stops at `max_depth`,
/// `min_leaf`, or zero gain. Leaf values are left for [`leaf_values`].
pub fn fit_regression_tree(
    x: &Matrix,
    residuals: &[f64],
    config: &TrainConfig,
) -> Result<FittedTree> {
    config.validate()?;
    if x.rows() == 0 {
        return Err(Error::EmptyInput("tree training data"));
    }
    if residuals.len() != x.rows() {
        return Err(Error::ShapeMismatch {
            what: "residual count",
            expected: x.rows(),
            got: residuals.len(),
        });
    }
    let samples: Vec<usize> = (0..x.rows()).collect();
    fit_with_orders(x, residuals, config, samples, presort(x))
}

/// Per-feature row indices sorted ascending by that feature, ties by index.
pub(crate) fn presort(x: &Matrix) -> Vec<Vec<usize>> {
    (0..x.cols())
        .map(|f| {
            let mut idx: Vec<usize> = (0..x.rows()).collect();
            idx.sort_by(|&a, &b| x.get(a, f).total_cmp(&x.get(b, f)).then(a.cmp(&b)));
            idx
        })
        .collect()
}

struct Work {
    node: usize,
    samples: Vec<usize>,
    orders: Vec<Vec<usize>>,
    depth: usize,
}

/// Tree growth on already-sorted feature orders; `samples` and every order
/// must hold the same row set. Sorted orders are partitioned stably per
/// split, so no re-sorting happens below the root.
pub(crate) fn fit_with_orders(
    x: &Matrix,
    residuals: &[f64],
    config: &TrainConfig,
    samples: Vec<usize>,
    orders: Vec<Vec<usize>>,
) -> Result<FittedTree> {
    let mut nodes = vec![TreeNode::Leaf { value: 0.0 }];
    let mut leaf_members = Vec::new();
    let mut go_left = vec![false; x.rows()];
    let mut stack = vec![Work {
        node: 0,
        samples,
        orders,
        depth: 0,
    }];

    while let Some(w) = stack.pop() {
        let split = if w.depth < config.max_depth && w.samples.len() >= 2 * config.min_leaf {
            best_split(x, residuals, &w.orders, config.min_leaf)
        } else {
            None
        };
        let Some((feature, threshold)) = split else {
            leaf_members.push((w.node, w.samples));
            continue;
        };

        for &i in &w.samples {
            go_left[i] = x.get(i, feature) <= threshold;
        }
        let split_off = |list: &[usize]| -> (Vec<usize>, Vec<usize>) {
            list.iter().partition(|&&i| go_left[i])
        };
        let (left_samples, right_samples) = split_off(&w.samples);
        let mut left_orders = Vec::with_capacity(w.orders.len());
        let mut right_orders = Vec::with_capacity(w.orders.len());
        for ord in &w.orders {
            let (l, r) = split_off(ord);
            left_orders.push(l);
            right_orders.push(r);
        }

        let left = nodes.len();
        nodes.push(TreeNode::Leaf { value: 0.0 });
        let right = nodes.len();
        nodes.push(TreeNode::Leaf { value: 0.0 });
        nodes[w.node] = TreeNode::Split {
            feature,
            threshold,
            left,
            right,
        };
        stack.push(Work {
            node: right,
            samples: right_samples,
            orders: right_orders,
            depth: w.depth + 1,
        });
        stack.push(Work {
            node: left,
            samples: left_samples,
            orders: left_orders,
            depth: w.depth + 1,
        });
    }

    leaf_members.sort_by_key(|(node, _)| *node);
    Ok(FittedTree {
        tree: CartTree { nodes },
        leaf_members,
    })
}

/// Best (feature, threshold) by squared-error reduction, or None when no
/// split clears the minimum leaf size and the zero-gain floor. Thresholds
/// are midpoints between consecutive distinct values, pulled back to the
/// lower value when the midpoint rounds up to the upper one.
fn best_split(
    x: &Matrix,
    residuals: &[f64],
    orders: &[Vec<usize>],
    min_leaf: usize,
) -> Option<(usize, f64)> {
    let samples = orders.first()?;
    let n = samples.len() as f64;
    let total_sum: f64 = samples.iter().map(|&i| residuals[i]).sum();
    let total_sq: f64 = samples.iter().map(|&i| residuals[i] * residuals[i]).sum();
    let parent = total_sum * total_sum / n;

    let mut best: Option<(f64, usize, f64)> = None;
    for (f, ord) in orders.iter().enumerate() {
        let mut left_sum = 0.0;
        for pos in 0..ord.len().saturating_sub(1) {
            let i = ord[pos];
            left_sum += residuals[i];
            let a = x.get(i, f);
            let b = x.get(ord[pos + 1], f);
            if a == b {
                continue;
            }
            let left_n = pos + 1;
            let right_n = ord.len() - left_n;
            if left_n < min_leaf || right_n < min_leaf {
                continue;
            }
            let right_sum = total_sum - left_sum;
            let gain = left_sum * left_sum / left_n as f64
                + right_sum * right_sum / right_n as f64
                - parent;
            if gain <= GAIN_EPS * total_sq {
                continue;
            }
            if best.is_none_or(|(g, _, _)| gain > g) {
                let mut threshold = 0.5 * (a + b);
                if threshold >= b {
                    threshold = a;
                }
                best = Some((gain, f, threshold));
            }
        }
    }
    best.map(|(_, f, t)| (f, t))
}

/// Fills leaf values from the residuals the leaf holds:
/// value = ((K-1)/K) * sum(r) / (sum(|r|(1-|r|)) + guard), clipped in
/// magnitude. `classes` is K, the class count of the surrounding ensemble.
pub fn leaf_values(fitted: &FittedTree, residuals: &[f64], classes: usize) -> Result<CartTree> {
    let curvature: Vec<f64> = residuals
        .iter()
        .map(|r| {
            let a = r.abs();
            a * (1.0 - a)
        })
        .collect();
    leaf_values_from_parts(fitted, residuals, &curvature, classes)
}

/// Leaf values from separate per-sample gradient and curvature terms:
/// value = ((K-1)/K) * sum(gradient) / (sum(curvature) + guard). Training
/// supplies cost-weighted parts here; curvature must stay non-negative so
/// heavily weighted residuals cannot flip a leaf's sign.
pub(crate) fn leaf_values_from_parts(
    fitted: &FittedTree,
    gradient: &[f64],
    curvature: &[f64],
    classes: usize,
) -> Result<CartTree> {
    if classes < 2 {
        return Err(Error::InvalidConfig(
            "leaf values need at least two classes".into(),
        ));
    }
    let mut tree = fitted.tree.clone();
    let factor = (classes - 1) as f64 / classes as f64;
    for (node, members) in &fitted.leaf_members {
        if members.is_empty() {
            return Err(Error::EmptyInput("leaf region"));
        }
        let num: f64 = members.iter().map(|&i| gradient[i]).sum();
        let den: f64 = members.iter().map(|&i| curvature[i]).sum::<f64>() + LEAF_DENOM_GUARD;
        let value = (factor * num / den).clamp(-LEAF_VALUE_CLIP, LEAF_VALUE_CLIP);
        match &mut tree.nodes[*node] {
            TreeNode::Leaf { value: slot } => *slot = value,
            TreeNode::Split { .. } => {
                return Err(Error::InvalidConfig(
                    "leaf membership points at a split node".into(),
                ));
            }
        }
    }
    Ok(tree)
}
