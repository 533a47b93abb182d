//! CF-tree pre-clustering.
//!
//! Records stream into a height-balanced tree whose leaves hold
//! [`ClusterFeature`] entries. Each record descends along the closest
//! child summary and is absorbed by the closest leaf entry when their
//! log-likelihood distance is within the current threshold; otherwise it
//! opens a new entry and full nodes split around their farthest entry
//! pair. When the leaf entry total outgrows the configured bound the tree
//! is rebuilt with a doubled threshold, so memory stays bounded no matter
//! how long the stream runs.

use alloc::vec::Vec;

use crate::clustering::feature::{loglik_distance, ClusterFeature};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// CF-tree shape and compression parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CfTreeConfig {
    /// Maximum children per internal node (B >= 2).
    pub branching: usize,
    /// Maximum entries per leaf (L >= 1).
    pub leaf_capacity: usize,
    /// Starting absorption threshold (>= 0).
    pub initial_threshold: f64,
    /// Rebuild trigger: the tree keeps at most this many leaf entries.
    pub max_subclusters: usize,
}

impl Default for CfTreeConfig {
    fn default() -> Self {
        Self {
            branching: 8,
            leaf_capacity: 8,
            initial_threshold: 0.0,
            max_subclusters: 256,
        }
    }
}

impl CfTreeConfig {
    fn validate(&self) -> Result<()> {
        if self.branching < 2 {
            return Err(Error::InvalidConfig(
                "cf-tree branching must be at least 2".into(),
            ));
        }
        if self.leaf_capacity < 1 {
            return Err(Error::InvalidConfig(
                "cf-tree leaf capacity must be at least 1".into(),
            ));
        }
        if !self.initial_threshold.is_finite() || self.initial_threshold < 0.0 {
            return Err(Error::InvalidConfig(
                "cf-tree threshold must be finite and >= 0".into(),
            ));
        }
        if self.max_subclusters < 2 {
            return Err(Error::InvalidConfig(
                "cf-tree sub-cluster bound must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

/// Result of pre-clustering: leaf entry groups, left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct CfTreeOutcome {
    /// Entries grouped per leaf; entries within one leaf are pairwise
    /// farther apart than `final_threshold`.
    pub leaves: Vec<Vec<ClusterFeature>>,
    pub final_threshold: f64,
    pub rebuilds: usize,
}

impl CfTreeOutcome {
    /// All sub-clusters flattened in leaf order.
    pub fn subclusters(&self) -> Vec<ClusterFeature> {
        self.leaves.iter().flatten().cloned().collect()
    }

    pub fn subcluster_count(&self) -> usize {
        self.leaves.iter().map(Vec::len).sum()
    }
}

enum Node {
    Leaf {
        entries: Vec<ClusterFeature>,
    },
    Internal {
        summaries: Vec<ClusterFeature>,
        children: Vec<Node>,
    },
}

impl Node {
    fn summary(&self) -> ClusterFeature {
        let parts: &[ClusterFeature] = match self {
            Node::Leaf { entries } => entries,
            Node::Internal { summaries, .. } => summaries,
        };
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc.absorb(p);
        }
        acc
    }
}

/// Builds the tree over reduced records and returns its leaf entries.
///
/// `weights[i]` (default 1) is the raw repeat count of record `i`, so a
/// compressed data link pre-clusters exactly like its expanded original.
pub fn build_cftree(
    x: &Matrix,
    weights: Option<&[u32]>,
    global_variances: &[f64],
    config: &CfTreeConfig,
) -> Result<CfTreeOutcome> {
    config.validate()?;
    if let Some(w) = weights {
        if w.len() != x.rows() {
            return Err(Error::ShapeMismatch {
                what: "weight vector",
                expected: x.rows(),
                got: w.len(),
            });
        }
        if w.contains(&0) {
            return Err(Error::InvalidConfig("repeat counts must be >= 1".into()));
        }
    }
    if x.rows() > 0 && x.cols() != global_variances.len() {
        return Err(Error::ShapeMismatch {
            what: "global variance width",
            expected: x.cols(),
            got: global_variances.len(),
        });
    }

    let mut tree = Tree {
        root: Node::Leaf {
            entries: Vec::new(),
        },
        entry_count: 0,
        threshold: config.initial_threshold,
        rebuilds: 0,
        gv: global_variances,
        config,
    };

    for i in 0..x.rows() {
        let weight = weights.map_or(1, |w| u64::from(w[i]));
        tree.insert(ClusterFeature::from_point(x.row(i), weight));
        tree.enforce_bound();
    }
    tree.refine_leaves();

    let mut leaves = Vec::new();
    collect_leaves(&tree.root, &mut leaves);
    leaves.retain(|l| !l.is_empty());
    Ok(CfTreeOutcome {
        leaves,
        final_threshold: tree.threshold,
        rebuilds: tree.rebuilds,
    })
}

struct Tree<'a> {
    root: Node,
    entry_count: usize,
    threshold: f64,
    rebuilds: usize,
    gv: &'a [f64],
    config: &'a CfTreeConfig,
}

impl Tree<'_> {
    fn insert(&mut self, cf: ClusterFeature) {
        let (added, split) = insert_into(
            &mut self.root,
            cf,
            self.threshold,
            self.gv,
            self.config,
        );
        if added {
            self.entry_count += 1;
        }
        if let Some(sibling) = split {
            let old = core::mem::replace(
                &mut self.root,
                Node::Leaf {
                    entries: Vec::new(),
                },
            );
            self.root = Node::Internal {
                summaries: alloc::vec![old.summary(), sibling.summary()],
                children: alloc::vec![old, sibling],
            };
        }
    }

    /// Rebuilds with growing thresholds until the entry bound holds.
    fn enforce_bound(&mut self) {
        let mut attempts = 0;
        while self.entry_count > self.config.max_subclusters && attempts < 200 {
            let entries = {
                let mut leaves = Vec::new();
                collect_leaves(&self.root, &mut leaves);
                leaves.into_iter().flatten().collect::<Vec<_>>()
            };
            let doubled = if self.threshold > 0.0 {
                self.threshold * 2.0
            } else {
                0.0
            };
            self.threshold = doubled.max(min_positive_distance(&entries, self.gv));
            self.root = Node::Leaf {
                entries: Vec::new(),
            };
            self.entry_count = 0;
            self.rebuilds += 1;
            for cf in entries {
                self.insert(cf);
            }
            attempts += 1;
        }
    }

    /// Merges leaf entries left within the final threshold of each other,
    /// restoring the pairwise-separation postcondition that absorption
    /// drift during insertion can erode.
    fn refine_leaves(&mut self) {
        let threshold = self.threshold;
        let gv = self.gv;
        let mut removed = 0usize;
        refine(&mut self.root, threshold, gv, &mut removed);
        self.entry_count -= removed;

        fn refine(node: &mut Node, threshold: f64, gv: &[f64], removed: &mut usize) {
            match node {
                Node::Leaf { entries } => loop {
                    let mut best: Option<(usize, usize, f64)> = None;
                    for i in 0..entries.len() {
                        for j in (i + 1)..entries.len() {
                            let d = loglik_distance(&entries[i], &entries[j], gv)
                                .unwrap_or(f64::INFINITY);
                            if best.is_none_or(|(_, _, bd)| d < bd) {
                                best = Some((i, j, d));
                            }
                        }
                    }
                    match best {
                        Some((i, j, d)) if d <= threshold => {
                            let victim = entries.remove(j);
                            entries[i].absorb(&victim);
                            *removed += 1;
                        }
                        _ => break,
                    }
                },
                Node::Internal { summaries, children } => {
                    for (child, summary) in children.iter_mut().zip(summaries.iter_mut()) {
                        refine(child, threshold, gv, removed);
                        *summary = child.summary();
                    }
                }
            }
        }
    }
}

/// Inserts a summary below `node`. Returns whether a new leaf entry was
/// created and, on overflow, the split-off sibling node.
fn insert_into(
    node: &mut Node,
    cf: ClusterFeature,
    threshold: f64,
    gv: &[f64],
    config: &CfTreeConfig,
) -> (bool, Option<Node>) {
    match node {
        Node::Leaf { entries } => {
            if let Some((idx, d)) = closest(entries, &cf, gv) {
                if d <= threshold {
                    entries[idx].absorb(&cf);
                    return (false, None);
                }
            }
            entries.push(cf);
            if entries.len() > config.leaf_capacity {
                let (keep, give) = split_group(core::mem::take(entries), gv);
                *entries = keep;
                return (true, Some(Node::Leaf { entries: give }));
            }
            (true, None)
        }
        Node::Internal {
            summaries,
            children,
        } => {
            let (idx, _) = closest(summaries, &cf, gv).expect("internal node has children");
            let (added, split) = insert_into(&mut children[idx], cf.clone(), threshold, gv, config);
            match split {
                None => {
                    summaries[idx].absorb(&cf);
                }
                Some(sibling) => {
                    summaries[idx] = children[idx].summary();
                    summaries.insert(idx + 1, sibling.summary());
                    children.insert(idx + 1, sibling);
                    if children.len() > config.branching {
                        let taken_summaries = core::mem::take(summaries);
                        let taken_children = core::mem::take(children);
                        let to_sibling = partition_around_farthest(&taken_summaries, gv);
                        let mut keep_s = Vec::new();
                        let mut keep_c = Vec::new();
                        let mut give_s = Vec::new();
                        let mut give_c = Vec::new();
                        for (i, (s, c)) in taken_summaries
                            .into_iter()
                            .zip(taken_children)
                            .enumerate()
                        {
                            if to_sibling[i] {
                                give_s.push(s);
                                give_c.push(c);
                            } else {
                                keep_s.push(s);
                                keep_c.push(c);
                            }
                        }
                        *summaries = keep_s;
                        *children = keep_c;
                        return (
                            added,
                            Some(Node::Internal {
                                summaries: give_s,
                                children: give_c,
                            }),
                        );
                    }
                }
            }
            (added, None)
        }
    }
}

/// Index and distance of the closest summary; first index wins ties.
fn closest(
    candidates: &[ClusterFeature],
    cf: &ClusterFeature,
    gv: &[f64],
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, c) in candidates.iter().enumerate() {
        let d = loglik_distance(c, cf, gv).unwrap_or(f64::INFINITY);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best
}

/// Splits entries around their farthest pair; each entry follows the
/// closer seed (the lower-indexed seed wins ties and keeps the original
/// node).
fn split_group(
    entries: Vec<ClusterFeature>,
    gv: &[f64],
) -> (Vec<ClusterFeature>, Vec<ClusterFeature>) {
    let to_sibling = partition_around_farthest(&entries, gv);
    let mut keep = Vec::new();
    let mut give = Vec::new();
    for (i, e) in entries.into_iter().enumerate() {
        if to_sibling[i] {
            give.push(e);
        } else {
            keep.push(e);
        }
    }
    (keep, give)
}

/// Marks which entries move to the split-off sibling: the higher-indexed
/// seed of the farthest pair and everything strictly closer to it.
fn partition_around_farthest(entries: &[ClusterFeature], gv: &[f64]) -> Vec<bool> {
    debug_assert!(entries.len() >= 2);
    let mut seed_a = 0;
    let mut seed_b = 1;
    let mut far = f64::NEG_INFINITY;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let d = loglik_distance(&entries[i], &entries[j], gv).unwrap_or(f64::INFINITY);
            if d > far {
                far = d;
                seed_a = i;
                seed_b = j;
            }
        }
    }
    let mut to_sibling = alloc::vec![false; entries.len()];
    to_sibling[seed_b] = true;
    for i in 0..entries.len() {
        if i == seed_a || i == seed_b {
            continue;
        }
        let da = loglik_distance(&entries[i], &entries[seed_a], gv).unwrap_or(f64::INFINITY);
        let db = loglik_distance(&entries[i], &entries[seed_b], gv).unwrap_or(f64::INFINITY);
        to_sibling[i] = db < da;
    }
    to_sibling
}

/// Smallest strictly positive pairwise distance, or a tiny floor when
/// every pair coincides.
fn min_positive_distance(entries: &[ClusterFeature], gv: &[f64]) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let d = loglik_distance(&entries[i], &entries[j], gv).unwrap_or(f64::INFINITY);
            if d > 0.0 && d < min {
                min = d;
            }
        }
    }
    if min.is_finite() {
        min
    } else {
        1e-12
    }
}

fn collect_leaves(node: &Node, out: &mut Vec<Vec<ClusterFeature>>) {
    match node {
        Node::Leaf { entries } => out.push(entries.clone()),
        Node::Internal { children, .. } => {
            for child in children {
                collect_leaves(child, out);
            }
        }
    }
}
