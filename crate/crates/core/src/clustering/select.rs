//! Cluster-count selection over CF sub-clusters.
//!
//! The sub-clusters are merged agglomeratively under the log-likelihood
//! distance, always joining the current closest pair. The cluster count
//! is then chosen in two stages:
//!
//! 1. BIC over each J-cluster solution,
//!    `BIC(J) = -2 * sum_j zeta_j + 2 * J * d * ln N`, gives a coarse
//!    estimate: the smallest J where the improvement from one more
//!    cluster falls below 4% of the first improvement, BIC(2) - BIC(1).
//!    Scaling by the first step keeps the rule invariant to the BIC
//!    offset, which grows with record count and dimension regardless of
//!    structure.
//! 2. Around that estimate, the ratio `R(k) = d_min(C_k) / d_min(C_k+1)`
//!    is maximized, where `d_min(C_k)` is the smallest inter-cluster
//!    distance in the k-cluster solution, i.e. the distance of the merge
//!    executed from it. A sharp jump in merge cost marks the natural
//!    count.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::clustering::feature::{loglik_distance, ClusterFeature};
use crate::{Error, Result};

/// Share of the first BIC improvement below which adding one more
/// cluster stops paying.
const BIC_IMPROVEMENT_SHARE: f64 = 0.04;

/// One executed merge: the pair of cluster slots joined and their
/// distance. The merged cluster keeps slot `a`; slot `b` retires.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MergeStep {
    pub distance: f64,
    pub a: usize,
    pub b: usize,
}

/// Outcome of the count selection.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSelection {
    /// Chosen cluster count (>= 1).
    pub k: usize,
    /// The full merge sequence from all sub-clusters down to one cluster.
    pub merge_trace: Vec<MergeStep>,
    /// `bic[j]` is BIC(J = j + 1), for J up to the sub-cluster count.
    pub bic: Vec<f64>,
    /// Candidate counts examined by the ratio stage.
    pub candidates: Vec<usize>,
}

/// Selects the cluster count. With fewer than two sub-clusters the
/// answer is k = 1 with an empty trace.
pub fn select_cluster_count(
    subclusters: &[ClusterFeature],
    global_variances: &[f64],
    k_max: usize,
) -> Result<CountSelection> {
    if k_max < 1 {
        return Err(Error::InvalidConfig("k_max must be at least 1".into()));
    }
    let e = subclusters.len();
    if e < 2 {
        return Ok(CountSelection {
            k: 1,
            merge_trace: Vec::new(),
            bic: Vec::new(),
            candidates: Vec::new(),
        });
    }

    let n_total: u64 = subclusters.iter().map(|c| c.count).sum();
    let dims = global_variances.len();

    // Agglomerative pass with a cached distance matrix. Slot i keeps the
    // merged cluster, so scan order (i, then j) makes ties fall to the
    // lowest indices.
    let mut clusters: Vec<Option<ClusterFeature>> =
        subclusters.iter().cloned().map(Some).collect();
    let mut zetas: Vec<f64> = subclusters
        .iter()
        .map(|c| c.zeta(global_variances))
        .collect();
    let mut dist = vec![0.0f64; e * e];
    for i in 0..e {
        for j in (i + 1)..e {
            let d = loglik_distance(&subclusters[i], &subclusters[j], global_variances)?;
            dist[i * e + j] = d;
        }
    }

    // sum_zeta[J] = sum of zeta over the J-cluster solution, J in 1..=E.
    let mut sum_zeta = vec![f64::NAN; e + 1];
    sum_zeta[e] = zetas.iter().sum();

    let mut active: Vec<usize> = (0..e).collect();
    let mut merge_trace = Vec::with_capacity(e - 1);
    while active.len() > 1 {
        let mut best: Option<(usize, usize, f64)> = None;
        for (ai, &i) in active.iter().enumerate() {
            for &j in &active[(ai + 1)..] {
                let d = dist[i * e + j];
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        let (i, j, d) = best.expect("at least one active pair");

        let merged = clusters[i]
            .as_ref()
            .expect("active slot")
            .merged(clusters[j].as_ref().expect("active slot"));
        let merged_zeta = merged.zeta(global_variances);
        let remaining = active.len() - 1;
        sum_zeta[remaining] = sum_zeta[remaining + 1] - zetas[i] - zetas[j] + merged_zeta;

        clusters[i] = Some(merged);
        clusters[j] = None;
        zetas[i] = merged_zeta;
        active.retain(|&s| s != j);
        for &s in &active {
            if s == i {
                continue;
            }
            let d = loglik_distance(
                clusters[i].as_ref().unwrap(),
                clusters[s].as_ref().unwrap(),
                global_variances,
            )?;
            let (lo, hi) = if s < i { (s, i) } else { (i, s) };
            dist[lo * e + hi] = d;
        }
        merge_trace.push(MergeStep { distance: d, a: i, b: j });
    }

    let bic: Vec<f64> = (1..=e)
        .map(|j| -2.0 * sum_zeta[j] + (2 * j * dims) as f64 * (n_total as f64).ln())
        .collect();

    let j_cap = k_max.min(e);
    let mut coarse = j_cap;
    let slack = -BIC_IMPROVEMENT_SHARE * (bic[1] - bic[0]).abs();
    for j in 1..j_cap {
        // bic[j] - bic[j - 1] is the change from J = j to J = j + 1.
        if bic[j] - bic[j - 1] >= slack {
            coarse = j;
            break;
        }
    }

    // d_min of the k-cluster solution is the distance of the merge
    // executed from it: trace step E - k takes k clusters to k - 1.
    let d_min = |k: usize| merge_trace[e - k].distance;

    let (k, candidates) = if coarse <= 1 {
        // BIC flattens immediately: no multi-cluster structure.
        (1, vec![1])
    } else {
        let lo = coarse.saturating_sub(1).max(2);
        let hi = (coarse + 1).min(j_cap).min(e - 1);
        let candidates: Vec<usize> = (lo..=hi).collect();
        let mut k = coarse.min(j_cap).min(e);
        let mut best_ratio = f64::NEG_INFINITY;
        for &cand in &candidates {
            let denom = d_min(cand + 1);
            let ratio = if denom > 0.0 {
                d_min(cand) / denom
            } else if d_min(cand) > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            // Strict comparison keeps the smaller candidate on ties.
            if ratio > best_ratio {
                best_ratio = ratio;
                k = cand;
            }
        }
        (k, candidates)
    };

    Ok(CountSelection {
        k,
        merge_trace,
        bic,
        candidates,
    })
}

/// Replays the first merges of a trace and returns the k remaining
/// clusters in slot order.
pub fn clusters_at_level(
    subclusters: &[ClusterFeature],
    merge_trace: &[MergeStep],
    k: usize,
) -> Result<Vec<ClusterFeature>> {
    let e = subclusters.len();
    if k < 1 || k > e.max(1) {
        return Err(Error::InvalidConfig(alloc::format!(
            "cannot cut {e} sub-clusters at level {k}"
        )));
    }
    if e == 0 {
        return Ok(Vec::new());
    }
    let mut clusters: Vec<Option<ClusterFeature>> =
        subclusters.iter().cloned().map(Some).collect();
    for step in &merge_trace[..e - k] {
        let other = clusters[step.b].take().expect("slot retired once");
        clusters[step.a]
            .as_mut()
            .expect("slot alive until retired")
            .absorb(&other);
    }
    Ok(clusters.into_iter().flatten().collect())
}
