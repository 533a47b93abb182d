//! Two-step clustering of operating-state records.
//!
//! The pipeline reduces records with PCA, compresses them into CF-tree
//! sub-clusters, merges those agglomeratively under the log-likelihood
//! distance, picks the cluster count with BIC plus a merge-distance ratio,
//! and finally assigns every record to its nearest cluster, flagging
//! records whose distance is anomalously large as outliers.

mod cftree;
mod feature;
mod pca;
mod select;

pub use cftree::{build_cftree, CfTreeConfig, CfTreeOutcome};
pub use feature::{global_variances, loglik_distance, ClusterFeature};
pub use pca::{pca_fit, pca_fit_weighted, PcaModel, PcaTarget};
pub use select::{clusters_at_level, select_cluster_count, CountSelection, MergeStep};

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::datalink::StateDataLink;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Configuration of the full clustering pass.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusterConfig {
    pub pca_target: PcaTarget,
    pub cftree: CfTreeConfig,
    /// Largest cluster count considered.
    pub k_max: usize,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            pca_target: PcaTarget::default(),
            cftree: CfTreeConfig::default(),
            k_max: 15,
        }
    }
}

/// Fitted clustering: final clusters plus the per-record assignment.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusterModel {
    /// Number of clusters.
    pub k: usize,
    /// Summary statistics of each cluster, in stable slot order.
    pub clusters: Vec<ClusterFeature>,
    /// Dataset-wide per-feature variances of the reduced space.
    pub global_variances: Vec<f64>,
    /// Nearest cluster per record (always populated, outliers included).
    pub labels: Vec<u32>,
    /// Records whose nearest-cluster distance exceeds the outlier bound.
    pub outlier_flags: Vec<bool>,
    /// Full agglomerative merge sequence over the sub-clusters.
    pub merge_trace: Vec<MergeStep>,
    /// Outlier bound: mean + 3 standard deviations of the per-record
    /// nearest-cluster distances.
    pub outlier_threshold: f64,
    /// Final CF-tree absorption threshold.
    pub cf_threshold: f64,
}

impl ClusterModel {
    /// Member counts per cluster over non-outlier records.
    pub fn member_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0usize; self.k];
        for (label, &flagged) in self.labels.iter().zip(&self.outlier_flags) {
            if !flagged {
                counts[*label as usize] += 1;
            }
        }
        counts
    }

    pub fn outlier_count(&self) -> usize {
        self.outlier_flags.iter().filter(|&&f| f).count()
    }
}

/// Clustering output: the reduction model and the cluster model, enough
/// to assign future records.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterOutcome {
    pub pca: PcaModel,
    pub model: ClusterModel,
    /// Sub-cluster count produced by the CF-tree stage.
    pub subcluster_count: usize,
    /// BIC per candidate count, from the selection stage.
    pub bic: Vec<f64>,
    /// Counts examined by the ratio refinement.
    pub candidates: Vec<usize>,
}

/// Runs the full two-step clustering over a data link.
///
/// Record repeat counts act as integer weights throughout, so a
/// compressed link clusters like its expanded original.
pub fn cluster(link: &StateDataLink, config: &ClusterConfig) -> Result<ClusterOutcome> {
    link.validate()?;
    if link.records.len() < 2 {
        return Err(Error::InsufficientData(
            "clustering needs at least two records",
        ));
    }
    let width = link.feature_width();
    if width == 0 {
        return Err(Error::EmptyInput("record features"));
    }

    let mut x = Matrix::zeros(0, width);
    let mut weights_f = Vec::with_capacity(link.records.len());
    let mut weights_u = Vec::with_capacity(link.records.len());
    for record in &link.records {
        x.push_row(&record.features)?;
        weights_f.push(f64::from(record.repeat_count.max(1)));
        weights_u.push(record.repeat_count.max(1));
    }

    let pca = pca_fit_weighted(&x, Some(&weights_f), config.pca_target)?;
    let reduced = pca.transform(&x)?;
    let gv = global_variances(&reduced, Some(&weights_f))?;

    let tree = build_cftree(&reduced, Some(&weights_u), &gv, &config.cftree)?;
    let subclusters = tree.subclusters();
    let selection = select_cluster_count(&subclusters, &gv, config.k_max)?;
    let clusters = clusters_at_level(&subclusters, &selection.merge_trace, selection.k)?;

    let (labels, outlier_flags, outlier_threshold) = assign_labels(&clusters, &gv, &reduced)?;

    Ok(ClusterOutcome {
        pca,
        model: ClusterModel {
            k: selection.k,
            clusters,
            global_variances: gv,
            labels,
            outlier_flags,
            merge_trace: selection.merge_trace,
            outlier_threshold,
            cf_threshold: tree.final_threshold,
        },
        subcluster_count: subclusters.len(),
        bic: selection.bic,
        candidates: selection.candidates,
    })
}

/// Assigns each record to its closest cluster under the log-likelihood
/// distance (lowest index wins ties) and flags outliers: records whose
/// nearest distance exceeds mean + 3 standard deviations of all nearest
/// distances.
pub fn assign_labels(
    clusters: &[ClusterFeature],
    global_variances: &[f64],
    records: &Matrix,
) -> Result<(Vec<u32>, Vec<bool>, f64)> {
    if clusters.is_empty() {
        return Err(Error::EmptyInput("clusters"));
    }
    if records.rows() == 0 {
        return Err(Error::EmptyInput("records to assign"));
    }

    let n = records.rows();
    let mut labels = Vec::with_capacity(n);
    let mut min_dists = Vec::with_capacity(n);
    for i in 0..n {
        let point = ClusterFeature::from_point(records.row(i), 1);
        let mut best = 0u32;
        let mut best_d = f64::INFINITY;
        for (j, cluster) in clusters.iter().enumerate() {
            let d = loglik_distance(cluster, &point, global_variances)?;
            if d < best_d {
                best_d = d;
                best = j as u32;
            }
        }
        labels.push(best);
        min_dists.push(best_d);
    }

    let mean = min_dists.iter().sum::<f64>() / n as f64;
    let var = min_dists.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n as f64;
    let threshold = mean + 3.0 * var.sqrt();
    let outlier_flags: Vec<bool> = min_dists.iter().map(|&d| d > threshold).collect();

    Ok((labels, outlier_flags, threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datalink::FusedRecord;
    use alloc::borrow::ToOwned;
    use alloc::string::String;
    use alloc::vec;
    use rand::Rng;

    fn record(features: Vec<f64>, repeat: u32) -> FusedRecord {
        FusedRecord {
            timestamp: 0.0,
            area: String::from("A1"),
            line: String::from("L1"),
            component_id: "X1".to_owned(),
            ip: "ip1".to_owned(),
            features,
            repeat_count: repeat,
            label: None,
        }
    }

    fn blob_link(centers: &[(f64, f64)], per_blob: usize, seed: u64) -> StateDataLink {
        let mut rng = crate::seed::rng(seed, "cluster-test");
        let mut records = Vec::new();
        for &(cx, cy) in centers {
            for _ in 0..per_blob {
                let u = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let u1: f64 = 1.0 - rng.gen::<f64>();
                    let u2: f64 = rng.gen();
                    (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
                };
                records.push(record(vec![cx + u(&mut rng), cy + u(&mut rng)], 1));
            }
        }
        StateDataLink { records }
    }

    #[test]
    fn recovers_three_blobs() {
        let link = blob_link(&[(0.0, 0.0), (15.0, 0.0), (0.0, 15.0)], 120, 21);
        let config = ClusterConfig {
            pca_target: PcaTarget::Components(2),
            cftree: CfTreeConfig {
                max_subclusters: 48,
                ..CfTreeConfig::default()
            },
            k_max: 10,
        };
        let out = cluster(&link, &config).unwrap();
        assert_eq!(out.model.k, 3);
        // Membership agrees with a nearest-centroid oracle on non-outliers.
        let counts = out.model.member_counts();
        assert_eq!(counts.len(), 3);
        let total: usize = counts.iter().sum();
        assert_eq!(total + out.model.outlier_count(), link.records.len());
        for &c in &counts {
            assert!((c as i64 - 120).unsigned_abs() < 12, "counts {counts:?}");
        }
    }

    #[test]
    fn compressed_and_expanded_links_agree_on_k() {
        // Duplicate-heavy data: the same points repeated with varying
        // multiplicity, once expanded and once compressed with weights.
        let mut expanded = Vec::new();
        let mut compressed = Vec::new();
        let points = [
            (0.0, 0.0, 5u32),
            (0.2, 0.1, 3),
            (10.0, 10.0, 4),
            (10.1, 9.9, 6),
            (0.1, -0.1, 2),
            (9.9, 10.2, 2),
        ];
        for &(x, y, reps) in &points {
            compressed.push(record(vec![x, y], reps));
            for _ in 0..reps {
                expanded.push(record(vec![x, y], 1));
            }
        }
        let config = ClusterConfig {
            pca_target: PcaTarget::Components(2),
            ..ClusterConfig::default()
        };
        let a = cluster(&StateDataLink { records: compressed }, &config).unwrap();
        let b = cluster(&StateDataLink { records: expanded }, &config).unwrap();
        assert_eq!(a.model.k, b.model.k);
        assert_eq!(a.model.k, 2);
    }

    #[test]
    fn far_point_is_flagged_outlier() {
        // Cap the cluster count at the blob count so the stray point must
        // attach to a blob; its assignment distance then sits far beyond
        // mean + 3 sigma of the others.
        let mut link = blob_link(&[(0.0, 0.0), (12.0, 12.0)], 150, 22);
        link.records.push(record(vec![300.0, -300.0], 1));
        let config = ClusterConfig {
            pca_target: PcaTarget::Components(2),
            k_max: 2,
            ..ClusterConfig::default()
        };
        let out = cluster(&link, &config).unwrap();
        assert_eq!(out.model.k, 2);
        assert!(*out.model.outlier_flags.last().unwrap());
        let flagged = out.model.outlier_count();
        assert!((1..10).contains(&flagged), "flagged {flagged}");
    }

    #[test]
    fn assign_prefers_lowest_index_on_ties() {
        let c = ClusterFeature::from_point(&[1.0], 10);
        let clusters = vec![c.clone(), c];
        let x = Matrix::from_rows(&[vec![1.0], vec![0.5]]).unwrap();
        let (labels, _, _) = assign_labels(&clusters, &[1.0], &x).unwrap();
        assert_eq!(labels, vec![0, 0]);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let config = ClusterConfig::default();
        let empty = StateDataLink { records: vec![] };
        assert!(cluster(&empty, &config).is_err());
        let single = StateDataLink {
            records: vec![record(vec![1.0], 1)],
        };
        assert!(matches!(
            cluster(&single, &config),
            Err(Error::InsufficientData(_))
        ));
    }
}
