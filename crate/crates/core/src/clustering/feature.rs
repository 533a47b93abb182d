//! Clustering feature statistics and the log-likelihood merge distance.
//!
//! A [`ClusterFeature`] is the additive summary `(N, sum, squared sum)` of
//! a set of records. Merging two clusters only adds summaries, so a tree
//! of them compresses arbitrarily many records into bounded memory while
//! preserving exact means and variances.
//!
//! The distance between clusters is the log-likelihood cost of merging
//! them: `d(s, t) = zeta(s) + zeta(t) - zeta(s u t)` where
//! `zeta(s) = -N_s * sum_f 0.5 * ln(gv_f + var_sf)`, `gv_f` being the
//! dataset-wide variance of feature `f` and `var_sf` the within-cluster
//! variance. The global term keeps the logarithm defined for singleton
//! clusters, whose within-variance is zero.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::matrix::Matrix;
use crate::{Error, Result};

/// Variance floor that keeps logarithms finite on constant features.
const VARIANCE_FLOOR: f64 = 1e-12;

/// Additive summary statistics of one sub-cluster.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClusterFeature {
    /// Number of raw records summarized (>= 1).
    pub count: u64,
    pub linear_sum: Vec<f64>,
    pub squared_sum: Vec<f64>,
}

impl ClusterFeature {
    /// Summary of a single record carrying `weight` raw repeats.
    pub fn from_point(point: &[f64], weight: u64) -> Self {
        debug_assert!(weight >= 1);
        let w = weight as f64;
        Self {
            count: weight,
            linear_sum: point.iter().map(|v| w * v).collect(),
            squared_sum: point.iter().map(|v| w * v * v).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.linear_sum.len()
    }

    /// Adds another summary into this one.
    pub fn absorb(&mut self, other: &ClusterFeature) {
        debug_assert_eq!(self.width(), other.width());
        self.count += other.count;
        for (a, b) in self.linear_sum.iter_mut().zip(&other.linear_sum) {
            *a += b;
        }
        for (a, b) in self.squared_sum.iter_mut().zip(&other.squared_sum) {
            *a += b;
        }
    }

    /// Merged summary of two clusters.
    pub fn merged(&self, other: &ClusterFeature) -> ClusterFeature {
        let mut out = self.clone();
        out.absorb(other);
        out
    }

    /// Mean of feature `f`.
    pub fn mean(&self, f: usize) -> f64 {
        self.linear_sum[f] / self.count as f64
    }

    /// Within-cluster variance of feature `f` (maximum-likelihood form,
    /// clamped at zero against rounding).
    pub fn variance(&self, f: usize) -> f64 {
        let n = self.count as f64;
        let mean = self.linear_sum[f] / n;
        let v = self.squared_sum[f] / n - mean * mean;
        if v > 0.0 {
            v
        } else {
            0.0
        }
    }

    /// Log-likelihood score `-N * sum_f 0.5 * ln(gv_f + var_f)`.
    pub fn zeta(&self, global_variances: &[f64]) -> f64 {
        debug_assert_eq!(self.width(), global_variances.len());
        let n = self.count as f64;
        let mut acc = 0.0;
        for (f, gv) in global_variances.iter().enumerate() {
            acc += 0.5 * (gv + self.variance(f)).ln();
        }
        -n * acc
    }
}

/// Log-likelihood merge distance between two clusters.
///
/// Non-negative, zero for indistinguishable clusters, and growing with
/// both separation and cluster mass.
pub fn loglik_distance(
    a: &ClusterFeature,
    b: &ClusterFeature,
    global_variances: &[f64],
) -> Result<f64> {
    if a.width() != b.width() {
        return Err(Error::ShapeMismatch {
            what: "cluster feature width",
            expected: a.width(),
            got: b.width(),
        });
    }
    if a.width() != global_variances.len() {
        return Err(Error::ShapeMismatch {
            what: "global variance width",
            expected: a.width(),
            got: global_variances.len(),
        });
    }
    if global_variances.iter().any(|&v| v <= 0.0 || v.is_nan()) {
        return Err(Error::InvalidConfig(
            "global variances must be positive".into(),
        ));
    }

    let na = a.count as f64;
    let nb = b.count as f64;
    let nm = na + nb;
    let mut zeta_a = 0.0;
    let mut zeta_b = 0.0;
    let mut zeta_m = 0.0;
    for (f, gv) in global_variances.iter().enumerate() {
        zeta_a += 0.5 * (gv + a.variance(f)).ln();
        zeta_b += 0.5 * (gv + b.variance(f)).ln();

        let ls = a.linear_sum[f] + b.linear_sum[f];
        let ss = a.squared_sum[f] + b.squared_sum[f];
        let mean = ls / nm;
        let var = (ss / nm - mean * mean).max(0.0);
        zeta_m += 0.5 * (gv + var).ln();
    }
    // d = zeta(a) + zeta(b) - zeta(merged); the zeta signs fold into the
    // accumulators above. The difference of near-equal products leaves
    // rounding residue, so results below numerical resolution snap to an
    // exact zero: indistinguishable clusters must merge freely.
    let d = nm * zeta_m - na * zeta_a - nb * zeta_b;
    let scale = (nm * zeta_m).abs() + (na * zeta_a).abs() + (nb * zeta_b).abs();
    if d.abs() <= 1e-12 * scale {
        return Ok(0.0);
    }
    Ok(d.max(0.0))
}

/// Dataset-wide per-feature variances (maximum-likelihood, floored so
/// they stay usable inside logarithms), with optional record weights.
pub fn global_variances(x: &Matrix, weights: Option<&[f64]>) -> Result<Vec<f64>> {
    if x.rows() == 0 {
        return Err(Error::EmptyInput("records for global variances"));
    }
    if let Some(w) = weights {
        if w.len() != x.rows() {
            return Err(Error::ShapeMismatch {
                what: "weight vector",
                expected: x.rows(),
                got: w.len(),
            });
        }
    }
    let weight_of = |i: usize| weights.map_or(1.0, |w| w[i]);
    let total: f64 = (0..x.rows()).map(weight_of).sum();
    let n = x.cols();
    let mut mean = vec![0.0; n];
    for i in 0..x.rows() {
        let w = weight_of(i);
        for (f, v) in x.row(i).iter().enumerate() {
            mean[f] += w * v;
        }
    }
    for m in &mut mean {
        *m /= total;
    }
    let mut var = vec![0.0; n];
    for i in 0..x.rows() {
        let w = weight_of(i);
        for (f, v) in x.row(i).iter().enumerate() {
            let c = v - mean[f];
            var[f] += w * c * c;
        }
    }
    for v in &mut var {
        *v = (*v / total).max(VARIANCE_FLOOR);
    }
    Ok(var)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singleton(x: f64) -> ClusterFeature {
        ClusterFeature::from_point(&[x], 1)
    }

    #[test]
    fn summaries_are_additive() {
        let a = ClusterFeature::from_point(&[1.0, 2.0], 1);
        let b = ClusterFeature::from_point(&[3.0, 4.0], 2);
        let m = a.merged(&b);
        assert_eq!(m.count, 3);
        assert_eq!(m.linear_sum, vec![7.0, 10.0]);
        assert_eq!(m.squared_sum, vec![19.0, 36.0]);
        assert_eq!(m.mean(0), 7.0 / 3.0);
    }

    #[test]
    fn zeta_of_two_point_cluster() {
        // {0, 2} with gv = 1: variance 1, zeta = -2 * 0.5 * ln(2) = -ln 2.
        let c = singleton(0.0).merged(&singleton(2.0));
        let z = c.zeta(&[1.0]);
        assert!((z - (-core::f64::consts::LN_2)).abs() < 1e-12, "{z}");
    }

    #[test]
    fn identical_singletons_are_zero_distance() {
        let a = singleton(1.5);
        let b = singleton(1.5);
        let d = loglik_distance(&a, &b, &[1.0]).unwrap();
        assert!(d.abs() < 1e-9, "{d}");
    }

    #[test]
    // The s = 2 frozen value is ln(1 + 4/4), which happens to be ln 2.
    #[allow(clippy::approx_constant)]
    fn distance_grows_with_separation() {
        // Singletons at distance s with gv = 1 merge at cost
        // ln(1 + s^2 / 4): 0.22314355131420976 (s = 1),
        // 0.6931471805599453 (s = 2), 1.6094379124341003 (s = 4).
        let d1 = loglik_distance(&singleton(0.0), &singleton(1.0), &[1.0]).unwrap();
        let d2 = loglik_distance(&singleton(0.0), &singleton(2.0), &[1.0]).unwrap();
        let d4 = loglik_distance(&singleton(0.0), &singleton(4.0), &[1.0]).unwrap();
        assert!((d1 - 0.22314355131420976).abs() < 1e-12, "{d1}");
        assert!((d2 - 0.6931471805599453).abs() < 1e-12, "{d2}");
        assert!((d4 - 1.6094379124341003).abs() < 1e-12, "{d4}");
        assert!(d1 < d2 && d2 < d4);
    }

    #[test]
    fn distance_is_symmetric() {
        let a = ClusterFeature::from_point(&[1.0, -2.0], 3);
        let b = ClusterFeature::from_point(&[0.5, 4.0], 2);
        let gv = [0.7, 1.3];
        let ab = loglik_distance(&a, &b, &gv).unwrap();
        let ba = loglik_distance(&b, &a, &gv).unwrap();
        assert_eq!(ab, ba);
        assert!(ab > 0.0);
    }

    #[test]
    fn distance_validates_inputs() {
        let a = singleton(0.0);
        let b = ClusterFeature::from_point(&[0.0, 1.0], 1);
        assert!(loglik_distance(&a, &b, &[1.0]).is_err());
        assert!(loglik_distance(&a, &singleton(1.0), &[1.0, 1.0]).is_err());
        assert!(loglik_distance(&a, &singleton(1.0), &[0.0]).is_err());
    }

    #[test]
    fn global_variances_floor_constant_features() {
        let x = Matrix::from_rows(&[vec![1.0, 5.0], vec![1.0, 7.0]]).unwrap();
        let gv = global_variances(&x, None).unwrap();
        assert_eq!(gv[0], VARIANCE_FLOOR);
        assert!((gv[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn global_variances_respect_weights() {
        // Weight 2 on the first record equals duplicating it.
        let x = Matrix::from_rows(&[vec![0.0], vec![3.0]]).unwrap();
        let weighted = global_variances(&x, Some(&[2.0, 1.0])).unwrap();
        let expanded = Matrix::from_rows(&[vec![0.0], vec![0.0], vec![3.0]]).unwrap();
        let plain = global_variances(&expanded, None).unwrap();
        assert!((weighted[0] - plain[0]).abs() < 1e-12);
    }
}
