//! Principal component analysis over record batches.
//!
//! Components are unit-norm eigenvectors of the sample covariance matrix,
//! computed with a cyclic Jacobi eigensolver. Records may carry integer
//! repeat weights so a compressed data link reduces exactly like its
//! uncompressed original.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::matrix::Matrix;
use crate::{Error, Result};

/// Reduction target: a fixed component count or a retained-variance share.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PcaTarget {
    Components(usize),
    VarianceFraction(f64),
}

impl Default for PcaTarget {
    fn default() -> Self {
        PcaTarget::VarianceFraction(0.95)
    }
}

/// Fitted reduction: feature means, the retained components (rows), and
/// the full non-increasing eigenvalue spectrum of the sample covariance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// `m x n` matrix; row `j` is the j-th principal axis.
    pub components: Matrix,
    /// All `n` eigenvalues, sorted non-increasing, clamped at zero.
    pub eigenvalues: Vec<f64>,
}

impl PcaModel {
    /// Number of retained components.
    pub fn output_width(&self) -> usize {
        self.components.rows()
    }

    /// Projects records onto the retained components.
    pub fn transform(&self, x: &Matrix) -> Result<Matrix> {
        if x.cols() != self.mean.len() {
            return Err(Error::ShapeMismatch {
                what: "transform input width",
                expected: self.mean.len(),
                got: x.cols(),
            });
        }
        let m = self.components.rows();
        let mut out = Matrix::zeros(x.rows(), m);
        for i in 0..x.rows() {
            let row = x.row(i);
            for j in 0..m {
                let axis = self.components.row(j);
                let mut acc = 0.0;
                for f in 0..row.len() {
                    acc += (row[f] - self.mean[f]) * axis[f];
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Maps reduced rows back to the original feature space.
    pub fn inverse_transform(&self, z: &Matrix) -> Result<Matrix> {
        if z.cols() != self.components.rows() {
            return Err(Error::ShapeMismatch {
                what: "inverse transform input width",
                expected: self.components.rows(),
                got: z.cols(),
            });
        }
        let n = self.mean.len();
        let mut out = Matrix::zeros(z.rows(), n);
        for i in 0..z.rows() {
            let row = z.row(i);
            for f in 0..n {
                let mut acc = self.mean[f];
                for (j, &z_j) in row.iter().enumerate() {
                    acc += z_j * self.components.get(j, f);
                }
                out.set(i, f, acc);
            }
        }
        Ok(out)
    }
}

/// Fits a reduction on unweighted records.
pub fn pca_fit(x: &Matrix, target: PcaTarget) -> Result<PcaModel> {
    pca_fit_weighted(x, None, target)
}

/// Fits a reduction where record `i` stands for `weights[i]` raw records.
pub fn pca_fit_weighted(x: &Matrix, weights: Option<&[f64]>, target: PcaTarget) -> Result<PcaModel> {
    let n = x.cols();
    if n == 0 {
        return Err(Error::EmptyInput("feature columns"));
    }
    if let Some(w) = weights {
        if w.len() != x.rows() {
            return Err(Error::ShapeMismatch {
                what: "weight vector",
                expected: x.rows(),
                got: w.len(),
            });
        }
        if w.iter().any(|&v| v <= 0.0 || v.is_nan()) {
            return Err(Error::InvalidConfig("weights must be positive".into()));
        }
    }
    let total_weight: f64 = match weights {
        Some(w) => w.iter().sum(),
        None => x.rows() as f64,
    };
    if x.rows() < 2 || total_weight <= 1.0 {
        return Err(Error::InsufficientData(
            "covariance needs at least two records",
        ));
    }

    let weight_of = |i: usize| weights.map_or(1.0, |w| w[i]);

    let mut mean = vec![0.0; n];
    for i in 0..x.rows() {
        let w = weight_of(i);
        for (f, v) in x.row(i).iter().enumerate() {
            mean[f] += w * v;
        }
    }
    for m in &mut mean {
        *m /= total_weight;
    }

    // Sample covariance with the usual (W - 1) denominator.
    let mut cov = vec![0.0; n * n];
    let mut centered = vec![0.0; n];
    for i in 0..x.rows() {
        let w = weight_of(i);
        for (f, v) in x.row(i).iter().enumerate() {
            centered[f] = v - mean[f];
        }
        for a in 0..n {
            let ca = w * centered[a];
            for b in a..n {
                cov[a * n + b] += ca * centered[b];
            }
        }
    }
    let denom = total_weight - 1.0;
    for a in 0..n {
        for b in a..n {
            let v = cov[a * n + b] / denom;
            cov[a * n + b] = v;
            cov[b * n + a] = v;
        }
    }

    let (mut eigenvalues, vectors) = symmetric_eigen(&cov, n);
    for ev in &mut eigenvalues {
        if *ev < 0.0 {
            *ev = 0.0;
        }
    }

    let m = match target {
        PcaTarget::Components(m) => {
            if m == 0 || m > n {
                return Err(Error::InvalidConfig(format!(
                    "component count {m} outside 1..={n}"
                )));
            }
            m
        }
        PcaTarget::VarianceFraction(v) => {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "variance fraction {v} outside (0, 1]"
                )));
            }
            let total: f64 = eigenvalues.iter().sum();
            let goal = v * total;
            let mut cum = 0.0;
            let mut m = n;
            for (j, ev) in eigenvalues.iter().enumerate() {
                cum += ev;
                if cum >= goal {
                    m = j + 1;
                    break;
                }
            }
            m
        }
    };

    let mut components = Matrix::zeros(m, n);
    for j in 0..m {
        for f in 0..n {
            components.set(j, f, vectors.get(j, f));
        }
    }

    Ok(PcaModel {
        mean,
        components,
        eigenvalues,
    })
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted non-increasing and the matching unit
/// eigenvectors as rows. Each eigenvector is sign-normalized so its
/// largest-magnitude entry is positive, keeping fitted models identical
/// across runs.
fn symmetric_eigen(matrix: &[f64], n: usize) -> (Vec<f64>, Matrix) {
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let scale: f64 = (0..n).map(|i| a[i * n + i].abs()).sum::<f64>() / n.max(1) as f64 + 1e-300;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off <= 1e-30 * scale * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (row, &col) in order.iter().enumerate() {
        let mut best = 0usize;
        let mut best_abs = -1.0;
        for k in 0..n {
            let abs = v[k * n + col].abs();
            if abs > best_abs {
                best_abs = abs;
                best = k;
            }
        }
        let flip = if v[best * n + col] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            vectors.set(row, k, flip * v[k * n + col]);
        }
    }
    (eigenvalues, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
        let mut rng = crate::seed::rng(seed, "pca-test");
        let data: Vec<f64> = (0..rows * cols).map(|_| rng.gen_range(-2.0..2.0)).collect();
        Matrix::new(rows, cols, data).unwrap()
    }

    #[test]
    fn components_are_orthonormal() {
        let x = random_matrix(80, 6, 1);
        let model = pca_fit(&x, PcaTarget::Components(6)).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let dot: f64 = (0..6)
                    .map(|f| model.components.get(a, f) * model.components.get(b, f))
                    .sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-8, "G[{a},{b}] = {dot}");
            }
        }
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let x = random_matrix(120, 5, 2);
        let model = pca_fit(&x, PcaTarget::Components(5)).unwrap();
        // Trace computed independently from per-feature sample variances.
        let n = x.rows() as f64;
        let mut trace = 0.0;
        for f in 0..5 {
            let col = x.column(f);
            let mean = col.iter().sum::<f64>() / n;
            trace += col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        }
        let sum: f64 = model.eigenvalues.iter().sum();
        assert!((sum - trace).abs() < 1e-8, "sum {sum} trace {trace}");
    }

    #[test]
    fn eigenvalues_non_increasing_and_non_negative() {
        let x = random_matrix(60, 8, 3);
        let model = pca_fit(&x, PcaTarget::Components(8)).unwrap();
        for w in model.eigenvalues.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert!(model.eigenvalues.iter().all(|&e| e >= 0.0));
    }

    #[test]
    fn eigen_matches_dense_oracle() {
        // Independent oracle: nalgebra's symmetric eigendecomposition of
        // the same covariance matrix.
        for seed in 0..5u64 {
            let x = random_matrix(200, 10, 100 + seed);
            let model = pca_fit(&x, PcaTarget::Components(10)).unwrap();

            let n = x.rows() as f64;
            let cols = x.cols();
            let mut mean = vec![0.0; cols];
            for i in 0..x.rows() {
                for (f, v) in x.row(i).iter().enumerate() {
                    mean[f] += v;
                }
            }
            for m in &mut mean {
                *m /= n;
            }
            let mut cov = nalgebra::DMatrix::<f64>::zeros(cols, cols);
            for i in 0..x.rows() {
                for a in 0..cols {
                    for b in 0..cols {
                        cov[(a, b)] +=
                            (x.get(i, a) - mean[a]) * (x.get(i, b) - mean[b]) / (n - 1.0);
                    }
                }
            }
            let mut oracle: Vec<f64> = cov.symmetric_eigen().eigenvalues.iter().copied().collect();
            oracle.sort_by(|a, b| b.total_cmp(a));
            for (ours, theirs) in model.eigenvalues.iter().zip(&oracle) {
                assert!((ours - theirs).abs() < 1e-8, "{ours} vs {theirs}");
            }
        }
    }

    #[test]
    fn isotropic_data_has_flat_spectrum() {
        let mut rng = crate::seed::rng(9, "pca-isotropic");
        let rows = 6000;
        let cols = 4;
        let data: Vec<f64> = (0..rows * cols)
            .map(|_| {
                // Box-Muller standard normal.
                let u1: f64 = 1.0 - rng.gen::<f64>();
                let u2: f64 = rng.gen();
                (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
            })
            .collect();
        let x = Matrix::new(rows, cols, data).unwrap();
        let model = pca_fit(&x, PcaTarget::Components(4)).unwrap();
        for ev in &model.eigenvalues {
            assert!((ev - 1.0).abs() < 0.15, "eigenvalue {ev} far from 1");
        }
    }

    #[test]
    fn variance_fraction_picks_smallest_sufficient_m() {
        // Independent features with variances 100, 9, 1, 0.01: the 0.95
        // target needs the first two axes (109 / 110.01 >= 0.95).
        let mut rng = crate::seed::rng(4, "pca-varfrac");
        let scales = [10.0, 3.0, 1.0, 0.1];
        let mut rows = Vec::new();
        for _ in 0..4000 {
            let mut row = Vec::with_capacity(4);
            for s in scales {
                let u1: f64 = 1.0 - rng.gen::<f64>();
                let u2: f64 = rng.gen();
                row.push(s * (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos());
            }
            rows.push(row);
        }
        let x = Matrix::from_rows(&rows).unwrap();
        let model = pca_fit(&x, PcaTarget::VarianceFraction(0.95)).unwrap();
        assert_eq!(model.output_width(), 2);
        // A full-variance target keeps every axis.
        let full = pca_fit(&x, PcaTarget::VarianceFraction(1.0)).unwrap();
        assert_eq!(full.output_width(), 4);
    }

    #[test]
    fn full_rank_reconstruction_roundtrips() {
        let x = random_matrix(50, 6, 5);
        let model = pca_fit(&x, PcaTarget::Components(6)).unwrap();
        let z = model.transform(&x).unwrap();
        let back = model.inverse_transform(&z).unwrap();
        for i in 0..x.rows() {
            for f in 0..x.cols() {
                assert!((x.get(i, f) - back.get(i, f)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn invalid_targets_rejected() {
        let x = random_matrix(10, 3, 6);
        assert!(matches!(
            pca_fit(&x, PcaTarget::Components(0)),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            pca_fit(&x, PcaTarget::Components(4)),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            pca_fit(&x, PcaTarget::VarianceFraction(0.0)),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            pca_fit(&x, PcaTarget::VarianceFraction(1.5)),
            Err(Error::InvalidConfig(_))
        ));
        let one = random_matrix(1, 3, 7);
        assert!(matches!(
            pca_fit(&one, PcaTarget::Components(1)),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn weighted_fit_matches_replicated_records() {
        let base = random_matrix(30, 4, 8);
        let weights: Vec<f64> = (0..30).map(|i| 1.0 + (i % 3) as f64).collect();
        let weighted = pca_fit_weighted(&base, Some(&weights), PcaTarget::Components(4)).unwrap();

        let mut replicated = Vec::new();
        for (i, &w) in weights.iter().enumerate() {
            for _ in 0..w as usize {
                replicated.push(base.row(i).to_vec());
            }
        }
        let replicated = Matrix::from_rows(&replicated).unwrap();
        let plain = pca_fit(&replicated, PcaTarget::Components(4)).unwrap();

        for (a, b) in weighted.eigenvalues.iter().zip(&plain.eigenvalues) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
        for f in 0..4 {
            assert!((weighted.mean[f] - plain.mean[f]).abs() < 1e-9);
        }
    }
}
