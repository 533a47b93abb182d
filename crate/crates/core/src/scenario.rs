//! Deterministic synthetic generator for labeled operating-state datasets.
//!
//! Five states share one Gaussian-mixture family: a centered baseline (S1),
//! a congestion state that elevates the three cyber indicators (S2), a
//! disguised-fault attack (S3), a protection-tampering attack (S4), and a
//! genuine fault (S5). S3 and S5 share the same fault-block signature;
//! the overlap scale widens that block's noise and shrinks the mean gap
//! that still tells them apart, making their confusion tunable.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::TAU;

use rand::Rng;

use crate::datalink::{FusedRecord, StateDataLink};
use crate::seed::rng_counted;
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Number of operating states.
pub const STATE_COUNT: usize = 5;
/// Trailing features carrying the cyber indicators.
pub const CYBER_FEATURES: usize = 3;
/// Feature blocks carrying state signatures (half-open ranges).
const FAULT_BLOCK: (usize, usize) = (0, 8);
const PROTECTION_BLOCK: (usize, usize) = (8, 16);
const DISCRIMINANT_BLOCK: (usize, usize) = (16, 24);
/// Smallest feature width that fits all signature blocks plus the cyber tail.
pub const MIN_FEATURES: usize = DISCRIMINANT_BLOCK.1 + CYBER_FEATURES;

/// Shape, mixture weights, and geometry of a generated dataset.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScenarioConfig {
    /// Total record count.
    pub records: usize,
    /// Feature width including the three trailing cyber indicators.
    pub features: usize,
    /// Class share per state, summing to 1.
    pub proportions: Vec<f64>,
    /// Distance between state signatures in units of baseline noise.
    pub separation: f64,
    /// Extra fault-block noise and discriminant shrinkage blending S3 into S5.
    pub overlap: f64,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            records: 5000,
            features: 56,
            proportions: vec![0.3016, 0.20, 0.24, 0.1784, 0.08],
            separation: 8.0,
            overlap: 0.0,
            seed: 42,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.proportions.len() != STATE_COUNT {
            return Err(Error::InvalidConfig(format!(
                "expected {STATE_COUNT} class proportions, got {}",
                self.proportions.len()
            )));
        }
        let sum: f64 = self.proportions.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "class proportions sum to {sum}, expected 1"
            )));
        }
        if self.proportions.iter().any(|&p| p <= 0.0 || !p.is_finite()) {
            return Err(Error::InvalidConfig(
                "class proportions must be positive".into(),
            ));
        }
        if self.records < 10 * STATE_COUNT {
            return Err(Error::InvalidConfig(format!(
                "record count {} is below 10 per class",
                self.records
            )));
        }
        if self.features < MIN_FEATURES {
            return Err(Error::InvalidConfig(format!(
                "feature width {} is below the minimum {MIN_FEATURES}",
                self.features
            )));
        }
        if !self.separation.is_finite() || self.separation <= 0.0 {
            return Err(Error::InvalidConfig(
                "separation must be a positive real".into(),
            ));
        }
        if !self.overlap.is_finite() || self.overlap < 0.0 {
            return Err(Error::InvalidConfig(
                "overlap must be a nonnegative real".into(),
            ));
        }
        Ok(())
    }

    /// Records per class: proportions rounded to integers, the rounding
    /// residue settled one record at a time at the largest shortfall, so
    /// every count stays within one record of its exact share.
    pub fn class_counts(&self) -> Result<Vec<usize>> {
        self.validate()?;
        let n = self.records as f64;
        let exact: Vec<f64> = self.proportions.iter().map(|p| p * n).collect();
        let mut counts: Vec<i64> = exact.iter().map(|&e| e.round() as i64).collect();
        let mut total: i64 = counts.iter().sum();
        while total < self.records as i64 {
            let pick = argmax_residual(&exact, &counts, 1.0);
            counts[pick] += 1;
            total += 1;
        }
        while total > self.records as i64 {
            let pick = argmax_residual(&exact, &counts, -1.0);
            counts[pick] -= 1;
            total -= 1;
        }
        Ok(counts.into_iter().map(|c| c.max(0) as usize).collect())
    }
}

/// Index with the largest signed shortfall `sign * (exact - count)`,
/// lowest index on ties; a negative sign never drains a class to zero
/// while another stays above its share.
fn argmax_residual(exact: &[f64], counts: &[i64], sign: f64) -> usize {
    let mut best = 0;
    let mut best_r = f64::NEG_INFINITY;
    for (i, (&e, &c)) in exact.iter().zip(counts).enumerate() {
        if sign < 0.0 && c == 0 {
            continue;
        }
        let r = sign * (e - c as f64);
        if r > best_r {
            best_r = r;
            best = i;
        }
    }
    best
}

/// Per-state feature means and standard deviations.
fn state_template(config: &ScenarioConfig, label: u32) -> (Vec<f64>, Vec<f64>) {
    let width = config.features;
    let sep = config.separation;
    let ov = config.overlap;
    let cyber_start = width - CYBER_FEATURES;
    let mut mean = vec![0.0; width];
    let mut sigma = vec![1.0; width];

    let raise = |v: &mut Vec<f64>, block: (usize, usize), amount: f64| {
        for x in &mut v[block.0..block.1] {
            *x += amount;
        }
    };
    match label {
        // S1: centered baseline.
        0 => {}
        // S2: congestion elevates the cyber-indicator tail.
        1 => raise(&mut mean, (cyber_start, width), sep),
        // S3: disguised fault; shares the fault block with S5, keeps a
        // discriminant block whose gap shrinks as overlap grows, and leaks
        // a mild cyber footprint.
        2 => {
            raise(&mut mean, FAULT_BLOCK, sep);
            raise(&mut mean, DISCRIMINANT_BLOCK, sep / (1.0 + ov));
            raise(&mut mean, (cyber_start, width), 0.25 * sep);
            raise(&mut sigma, FAULT_BLOCK, ov);
        }
        // S4: protection tampering with the same mild cyber footprint.
        3 => {
            raise(&mut mean, PROTECTION_BLOCK, sep);
            raise(&mut mean, (cyber_start, width), 0.25 * sep);
        }
        // S5: genuine fault; fault block only, widened alongside S3.
        4 => {
            raise(&mut mean, FAULT_BLOCK, sep);
            raise(&mut sigma, FAULT_BLOCK, ov);
        }
        _ => unreachable!("labels run 0..STATE_COUNT"),
    }
    (mean, sigma)
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

fn device_slot(index: usize) -> (String, String, String, String) {
    let slot = index % 8;
    (
        format!("A{}", slot % 4 + 1),
        format!("L{:02}", slot + 1),
        format!("relay-{:02}", slot + 1),
        format!("10.0.0.{}", slot + 1),
    )
}

/// Generates the labeled dataset. Each record draws from its own
/// counter-derived stream, so output is reproducible and independent of
/// generation order.
pub fn generate(config: &ScenarioConfig) -> Result<StateDataLink> {
    let counts = config.class_counts()?;
    let mut records = Vec::with_capacity(config.records);
    let mut label = 0usize;
    let mut remaining = counts[0];
    for index in 0..config.records {
        while remaining == 0 {
            label += 1;
            remaining = counts[label];
        }
        remaining -= 1;

        let (mean, sigma) = state_template(config, label as u32);
        let mut rng = rng_counted(config.seed, "scenario", index as u64);
        let features: Vec<f64> = mean
            .iter()
            .zip(&sigma)
            .map(|(&m, &s)| m + s * standard_normal(&mut rng))
            .collect();
        let (area, line, component_id, ip) = device_slot(index);
        records.push(FusedRecord {
            timestamp: index as f64 * 0.1,
            area,
            line,
            component_id,
            ip,
            features,
            repeat_count: 1,
            label: Some(label as u32),
        });
    }
    Ok(StateDataLink { records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(records: usize, overlap: f64, seed: u64) -> ScenarioConfig {
        ScenarioConfig {
            records,
            overlap,
            seed,
            ..ScenarioConfig::default()
        }
    }

    /// Mean of one feature over the records of one class.
    fn class_mean(link: &StateDataLink, label: u32, feature: usize) -> f64 {
        let picked: Vec<f64> = link
            .records
            .iter()
            .filter(|r| r.label == Some(label))
            .map(|r| r.features[feature])
            .collect();
        picked.iter().sum::<f64>() / picked.len() as f64
    }

    /// Classifies each test record by the closest train-split class
    /// centroid; even records train, odd records test.
    fn nearest_centroid_accuracy(link: &StateDataLink) -> f64 {
        let width = link.feature_width();
        let mut sums = vec![vec![0.0; width]; STATE_COUNT];
        let mut counts = vec![0usize; STATE_COUNT];
        for (i, r) in link.records.iter().enumerate() {
            if i % 2 == 0 {
                let c = r.label.unwrap() as usize;
                counts[c] += 1;
                for (s, &x) in sums[c].iter_mut().zip(&r.features) {
                    *s += x;
                }
            }
        }
        for (row, &c) in sums.iter_mut().zip(&counts) {
            for s in row.iter_mut() {
                *s /= c as f64;
            }
        }
        let (mut hits, mut total) = (0usize, 0usize);
        for (i, r) in link.records.iter().enumerate() {
            if i % 2 == 1 {
                let mut best = (f64::INFINITY, 0usize);
                for (c, centroid) in sums.iter().enumerate() {
                    let d: f64 = centroid
                        .iter()
                        .zip(&r.features)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    if d < best.0 {
                        best = (d, c);
                    }
                }
                total += 1;
                hits += usize::from(best.1 == r.label.unwrap() as usize);
            }
        }
        hits as f64 / total as f64
    }

    #[test]
    fn default_counts_hit_frozen_imbalance_ratio() {
        let counts = ScenarioConfig::default().class_counts().unwrap();
        assert_eq!(counts, vec![1508, 1000, 1200, 892, 400]);
        let max = *counts.iter().max().unwrap() as f64;
        let min = *counts.iter().min().unwrap() as f64;
        assert_eq!(max / min, 3.77);

        let skewed = ScenarioConfig {
            proportions: vec![0.35, 0.29, 0.25, 0.08, 0.03],
            ..ScenarioConfig::default()
        };
        let counts = skewed.class_counts().unwrap();
        let ratio = *counts.iter().max().unwrap() as f64 / *counts.iter().min().unwrap() as f64;
        assert!((ratio - 11.7).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn counts_stay_within_one_of_exact_shares() {
        let mut rng = crate::seed::rng(7, "scenario-test");
        use rand::Rng;
        for _ in 0..200 {
            let raw: Vec<f64> = (0..STATE_COUNT).map(|_| 0.05 + rng.gen::<f64>()).collect();
            let sum: f64 = raw.iter().sum();
            let config = ScenarioConfig {
                records: 50 + rng.gen_range(0..5000),
                proportions: raw.iter().map(|r| r / sum).collect(),
                ..ScenarioConfig::default()
            };
            let counts = config.class_counts().unwrap();
            assert_eq!(counts.iter().sum::<usize>(), config.records);
            for (&c, &p) in counts.iter().zip(&config.proportions) {
                let exact = p * config.records as f64;
                assert!(
                    (c as f64 - exact).abs() <= 1.0 + 1e-9,
                    "count {c} vs exact {exact}"
                );
            }
        }
    }

    #[test]
    fn generated_link_is_well_formed() {
        let config = small(200, 0.0, 3);
        let link = generate(&config).unwrap();
        link.validate().unwrap();
        assert_eq!(link.records.len(), 200);
        assert_eq!(link.feature_width(), 56);
        let counts = config.class_counts().unwrap();
        for (c, &want) in counts.iter().enumerate() {
            let got = link
                .records
                .iter()
                .filter(|r| r.label == Some(c as u32))
                .count();
            assert_eq!(got, want);
        }
        assert!(link.records.iter().all(|r| r.repeat_count == 1));
        assert!(link.records.iter().all(|r| !r.ip.is_empty()));
    }

    #[test]
    fn same_seed_reproduces_different_seed_does_not() {
        let a = generate(&small(150, 0.5, 11)).unwrap();
        let b = generate(&small(150, 0.5, 11)).unwrap();
        assert_eq!(a, b);
        let c = generate(&small(150, 0.5, 12)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn state_signatures_land_on_their_blocks() {
        let config = ScenarioConfig {
            records: 1000,
            ..ScenarioConfig::default()
        };
        let link = generate(&config).unwrap();
        let sep = config.separation;
        let cyber = config.features - CYBER_FEATURES;

        // S1 centered everywhere.
        assert!(class_mean(&link, 0, 0).abs() < 0.5);
        assert!(class_mean(&link, 0, cyber).abs() < 0.5);
        // S2 lifts only the cyber tail.
        assert!((class_mean(&link, 1, cyber) - sep).abs() < 0.5);
        assert!(class_mean(&link, 1, 0).abs() < 0.5);
        // S3 and S5 share the fault block.
        assert!((class_mean(&link, 2, 0) - sep).abs() < 0.5);
        assert!((class_mean(&link, 4, 0) - sep).abs() < 0.5);
        // Only S3 raises the discriminant block.
        assert!((class_mean(&link, 2, 16) - sep).abs() < 0.5);
        assert!(class_mean(&link, 4, 16).abs() < 0.5);
        // S4 raises the protection block and leaks a quarter of the
        // separation into the cyber tail.
        assert!((class_mean(&link, 3, 8) - sep).abs() < 0.5);
        assert!((class_mean(&link, 3, cyber) - 0.25 * sep).abs() < 0.5);
    }

    #[test]
    fn zero_overlap_is_trivially_separable() {
        let link = generate(&small(1000, 0.0, 42)).unwrap();
        assert!(nearest_centroid_accuracy(&link) >= 0.99);
    }

    #[test]
    fn overlap_monotonically_degrades_the_oracle() {
        let acc: Vec<f64> = [0.0, 6.0, 12.0]
            .iter()
            .map(|&ov| nearest_centroid_accuracy(&generate(&small(1000, ov, 42)).unwrap()))
            .collect();
        assert!(acc[0] > acc[1] && acc[1] > acc[2], "accuracies {acc:?}");
    }

    #[test]
    fn clustering_recovers_the_five_states() {
        let link = generate(&small(1000, 0.0, 42)).unwrap();
        let cfg = crate::clustering::ClusterConfig {
            pca_target: crate::clustering::PcaTarget::Components(10),
            ..Default::default()
        };
        let out = crate::clustering::cluster(&link, &cfg).unwrap();
        assert_eq!(out.model.k, 5);
        let truth: Vec<u32> = link.records.iter().map(|r| r.label.unwrap()).collect();
        let ari = crate::metrics::adjusted_rand_index(&truth, &out.model.labels).unwrap();
        assert!(ari >= 0.97, "ARI {ari}");
    }

    #[test]
    fn config_validation_rejects_bad_shapes() {
        let bad = ScenarioConfig {
            proportions: vec![0.5, 0.5],
            ..ScenarioConfig::default()
        };
        assert!(bad.validate().is_err());

        let bad = ScenarioConfig {
            proportions: vec![0.5, 0.2, 0.2, 0.05, 0.04],
            ..ScenarioConfig::default()
        };
        assert!(bad.validate().is_err());

        let bad = ScenarioConfig {
            records: 20,
            ..ScenarioConfig::default()
        };
        assert!(bad.validate().is_err());

        let bad = ScenarioConfig {
            features: MIN_FEATURES - 1,
            ..ScenarioConfig::default()
        };
        assert!(bad.validate().is_err());

        let bad = ScenarioConfig {
            separation: 0.0,
            ..ScenarioConfig::default()
        };
        assert!(bad.validate().is_err());

        let bad = ScenarioConfig {
            overlap: -0.1,
            ..ScenarioConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
