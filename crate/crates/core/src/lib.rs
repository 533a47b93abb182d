//! Detection toolkit for coordinated cyber attacks on cyber-physical power
//! systems.
//!
//! The crate models the full analysis pipeline that turns raw monitoring
//! captures into attack classifications:
//!
//! 1. [`datalink`] builds operating-state data links: network indicators
//!    (delay ratio, loss ratio, threat degree) are computed from raw packet
//!    statistics and fused with physical device snapshots over sampling
//!    windows into joint feature records.
//! 2. [`clustering`] groups unlabeled records with a two-step procedure:
//!    PCA reduction, CF-tree pre-clustering, then agglomerative merging
//!    under a log-likelihood distance with BIC-guided selection of the
//!    cluster count.
//! 3. [`balance`] oversamples minority states with adaptive synthetic
//!    interpolation so rare attack classes carry weight during training.
//! 4. [`classifier`] trains a cost-sensitive gradient-boosted decision tree
//!    ensemble over the balanced records.
//! 5. [`metrics`] scores partitions and classifiers (adjusted Rand index,
//!    confusion matrices, ROC/PR curves).
//! 6. [`scenario`] generates seeded synthetic datasets with controllable
//!    class proportions, separation, and overlap for desk-scale validation.
//!
//! Everything here is deterministic: a single master seed plus named
//! derivations drive all randomness, collections iterate in fixed order,
//! and ties in nearest-neighbor or split searches break toward the lowest
//! index. The crate is `no_std`-compatible (with `alloc`); IO, file
//! formats, and the command-line front end live in the companion
//! `statelink` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod balance;
pub mod classifier;
pub mod clustering;
pub mod datalink;
mod error;
pub mod matrix;
pub mod metrics;
pub mod scenario;
pub mod seed;

pub use error::Error;

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = core::result::Result<T, Error>;
