//! Deterministic seed derivation.
//!
//! Every source of randomness in the pipeline is a [`ChaCha8Rng`] seeded
//! from the master seed plus a named label (and, where work is per-record,
//! a counter). Derivations are stable across platforms and independent of
//! execution order, so parallel or re-ordered work reproduces bit-identical
//! results.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a hash of a byte string.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// SplitMix64 finalizer; diffuses low-entropy inputs across all 64 bits.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a named sub-seed from a master seed.
pub fn derive(master: u64, label: &str) -> u64 {
    mix(master ^ fnv1a(label.as_bytes()))
}

/// Derives a sub-seed for one unit of counted work (a record, a sample).
pub fn derive_counted(master: u64, label: &str, counter: u64) -> u64 {
    mix(derive(master, label) ^ mix(counter))
}

/// RNG for a named stream.
pub fn rng(master: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(master, label))
}

/// RNG for one unit of counted work within a named stream.
pub fn rng_counted(master: u64, label: &str, counter: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_counted(master, label, counter))
}
