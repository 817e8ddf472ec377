//! Deterministic seeded randomness.
//!
//! Every randomized routine in the crate draws from a ChaCha stream derived
//! from a single `u64` master seed plus a stream index, so harness runs are
//! reproducible regardless of trial ordering.

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent substream seed from a master seed and stream index.
pub fn subseed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03).wrapping_add(1))
}

/// RNG for substream `stream` of `master`.
pub fn seeded_rng(master: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(master, stream))
}

/// Uniform draw from `0..bound` (`bound > 0`).
pub fn next_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    use rand_core::RngCore;
    debug_assert!(bound > 0);
    // Modulo bias is irrelevant here: only determinism and rough uniformity matter.
    rng.next_u64() % bound
}
