//! Seeded randomness.
//!
//! Everything random in this crate flows through a ChaCha8 generator
//! seeded with an explicit 64-bit seed, so identical inputs reproduce
//! identical outputs bit for bit within one build. Independent work
//! units (graphs of an experiment cell, sector placements, sweep
//! starts) get their own generators with sub-seeds derived from a
//! master seed through the SplitMix64 finalizer below.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The pseudorandom generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

/// Creates the crate's generator from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective mixing of a
/// 64-bit word; the standard seed-expansion primitive.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent sub-seed from `master` and a tuple of indices.
///
/// The scheme is documented so runs can be reproduced piecemeal: starting
/// from `splitmix64(master)`, each part is absorbed with
/// `state = splitmix64(state ^ splitmix64(part))`. Distinct index tuples
/// give (for all practical purposes) independent streams.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut state = splitmix64(master);
    for &part in parts {
        state = splitmix64(state ^ splitmix64(part));
    }
    state
}
