//! Deterministic seed derivation.
//!
//! Every random stream in the crate (one per synthetic track, per experiment
//! repetition, per tree) is seeded from a master seed and a path of indices,
//! so results never depend on execution order or thread count.

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `derive_seed(m, [a, b])` = `mix(mix(m, a), b)` with
/// `mix(s, i) = splitmix64(s ^ splitmix64(i))`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |s, &i| splitmix64(s ^ splitmix64(i)))
}
