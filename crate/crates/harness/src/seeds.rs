//! Deterministic seed derivation for replicated runs.

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Seed for replicate `replicate` of problem size `n`:
/// `mix(mix(mix(base) ^ n) ^ replicate)`. Stable across runs of one build,
/// and distinct replicates get independent streams, so parallel and serial
/// sweep execution agree row for row.
pub fn replicate_seed(base: u64, n: u64, replicate: u64) -> u64 {
    mix(mix(mix(base) ^ n) ^ replicate)
}
