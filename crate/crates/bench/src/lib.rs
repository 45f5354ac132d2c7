//! Deterministic workloads shared by the benchmarks.

/// A bounded pseudo-random walk of `len` steps, reproducible from `seed`.
pub fn walk(len: usize, seed: u64) -> Vec<f64> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut x = 0.0;
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            x += (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            x
        })
        .collect()
}
