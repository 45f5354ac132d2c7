//! The r-variation seminorm, its exhaustive oracle, and two block inequalities built on it.

use crate::error::{check_exponent, invalid, Error, Result};
use crate::oscillation::{max_oscillation_values, oscillation_values};
use crate::path::RealPath;
use serde::Serialize;

/// Largest path the exhaustive oracle accepts.
pub const ORACLE_LIMIT: usize = 20;

/// `V^r` over all increasing subsequences.
pub fn variation_seminorm(path: &RealPath, r: f64) -> Result<f64> {
    check_exponent(r, 1.0)?;
    Ok(variation_values(path.values(), r))
}

/// `V^r` of a value sequence by the quadratic subsequence recurrence.
pub fn variation_values(values: &[f64], r: f64) -> f64 {
    let n = values.len();
    let mut best = vec![0.0f64; n];
    let mut top = 0.0f64;
    for j in 1..n {
        let aj = values[j];
        let mut d = 0.0f64;
        for i in 0..j {
            d = d.max(best[i] + (aj - values[i]).abs().powf(r));
        }
        best[j] = d;
        top = top.max(d);
    }
    top.powf(1.0 / r)
}

/// `V^r` by enumerating every increasing subsequence.
pub fn variation_oracle(path: &RealPath, r: f64) -> Result<f64> {
    check_exponent(r, 1.0)?;
    let a = path.values();
    let n = a.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { size: n, limit: ORACLE_LIMIT });
    }
    let mut top = 0.0f64;
    for mask in 1u32..(1u32 << n) {
        let mut prev: Option<f64> = None;
        let mut sum = 0.0;
        for (i, &v) in a.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if let Some(p) = prev {
                    sum += (v - p).abs().powf(r);
                }
                prev = Some(v);
            }
        }
        top = top.max(sum);
    }
    Ok(top.powf(1.0 / r))
}

/// The chain oscillation ≤ variation ≤ dyadic square-function bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainBounds {
    pub lhs: f64,
    pub mid: f64,
    pub rhs: f64,
}

impl ChainBounds {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.mid * (1.0 + tol) + tol && self.mid <= self.rhs * (1.0 + tol) + tol
    }
}

/// Compares `O²_I`, `V²` and the dyadic-block bound for `values[i] = a_{j0+i}`, `j0 ≤ i ≤ 2^m`.
///
/// `index` holds absolute indices inside `[j0, 2^m]`.
pub fn rademacher_menshov_check(values: &[f64], j0: usize, m: u32, index: &[usize]) -> Result<ChainBounds> {
    let top = 1usize
        .checked_shl(m)
        .filter(|_| m < usize::BITS)
        .ok_or_else(|| invalid("m", "dyadic range overflows"))?;
    if j0 >= top {
        return Err(invalid("j0", format!("{j0} is not below 2^{m}")));
    }
    if values.len() != top - j0 + 1 {
        return Err(Error::LengthMismatch { expected: top - j0 + 1, found: values.len() });
    }
    if index.len() < 2 || index.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasingIndex);
    }
    if index[0] < j0 || index[index.len() - 1] > top {
        return Err(invalid("index", "entries must lie in [j0, 2^m]"));
    }
    let local: Vec<usize> = index.iter().map(|&i| i - j0).collect();
    let lhs = oscillation_values(values, &local, 2.0, false);
    let mid = variation_values(values, 2.0);
    let at = |k: usize| values[k - j0];
    let mut rhs = 0.0;
    for i in 0..=m {
        let len = 1usize << i;
        let mut sq = 0.0;
        for j in 0..(top >> i) {
            let (lo, hi) = (j * len, (j + 1) * len);
            if lo >= j0 {
                let d = at(hi) - at(lo);
                sq += d * d;
            }
        }
        rhs += sq.sqrt();
    }
    Ok(ChainBounds { lhs, mid, rhs: std::f64::consts::SQRT_2 * rhs })
}

/// Quantities of the long/short split on an integer time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LongShortSplit {
    /// `O²_I` on the full grid.
    pub lhs: f64,
    /// `sup_{I'} O²_{I'}` over sequences drawn from the long-scale sample set.
    pub long: f64,
    /// `(Σ_n V²(block n)²)^{1/2}` over the short blocks.
    pub short: f64,
    /// Block starts: `0` and `⌈2^{n^τ}⌉` inside the grid.
    pub block_starts: Vec<usize>,
}

impl LongShortSplit {
    /// The split inequality with constant 3.
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= 3.0 * (self.long + self.short) * (1.0 + tol) + tol
    }
}

/// Block starts `0, ⌈2^{n^τ}⌉, …` below `len`, deduplicated.
pub fn stretched_block_starts(len: usize, tau: f64) -> Vec<usize> {
    let mut starts = vec![0usize];
    let mut n = 0u32;
    loop {
        let b = 2f64.powf((n as f64).powf(tau)).ceil();
        if b >= len as f64 {
            break;
        }
        let b = b as usize;
        if b > *starts.last().unwrap() {
            starts.push(b);
        }
        n += 1;
    }
    starts
}

/// Splits `O²_I` of `values` (sampled at `0..len`) into long oscillations over block starts and
/// short variations inside blocks.
///
/// Each short block runs from its start through the next block start inclusive; the long-scale
/// samples are the block starts plus the final sample.
pub fn long_short_split(values: &[f64], tau: f64, index: &[usize]) -> Result<LongShortSplit> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(invalid("tau", "must lie in (0, 1)"));
    }
    let n = values.len();
    if n < 2 {
        return Err(Error::TooLarge { size: n, limit: 2 });
    }
    if index.len() < 2 || index.windows(2).any(|w| w[0] >= w[1]) || index[index.len() - 1] >= n {
        return Err(Error::NonIncreasingIndex);
    }
    let lhs = oscillation_values(values, index, 2.0, false);
    let starts = stretched_block_starts(n, tau);
    let mut coarse: Vec<usize> = starts.clone();
    if *coarse.last().unwrap() != n - 1 {
        coarse.push(n - 1);
    }
    let coarse_values: Vec<f64> = coarse.iter().map(|&c| values[c]).collect();
    let long = (1..coarse_values.len())
        .map(|j| max_oscillation_values(&coarse_values, 2.0, j).0)
        .fold(0.0f64, f64::max);
    let mut short_sq = 0.0;
    for (b, &s) in starts.iter().enumerate() {
        let end = starts.get(b + 1).copied().unwrap_or(n - 1);
        let v = variation_values(&values[s..=end], 2.0);
        short_sq += v * v;
    }
    Ok(LongShortSplit { lhs, long, short: short_sq.sqrt(), block_starts: starts })
}
