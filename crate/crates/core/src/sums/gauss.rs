//! Complete exponential sums over residues and their decay in the denominator.

use super::fraction::{e, RationalFraction};
use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::radon::CanonicalExponentSet;
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

/// Largest `q^k` a single Gauss sum enumerates.
pub const GAUSS_TERM_LIMIT: u128 = 1 << 26;
/// Largest total number of terms in a decay study.
pub const DECAY_COST_LIMIT: u128 = 4_000_000_000;
/// Largest denominator in a decay study.
pub const DECAY_Q_MAX: u64 = 500;

/// `(r^γ mod q : γ ∈ Γ)` for every `r ∈ [q]^k`, row-major.
fn residue_monomials(gamma: &CanonicalExponentSet, q: u64) -> Vec<Vec<u64>> {
    let k = gamma.dim();
    let total = (q as usize).pow(k as u32);
    let mut rows = Vec::with_capacity(total);
    let mut r = vec![1u64; k];
    for _ in 0..total {
        rows.push(
            gamma
                .exponents()
                .iter()
                .map(|g| {
                    r.iter().zip(g).fold(1 % q, |acc, (&x, &p)| {
                        (0..p).fold(acc, |a, _| ((a as u128 * (x % q) as u128) % q as u128) as u64)
                    })
                })
                .collect(),
        );
        for c in r.iter_mut() {
            if *c < q {
                *c += 1;
                break;
            }
            *c = 1;
        }
    }
    rows
}

/// `q^{−k} Σ_s (count_s − min count) e(s/q)`: subtracting a full period leaves the sum unchanged
/// and makes equidistributed phases an exact zero.
fn sum_from_counts(counts: &[u64], q: u64, terms: usize) -> Complex64 {
    let floor = if q > 1 { counts.iter().copied().min().unwrap_or(0) } else { 0 };
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, &c) in counts.iter().enumerate() {
        if c > floor {
            acc += e(s as f64 / q as f64) * (c - floor) as f64;
        }
    }
    acc / terms as f64
}

fn gauss_from_table(a: &[u64], q: u64, table: &[Vec<u64>], counts: &mut [u64]) -> Complex64 {
    counts.iter_mut().for_each(|c| *c = 0);
    for row in table {
        let s = row.iter().zip(a).fold(0u128, |acc, (&m, &x)| (acc + m as u128 * (x % q) as u128) % q as u128);
        counts[s as usize] += 1;
    }
    sum_from_counts(counts, q, table.len())
}

fn check_terms(q: u64, k: usize) -> Result<()> {
    let terms = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if terms > GAUSS_TERM_LIMIT {
        return Err(Error::TooLarge { size: terms.min(usize::MAX as u128) as usize, limit: GAUSS_TERM_LIMIT as usize });
    }
    Ok(())
}

/// `G(a/q) = q^{−k} Σ_{r ∈ [q]^k} e((a/q)·(r)^Γ)`.
pub fn gauss_sum(fraction: &RationalFraction, gamma: &CanonicalExponentSet) -> Result<Complex64> {
    if fraction.len() != gamma.len() {
        return Err(Error::LengthMismatch { expected: gamma.len(), found: fraction.len() });
    }
    let q = fraction.q();
    check_terms(q, gamma.dim())?;
    let table = residue_monomials(gamma, q);
    let mut counts = vec![0u64; q as usize];
    Ok(gauss_from_table(fraction.numerators(), q, &table, &mut counts))
}

/// Which denominators a decay study visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DenominatorFilter {
    All,
    Primes,
}

impl DenominatorFilter {
    fn keeps(self, q: u64) -> bool {
        match self {
            Self::All => true,
            Self::Primes => q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d)),
        }
    }
}

/// `max_a |G(a/q)|` per denominator and the fitted envelope `C q^{−δ}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussDecay {
    pub rows: Vec<(u64, f64)>,
    /// Regression of `−log max|G|` on `log q` over nonzero rows with `q > 1`.
    pub delta: Option<f64>,
    /// Smallest `C` with `max|G| ≤ C q^{−δ}` on every row.
    pub envelope: Option<f64>,
}

pub fn gauss_decay_study(gamma: &CanonicalExponentSet, q_max: u64, filter: DenominatorFilter) -> Result<GaussDecay> {
    if q_max > DECAY_Q_MAX {
        return Err(Error::TooLarge { size: q_max as usize, limit: DECAY_Q_MAX as usize });
    }
    let qs: Vec<u64> = (1..=q_max).filter(|&q| filter.keeps(q)).collect();
    let k = gamma.dim() as u32;
    let m = gamma.len() as u32;
    let cost: u128 = qs.iter().map(|&q| (q as u128).pow(k + m)).sum();
    if cost > DECAY_COST_LIMIT {
        return Err(Error::Infeasible { estimate: cost as f64, limit: DECAY_COST_LIMIT as f64 });
    }
    for &q in &qs {
        check_terms(q, gamma.dim())?;
    }
    let rows: Vec<(u64, f64)> = qs
        .par_iter()
        .map(|&q| {
            let table = residue_monomials(gamma, q);
            let mut counts = vec![0u64; q as usize];
            let mut a = vec![1u64; m as usize];
            let mut best = 0.0f64;
            loop {
                if a.iter().fold(q, |g, &x| g.gcd(&x)) == 1 {
                    best = best.max(gauss_from_table(&a, q, &table, &mut counts).norm());
                }
                let mut i = 0;
                while i < a.len() {
                    if a[i] < q {
                        a[i] += 1;
                        break;
                    }
                    a[i] = 1;
                    i += 1;
                }
                if i == a.len() {
                    break;
                }
            }
            (q, best)
        })
        .collect();
    let fit: Vec<(f64, f64)> = rows.iter().filter(|&&(q, g)| q > 1 && g > 0.0).map(|&(q, g)| ((q as f64).ln(), g.ln())).collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = fit.into_iter().unzip();
    let delta = linear_fit(&xs, &ys).map(|(slope, _)| -slope);
    let envelope = delta.map(|d| rows.iter().map(|&(q, g)| g * (q as f64).powf(d)).fold(0.0, f64::max));
    Ok(GaussDecay { rows, delta, envelope })
}
