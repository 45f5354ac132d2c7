//! Reduced fractions on the torus, frequencies split into rational and real parts, and the
//! fraction sets built from a divisor-closed set of denominators.

use crate::error::{invalid, Error, Result};
use num_integer::Integer;
use serde::Serialize;
use std::f64::consts::TAU;

/// `a/q` with `a ∈ [q]^n` and `gcd(a_1, …, a_n, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RationalFraction {
    q: u64,
    numerators: Vec<u64>,
}

impl RationalFraction {
    pub fn new(numerators: Vec<u64>, q: u64) -> Result<Self> {
        if q == 0 || numerators.is_empty() {
            return Err(invalid("fraction", "needs q ≥ 1 and at least one numerator"));
        }
        if numerators.iter().any(|&a| a == 0 || a > q) {
            return Err(invalid("fraction", format!("numerators must lie in [1, {q}]")));
        }
        let g = numerators.iter().fold(q, |g, &a| g.gcd(&a));
        if g != 1 {
            return Err(Error::NotReduced { q, gcd: g });
        }
        Ok(Self { q, numerators })
    }

    /// The zero frequency `q = 1`, every numerator `1`.
    pub fn zero(len: usize) -> Self {
        Self { q: 1, numerators: vec![1; len] }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// `Σ a_γ m_γ mod q` for integer coordinates `m`.
    pub fn residue(&self, m: &[i64]) -> u64 {
        let q = self.q as i128;
        let s = self
            .numerators
            .iter()
            .zip(m)
            .fold(0i128, |acc, (&a, &x)| (acc + (a as i128 % q) * (x as i128).rem_euclid(q)).rem_euclid(q));
        s as u64
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.numerators.iter().map(|&a| (a % self.q) as f64 / self.q as f64).collect()
    }
}

/// `ξ = a/q + θ`, evaluated with the rational part reduced exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frequency {
    pub rational: RationalFraction,
    pub theta: Vec<f64>,
}

impl Frequency {
    pub fn real(theta: Vec<f64>) -> Self {
        Self { rational: RationalFraction::zero(theta.len()), theta }
    }

    pub fn new(rational: RationalFraction, theta: Vec<f64>) -> Result<Self> {
        if rational.len() != theta.len() {
            return Err(Error::LengthMismatch { expected: rational.len(), found: theta.len() });
        }
        Ok(Self { rational, theta })
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// `−ξ`.
    pub fn neg(&self) -> Self {
        let q = self.rational.q;
        let numerators = self.rational.numerators.iter().map(|&a| if a == q { q } else { q - a }).collect();
        Self { rational: RationalFraction { q, numerators }, theta: self.theta.iter().map(|t| -t).collect() }
    }

    /// `ξ · m` modulo one.
    pub fn phase(&self, m: &[i64]) -> f64 {
        let rat = self.rational.residue(m) as f64 / self.rational.q as f64;
        let real: f64 = self.theta.iter().zip(m).map(|(t, &x)| t * x as f64).sum();
        (rat + real.rem_euclid(1.0)).rem_euclid(1.0)
    }
}

/// `e(x) = exp(2πix)`.
pub fn e(x: f64) -> num_complex::Complex64 {
    num_complex::Complex64::from_polar(1.0, TAU * x)
}

/// Denominators `P_{≤N} = [N]` and every reduced fraction in `𝕋^d` over them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractionSet {
    pub n: u64,
    pub rho: f64,
    pub dim: usize,
    pub denominators: Vec<u64>,
    pub fractions: Vec<RationalFraction>,
}

/// Property checks on the denominators and the size comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractionSetReport {
    pub size: usize,
    /// `Σ_{q ∈ P} J_d(q)` with Jordan's totient.
    pub totient_sum: u128,
    pub contains_range: bool,
    pub within_ceiling: bool,
    pub divisor_closed: bool,
    /// `lcm(P_{≤N})`, absent when it overflows 128 bits.
    pub lcm: Option<u128>,
    pub lcm_within_3_pow_n: Option<bool>,
    /// `e^{(d+1) N^ϱ}`, compared qualitatively.
    pub growth_reference: f64,
}

/// Largest resolution `fraction_set` enumerates.
pub const FRACTION_SIZE_LIMIT: u128 = 5_000_000;

pub fn fraction_set(n: u64, rho: f64, dim: usize) -> Result<FractionSet> {
    if n == 0 || dim == 0 {
        return Err(invalid("N", "N and d must be at least 1"));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(invalid("rho", "must lie in (0, 1)"));
    }
    let denominators: Vec<u64> = (1..=n).collect();
    let expected: u128 = denominators.iter().map(|&q| jordan_totient(q, dim as u32)).sum();
    if expected > FRACTION_SIZE_LIMIT {
        return Err(Error::Infeasible { estimate: expected as f64, limit: FRACTION_SIZE_LIMIT as f64 });
    }
    let mut fractions = Vec::with_capacity(expected as usize);
    for &q in &denominators {
        let mut a = vec![1u64; dim];
        loop {
            if a.iter().fold(q, |g, &x| g.gcd(&x)) == 1 {
                fractions.push(RationalFraction { q, numerators: a.clone() });
            }
            let mut i = 0;
            while i < dim {
                if a[i] < q {
                    a[i] += 1;
                    break;
                }
                a[i] = 1;
                i += 1;
            }
            if i == dim {
                break;
            }
        }
    }
    Ok(FractionSet { n, rho, dim, denominators, fractions })
}

impl FractionSet {
    pub fn report(&self) -> FractionSetReport {
        let p = &self.denominators;
        let ceiling = (self.n as f64).max((self.n as f64).powf(self.rho).exp());
        let lcm = p.iter().try_fold(1u128, |l, &q| {
            let q = q as u128;
            let g = l.gcd(&q);
            (l / g).checked_mul(q)
        });
        let three_pow = 3u128.checked_pow(self.n as u32);
        FractionSetReport {
            size: self.fractions.len(),
            totient_sum: p.iter().map(|&q| jordan_totient(q, self.dim as u32)).sum(),
            contains_range: (1..=self.n).all(|q| p.binary_search(&q).is_ok()),
            within_ceiling: p.iter().all(|&q| q as f64 <= ceiling),
            divisor_closed: p.iter().all(|&q| (1..=q).filter(|d| q % d == 0).all(|d| p.binary_search(&d).is_ok())),
            lcm,
            lcm_within_3_pow_n: match (lcm, three_pow) {
                (Some(l), Some(t)) => Some(l <= t),
                (Some(_), None) => Some(true),
                _ => None,
            },
            growth_reference: ((self.dim as f64 + 1.0) * (self.n as f64).powf(self.rho)).exp(),
        }
    }
}

/// `J_d(q) = q^d Π_{p | q} (1 − p^{−d})`: vectors in `[q]^d` jointly coprime to `q`.
pub fn jordan_totient(q: u64, d: u32) -> u128 {
    let mut result = (q as u128).pow(d);
    let mut m = q;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result = result / (p as u128).pow(d) * ((p as u128).pow(d) - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / (m as u128).pow(d) * ((m as u128).pow(d) - 1);
    }
    result
}
