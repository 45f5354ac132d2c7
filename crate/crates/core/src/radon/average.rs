//! Discrete polynomial Radon averages over dilated bodies and checks built on them.

use super::body::{lattice_points, ConvexBody};
use super::canonical::{canonical_image, lift_polynomial, CanonicalExponentSet, PolynomialMapping};
use crate::error::{invalid, Error, Result};
use crate::oscillation::oscillation_values;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// A finitely supported real function on `ℤ^n`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct LatticeFunction {
    dim: usize,
    values: BTreeMap<Vec<i64>, f64>,
}

impl LatticeFunction {
    pub fn new(dim: usize) -> Self {
        Self { dim, values: BTreeMap::new() }
    }

    pub fn delta(dim: usize) -> Self {
        let mut f = Self::new(dim);
        f.values.insert(vec![0; dim], 1.0);
        f
    }

    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (Vec<i64>, f64)>) -> Result<Self> {
        let mut f = Self::new(dim);
        for (x, v) in pairs {
            if x.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, found: x.len() });
            }
            *f.values.entry(x).or_insert(0.0) += v;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x: &[i64]) -> f64 {
        self.values.get(x).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &f64)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self) -> f64 {
        self.values.values().sum()
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.values.values().fold(0.0, |m, v| m.max(v.abs()));
        }
        self.values.values().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }

    fn add(&mut self, x: Vec<i64>, v: f64) {
        *self.values.entry(x).or_insert(0.0) += v;
    }
}

fn images(body: &ConvexBody, gamma: &CanonicalExponentSet, t: f64) -> Result<Vec<Vec<i64>>> {
    if body.dim() != gamma.dim() {
        return Err(invalid("gamma", "dimension differs from the body"));
    }
    lattice_points(body, t)?
        .iter()
        .map(|y| canonical_image(y, gamma))
        .collect()
}

/// `M_t f(x) = (1/#(Ω_t ∩ ℤ^k)) Σ_y f(x − (y)^Γ)`.
pub fn radon_average(f: &LatticeFunction, body: &ConvexBody, gamma: &CanonicalExponentSet, t: f64) -> Result<LatticeFunction> {
    if !(t >= 1.0) {
        return Err(invalid("t", "must be at least 1"));
    }
    if f.dim != gamma.len() {
        return Err(Error::LengthMismatch { expected: gamma.len(), found: f.dim });
    }
    let imgs = images(body, gamma, t)?;
    let w = 1.0 / imgs.len() as f64;
    let mut out = LatticeFunction::new(f.dim);
    for (x, &v) in &f.values {
        for y in &imgs {
            let shifted = x
                .iter()
                .zip(y)
                .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("shifting support")))
                .collect::<Result<Vec<_>>>()?;
            out.add(shifted, v * w);
        }
    }
    Ok(out)
}

/// Outcome of comparing the direct and lifted averages on `ℤ_q^d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftCheck {
    pub gamma_len: usize,
    pub lattice_size: usize,
    /// Largest difference between the integer sums behind the two averages.
    pub max_sum_difference: i128,
}

impl LiftCheck {
    pub fn exact(&self) -> bool {
        self.max_sum_difference == 0
    }
}

/// Compares `A^P_t f` (shifts by `P(y)`) with the lifted `A_t f` (shifts by `A (y)^Γ`) for an
/// integer function `f` on `ℤ_q^d`, stored row-major with the first coordinate fastest.
pub fn lift_check(poly: &PolynomialMapping, body: &ConvexBody, t: f64, modulus: u64, f: &[i64]) -> Result<LiftCheck> {
    let d = poly.components();
    let q = modulus as i128;
    if modulus < 2 || (modulus as usize).checked_pow(d as u32) != Some(f.len()) {
        return Err(invalid("f", "must have q^d entries with q ≥ 2"));
    }
    if body.dim() != poly.dim() {
        return Err(invalid("body", "dimension differs from the polynomial"));
    }
    let lift = lift_polynomial(poly)?;
    let pts = lattice_points(body, t)?;
    let direct: Vec<Vec<i128>> = pts.iter().map(|y| poly.eval(y)).collect::<Result<_>>()?;
    let lifted: Vec<Vec<i128>> = pts
        .iter()
        .map(|y| lift.apply(&canonical_image(y, &lift.gamma)?))
        .collect::<Result<_>>()?;
    let index = |x: &[i128]| -> usize {
        x.iter().rev().fold(0usize, |acc, c| acc * modulus as usize + c.rem_euclid(q) as usize)
    };
    let mut worst = 0i128;
    let mut x = vec![0i128; d];
    for _ in 0..f.len() {
        let sum = |shifts: &[Vec<i128>]| -> i128 {
            shifts
                .iter()
                .map(|s| {
                    let y: Vec<i128> = x.iter().zip(s).map(|(a, b)| a - b).collect();
                    f[index(&y)] as i128
                })
                .sum()
        };
        worst = worst.max((sum(&direct) - sum(&lifted)).abs());
        for c in x.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    Ok(LiftCheck { gamma_len: lift.gamma.len(), lattice_size: pts.len(), max_sum_difference: worst })
}

fn kernel(body: &ConvexBody, gamma: &CanonicalExponentSet, t: f64) -> Result<LatticeFunction> {
    radon_average(&LatticeFunction::delta(gamma.len()), body, gamma, t)
}

fn l1_distance(a: &LatticeFunction, b: &LatticeFunction) -> f64 {
    let keys: BTreeSet<&Vec<i64>> = a.values.keys().chain(b.values.keys()).collect();
    keys.into_iter().map(|x| (a.get(x) - b.get(x)).abs()).sum()
}

/// Both sides of the short-variation kernel estimate on one block `[n^τ, (n+1)^τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelBound {
    /// `Σ_j ‖(M_{2^{t_j}} − M_{2^{t_{j−1}}}) δ_0‖_{ℓ¹}`.
    pub lhs: f64,
    /// `2^{−k n^τ} #(ℤ^k ∩ (Ω_{2^{(n+1)^τ}} \ Ω_{2^{n^τ}}))`.
    pub rhs: f64,
}

/// Evaluates the short-variation kernel estimate for exponents `times` inside the block.
pub fn short_variation_kernel_bound(
    body: &ConvexBody,
    gamma: &CanonicalExponentSet,
    n: u32,
    tau: f64,
    times: &[f64],
) -> Result<KernelBound> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(invalid("tau", "must lie in (0, 1)"));
    }
    let lo = (n as f64).powf(tau);
    let hi = (n as f64 + 1.0).powf(tau);
    if times.is_empty() || times.iter().any(|&s| s < lo || s >= hi) || times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("times", format!("must increase inside [{lo}, {hi})")));
    }
    let kernels = times
        .iter()
        .map(|&s| kernel(body, gamma, 2f64.powf(s)))
        .collect::<Result<Vec<_>>>()?;
    let lhs = kernels.windows(2).map(|w| l1_distance(&w[1], &w[0])).sum();
    let outer = lattice_points(body, 2f64.powf(hi))?.len();
    let inner = lattice_points(body, 2f64.powf(lo))?.len();
    let k = body.dim() as f64;
    Ok(KernelBound { lhs, rhs: 2f64.powf(-k * lo) * (outer - inner) as f64 })
}

/// `‖O²_I(M_t f : t ∈ times)‖_{ℓ^p} / ‖f‖_{ℓ^p}` with `index` selecting positions in `times`.
pub fn radon_oscillation_ratio(
    f: &LatticeFunction,
    body: &ConvexBody,
    gamma: &CanonicalExponentSet,
    times: &[f64],
    index: &[usize],
    p: f64,
) -> Result<f64> {
    if index.len() < 2 || index.windows(2).any(|w| w[0] >= w[1]) || index[index.len() - 1] >= times.len() {
        return Err(Error::NonIncreasingIndex);
    }
    let avgs = times
        .iter()
        .map(|&t| radon_average(f, body, gamma, t))
        .collect::<Result<Vec<_>>>()?;
    let support: BTreeSet<&Vec<i64>> = avgs.iter().flat_map(|a| a.values.keys()).collect();
    let mut total = 0.0;
    for x in support {
        let path: Vec<f64> = avgs.iter().map(|a| a.get(x)).collect();
        total += oscillation_values(&path, index, 2.0, false).powf(p);
    }
    let den = f.lp_norm(p);
    Ok(if den == 0.0 { 0.0 } else { total.powf(1.0 / p) / den })
}
