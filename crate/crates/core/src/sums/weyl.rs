//! Normalised Weyl sums over lattice points of dilated bodies and the minor-arc inequality.

use super::fraction::{e, Frequency};
use crate::error::{invalid, Error, Result};
use crate::fit::{calibrate, linear_fit, Calibration};
use crate::radon::{canonical_image, lattice_points, CanonicalExponentSet, ConvexBody};
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

fn check_frequency(gamma: &CanonicalExponentSet, len: usize) -> Result<()> {
    if len != gamma.len() {
        return Err(Error::LengthMismatch { expected: gamma.len(), found: len });
    }
    Ok(())
}

/// `Σ_{y ∈ Ω_t ∩ ℤ^k} e(ξ·(y)^Γ)` without normalisation.
pub fn exponential_sum(body: &ConvexBody, gamma: &CanonicalExponentSet, t: f64, xi: &Frequency) -> Result<Complex64> {
    check_frequency(gamma, xi.len())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for y in lattice_points(body, t)? {
        acc += e(xi.phase(&canonical_image(&y, gamma)?));
    }
    Ok(acc)
}

/// `m_t(ξ) = vol(Ω_t)^{−1} Σ_{y ∈ Ω_t ∩ ℤ^k} e(ξ·(y)^Γ)`.
pub fn weyl_sum(body: &ConvexBody, gamma: &CanonicalExponentSet, t: f64, xi: &Frequency) -> Result<Complex64> {
    if !(t >= 1.0) {
        return Err(invalid("t", "must be at least 1"));
    }
    let vol = body.volume().value * t.powi(body.dim() as i32);
    Ok(exponential_sum(body, gamma, t, xi)? / vol)
}

/// Continued-fraction convergents `a/q` of `x ∈ [0, 1)` with `q ≤ q_max`.
/// Each satisfies `|x − a/q| ≤ 1/q²`.
pub fn convergents(x: f64, q_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut rest = x.rem_euclid(1.0);
    loop {
        let a = rest.floor();
        if a > u32::MAX as f64 {
            break;
        }
        let a = a as u64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > q_max {
            break;
        }
        if out.last() != Some(&(p2 % q2, q2)) {
            out.push((p2 % q2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a as f64;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    out
}

/// Both sides of the minor-arc inequality with constant weight, before the exponent is chosen.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylTerms {
    pub n: f64,
    pub q: u64,
    pub kappa: f64,
    /// `|Σ_{m ∈ Ω_N ∩ ℤ^k} e(P(m))|`.
    pub lhs: f64,
    /// `N^k log(N + 1)`.
    pub scale: f64,
}

/// `P(m) = Σ_γ ξ_γ m^γ` summed over `Ω_N`, with `a/q` approximating the coefficient of `Γ[gamma0]`.
pub fn weyl_terms(body: &ConvexBody, gamma: &CanonicalExponentSet, n: f64, xi: &[f64], gamma0: usize, a: u64, q: u64) -> Result<WeylTerms> {
    check_frequency(gamma, xi.len())?;
    if !(n > 1.0) {
        return Err(invalid("N", "must exceed 1"));
    }
    if gamma0 >= gamma.len() {
        return Err(invalid("gamma0", "index outside Γ"));
    }
    if q == 0 || a >= q || a.gcd(&q) != 1 {
        return Err(Error::NotReduced { q, gcd: a.gcd(&q) });
    }
    if (xi[gamma0] - a as f64 / q as f64).abs() > 1.0 / (q as f64 * q as f64) {
        return Err(invalid("a/q", "|ξ_γ0 − a/q| must be at most 1/q²"));
    }
    let lhs = exponential_sum(body, gamma, n, &Frequency::real(xi.to_vec()))?.norm();
    let deg = gamma.degrees()[gamma0] as i32;
    let kappa = (q as f64).min(n.powi(deg) / q as f64);
    let k = body.dim() as i32;
    Ok(WeylTerms { n, q, kappa, lhs, scale: n.powi(k) * (n + 1.0).ln() })
}

/// The exponent fitted on calibration terms and the constant checked on validation terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylCalibration {
    pub epsilon: f64,
    pub calibration: Calibration,
}

impl WeylCalibration {
    pub fn passed(&self) -> bool {
        self.epsilon > 0.0 && self.calibration.passed()
    }
}

fn weyl_pairs(terms: &[WeylTerms], epsilon: f64) -> Vec<(f64, f64)> {
    terms.iter().map(|t| (t.lhs, t.scale * t.kappa.powf(-epsilon))).collect()
}

/// `ε` from regressing `log(lhs/scale)` on `log κ` over points with `κ > 1`, then the constant.
pub fn calibrate_weyl(calibration: &[WeylTerms], validation: &[WeylTerms], headroom: f64) -> WeylCalibration {
    let (xs, ys): (Vec<f64>, Vec<f64>) = calibration
        .iter()
        .filter(|t| t.kappa > 1.0 && t.lhs > 0.0)
        .map(|t| (t.kappa.ln(), (t.lhs / t.scale).ln()))
        .unzip();
    let epsilon = linear_fit(&xs, &ys).map_or(0.0, |(slope, _)| -slope);
    WeylCalibration {
        epsilon,
        calibration: calibrate(&weyl_pairs(calibration, epsilon), &weyl_pairs(validation, epsilon), headroom),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fraction::RationalFraction;
    use super::*;

    #[test]
    fn zero_frequency_counts_points() {
        let ball = ConvexBody::ball(1).unwrap();
        let g = CanonicalExponentSet::powers(&[1]).unwrap();
        // (−10, 10) ∩ ℤ has 19 points, vol(Ω_10) = 20
        let m = weyl_sum(&ball, &g, 10.0, &Frequency::real(vec![0.0])).unwrap();
        assert!((m - Complex64::new(0.95, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn geometric_series() {
        let ball = ConvexBody::ball(1).unwrap();
        let g = CanonicalExponentSet::powers(&[1]).unwrap();
        let x = 0.137;
        let m = exponential_sum(&ball, &g, 6.0, &Frequency::real(vec![x])).unwrap();
        // Σ_{y=−5}^{5} e(xy) = sin(11πx) / sin(πx)
        let pi = std::f64::consts::PI;
        assert!((m - Complex64::new((11.0 * pi * x).sin() / (pi * x).sin(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn conjugate_symmetry() {
        let disk = ConvexBody::ball(2).unwrap();
        let g = CanonicalExponentSet::full(2, 2).unwrap();
        let rat = RationalFraction::new(vec![1, 2, 3, 4, 1], 7).unwrap();
        let xi = Frequency::new(rat, vec![0.01, -0.02, 0.003, 0.0, 0.001]).unwrap();
        let a = weyl_sum(&disk, &g, 6.0, &xi).unwrap();
        let b = weyl_sum(&disk, &g, 6.0, &xi.neg()).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn convergents_approximate() {
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let c = convergents(golden, 1000);
        assert_eq!(c.last(), Some(&(610, 987)));
        for (a, q) in c {
            assert!((golden - a as f64 / q as f64).abs() <= 1.0 / (q * q) as f64);
        }
    }

    #[test]
    fn approximation_condition_is_enforced() {
        let ball = ConvexBody::ball(1).unwrap();
        let g = CanonicalExponentSet::powers(&[1, 2]).unwrap();
        assert!(weyl_terms(&ball, &g, 64.0, &[0.1, 0.3], 1, 1, 3).is_ok());
        assert!(weyl_terms(&ball, &g, 64.0, &[0.1, 0.5], 1, 1, 3).is_err());
        assert!(weyl_terms(&ball, &g, 64.0, &[0.1, 0.5], 1, 2, 4).is_err());
    }
}
