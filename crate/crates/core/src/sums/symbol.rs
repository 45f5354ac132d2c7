//! The continuous symbol `Φ_N` and the major-arc comparison of a weighted Weyl sum with
//! `G(a/q)` times an oscillatory integral.

use super::fraction::{e, Frequency};
use super::gauss::gauss_sum;
use super::quadrature::{integrate_body, Estimate};
use crate::error::{invalid, Error, Result};
use crate::fit::{calibrate, Calibration};
use crate::radon::{canonical_image, lattice_points, CanonicalExponentSet, ConvexBody};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use std::f64::consts::TAU;

/// Absolute accuracy promised for `Φ_N`.
pub const SYMBOL_TOLERANCE: f64 = 1e-6;

/// `(N^{|γ|} ξ_γ)_γ`.
pub fn dilate_frequency(gamma: &CanonicalExponentSet, n: f64, xi: &[f64]) -> Vec<f64> {
    gamma.degrees().iter().zip(xi).map(|(&d, &x)| x * n.powi(d as i32)).collect()
}

/// `|N^A ξ|_∞`.
pub fn dilated_size(gamma: &CanonicalExponentSet, n: f64, xi: &[f64]) -> f64 {
    dilate_frequency(gamma, n, xi).iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn phase(gamma: &CanonicalExponentSet, xi: &[f64], t: &[f64]) -> f64 {
    gamma
        .exponents()
        .iter()
        .zip(xi)
        .map(|(g, x)| x * t.iter().zip(g).map(|(v, &p)| v.powi(p as i32)).product::<f64>())
        .sum()
}

fn unit_volume(body: &ConvexBody) -> Result<f64> {
    Ok(integrate_body(body, 1.0, |_| Complex64::new(1.0, 0.0), 1e-12)?.value.re)
}

/// `Φ_N(ξ) = vol(Ω_N)^{−1} ∫_{Ω_N} e(ξ·(t)^Γ) dt`, evaluated as `Φ_1(N^A ξ)` after `t = N s`.
pub fn continuous_symbol(body: &ConvexBody, gamma: &CanonicalExponentSet, n: f64, xi: &[f64]) -> Result<Estimate> {
    if xi.len() != gamma.len() {
        return Err(Error::LengthMismatch { expected: gamma.len(), found: xi.len() });
    }
    if gamma.dim() != body.dim() {
        return Err(Error::LengthMismatch { expected: body.dim(), found: gamma.dim() });
    }
    if !(n >= 1.0) {
        return Err(invalid("N", "must be at least 1"));
    }
    let eta = dilate_frequency(gamma, n, xi);
    let vol = unit_volume(body)?;
    let est = integrate_body(body, 1.0, |s| e(phase(gamma, &eta, s)), 0.1 * SYMBOL_TOLERANCE * vol)?;
    let error = est.error / vol;
    if error > SYMBOL_TOLERANCE {
        return Err(Error::Quadrature { estimate: error });
    }
    Ok(Estimate { value: est.value / vol, error })
}

/// `(|Φ_N(ξ)|, |N^A ξ|^{−1/|Γ|})` where `|N^A ξ|_∞ ≥ 1`, and `(|Φ_N(ξ) − 1|, |N^A ξ|)` where
/// it is at most `1`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PhiBoundPairs {
    pub decay: Vec<(f64, f64)>,
    pub closeness: Vec<(f64, f64)>,
}

pub fn phi_bound_pairs(body: &ConvexBody, gamma: &CanonicalExponentSet, points: &[(f64, Vec<f64>)]) -> Result<PhiBoundPairs> {
    let mut out = PhiBoundPairs::default();
    for (n, xi) in points {
        let phi = continuous_symbol(body, gamma, *n, xi)?.value;
        let size = dilated_size(gamma, *n, xi);
        if size >= 1.0 {
            out.decay.push((phi.norm(), size.powf(-1.0 / gamma.len() as f64)));
        }
        if size <= 1.0 {
            out.closeness.push(((phi - 1.0).norm(), size));
        }
    }
    Ok(out)
}

/// Decay and closeness constants fitted on `calibration` and validated on `validation`.
pub fn calibrate_phi_bounds(
    body: &ConvexBody,
    gamma: &CanonicalExponentSet,
    calibration: &[(f64, Vec<f64>)],
    validation: &[(f64, Vec<f64>)],
    headroom: f64,
) -> Result<(Calibration, Calibration)> {
    let cal = phi_bound_pairs(body, gamma, calibration)?;
    let val = phi_bound_pairs(body, gamma, validation)?;
    Ok((calibrate(&cal.decay, &val.decay, headroom), calibrate(&cal.closeness, &val.closeness, headroom)))
}

/// One term `a cos(2π ω·t / scale)` of a smooth kernel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CosineTerm {
    pub amplitude: f64,
    pub frequency: Vec<f64>,
}

/// Kernels with analytic sup-norm and modulus-of-continuity bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Kernel {
    Constant(f64),
    Cosine { terms: Vec<CosineTerm>, scale: f64 },
}

impl Kernel {
    pub fn random_cosine<R: Rng>(dim: usize, terms: usize, scale: f64, rng: &mut R) -> Self {
        let terms = (0..terms)
            .map(|_| CosineTerm {
                amplitude: rng.gen_range(-1.0..1.0),
                frequency: (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            })
            .collect();
        Self::Cosine { terms, scale }
    }

    pub fn eval(&self, t: &[f64]) -> f64 {
        match self {
            Self::Constant(c) => *c,
            Self::Cosine { terms, scale } => terms
                .iter()
                .map(|c| c.amplitude * (TAU * c.frequency.iter().zip(t).map(|(w, x)| w * x).sum::<f64>() / scale).cos())
                .sum(),
        }
    }

    /// Upper bound for `‖K‖_∞`.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Self::Constant(c) => c.abs(),
            Self::Cosine { terms, .. } => terms.iter().map(|c| c.amplitude.abs()).sum(),
        }
    }

    /// Upper bound for `sup_{|x−y| ≤ h} |K(x) − K(y)|`.
    pub fn modulus_bound(&self, h: f64) -> f64 {
        match self {
            Self::Constant(_) => 0.0,
            Self::Cosine { terms, scale } => terms
                .iter()
                .map(|c| {
                    let w = c.frequency.iter().map(|x| x * x).sum::<f64>().sqrt();
                    c.amplitude.abs() * f64::min(2.0, TAU * w * h / scale)
                })
                .sum(),
        }
    }
}

/// The discrepancy and the three-term majorant (without constant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorArcTerms {
    pub lhs: f64,
    pub rhs: f64,
    /// `(q/N) N^k ‖K‖`, `N^k ‖K‖ Σ_γ (q|θ_γ|N^{|γ|−1})^{ε_γ}`, `N^k ω_K(q)`.
    pub parts: [f64; 3],
    pub quadrature_error: f64,
}

/// `|Σ_{y ∈ Ω_N ∩ ℤ^k} e(ξ·(y)^Γ) K(y) − G(a/q) ∫_{Ω_N} e(θ·(t)^Γ) K(t) dt|` for `ξ = a/q + θ`.
pub fn major_arc_residual(
    body: &ConvexBody,
    gamma: &CanonicalExponentSet,
    n: f64,
    kernel: &Kernel,
    xi: &Frequency,
    epsilons: &[f64],
) -> Result<MajorArcTerms> {
    if xi.len() != gamma.len() || epsilons.len() != gamma.len() {
        return Err(Error::LengthMismatch { expected: gamma.len(), found: xi.len().min(epsilons.len()) });
    }
    if epsilons.iter().any(|e| !(0.0..=1.0).contains(e)) {
        return Err(invalid("epsilons", "must lie in [0, 1]"));
    }
    if !(n >= 1.0) {
        return Err(invalid("N", "must be at least 1"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for y in lattice_points(body, n)? {
        let x: Vec<f64> = y.iter().map(|&c| c as f64).collect();
        sum += e(xi.phase(&canonical_image(&y, gamma)?)) * kernel.eval(&x);
    }
    let k = body.dim() as i32;
    let nk = n.powi(k);
    let eta = dilate_frequency(gamma, n, &xi.theta);
    let sup = kernel.sup_bound();
    let tol = 1e-9 * nk * sup.max(1e-300);
    let integral = integrate_body(
        body,
        1.0,
        |s| {
            let t: Vec<f64> = s.iter().map(|v| v * n).collect();
            e(phase(gamma, &eta, s)) * kernel.eval(&t)
        },
        tol / nk,
    )?;
    let g = gauss_sum(&xi.rational, gamma)?;
    let lhs = (sum - g * integral.value * nk).norm();
    let q = xi.rational.q() as f64;
    let arcs: f64 = gamma
        .degrees()
        .iter()
        .zip(&xi.theta)
        .zip(epsilons)
        .map(|((&d, th), &eps)| (q * th.abs() * n.powi(d as i32 - 1)).powf(eps))
        .sum();
    let parts = [q / n * nk * sup, nk * sup * arcs, nk * kernel.modulus_bound(q)];
    Ok(MajorArcTerms { lhs, rhs: parts.iter().sum(), parts, quadrature_error: integral.error * nk })
}

#[cfg(test)]
mod tests {
    use super::super::fraction::RationalFraction;
    use super::*;
    use crate::radon::davenport_gap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symbol_at_zero_and_closed_forms() {
        let seg = ConvexBody::ball(1).unwrap();
        let g = CanonicalExponentSet::powers(&[1]).unwrap();
        let phi = continuous_symbol(&seg, &g, 4.0, &[0.0]).unwrap();
        assert!((phi.value - 1.0).norm() < SYMBOL_TOLERANCE);
        // (1/2N) ∫_{−N}^{N} e(ξt) dt = sin(2πNξ) / (2πNξ)
        let (n, x) = (4.0, 0.37);
        let phi = continuous_symbol(&seg, &g, n, &[x]).unwrap();
        let w = TAU * n * x;
        assert!((phi.value - w.sin() / w).norm() < SYMBOL_TOLERANCE);
        let disk = ConvexBody::ball(2).unwrap();
        let g2 = CanonicalExponentSet::full(2, 2).unwrap();
        let phi = continuous_symbol(&disk, &g2, 3.0, &[0.0; 5]).unwrap();
        assert!((phi.value - 1.0).norm() < SYMBOL_TOLERANCE);
        let phi = continuous_symbol(&disk, &g2, 3.0, &[0.1, -0.05, 0.02, 0.01, -0.03]).unwrap();
        assert!(phi.value.norm() <= 1.0 + SYMBOL_TOLERANCE);
    }

    #[test]
    fn constant_kernel_at_zero_is_the_lattice_gap() {
        let seg = ConvexBody::ball(1).unwrap();
        let g = CanonicalExponentSet::powers(&[1]).unwrap();
        let t = major_arc_residual(&seg, &g, 7.5, &Kernel::Constant(1.0), &Frequency::real(vec![0.0]), &[1.0]).unwrap();
        assert!((t.lhs - davenport_gap(&seg, 7.5).unwrap()).abs() < 1e-9, "{t:?}");
        let t = major_arc_residual(&seg, &g, 7.0, &Kernel::Constant(1.0), &Frequency::real(vec![0.0]), &[1.0]).unwrap();
        assert!((t.lhs - 1.0).abs() < 1e-9);
    }

    #[test]
    fn half_frequency_by_hand() {
        let seg = ConvexBody::ball(1).unwrap();
        let g = CanonicalExponentSet::powers(&[1]).unwrap();
        let theta = 0.01;
        let xi = Frequency::new(RationalFraction::new(vec![1], 2).unwrap(), vec![theta]).unwrap();
        let t = major_arc_residual(&seg, &g, 8.0, &Kernel::Constant(1.0), &xi, &[1.0]).unwrap();
        // G(1/2) = 0 for a linear phase, so only Σ_{|y| ≤ 7} (−1)^y cos(2πθy) remains
        let direct: f64 = (-7i32..=7).map(|y| if y % 2 == 0 { 1.0 } else { -1.0 } * (TAU * theta * y as f64).cos()).sum();
        assert!((t.lhs - direct.abs()).abs() < 1e-9);
        assert!((t.parts[0] - 2.0).abs() < 1e-12);
        assert!((t.parts[1] - 8.0 * 2.0 * theta).abs() < 1e-12);
    }

    #[test]
    fn smooth_kernels_stay_under_the_majorant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let seg = ConvexBody::ball(1).unwrap();
        let g = CanonicalExponentSet::powers(&[1, 2]).unwrap();
        for _ in 0..10 {
            let n = 32.0;
            let kernel = Kernel::random_cosine(1, 3, n, &mut rng);
            let xi = Frequency::new(RationalFraction::new(vec![1, 2], 5).unwrap(), vec![1e-3, 1e-5]).unwrap();
            let t = major_arc_residual(&seg, &g, n, &kernel, &xi, &[1.0, 1.0]).unwrap();
            assert!(t.lhs <= 4.0 * t.rhs, "{t:?}");
        }
    }
}
