//! Adaptive Gauss-Kronrod (7, 15) quadrature for complex integrands, and integration over
//! one- and two-dimensional convex bodies by nested chords.

use crate::error::{invalid, Error, Result};
use crate::radon::ConvexBody;
use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Upper limit on accepted subintervals per adaptive integral.
pub const MAX_INTERVALS: usize = 1 << 16;
const MAX_DEPTH: u32 = 48;

/// An integral value with its accumulated error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

fn kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let pair = f(c - x) + f(c + x);
        k += pair * WGK[i];
        if i % 2 == 1 {
            g += pair * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// `∫_a^b f` to absolute accuracy `tol`.
pub fn integrate<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite() && tol > 0.0) {
        return Err(invalid("quadrature", "finite limits and positive tolerance required"));
    }
    if a == b {
        return Ok(Estimate { value: Complex64::new(0.0, 0.0), error: 0.0 });
    }
    let mut stack = vec![(a, b, tol, 0u32)];
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut accepted = 0usize;
    let mut converged = true;
    while let Some((lo, hi, t, depth)) = stack.pop() {
        let (v, e) = kronrod(&mut f, lo, hi);
        if e <= t || depth >= MAX_DEPTH {
            if e > t {
                converged = false;
            }
            total += v;
            err += e;
            accepted += 1;
            if accepted > MAX_INTERVALS {
                return Err(Error::Quadrature { estimate: f64::INFINITY });
            }
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, 0.5 * t, depth + 1));
            stack.push((lo, mid, 0.5 * t, depth + 1));
        }
    }
    if !converged && err > tol {
        return Err(Error::Quadrature { estimate: err });
    }
    Ok(Estimate { value: total, error: err })
}

/// Chord of `Ω_scale` along the last axis over the point with leading coordinates `head`.
pub fn chord(body: &ConvexBody, head: &[f64], scale: f64) -> Option<(f64, f64)> {
    use crate::radon::BodyKind;
    let unit: Vec<f64> = head.iter().map(|h| h / scale).collect();
    let (lo, hi) = match body.kind() {
        BodyKind::Ball => {
            let rest = 1.0 - unit.iter().map(|v| v * v).sum::<f64>();
            if rest <= 0.0 {
                return None;
            }
            (-rest.sqrt(), rest.sqrt())
        }
        BodyKind::Cube => {
            if unit.iter().any(|v| v.abs() >= 1.0) {
                return None;
            }
            (-1.0, 1.0)
        }
        BodyKind::Polytope { normals, offsets } => {
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for (n, b) in normals.iter().zip(offsets) {
                let last = n[n.len() - 1];
                let fixed: f64 = n.iter().zip(&unit).map(|(a, v)| a * v).sum();
                let room = b - fixed;
                if last > 0.0 {
                    hi = hi.min(room / last);
                } else if last < 0.0 {
                    lo = lo.max(room / last);
                } else if room <= 0.0 {
                    return None;
                }
            }
            if lo >= hi {
                return None;
            }
            (lo, hi)
        }
    };
    Some((lo * scale, hi * scale))
}

/// `∫_{Ω_scale} f` for bodies of dimension one or two, to absolute accuracy about `tol`.
pub fn integrate_body<F: Fn(&[f64]) -> Complex64>(body: &ConvexBody, scale: f64, f: F, tol: f64) -> Result<Estimate> {
    match body.dim() {
        1 => {
            let (lo, hi) = chord(body, &[], scale).ok_or_else(|| invalid("body", "empty"))?;
            integrate(|x| f(&[x]), lo, hi, tol)
        }
        2 => {
            let r = scale * body.outer_radius();
            let width = 2.0 * r;
            let inner_tol = 0.5 * tol / width;
            let mut failure: Option<Error> = None;
            let mut inner_err = 0.0;
            let outer = integrate(
                |x| match chord(body, &[x], scale) {
                    None => Complex64::new(0.0, 0.0),
                    Some((lo, hi)) => match integrate(|y| f(&[x, y]), lo, hi, inner_tol) {
                        Ok(e) => {
                            inner_err = f64::max(inner_err, e.error);
                            e.value
                        }
                        Err(e) => {
                            failure.get_or_insert(e);
                            Complex64::new(0.0, 0.0)
                        }
                    },
                },
                -r,
                r,
                0.5 * tol,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            Ok(Estimate { value: outer.value, error: outer.error + inner_err * width })
        }
        k => Err(invalid("body", format!("integration supports dimensions 1 and 2, got {k}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_oscillations() {
        let e = integrate(|x| Complex64::new(x * x, 0.0), 0.0, 3.0, 1e-12).unwrap();
        assert!((e.value.re - 9.0).abs() < 1e-12);
        let w = 200.0;
        let e = integrate(|x| Complex64::from_polar(1.0, w * x), 0.0, 1.0, 1e-10).unwrap();
        let exact = (Complex64::from_polar(1.0, w) - 1.0) / Complex64::new(0.0, w);
        assert!((e.value - exact).norm() < 1e-9);
    }

    #[test]
    fn areas_by_chords() {
        let disk = ConvexBody::ball(2).unwrap();
        let a = integrate_body(&disk, 3.0, |_| Complex64::new(1.0, 0.0), 1e-8).unwrap();
        assert!((a.value.re - 9.0 * std::f64::consts::PI).abs() < 1e-6);
        let tri = ConvexBody::polytope(vec![vec![1.0, 0.0], vec![-1.0, 1.0], vec![-1.0, -1.0]], vec![0.3, 0.3, 0.3]).unwrap();
        let t = integrate_body(&tri, 1.0, |_| Complex64::new(1.0, 0.0), 1e-9).unwrap();
        // vertices (0.3, 0.6), (0.3, -0.6), (-0.3, 0)
        assert!((t.value.re - 0.36).abs() < 1e-7);
    }
}
