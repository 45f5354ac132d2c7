//! Two-phase constant calibration and log-log regression for bounds with unstated constants.

use serde::Serialize;

/// A constant fitted on one grid and checked on a disjoint one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    /// `max lhs / rhs` over the calibration grid.
    pub constant: f64,
    pub headroom: f64,
    /// `max lhs / rhs` over the validation grid.
    pub worst_validation_ratio: f64,
    pub calibration_points: usize,
    pub validation_points: usize,
}

impl Calibration {
    /// Every validation point satisfies `lhs ≤ headroom · constant · rhs`.
    pub fn passed(&self) -> bool {
        self.constant.is_finite() && self.worst_validation_ratio <= self.headroom * self.constant
    }
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs <= 0.0 {
        0.0
    } else if rhs <= 0.0 {
        f64::INFINITY
    } else {
        lhs / rhs
    }
}

/// Largest `lhs / rhs` over `(lhs, rhs)` pairs.
pub fn worst_ratio(points: &[(f64, f64)]) -> f64 {
    points.iter().map(|&(l, r)| ratio(l, r)).fold(0.0, f64::max)
}

/// Fits the constant on `calibration` and validates it on `validation` with `headroom`.
pub fn calibrate(calibration: &[(f64, f64)], validation: &[(f64, f64)], headroom: f64) -> Calibration {
    Calibration {
        constant: worst_ratio(calibration),
        headroom,
        worst_validation_ratio: worst_ratio(validation),
        calibration_points: calibration.len(),
        validation_points: validation.len(),
    }
}

/// Least-squares line `y = slope·x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let mx = xs[..n].iter().sum::<f64>() / n as f64;
    let my = ys[..n].iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs[..n].iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs[..n].iter().zip(&ys[..n]).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}
