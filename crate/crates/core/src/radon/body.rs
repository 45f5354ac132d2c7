//! Open convex bodies given by membership, their lattice points, and lattice-count estimates.

use crate::error::{invalid, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::OnceLock;

/// Midpoint-rule cells per axis for volumes in dimension at most two.
pub const QUADRATURE_CELLS: usize = 1 << 10;
/// Monte Carlo samples for volumes in dimension three.
pub const MONTE_CARLO_SAMPLES: usize = 1 << 20;
/// Accuracy of the radial boundary search.
pub const BISECTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum BodyKind {
    /// Open Euclidean unit ball.
    Ball,
    /// Open cube `(−1, 1)^k`.
    Cube,
    /// `{x : ⟨a_i, x⟩ < b_i}` with every `b_i > 0`.
    Polytope { normals: Vec<Vec<f64>>, offsets: Vec<f64> },
}

/// A bounded open convex body `Ω` with `B(0, inner) ⊆ Ω ⊆ B(0, outer)`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexBody {
    dim: usize,
    kind: BodyKind,
    inner_radius: f64,
    outer_radius: f64,
    #[serde(skip)]
    volume: OnceLock<Volume>,
}

/// A volume estimate with its standard error (zero for deterministic quadrature).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Volume {
    pub value: f64,
    pub std_error: f64,
}

impl PartialEq for ConvexBody {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.kind == other.kind
    }
}

impl ConvexBody {
    pub fn ball(dim: usize) -> Result<Self> {
        Self::build(dim, BodyKind::Ball, 0.5, 1.0)
    }

    pub fn cube(dim: usize) -> Result<Self> {
        Self::build(dim, BodyKind::Cube, 0.5, (dim as f64).sqrt())
    }

    /// Half-space intersection; radii are certified by sampling directions.
    pub fn polytope(normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        let dim = normals.first().map_or(0, Vec::len);
        if normals.is_empty() || normals.len() != offsets.len() || normals.iter().any(|n| n.len() != dim) {
            return Err(invalid("polytope", "normals and offsets must be non-empty and consistent"));
        }
        if offsets.iter().any(|b| !(*b > 0.0)) {
            return Err(invalid("polytope", "the origin must be interior (all offsets positive)"));
        }
        let inner = normals
            .iter()
            .zip(&offsets)
            .map(|(n, b)| b / n.iter().map(|v| v * v).sum::<f64>().sqrt())
            .fold(f64::INFINITY, f64::min);
        let probe = Self::build(dim, BodyKind::Polytope { normals, offsets }, inner.min(0.999) * 0.999, 1.0)?;
        let outer = probe.max_radial_extent(4096);
        if !outer.is_finite() {
            return Err(invalid("polytope", "body is unbounded"));
        }
        let mut body = probe;
        body.outer_radius = outer * 1.05;
        body.inner_radius = body.inner_radius.min(0.999 * outer);
        Ok(body)
    }

    fn build(dim: usize, kind: BodyKind, inner: f64, outer: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(invalid("k", format!("dimension {dim} outside 1..=3")));
        }
        Ok(Self { dim, kind, inner_radius: inner, outer_radius: outer, volume: OnceLock::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    /// Whether `x ∈ Ω_t = tΩ`, tested without dividing by `t`.
    pub fn contains_scaled(&self, x: &[f64], t: f64) -> bool {
        match &self.kind {
            BodyKind::Ball => x.iter().map(|v| v * v).sum::<f64>() < t * t,
            BodyKind::Cube => x.iter().all(|v| v.abs() < t),
            BodyKind::Polytope { normals, offsets } => normals
                .iter()
                .zip(offsets)
                .all(|(n, b)| n.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() < b * t),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.contains_scaled(x, 1.0)
    }

    /// `sup {s : s·u ∈ Ω}` for a unit vector `u`; infinite along unbounded directions.
    pub fn radial_extent(&self, u: &[f64]) -> f64 {
        match &self.kind {
            BodyKind::Ball => 1.0,
            BodyKind::Cube => 1.0 / u.iter().fold(0.0f64, |m, c| m.max(c.abs())),
            BodyKind::Polytope { normals, offsets } => normals
                .iter()
                .zip(offsets)
                .filter_map(|(n, b)| {
                    let dot: f64 = n.iter().zip(u).map(|(a, c)| a * c).sum();
                    (dot > 0.0).then(|| b / dot)
                })
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// `sup {s : s·u ∈ Ω}` by bisection on the membership predicate alone, to within
    /// [`BISECTION_TOL`].
    pub fn radial_extent_bisect(&self, u: &[f64]) -> f64 {
        let (mut lo, mut hi) = (0.0, self.outer_radius * 2.0 + 1.0);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            let p: Vec<f64> = u.iter().map(|c| c * mid).collect();
            if self.contains(&p) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn max_radial_extent(&self, samples: usize) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b0d);
        (0..samples)
            .map(|_| self.radial_extent(&random_unit(self.dim, &mut rng)))
            .fold(0.0, f64::max)
    }

    /// Samples directions and chords to confirm the radii and convexity; returns the number of
    /// violations found.
    pub fn spot_check<R: Rng>(&self, samples: usize, rng: &mut R) -> usize {
        let mut bad = 0;
        for _ in 0..samples {
            let u = random_unit(self.dim, rng);
            let ext = self.radial_extent_bisect(&u);
            if (ext - self.radial_extent(&u)).abs() > BISECTION_TOL {
                bad += 1;
            }
            if ext < self.inner_radius - BISECTION_TOL || ext > self.outer_radius + BISECTION_TOL {
                bad += 1;
            }
            let a: Vec<f64> = random_unit(self.dim, rng).iter().map(|c| c * rng.gen_range(0.0..self.outer_radius)).collect();
            let b: Vec<f64> = random_unit(self.dim, rng).iter().map(|c| c * rng.gen_range(0.0..self.outer_radius)).collect();
            if self.contains(&a) && self.contains(&b) {
                let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
                if !self.contains(&mid) {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// `vol(Ω)`: midpoint rule for `k ≤ 2`, Monte Carlo for `k = 3`; cached.
    pub fn volume(&self) -> Volume {
        *self.volume.get_or_init(|| self.compute_volume())
    }

    /// Half-width of a coordinate box containing `Ω`.
    fn half_width(&self) -> f64 {
        match self.kind {
            BodyKind::Ball | BodyKind::Cube => 1.0,
            BodyKind::Polytope { .. } => self.outer_radius,
        }
    }

    fn compute_volume(&self) -> Volume {
        let r = self.half_width();
        let n = QUADRATURE_CELLS;
        let h = 2.0 * r / n as f64;
        let mid = |i: usize| -r + (i as f64 + 0.5) * h;
        match self.dim {
            1 => {
                let hits = (0..n).filter(|&i| self.contains(&[mid(i)])).count();
                Volume { value: hits as f64 * h, std_error: 0.0 }
            }
            2 => {
                let hits: usize = (0..n)
                    .map(|i| (0..n).filter(|&j| self.contains(&[mid(i), mid(j)])).count())
                    .sum();
                Volume { value: hits as f64 * h * h, std_error: 0.0 }
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                let box_vol = (2.0 * r).powi(3);
                let hits = (0..MONTE_CARLO_SAMPLES)
                    .filter(|_| {
                        let p = [rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r)];
                        self.contains(&p)
                    })
                    .count();
                let frac = hits as f64 / MONTE_CARLO_SAMPLES as f64;
                Volume {
                    value: frac * box_vol,
                    std_error: box_vol * (frac * (1.0 - frac) / MONTE_CARLO_SAMPLES as f64).sqrt(),
                }
            }
        }
    }

    /// Distance from `x` to `∂Ω_t` measured along the ray from the origin through `x`.
    pub fn radial_boundary_gap(&self, x: &[f64], t: f64) -> f64 {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return t * self.inner_radius;
        }
        let u: Vec<f64> = x.iter().map(|v| v / norm).collect();
        (t * self.radial_extent(&u) - norm).abs()
    }
}

pub(crate) fn random_unit<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Calls `visit` on every integer point of the box `[−h, h]^k`.
pub(crate) fn for_each_in_box(dim: usize, h: i64, mut visit: impl FnMut(&[i64])) {
    let mut p = vec![-h; dim];
    loop {
        visit(&p);
        let mut i = 0;
        loop {
            if i == dim {
                return;
            }
            if p[i] < h {
                p[i] += 1;
                break;
            }
            p[i] = -h;
            i += 1;
        }
    }
}

/// `Ω_t ∩ ℤ^k` in lexicographic order (last coordinate slowest).
pub fn lattice_points(body: &ConvexBody, t: f64) -> Result<Vec<Vec<i64>>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid("t", "must be positive"));
    }
    let h = (t * body.half_width()).ceil() as i64;
    let mut out = Vec::new();
    for_each_in_box(body.dim, h, |p| {
        let x: Vec<f64> = p.iter().map(|&c| c as f64).collect();
        if body.contains_scaled(&x, t) {
            out.push(p.to_vec());
        }
    });
    Ok(out)
}

/// `#{x ∈ ℤ^k : dist(x, ∂Ω_t) < s}` with the radial boundary distance.
pub fn boundary_lattice_count(body: &ConvexBody, t: f64, s: f64) -> Result<usize> {
    let diam = 2.0 * t * body.outer_radius;
    if !(s >= 1.0 && s <= diam) {
        return Err(invalid("s", format!("must lie in [1, {diam}]")));
    }
    let h = (t * body.half_width() + s).ceil() as i64;
    let mut count = 0;
    for_each_in_box(body.dim, h, |p| {
        let x: Vec<f64> = p.iter().map(|&c| c as f64).collect();
        if body.radial_boundary_gap(&x, t) < s {
            count += 1;
        }
    });
    Ok(count)
}

/// `|#(Ω_t ∩ ℤ^k) − vol(Ω_t)| / t^{k−1}`.
pub fn davenport_gap(body: &ConvexBody, t: f64) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(invalid("t", "must be at least 1"));
    }
    let count = lattice_points(body, t)?.len() as f64;
    let k = body.dim as i32;
    Ok((count - body.volume().value * t.powi(k)).abs() / t.powi(k - 1))
}
