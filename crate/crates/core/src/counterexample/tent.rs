//! The weighted atom space and the tent family on it, with exact block extrema for
//! arbitrary partition sequences.

use super::dyadic::DyadicRational;
use crate::error::{invalid, Result};
use rand::Rng;
use serde::Serialize;
use std::collections::HashMap;

/// Largest `M + j`, keeping every time and numerator inside `u64`.
pub const HORIZON_EXPONENT_LIMIT: u32 = 40;

/// Parameters `(j, M)`: `2^{j−1}` tents per atom, atoms up to level `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TentFamilySpec {
    j: u32,
    m: u32,
}

impl TentFamilySpec {
    pub fn new(j: u32, m: u32) -> Result<Self> {
        if j == 0 || m == 0 {
            return Err(invalid("j, M", "must be positive"));
        }
        if j + m > HORIZON_EXPONENT_LIMIT {
            return Err(invalid("j, M", format!("M + j must not exceed {HORIZON_EXPONENT_LIMIT}")));
        }
        Ok(Self { j, m })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `2^{M+j}`: every tent vanishes from here on.
    pub fn horizon(&self) -> u64 {
        1 << (self.m + self.j)
    }

    /// Atoms `(2^k, n)` with `n ∈ [2^{M−k}]` at level `k ≤ M`.
    pub fn atoms_at(&self, k: u32) -> u64 {
        if k > self.m {
            0
        } else {
            1 << (self.m - k)
        }
    }

    /// `[S, E] = [2^{k+j}(n−1), 2^{k+j} n]` for atoms carrying a tent train.
    pub fn support(&self, k: u32, n: u64) -> Option<(u64, u64)> {
        if k > self.m || n == 0 || n > self.atoms_at(k) {
            return None;
        }
        let w = 1u64 << (k + self.j);
        Some((w * (n - 1), w * n))
    }

    /// `2^k f(2^k, n, t)` as an integer.
    pub fn numerator(&self, k: u32, n: u64, t: u64) -> u64 {
        match self.support(k, n) {
            Some((s, e)) if t >= s && t < e => tent(k, t - s),
            _ => 0,
        }
    }

    /// Samples of `f(2^k, n, ·)` on `[0, 2^{M+j}]`.
    pub fn atom_path(&self, k: u32, n: u64) -> Vec<DyadicRational> {
        (0..=self.horizon()).map(|t| evaluate_f(self, k, n, t)).collect()
    }

    /// `2^k f(2^k, n, ·)` on the atom's support `[S, E]`.
    pub fn support_numerators(&self, k: u32, n: u64) -> Vec<i64> {
        match self.support(k, n) {
            Some((s, e)) => (s..=e).map(|t| self.numerator(k, n, t) as i64).collect(),
            None => vec![0],
        }
    }

    /// `μ` of every atom carrying a tent train: `(M + 1) 2^M`.
    pub fn support_measure(&self) -> f64 {
        (self.m as f64 + 1.0) * 2f64.powi(self.m as i32)
    }
}

/// Tent of half-width `2^k` and height `2^k`, periodic in `u` with period `2^{k+1}`.
fn tent(k: u32, u: u64) -> u64 {
    let half = 1u64 << k;
    let r = u & ((half << 1) - 1);
    if r <= half {
        r
    } else {
        (half << 1) - r
    }
}

/// `f_{j,M}(2^k, n, t)`.
pub fn evaluate_f(spec: &TentFamilySpec, k: u32, n: u64, t: u64) -> DyadicRational {
    if k > spec.m {
        return DyadicRational::ZERO;
    }
    DyadicRational::new(spec.numerator(k, n, t) as i64, k)
}

/// The atoms `(2^k, n)` of `X` up to level `levels` with `μ({(2^k, n)}) = 2^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleSpace {
    pub atoms: Vec<(u32, u64)>,
}

impl CounterexampleSpace {
    /// Every atom on which `f_{j,M}` can be nonzero.
    pub fn support(spec: &TentFamilySpec) -> Self {
        let atoms = (0..=spec.m).flat_map(|k| (1..=spec.atoms_at(k)).map(move |n| (k, n))).collect();
        Self { atoms }
    }

    /// The support plus the first atom beyond it on each level and one level above.
    pub fn with_margin(spec: &TentFamilySpec) -> Self {
        let mut space = Self::support(spec);
        for k in 0..=spec.m {
            space.atoms.push((k, spec.atoms_at(k) + 1));
        }
        space.atoms.push((spec.m + 1, 1));
        space
    }

    pub fn weight(atom: (u32, u64)) -> f64 {
        2f64.powi(atom.0 as i32)
    }

    pub fn total_measure(&self) -> f64 {
        self.atoms.iter().map(|&a| Self::weight(a)).sum()
    }
}

/// A partition sequence `I` of `ℕ`, stored explicitly or as an unbounded arithmetic progression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Partition {
    Explicit(Vec<u64>),
    Uniform { offset: u64, spacing: u64 },
}

impl Partition {
    pub fn explicit(points: Vec<u64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("I", "needs at least one entry"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("I", "entries must be strictly increasing"));
        }
        Ok(Self::Explicit(points))
    }

    pub fn uniform(offset: u64, spacing: u64) -> Result<Self> {
        if spacing == 0 {
            return Err(invalid("spacing", "must be positive"));
        }
        Ok(Self::Uniform { offset, spacing })
    }

    /// Entries `≤ horizon` as sample positions.
    pub fn positions(&self, horizon: u64) -> Vec<usize> {
        match self {
            Self::Explicit(v) => v.iter().take_while(|&&t| t <= horizon).map(|&t| t as usize).collect(),
            Self::Uniform { offset, spacing } => (0..)
                .map(|i| offset + i * spacing)
                .take_while(|&t| t <= horizon)
                .map(|t| t as usize)
                .collect(),
        }
    }

    /// Calls `visit(a, c)` for every block `[a, c]` (integer times, `c` possibly `u64::MAX`)
    /// that meets `[s, e)`.
    fn blocks_meeting(&self, s: u64, e: u64, mut visit: impl FnMut(u64, u64)) {
        match self {
            Self::Explicit(v) => {
                let mut l = v.partition_point(|&x| x <= s).saturating_sub(1);
                while l < v.len() && v[l] < e {
                    let c = v.get(l + 1).map_or(u64::MAX, |b| b - 1);
                    if c >= s {
                        visit(v[l], c);
                    }
                    l += 1;
                }
            }
            Self::Uniform { offset, spacing } => {
                let mut a = if s >= *offset { offset + (s - offset) / spacing * spacing } else { *offset };
                while a < e {
                    visit(a, a.saturating_add(spacing - 1));
                    a = match a.checked_add(*spacing) {
                        Some(b) => b,
                        None => break,
                    };
                }
            }
        }
    }
}

/// Nonzero block deviations of one atom, as numerators over `2^level` with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BlockProfile {
    pub level: u32,
    pub deviations: Vec<(u64, u64)>,
}

impl BlockProfile {
    /// `O^ρ_{I,∞}(x)^ρ = Σ_blocks dev^ρ`.
    pub fn oscillation_power(&self, rho: f64) -> f64 {
        let scale = 2f64.powi(-(self.level as i32));
        self.deviations.iter().map(|&(d, m)| m as f64 * (d as f64 * scale).powf(rho)).sum()
    }

    /// `N_{2^{−N}, I}(x)`: blocks deviating by at least `2^{−N}`.
    pub fn sequential_count(&self, n: u32) -> u64 {
        let target = 1u128 << self.level;
        self.deviations
            .iter()
            .filter(|&&(d, _)| (d as u128) << n >= target)
            .map(|&(_, m)| m)
            .sum()
    }
}

/// `(min, max)` of `2^k f` over the integer times `[a, c]` for a tent train on `[s, e]`.
fn tent_range(k: u32, s: u64, e: u64, a: u64, c: u64) -> (u64, u64) {
    if c < s || a > e {
        return (0, 0);
    }
    let (lo, hi) = (a.max(s), c.min(e));
    let half = 1u64 << k;
    let period = half << 1;
    let (ul, uh) = (lo - s, hi - s);
    let value = |u: u64| if u == e - s { 0 } else { tent(k, u) };
    let (gl, gh) = (value(ul), value(uh));
    let next = |target: u64| ul + (target + period - ul % period) % period;
    let max = if next(half) <= uh { half } else { gl.max(gh) };
    let min = if a < s || c > e || next(0) <= uh { 0 } else { gl.min(gh) };
    (min, max)
}

/// Block deviations of atom `(2^k, n)` under `I`, from the tent's extrema.
pub fn block_profile(spec: &TentFamilySpec, k: u32, n: u64, partition: &Partition) -> BlockProfile {
    let mut devs: Vec<u64> = Vec::new();
    if let Some((s, e)) = spec.support(k, n) {
        partition.blocks_meeting(s, e, |a, c| {
            let start = spec.numerator(k, n, a);
            let (min, max) = tent_range(k, s, e, a, c);
            let d = (max - start).max(start - min);
            if d > 0 {
                devs.push(d);
            }
        });
    }
    devs.sort_unstable();
    let mut deviations: Vec<(u64, u64)> = Vec::new();
    for d in devs {
        match deviations.last_mut() {
            Some((v, m)) if *v == d => *m += 1,
            _ => deviations.push((d, 1)),
        }
    }
    BlockProfile { level: k, deviations }
}

/// Visits the block profile of every atom in the support, reusing profiles of atoms that see
/// the same pattern of a uniform partition.
pub fn for_each_profile(spec: &TentFamilySpec, partition: &Partition, mut visit: impl FnMut(u32, u64, &BlockProfile)) {
    for k in 0..=spec.m {
        let mut cache: HashMap<(bool, u64), BlockProfile> = HashMap::new();
        for n in 1..=spec.atoms_at(k) {
            match partition {
                Partition::Uniform { offset, spacing } => {
                    let (s, _) = spec.support(k, n).expect("atom in support");
                    let key = if s >= *offset { (true, (s - offset) % spacing) } else { (false, offset - s) };
                    let profile = cache.entry(key).or_insert_with(|| block_profile(spec, k, n, partition));
                    visit(k, n, profile);
                }
                Partition::Explicit(_) => visit(k, n, &block_profile(spec, k, n, partition)),
            }
        }
    }
}

/// Entries starting uniformly in `[0, 2^scale)` with gaps uniform in `[1, 2^{scale+1}]`.
pub fn random_partition<R: Rng>(horizon: u64, scale: u32, rng: &mut R) -> Partition {
    let width = 1u64 << scale.min(62);
    let mut t = rng.gen_range(0..width.min(horizon + 1));
    let mut points = Vec::new();
    while t <= horizon {
        points.push(t);
        t += rng.gen_range(1..=width.saturating_mul(2));
    }
    Partition::Explicit(points)
}
