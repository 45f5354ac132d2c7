//! Dyadic martingales on `[0, 1)` with `2^m` equal atoms, and the maximal, square-function and
//! oscillation quantities measured on them.

use crate::error::{check_exponent, invalid, Error, Result};
use crate::measure::{lp_norm_raw, AtomFunction, FiniteWeightedSpace};
use crate::oscillation::oscillation_values;
use crate::variation::variation_values;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

/// Largest depth for which sign patterns are enumerated exhaustively.
pub const EXHAUSTIVE_SIGN_DEPTH: u32 = 12;

/// Averages adjacent pairs until `2^n` values remain.
pub fn condition(leaves: &[f64], n: u32) -> Result<Vec<f64>> {
    let depth = depth_of(leaves.len())?;
    if n > depth {
        return Err(invalid("n", format!("level {n} exceeds depth {depth}")));
    }
    let mut cur = leaves.to_vec();
    for _ in n..depth {
        cur = cur.chunks(2).map(|c| (c[0] + c[1]) / 2.0).collect();
    }
    Ok(cur)
}

fn depth_of(len: usize) -> Result<u32> {
    if len == 0 || !len.is_power_of_two() {
        return Err(invalid("leaves", format!("length {len} is not a power of two")));
    }
    Ok(len.trailing_zeros())
}

/// `f_0, …, f_m` with `f_n` constant on dyadic intervals of length `2^{−n}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicMartingale {
    levels: Vec<Vec<f64>>,
}

impl DyadicMartingale {
    pub fn from_leaves(leaves: Vec<f64>) -> Result<Self> {
        let depth = depth_of(leaves.len())?;
        if leaves.iter().any(|v| !v.is_finite()) {
            return Err(invalid("leaves", "values must be finite"));
        }
        let mut levels = vec![leaves];
        for _ in 0..depth {
            let next = condition(levels.last().unwrap(), levels.last().unwrap().len().trailing_zeros() - 1)?;
            levels.push(next);
        }
        levels.reverse();
        Ok(Self { levels })
    }

    /// Leaves drawn i.i.d. uniform on `[−1, 1]`.
    pub fn random_uniform<R: Rng>(depth: u32, rng: &mut R) -> Self {
        let leaves = (0..1usize << depth).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        Self::from_leaves(leaves).expect("power-of-two leaves")
    }

    /// `f_n = Σ_{k ≤ n} s_k r_k` with Rademacher functions `r_k` and random signs `s_k`.
    pub fn random_walk<R: Rng>(depth: u32, rng: &mut R) -> Self {
        let signs: Vec<f64> = (0..depth).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
        let leaves = (0..1usize << depth)
            .map(|x| {
                (0..depth)
                    .map(|k| {
                        let bit = (x >> (depth - 1 - k)) & 1;
                        signs[k as usize] * if bit == 0 { 1.0 } else { -1.0 }
                    })
                    .sum()
            })
            .collect();
        Self::from_leaves(leaves).expect("power-of-two leaves")
    }

    pub fn depth(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn leaves(&self) -> &[f64] {
        self.levels.last().unwrap()
    }

    pub fn level(&self, n: u32) -> &[f64] {
        &self.levels[n as usize]
    }

    /// `f_n` evaluated on leaf `x`.
    pub fn value(&self, n: u32, x: usize) -> f64 {
        self.levels[n as usize][x >> (self.depth() - n)]
    }

    /// `n ↦ f_n(x)` for leaf `x`.
    pub fn path(&self, x: usize) -> Vec<f64> {
        (0..=self.depth()).map(|n| self.value(n, x)).collect()
    }

    pub fn space(&self) -> FiniteWeightedSpace {
        let m = self.leaves().len();
        FiniteWeightedSpace::uniform(m, 1.0 / m as f64).expect("positive weight")
    }

    fn weights(&self) -> Vec<f64> {
        vec![1.0 / self.leaves().len() as f64; self.leaves().len()]
    }

    /// Every level equals the conditional expectation of every finer level.
    pub fn tower_holds(&self) -> bool {
        (0..=self.depth()).all(|t| {
            (0..=t).all(|s| {
                let fine = &self.levels[t as usize];
                condition(fine, s).is_ok_and(|c| c == self.levels[s as usize])
            })
        })
    }

    /// `sup_n ‖f_n‖_p`.
    pub fn sup_level_norm(&self, p: f64) -> f64 {
        let w = self.weights();
        (0..=self.depth())
            .map(|n| {
                let vals: Vec<f64> = (0..w.len()).map(|x| self.value(n, x)).collect();
                lp_norm_raw(&vals, &w, p)
            })
            .fold(0.0, f64::max)
    }
}

fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

fn check_p(p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Exponent { value: p, min: 1.0 })
    }
}

/// `‖max_n |f_n|‖_p / sup_n ‖f_n‖_p`; zero for the zero martingale.
pub fn doob_ratio(mart: &DyadicMartingale, p: f64) -> Result<f64> {
    check_p(p)?;
    let w = mart.weights();
    let max: Vec<f64> = (0..w.len())
        .map(|x| mart.path(x).iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .collect();
    let den = mart.sup_level_norm(p);
    Ok(if den == 0.0 { 0.0 } else { lp_norm_raw(&max, &w, p) / den })
}

/// Both sides of the weighted maximal inequality at level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedDoob {
    pub lhs: f64,
    pub rhs: f64,
}

/// `(∫ sup_{k≤n} |f_k|^p w)^{1/p}` against `p′ (∫ |f_n|^p sup_k E[w | F_k])^{1/p}`.
pub fn weighted_doob_check(mart: &DyadicMartingale, w: &AtomFunction, p: f64, n: u32) -> Result<WeightedDoob> {
    check_p(p)?;
    let len = mart.leaves().len();
    if w.len() != len {
        return Err(Error::LengthMismatch { expected: len, found: w.len() });
    }
    if w.values().iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(invalid("w", "weight must be nonnegative and finite"));
    }
    if n > mart.depth() {
        return Err(invalid("n", format!("level {n} exceeds depth {}", mart.depth())));
    }
    let weight_mart = DyadicMartingale::from_leaves(w.values().to_vec())?;
    let mu = 1.0 / len as f64;
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for x in 0..len {
        let sup_f = (0..=n).map(|k| mart.value(k, x).abs()).fold(0.0, f64::max);
        let sup_w = (0..=mart.depth()).map(|k| weight_mart.value(k, x)).fold(0.0, f64::max);
        lhs += sup_f.powf(p) * w.values()[x] * mu;
        rhs += mart.value(n, x).abs().powf(p) * sup_w * mu;
    }
    Ok(WeightedDoob { lhs: lhs.powf(1.0 / p), rhs: conjugate(p) * rhs.powf(1.0 / p) })
}

/// Signed-transform and block square-function norms for one partition of the levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquareFunctionBound {
    /// `max_ω ‖Σ_{k ≥ 1} ω_k (f_k − f_{k−1})‖_p` over the examined sign patterns.
    pub max_signed_norm: f64,
    /// `‖(Σ_i |f_{I_{i+1}} − f_{I_i}|²)^{1/2}‖_p`.
    pub square_norm: f64,
    /// Whether every sign pattern was examined.
    pub exhaustive: bool,
}

/// Square function over the blocks of `index` (levels) and the largest martingale transform.
///
/// Sign patterns are enumerated when the depth is at most [`EXHAUSTIVE_SIGN_DEPTH`], otherwise
/// `trials` patterns are drawn from `rng`.
pub fn square_function_bound<R: Rng>(
    mart: &DyadicMartingale,
    index: &[usize],
    p: f64,
    trials: usize,
    rng: &mut R,
) -> Result<SquareFunctionBound> {
    check_exponent(p, 1.0)?;
    let m = mart.depth() as usize;
    if index.len() < 2 || index.windows(2).any(|w| w[0] >= w[1]) || index[index.len() - 1] > m {
        return Err(invalid("index", "must be strictly increasing levels within the depth"));
    }
    let len = mart.leaves().len();
    let w = mart.weights();
    let sq: Vec<f64> = (0..len)
        .map(|x| {
            index
                .windows(2)
                .map(|b| {
                    let d = mart.value(b[1] as u32, x) - mart.value(b[0] as u32, x);
                    d * d
                })
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    let square_norm = lp_norm_raw(&sq, &w, p);

    // increments[k - 1][x] = f_k(x) − f_{k−1}(x)
    let increments: Vec<Vec<f64>> = (1..=m)
        .map(|k| (0..len).map(|x| mart.value(k as u32, x) - mart.value(k as u32 - 1, x)).collect())
        .collect();
    let mut best = 0.0f64;
    let exhaustive = mart.depth() <= EXHAUSTIVE_SIGN_DEPTH;
    if m == 0 {
        return Ok(SquareFunctionBound { max_signed_norm: 0.0, square_norm, exhaustive: true });
    }
    if exhaustive {
        // Gray-code walk over patterns with ω_1 = +1; a global sign flip leaves the norm unchanged.
        let mut sum: Vec<f64> = (0..len).map(|x| increments.iter().map(|d| d[x]).sum()).collect();
        let mut signs = vec![1.0f64; m];
        best = lp_norm_raw(&sum, &w, p);
        for step in 1u64..(1u64 << (m - 1)) {
            let k = 1 + step.trailing_zeros() as usize;
            signs[k] = -signs[k];
            for x in 0..len {
                sum[x] += 2.0 * signs[k] * increments[k][x];
            }
            best = best.max(lp_norm_raw(&sum, &w, p));
        }
    } else {
        let mut signs = vec![1.0f64; m];
        for _ in 0..trials {
            signs.iter_mut().for_each(|s| *s = if rng.gen::<bool>() { 1.0 } else { -1.0 });
            let sum: Vec<f64> = (0..len)
                .map(|x| increments.iter().zip(&signs).map(|(d, s)| s * d[x]).sum())
                .collect();
            best = best.max(lp_norm_raw(&sum, &w, p));
        }
    }
    Ok(SquareFunctionBound { max_signed_norm: best, square_norm, exhaustive })
}

/// `‖O²_I(f_n)‖_p / sup_n ‖f_n‖_p` for a partition `index` of the levels.
pub fn oscillation_ratio(mart: &DyadicMartingale, index: &[usize], p: f64) -> f64 {
    let w = mart.weights();
    let per_leaf: Vec<f64> = (0..w.len())
        .map(|x| oscillation_values(&mart.path(x), index, 2.0, false))
        .collect();
    let den = mart.sup_level_norm(p);
    if den == 0.0 {
        0.0
    } else {
        lp_norm_raw(&per_leaf, &w, p) / den
    }
}

/// `‖V²(f_n)‖_p / sup_n ‖f_n‖_p`.
pub fn variation_ratio(mart: &DyadicMartingale, p: f64) -> f64 {
    let w = mart.weights();
    let per_leaf: Vec<f64> = (0..w.len()).map(|x| variation_values(&mart.path(x), 2.0)).collect();
    let den = mart.sup_level_norm(p);
    if den == 0.0 {
        0.0
    } else {
        lp_norm_raw(&per_leaf, &w, p) / den
    }
}

/// Random strictly increasing levels in `0..=depth` with at least two entries.
pub fn random_levels<R: Rng>(depth: u32, rng: &mut R) -> Vec<usize> {
    let all: Vec<usize> = (0..=depth as usize).collect();
    let k = rng.gen_range(2..=all.len());
    let mut pick: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
    pick.sort_unstable();
    pick
}

/// Which random martingale family a sample is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Uniform,
    Walk,
}

impl Family {
    pub fn sample<R: Rng>(self, depth: u32, rng: &mut R) -> DyadicMartingale {
        match self {
            Family::Uniform => DyadicMartingale::random_uniform(depth, rng),
            Family::Walk => DyadicMartingale::random_walk(depth, rng),
        }
    }
}

/// Largest oscillation ratio over `samples` martingales of one depth, alternating families.
///
/// Each sample is scored against `(0, depth)`, the full level grid, and `partitions` random
/// partitions.
pub fn oscillation_cohort<R: Rng>(depth: u32, p: f64, samples: usize, partitions: usize, rng: &mut R) -> f64 {
    let mut best = 0.0f64;
    for s in 0..samples {
        let family = if s % 2 == 0 { Family::Uniform } else { Family::Walk };
        let mart = family.sample(depth, rng);
        let mut cands: Vec<Vec<usize>> = Vec::with_capacity(partitions + 2);
        if depth >= 1 {
            cands.push(vec![0, depth as usize]);
            cands.push((0..=depth as usize).collect());
            for _ in 0..partitions {
                cands.push(random_levels(depth, rng));
            }
        }
        for idx in &cands {
            best = best.max(oscillation_ratio(&mart, idx, p));
        }
    }
    best
}

/// Largest oscillation ratio over `trials` martingales of random depth `1..=m_max`.
pub fn oscillation_constant_estimate<R: Rng>(m_max: u32, p: f64, trials: usize, rng: &mut R) -> Result<f64> {
    check_p(p)?;
    if m_max == 0 {
        return Err(invalid("m_max", "must be at least 1"));
    }
    let mut best = 0.0f64;
    for _ in 0..trials {
        let depth = rng.gen_range(1..=m_max);
        best = best.max(oscillation_cohort(depth, p, 1, 2, rng));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conditioning_examples() {
        assert_eq!(condition(&[0.0, 2.0, 4.0, 6.0], 1).unwrap(), vec![1.0, 5.0]);
        assert_eq!(condition(&[0.0, 2.0, 4.0, 6.0], 2).unwrap(), vec![0.0, 2.0, 4.0, 6.0]);
        assert_eq!(condition(&[0.0, 2.0, 4.0, 6.0], 0).unwrap(), vec![3.0]);
        assert!(condition(&[0.0, 2.0, 4.0], 0).is_err());
        assert!(condition(&[0.0, 2.0], 2).is_err());
    }

    #[test]
    fn constant_martingale() {
        let m = DyadicMartingale::from_leaves(vec![2.0; 8]).unwrap();
        assert!(m.tower_holds());
        assert_eq!(doob_ratio(&m, 2.0).unwrap(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sf = square_function_bound(&m, &[0, 3], 2.0, 10, &mut rng).unwrap();
        assert_eq!((sf.max_signed_norm, sf.square_norm), (0.0, 0.0));
        assert_eq!(oscillation_ratio(&DyadicMartingale::from_leaves(vec![0.0; 4]).unwrap(), &[0, 2], 2.0), 0.0);
    }

    #[test]
    fn haar_step() {
        let m = DyadicMartingale::from_leaves(vec![1.0, -1.0]).unwrap();
        assert_eq!(doob_ratio(&m, 2.0).unwrap(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sf = square_function_bound(&m, &[0, 1], 2.0, 10, &mut rng).unwrap();
        assert_eq!(sf.square_norm, 1.0);
        // half-open blocks: the oscillation needs the step inside a block
        assert_eq!(oscillation_ratio(&m, &[0, 1], 2.0), 0.0);
        let w = AtomFunction::new(vec![1.0, 1.0]);
        let wd = weighted_doob_check(&m, &w, 2.0, 1).unwrap();
        assert_eq!(wd.lhs, 1.0);
        assert_eq!(wd.rhs, 2.0);
    }

    #[test]
    fn point_mass_weight_on_four_leaves() {
        let m = DyadicMartingale::from_leaves(vec![3.0, 1.0, -1.0, 1.0]).unwrap();
        let w = AtomFunction::new(vec![0.0, 4.0, 0.0, 0.0]);
        let wd = weighted_doob_check(&m, &w, 2.0, 2).unwrap();
        // leaf 1 path: 1, 2, 1 so sup |f|² = 4; weight 4, mass 1/4
        assert!((wd.lhs - 2.0).abs() < 1e-15);
        // sup_k E[w|F_k] = (2, 4, 1, 1); |f_2|² = (9, 1, 1, 1)
        let inner: f64 = (9.0 * 2.0 + 1.0 * 4.0 + 1.0 + 1.0) / 4.0;
        assert!((wd.rhs - 2.0 * inner.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn walk_has_unit_increments() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = DyadicMartingale::random_walk(5, &mut rng);
        assert!(m.tower_holds());
        for x in 0..32 {
            let path = m.path(x);
            assert_eq!(path[0], 0.0);
            assert!(path.windows(2).all(|w| (w[1] - w[0]).abs() == 1.0));
        }
    }

    #[test]
    fn exhaustive_and_sampled_signs_agree_in_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = DyadicMartingale::random_uniform(6, &mut rng);
        let ex = square_function_bound(&m, &[0, 3, 6], 2.0, 0, &mut rng).unwrap();
        assert!(ex.exhaustive);
        // for p = 2 every transform has the same norm by orthogonality
        let total: f64 = m.leaves().iter().map(|v| v * v).sum::<f64>() / 64.0 - m.level(0)[0].powi(2);
        assert!((ex.max_signed_norm - total.sqrt()).abs() < 1e-12);
    }
}
