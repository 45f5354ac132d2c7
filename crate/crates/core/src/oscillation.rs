//! Oscillation seminorms over partition sequences and their maximization.

use crate::error::{check_exponent, invalid, Error, Result};
use crate::measure::{lp_norm_raw, FiniteWeightedSpace};
use crate::path::{IndexSequence, PathValue, RealPath};
use serde::Serialize;

/// Largest path the exhaustive maximizer accepts.
pub const ORACLE_LIMIT: usize = 12;

fn block_end(positions: &[usize], j: usize, len: usize, tail: bool) -> Option<usize> {
    match positions.get(j + 1) {
        Some(&e) => Some(e),
        None if tail => Some(len),
        None => None,
    }
}

/// `sup_{t ∈ [I_j, I_{j+1})} |a_t − a_{I_j}|` per block.
///
/// With `tail` the last entry opens a final block running to the end of the samples.
pub fn block_deviations<V: PathValue>(values: &[V], positions: &[usize], tail: bool) -> Vec<V> {
    let mut out = Vec::with_capacity(positions.len());
    for (j, &start) in positions.iter().enumerate() {
        let Some(end) = block_end(positions, j, values.len(), tail) else { break };
        let anchor = values[start];
        let mut sup = V::zero();
        for &v in &values[start..end] {
            let d = v.abs_diff(anchor);
            if d > sup {
                sup = d;
            }
        }
        out.push(sup);
    }
    out
}

/// `sup_{s,t ∈ [I_j, I_{j+1})} |a_t − a_s|` per block, with the same `tail` convention.
pub fn block_ranges<V: PathValue>(values: &[V], positions: &[usize], tail: bool) -> Vec<V> {
    let mut out = Vec::with_capacity(positions.len());
    for (j, &start) in positions.iter().enumerate() {
        let Some(end) = block_end(positions, j, values.len(), tail) else { break };
        let (mut lo, mut hi) = (values[start], values[start]);
        for &v in &values[start..end] {
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        out.push(hi - lo);
    }
    out
}

/// `O^r_I` of a value sequence given boundary positions.
pub fn oscillation_values<V: PathValue>(values: &[V], positions: &[usize], r: f64, tail: bool) -> f64 {
    let sum: f64 = block_deviations(values, positions, tail)
        .into_iter()
        .map(|d| d.to_f64().powf(r))
        .sum();
    sum.powf(1.0 / r)
}

fn check_index(path: &RealPath, index: &IndexSequence) -> Result<Vec<usize>> {
    index.positions(path)
}

/// `O^r_{I,J}` with `J = len(I) − 1` blocks `[I_j, I_{j+1})`.
pub fn oscillation_seminorm(path: &RealPath, index: &IndexSequence, r: f64) -> Result<f64> {
    check_exponent(r, 1.0)?;
    if index.len() < 2 {
        return Err(invalid("index", "needs at least two entries"));
    }
    let pos = check_index(path, index)?;
    Ok(oscillation_values(path.values(), &pos, r, false))
}

/// `O^r_{I,∞}` where `I` is read as the start of an unbounded sequence: the block opened by the
/// last entry runs to the end of the samples.
pub fn oscillation_seminorm_unbounded(path: &RealPath, index: &IndexSequence, r: f64) -> Result<f64> {
    check_exponent(r, 1.0)?;
    let pos = check_index(path, index)?;
    Ok(oscillation_values(path.values(), &pos, r, true))
}

/// Maximal `O^r_{I,J}` over all `I` with `J` blocks, and the lexicographically smallest maximizer
/// as sample positions.
///
/// # Panics
/// If `j == 0` or `j + 1 > values.len()`.
pub fn max_oscillation_values(values: &[f64], r: f64, j: usize) -> (f64, Vec<usize>) {
    let n = values.len();
    assert!(j >= 1 && j < n, "block count {j} infeasible for {n} samples");
    // cost[a * n + b] = sup_{a ≤ t < b} |v_t − v_a|^r
    let mut cost = vec![0.0f64; n * n];
    for a in 0..n {
        let mut sup = 0.0f64;
        for b in a + 1..n {
            sup = sup.max((values[b - 1] - values[a]).abs().powf(r));
            cost[a * n + b] = sup;
        }
    }
    // best[c][a]: c blocks starting at boundary a; choice[c][a]: first next boundary attaining it
    let mut best = vec![vec![f64::NEG_INFINITY; n]; j + 1];
    let mut choice = vec![vec![usize::MAX; n]; j + 1];
    best[0].iter_mut().for_each(|b| *b = 0.0);
    for c in 1..=j {
        for a in 0..n {
            let mut top = f64::NEG_INFINITY;
            let mut arg = usize::MAX;
            for b in a + 1..n {
                let tail = best[c - 1][b];
                if tail == f64::NEG_INFINITY {
                    continue;
                }
                let v = cost[a * n + b] + tail;
                if v > top {
                    top = v;
                    arg = b;
                }
            }
            best[c][a] = top;
            choice[c][a] = arg;
        }
    }
    let mut start = 0;
    for a in 1..n {
        if best[j][a] > best[j][start] {
            start = a;
        }
    }
    let mut seq = vec![start];
    let mut cur = start;
    for c in (1..=j).rev() {
        cur = choice[c][cur];
        seq.push(cur);
    }
    (best[j][start].max(0.0).powf(1.0 / r), seq)
}

fn check_blocks(path: &RealPath, j: usize) -> Result<()> {
    if j == 0 || j + 1 > path.len() {
        return Err(invalid("J", format!("need 1 ≤ J < {} samples, got {j}", path.len())));
    }
    Ok(())
}

/// Maximal `O^r_{I,J}` over `I` drawn from the sample times, with its smallest maximizer.
pub fn max_oscillation(path: &RealPath, r: f64, j: usize) -> Result<(f64, IndexSequence)> {
    check_exponent(r, 1.0)?;
    check_blocks(path, j)?;
    let (v, pos) = max_oscillation_values(path.values(), r, j);
    Ok((v, IndexSequence::from_positions(path, &pos)?))
}

/// Maximum over every block count `1 ≤ J ≤ j_max` (capped by the sample count).
pub fn max_oscillation_up_to(path: &RealPath, r: f64, j_max: usize) -> Result<(f64, IndexSequence)> {
    check_exponent(r, 1.0)?;
    check_blocks(path, 1)?;
    let cap = j_max.min(path.len() - 1).max(1);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for j in 1..=cap {
        let cand = max_oscillation_values(path.values(), r, j);
        if best.as_ref().is_none_or(|b| cand.0 > b.0) {
            best = Some(cand);
        }
    }
    let (v, pos) = best.expect("at least one block count");
    Ok((v, IndexSequence::from_positions(path, &pos)?))
}

/// Maximal `O^r_{I,J}` by enumerating every `I` in lexicographic order.
pub fn max_oscillation_oracle(path: &RealPath, r: f64, j: usize) -> Result<(f64, IndexSequence)> {
    check_exponent(r, 1.0)?;
    check_blocks(path, j)?;
    let n = path.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { size: n, limit: ORACLE_LIMIT });
    }
    let k = j + 1;
    let mut comb: Vec<usize> = (0..k).collect();
    let mut best = (f64::NEG_INFINITY, comb.clone());
    loop {
        let v = oscillation_values(path.values(), &comb, r, false);
        if v > best.0 {
            best = (v, comb.clone());
        }
        let Some(i) = (0..k).rev().find(|&i| comb[i] < n - k + i) else { break };
        comb[i] += 1;
        for t in i + 1..k {
            comb[t] = comb[t - 1] + 1;
        }
    }
    Ok((best.0, IndexSequence::from_positions(path, &best.1)?))
}

pub(crate) fn check_shared_domain(paths: &[RealPath], space: &FiniteWeightedSpace) -> Result<()> {
    if paths.len() != space.len() {
        return Err(Error::LengthMismatch { expected: space.len(), found: paths.len() });
    }
    if let Some(first) = paths.first() {
        if paths.iter().any(|p| p.times() != first.times()) {
            return Err(invalid("paths", "all paths must share one time domain"));
        }
    }
    Ok(())
}

/// `‖O^r_{I,J}(path_x)‖_{L^p}` over the atoms `x` of `space`.
pub fn oscillation_functional(
    paths: &[RealPath],
    space: &FiniteWeightedSpace,
    index: &IndexSequence,
    r: f64,
    p: f64,
) -> Result<f64> {
    check_exponent(p, 1.0)?;
    check_shared_domain(paths, space)?;
    let per_atom = paths
        .iter()
        .map(|path| oscillation_seminorm(path, index, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(lp_norm_raw(&per_atom, space.weights(), p))
}

/// Both sides of `‖sup_t |a_t|‖_p ≤ sup_t ‖a_t‖_p + sup_I ‖O^r_{I,∞}‖_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaximalDomination {
    pub lhs: f64,
    pub rhs: f64,
    /// Whether the supremum over `I` was taken over every `I` or only over single entries.
    pub exhaustive: bool,
}

impl MaximalDomination {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs * (1.0 + tol) + tol
    }
}

/// Maximal-function domination on a finite weighted space. For at most `ORACLE_LIMIT`
/// samples the supremum over `I` runs over every non-empty set of sample times; beyond that
/// it runs over single entries `I = (t)`, which is smaller and so gives a sharper check.
pub fn maximal_domination(paths: &[RealPath], space: &FiniteWeightedSpace, r: f64, p: f64) -> Result<MaximalDomination> {
    check_exponent(r, 1.0)?;
    check_exponent(p, 1.0)?;
    check_shared_domain(paths, space)?;
    let n = paths.first().map_or(0, RealPath::len);
    if n == 0 {
        return Err(Error::EmptyPath);
    }
    let w = space.weights();
    let column = |f: &dyn Fn(&RealPath) -> f64| -> f64 {
        let vals: Vec<f64> = paths.iter().map(f).collect();
        lp_norm_raw(&vals, w, p)
    };
    let lhs = column(&|path| path.values().iter().fold(0.0, |m, v| m.max(v.abs())));
    let sup_t = (0..n).map(|t| column(&|path| path.values()[t].abs())).fold(0.0, f64::max);
    let exhaustive = n <= ORACLE_LIMIT;
    let sup_i = if exhaustive {
        (1u64..1 << n)
            .map(|mask| {
                let pos: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                column(&|path| oscillation_values(path.values(), &pos, r, true))
            })
            .fold(0.0, f64::max)
    } else {
        (0..n).map(|t| column(&|path| oscillation_values(path.values(), &[t], r, true))).fold(0.0, f64::max)
    };
    Ok(MaximalDomination { lhs, rhs: sup_t + sup_i, exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(v: &[f64]) -> RealPath {
        RealPath::from_values(v.to_vec()).unwrap()
    }

    fn idx(e: &[f64]) -> IndexSequence {
        IndexSequence::new(e.to_vec()).unwrap()
    }

    #[test]
    fn constant_paths_vanish() {
        let p = path(&[2.0; 5]);
        assert_eq!(oscillation_seminorm(&p, &idx(&[0.0, 2.0, 4.0]), 2.0).unwrap(), 0.0);
        for j in 1..5 {
            assert_eq!(max_oscillation(&p, 2.0, j).unwrap().0, 0.0);
        }
    }

    #[test]
    fn first_block_of_ramp() {
        let p = path(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(oscillation_seminorm(&p, &idx(&[0.0, 2.0]), 2.0).unwrap(), 1.0);
        assert_eq!(oscillation_seminorm_unbounded(&p, &idx(&[0.0, 2.0]), 1.0).unwrap(), 2.0);
    }

    #[test]
    fn single_point_blocks_vanish() {
        let p = path(&[0.0, 3.0, -1.0, 4.0]);
        assert_eq!(oscillation_seminorm(&p, &idx(&[0.0, 1.0, 2.0, 3.0]), 2.0).unwrap(), 0.0);
    }

    #[test]
    fn half_open_blocks_on_three_samples() {
        let p = path(&[0.0, 1.0, 0.0]);
        let (v2, i2) = max_oscillation(&p, 2.0, 2).unwrap();
        assert_eq!(v2, 0.0);
        assert_eq!(i2.entries(), &[0.0, 1.0, 2.0]);
        let (v1, i1) = max_oscillation(&p, 2.0, 1).unwrap();
        assert_eq!(v1, 1.0);
        assert_eq!(i1.entries(), &[0.0, 2.0]);
        assert_eq!(max_oscillation_oracle(&p, 2.0, 1).unwrap(), (v1, i1));
    }

    #[test]
    fn up_to_takes_best_block_count() {
        let p = path(&[0.0, 2.0, 0.0, 2.0, 0.0]);
        let (v, _) = max_oscillation_up_to(&p, 2.0, 4).unwrap();
        assert!((v - 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_infeasible_block_counts() {
        let p = path(&[0.0, 1.0]);
        assert!(max_oscillation(&p, 2.0, 2).is_err());
        assert!(max_oscillation(&p, 2.0, 0).is_err());
        assert!(oscillation_seminorm(&p, &idx(&[0.5, 1.0]), 2.0).is_err());
        assert!(oscillation_seminorm(&p, &idx(&[0.0]), 2.0).is_err());
    }

    #[test]
    fn functional_on_two_atoms() {
        let space = FiniteWeightedSpace::new(vec![1.0, 3.0]).unwrap();
        let paths = vec![path(&[0.0, 1.0]), path(&[0.0, 2.0, 0.0])];
        assert!(oscillation_functional(&paths, &space, &idx(&[0.0, 1.0]), 2.0, 2.0).is_err());
        let paths = vec![path(&[0.0, 1.0, 1.0]), path(&[0.0, -2.0, 5.0])];
        let i = idx(&[0.0, 2.0]);
        let v = oscillation_functional(&paths, &space, &i, 2.0, 2.0).unwrap();
        // block [0, 2) sees deviations 1 and 2
        assert!((v - (1.0f64 + 3.0 * 4.0).sqrt()).abs() < 1e-12);
        let one = FiniteWeightedSpace::new(vec![1.0]).unwrap();
        let unit = oscillation_functional(&[path(&[0.0, 1.0])], &one, &idx(&[0.0, 1.0]), 2.0, 2.0).unwrap();
        assert_eq!(unit, 0.0);
    }

    #[test]
    fn maximal_function_is_dominated() {
        // two atoms: a spike at time 1 and a constant 1
        let paths = vec![path(&[0.0, 3.0, 0.0]), path(&[1.0, 1.0, 1.0])];
        let space = FiniteWeightedSpace::new(vec![1.0, 1.0]).unwrap();
        let d = maximal_domination(&paths, &space, 2.0, 1.0).unwrap();
        assert!(d.exhaustive);
        assert_eq!(d.lhs, 4.0);
        // sup_t ‖a_t‖_1 = 4 at t = 1; I = (0) sees deviation 3 on the first atom only
        assert_eq!(d.rhs, 7.0);
        assert!(d.holds(0.0));
    }
}
