//! λ-jump counting functions and their sequential variants.

use crate::error::{check_exponent, invalid, Error, Result};
use crate::measure::{lp_norm_raw, weak_lp_norm_raw, FiniteWeightedSpace};
use crate::oscillation::{block_deviations, block_ranges, check_shared_domain};
use crate::path::{IndexSequence, PathValue, RealPath};

/// Largest path the exhaustive chain counter accepts.
pub const ORACLE_LIMIT: usize = 20;
/// Largest path the exhaustive pair counter accepts.
pub const PAIRS_ORACLE_LIMIT: usize = 12;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(invalid("lambda", format!("must be positive and finite, got {lambda}")))
    }
}

/// `N_λ`: the longest chain `t_0 < … < t_J` with every step `|f(t_{i+1}) − f(t_i)| ≥ λ`.
pub fn jump_count(path: &RealPath, lambda: f64) -> Result<usize> {
    check_lambda(lambda)?;
    Ok(jump_count_values(path.values(), lambda))
}

/// `N_λ` of a value sequence.
///
/// Keeps, for every chain length `c`, the range `[lo_c, hi_c]` of values at which a chain with
/// `c` jumps can end. The ranges are nested in `c`, so the longest chain a new value extends is
/// found by binary search, and each update assigns one value to a run of lengths. Both bounds
/// are stored as runs of equal values, which keeps long monotone stretches cheap.
pub fn jump_count_values<V: PathValue>(values: &[V], lambda: V) -> usize {
    let mut lo: Runs<V> = Runs::default();
    let mut hi: Runs<V> = Runs::default();
    for &x in values {
        let a = lo.first_failing(|v| x - v >= lambda);
        let b = hi.first_failing(|v| v - x >= lambda);
        let reach = a.max(b);
        let extend = reach == lo.len;
        let top = if extend { reach } else { reach + 1 };
        // the searches need monotone bounds, so a new level is pushed only afterwards
        let c = lo.first_failing(|v| v <= x);
        if c < top {
            lo.assign(c, top, x);
        }
        let c = hi.first_failing(|v| v >= x);
        if c < top {
            hi.assign(c, top, x);
        }
        if extend {
            lo.push(x);
            hi.push(x);
        }
    }
    lo.len.saturating_sub(1)
}

/// Length of the prefix of `0..len` on which `pred` holds, for a predicate true then false.
/// Gallops from the end, since updates cluster at the longest chains.
fn prefix_from_end(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    let mut hi = len;
    let mut step = 1;
    while hi > 0 {
        let probe = hi.saturating_sub(step);
        if pred(probe) {
            let (mut a, mut b) = (probe + 1, hi);
            while a < b {
                let mid = (a + b) / 2;
                if pred(mid) {
                    a = mid + 1;
                } else {
                    b = mid;
                }
            }
            return a;
        }
        hi = probe;
        step *= 2;
    }
    0
}

/// A sequence over `0..len` stored as maximal runs of equal values.
struct Runs<V> {
    starts: Vec<usize>,
    values: Vec<V>,
    len: usize,
}

impl<V> Default for Runs<V> {
    fn default() -> Self {
        Self { starts: Vec::new(), values: Vec::new(), len: 0 }
    }
}

impl<V: PathValue> Runs<V> {
    /// First index where `pred` fails, for a predicate that holds on a prefix.
    fn first_failing(&self, pred: impl Fn(V) -> bool) -> usize {
        let r = prefix_from_end(self.values.len(), |i| pred(self.values[i]));
        self.starts.get(r).copied().unwrap_or(self.len)
    }

    fn push(&mut self, x: V) {
        if self.values.last() != Some(&x) {
            self.starts.push(self.len);
            self.values.push(x);
        }
        self.len += 1;
    }

    /// Index of the run containing `c`, splitting so that a run starts exactly at `c`.
    fn split_at(&mut self, c: usize) -> usize {
        let r = prefix_from_end(self.starts.len(), |i| self.starts[i] <= c) - 1;
        if self.starts[r] == c {
            return r;
        }
        self.starts.insert(r + 1, c);
        self.values.insert(r + 1, self.values[r]);
        r + 1
    }

    /// Sets every entry in `a..b` to `x`.
    fn assign(&mut self, a: usize, b: usize, x: V) {
        let end = if b < self.len { self.split_at(b) } else { self.starts.len() };
        let begin = self.split_at(a);
        self.starts.splice(begin..end, [a]);
        self.values.splice(begin..end, [x]);
        if begin + 1 < self.values.len() && self.values[begin + 1] == x {
            self.starts.remove(begin + 1);
            self.values.remove(begin + 1);
        }
        if begin > 0 && self.values[begin - 1] == x {
            self.starts.remove(begin);
            self.values.remove(begin);
        }
    }
}

/// `N_λ` by enumerating every subsequence.
pub fn jump_count_oracle(path: &RealPath, lambda: f64) -> Result<usize> {
    check_lambda(lambda)?;
    let a = path.values();
    let n = a.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { size: n, limit: ORACLE_LIMIT });
    }
    let mut best = 0;
    'mask: for mask in 1u32..(1u32 << n) {
        let mut prev: Option<f64> = None;
        for (i, &v) in a.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if let Some(p) = prev {
                    if (v - p).abs() < lambda {
                        continue 'mask;
                    }
                }
                prev = Some(v);
            }
        }
        best = best.max(mask.count_ones() as usize - 1);
    }
    Ok(best)
}

/// `𝒩_λ`: the most pairs `s_1 < t_1 ≤ s_2 < t_2 ≤ …` with `|f(t_i) − f(s_i)| ≥ λ`.
pub fn jump_count_pairs(path: &RealPath, lambda: f64) -> Result<usize> {
    check_lambda(lambda)?;
    Ok(jump_count_pairs_values(path.values(), lambda))
}

/// `𝒩_λ` of a value sequence: close each pair at the earliest possible time.
pub fn jump_count_pairs_values<V: PathValue>(values: &[V], lambda: V) -> usize {
    let Some(&first) = values.first() else { return 0 };
    let (mut lo, mut hi) = (first, first);
    let mut count = 0;
    for &x in &values[1..] {
        if x < lo {
            lo = x;
        }
        if x > hi {
            hi = x;
        }
        if hi - lo >= lambda {
            count += 1;
            lo = x;
            hi = x;
        }
    }
    count
}

/// `𝒩_λ` by recursing over every pair system.
pub fn jump_count_pairs_oracle(path: &RealPath, lambda: f64) -> Result<usize> {
    check_lambda(lambda)?;
    let a = path.values();
    if a.len() > PAIRS_ORACLE_LIMIT {
        return Err(Error::TooLarge { size: a.len(), limit: PAIRS_ORACLE_LIMIT });
    }
    fn most(a: &[f64], from: usize, lambda: f64) -> usize {
        let mut best = 0;
        for s in from..a.len() {
            for t in s + 1..a.len() {
                if (a[t] - a[s]).abs() >= lambda {
                    best = best.max(1 + most(a, t, lambda));
                }
            }
        }
        best
    }
    Ok(most(a, 0, lambda))
}

/// `N_{λ,I}`: blocks of the unbounded sequence starting with `I` in which the path moves at
/// least `λ` away from its value at the block start.
pub fn sequential_jump_count(path: &RealPath, lambda: f64, index: &IndexSequence) -> Result<usize> {
    check_lambda(lambda)?;
    let pos = index.positions(path)?;
    Ok(sequential_jump_count_values(path.values(), lambda, &pos))
}

pub fn sequential_jump_count_values<V: PathValue>(values: &[V], lambda: V, positions: &[usize]) -> usize {
    block_deviations(values, positions, true)
        .into_iter()
        .filter(|&d| d >= lambda)
        .count()
}

/// `𝒩_{λ,I}`: blocks whose two-sided range reaches `λ`.
pub fn sequential_jump_count_pairs(path: &RealPath, lambda: f64, index: &IndexSequence) -> Result<usize> {
    check_lambda(lambda)?;
    let pos = index.positions(path)?;
    Ok(sequential_jump_count_pairs_values(path.values(), lambda, &pos))
}

pub fn sequential_jump_count_pairs_values<V: PathValue>(values: &[V], lambda: V, positions: &[usize]) -> usize {
    block_ranges(values, positions, true)
        .into_iter()
        .filter(|&d| d >= lambda)
        .count()
}

/// `‖λ N_λ(path_x)^{1/r}‖` in `L^p` or, with `weak`, in `L^{p,∞}`.
pub fn jump_functional(
    paths: &[RealPath],
    space: &FiniteWeightedSpace,
    lambda: f64,
    r: f64,
    p: f64,
    weak: bool,
) -> Result<f64> {
    check_lambda(lambda)?;
    check_exponent(r, 1.0)?;
    check_exponent(p, 1.0)?;
    check_shared_domain(paths, space)?;
    let per_atom: Vec<f64> = paths
        .iter()
        .map(|path| lambda * (jump_count_values(path.values(), lambda) as f64).powf(1.0 / r))
        .collect();
    Ok(if weak {
        weak_lp_norm_raw(&per_atom, space.weights(), p)
    } else {
        lp_norm_raw(&per_atom, space.weights(), p)
    })
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
    fn no_jump_above_range() {
        assert_eq!(jump_count(&path(&[0.0, 1.0, 0.5]), 1.5).unwrap(), 0);
        assert_eq!(jump_count_pairs(&path(&[3.0; 4]), 0.1).unwrap(), 0);
    }

    #[test]
    fn alternation() {
        let p = path(&[0.0, 1.0, 0.0, 1.0]);
        assert_eq!(jump_count(&p, 1.0).unwrap(), 3);
        assert_eq!(jump_count_oracle(&p, 1.0).unwrap(), 3);
        assert_eq!(jump_count_pairs(&p, 1.0).unwrap(), 3);
        assert_eq!(jump_count_pairs_oracle(&p, 1.0).unwrap(), 3);
    }

    #[test]
    fn chain_may_skip_its_first_sample() {
        let p = path(&[5.0, 0.0, 10.0]);
        assert_eq!(jump_count(&p, 6.0).unwrap(), 1);
        assert_eq!(jump_count_oracle(&p, 6.0).unwrap(), 1);
        let q = path(&[0.0, 1.0, 2.0]);
        assert_eq!(jump_count(&q, 1.0).unwrap(), 2);
        // 2 → 0 → 1.25 → 2.75; the new level must not disturb the range searches
        let r = path(&[2.0, 0.0, 2.0, 1.25, 2.75]);
        assert_eq!(jump_count(&r, 1.0).unwrap(), 3);
        assert_eq!(jump_count_oracle(&r, 1.0).unwrap(), 3);
    }

    #[test]
    fn single_spike_atom() {
        for a in [0.25, 0.5, 1.0] {
            let p = path(&[a, 0.0, 0.0]);
            assert_eq!(jump_count(&p, a).unwrap(), 1);
            assert_eq!(jump_count(&p, a * 1.0001).unwrap(), 0);
        }
    }

    #[test]
    fn sequential_counts() {
        let p = path(&[0.0, 1.0, 0.0, 1.0]);
        assert_eq!(sequential_jump_count(&p, 1.0, &idx(&[0.0, 2.0])).unwrap(), 2);
        let q = path(&[1.0, 0.0, 1.0]);
        assert_eq!(sequential_jump_count(&q, 1.0, &idx(&[0.0])).unwrap(), 1);
        assert_eq!(sequential_jump_count_pairs(&q, 1.0, &idx(&[0.0])).unwrap(), 1);
        let c = path(&[2.0; 5]);
        assert_eq!(sequential_jump_count(&c, 0.5, &idx(&[1.0, 3.0])).unwrap(), 0);
        assert_eq!(sequential_jump_count_pairs(&c, 0.5, &idx(&[1.0, 3.0])).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_lambda_and_domain() {
        let p = path(&[0.0, 1.0]);
        assert!(jump_count(&p, 0.0).is_err());
        assert!(jump_count_pairs(&p, -1.0).is_err());
        assert!(sequential_jump_count(&p, 1.0, &idx(&[0.5])).is_err());
    }

    #[test]
    fn functional_single_jump() {
        let w = 3.0;
        let space = FiniteWeightedSpace::new(vec![w]).unwrap();
        let v = jump_functional(&[path(&[0.0, 1.0])], &space, 1.0, 2.0, 2.0, false).unwrap();
        assert!((v - w.sqrt()).abs() < 1e-15);
        let zero = jump_functional(&[path(&[1.0, 1.0])], &space, 1.0, 2.0, 2.0, true).unwrap();
        assert_eq!(zero, 0.0);
    }
}
