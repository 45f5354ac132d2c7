//! Exact jump counts of the tent family and the counting and moment bounds for sequential
//! jump counts.

use super::dyadic::DyadicRational;
use super::tent::{for_each_profile, random_partition, CounterexampleSpace, Partition, TentFamilySpec};
use crate::error::{invalid, Result};
use crate::jumps::jump_count_values;
use crate::oscillation::{block_deviations, block_ranges};
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// `N_{2^{−N}} f(2^k, n)` for every atom of the support, by the jump counter on exact samples.
pub fn exact_jump_table(spec: &TentFamilySpec, n_exp: u32) -> BTreeMap<(u32, u64), u64> {
    let lambda = DyadicRational::power_of_half(n_exp);
    CounterexampleSpace::support(spec)
        .atoms
        .into_iter()
        .map(|(k, n)| ((k, n), jump_count_values(&spec.atom_path(k, n), lambda) as u64))
        .collect()
}

/// `2^{j + min(k, N)}` for `N ≤ M`.
pub fn predicted_jump_count(spec: &TentFamilySpec, k: u32, n_exp: u32) -> u64 {
    1 << (spec.j() + k.min(n_exp))
}

/// Outcome of checking the support, stabilisation, exact-count and domination identities.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct IdentityReport {
    pub atoms: usize,
    pub partitions: usize,
    pub checks: u64,
    pub violations: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violations.len() < 32 {
            self.violations.push(what());
        }
    }
}

/// Checks, with exact arithmetic and for thresholds `2^{−N}`, `N ≤ M + extra`:
/// - off-support atoms have no jumps;
/// - `N_{2^{−N}}` and `N_{2^{−N},I}` stop changing once `N ≥ M`;
/// - `N_{2^{−N}} = 2^{j + min(k, N)}` for `N ≤ M`;
/// - `N_{2^{−N},I} ≤ N_{2^{−N}} ≤ 2^{j+N}` and `N_{λ,I} ≤ 𝒩_{λ,I} ≤ N_{λ/2,I}`,
///
/// over `random_partitions` sampled sequences `I`.
pub fn identity_report<R: Rng>(spec: &TentFamilySpec, extra: u32, random_partitions: usize, rng: &mut R) -> IdentityReport {
    let (j, m) = (spec.j(), spec.m());
    let top = m + extra;
    let h = spec.horizon();
    let partitions: Vec<Vec<usize>> = (0..random_partitions)
        .map(|_| random_partition(h, rng.gen_range(0..=m + j), rng).positions(h))
        .collect();
    let space = CounterexampleSpace::with_margin(spec);
    let mut report = IdentityReport { atoms: space.atoms.len(), partitions: partitions.len(), ..Default::default() };
    let thresholds: Vec<DyadicRational> = (0..=top + 1).map(DyadicRational::power_of_half).collect();
    for &(k, n) in &space.atoms {
        let path = spec.atom_path(k, n);
        let inside = spec.support(k, n).is_some();
        let full: Vec<u64> = thresholds.iter().map(|&l| jump_count_values(&path, l) as u64).collect();
        for ne in 0..=top {
            let c = full[ne as usize];
            if !inside {
                report.check(c == 0, || format!("support: N_2^-{ne} f(2^{k},{n}) = {c}"));
                continue;
            }
            if ne <= m {
                let want = predicted_jump_count(spec, k, ne);
                report.check(c == want, || format!("exact count: N_2^-{ne} f(2^{k},{n}) = {c}, expected {want}"));
            } else {
                let at_m = full[m as usize];
                report.check(c == at_m, || format!("stabilisation: N_2^-{ne} f(2^{k},{n}) = {c} vs {at_m}"));
            }
            report.check(c <= 1 << (j + ne), || format!("domination: N_2^-{ne} f(2^{k},{n}) = {c} > 2^{}", j + ne));
        }
        for pos in &partitions {
            let devs = block_deviations(&path, pos, true);
            let ranges = block_ranges(&path, pos, true);
            let seq = |l: DyadicRational| devs.iter().filter(|&&d| d >= l).count() as u64;
            let pairs = |l: DyadicRational| ranges.iter().filter(|&&d| d >= l).count() as u64;
            let at_m = seq(thresholds[m as usize]);
            for ne in 0..=top {
                let l = thresholds[ne as usize];
                let s = seq(l);
                report.check(s <= full[ne as usize], || format!("sequential above full: N_2^-{ne},I f(2^{k},{n}) = {s}"));
                if ne >= m {
                    report.check(s == at_m, || format!("sequential stabilisation: N_2^-{ne},I f(2^{k},{n}) = {s} vs {at_m}"));
                }
                let p = pairs(l);
                let half = seq(thresholds[ne as usize + 1]);
                report.check(s <= p && p <= half, || format!("pair sandwich at 2^-{ne} on (2^{k},{n}): {s} ≤ {p} ≤ {half}"));
            }
        }
    }
    report
}

/// Measure of the atoms with at least `2^W` detected jumps of height `2^{−N}`, and the bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureBound {
    pub measured: f64,
    pub bound: f64,
}

impl MeasureBound {
    pub fn holds(&self) -> bool {
        self.measured <= self.bound
    }
}

fn sequential_counts(spec: &TentFamilySpec, n_exp: u32, partition: &Partition) -> Vec<(f64, u64)> {
    let mut out = Vec::new();
    for_each_profile(spec, partition, |k, _, profile| {
        out.push((2f64.powi(k as i32), profile.sequential_count(n_exp)));
    });
    out
}

/// `μ({N_{2^{−N},I} f ≥ 2^W})` against `2^{M+j+2+N−W} + (N+1)2^M + (M+1)2^M [W = 0]`.
pub fn measure_bound_check(spec: &TentFamilySpec, n_exp: u32, w: u32, partition: &Partition) -> Result<MeasureBound> {
    measure_bounds(spec, n_exp, &[w], partition).map(|v| v[0])
}

/// `measure_bound_check` for several `W` from one pass over the atoms.
pub fn measure_bounds(spec: &TentFamilySpec, n_exp: u32, ws: &[u32], partition: &Partition) -> Result<Vec<MeasureBound>> {
    let (j, m) = (spec.j(), spec.m());
    if n_exp > m {
        return Err(invalid("N", "must not exceed M"));
    }
    if ws.iter().any(|&w| w > j + n_exp) {
        return Err(invalid("W", "must not exceed j + N"));
    }
    let counts = sequential_counts(spec, n_exp, partition);
    Ok(ws
        .iter()
        .map(|&w| {
            let measured = counts.iter().filter(|&&(_, c)| c >= 1 << w).map(|&(mu, _)| mu).sum();
            let two_m = 2f64.powi(m as i32);
            let mut bound = 2f64.powi((m + j + 2 + n_exp) as i32 - w as i32) + (n_exp as f64 + 1.0) * two_m;
            if w == 0 {
                bound += (m as f64 + 1.0) * two_m;
            }
            MeasureBound { measured, bound }
        })
        .collect())
}

/// `∫ (N_{2^{−N},I} f)^q dμ` and the majorant it is compared with, up to a constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentBound {
    pub integral: f64,
    pub bound: f64,
}

/// The three-case majorant `(M+1)2^M + {(N+1)2^{M+(j+N)q}, (j+N)2^{M+j+N}, 2^{M+j+N}}`.
pub fn moment_majorant(spec: &TentFamilySpec, n_exp: u32, q: f64) -> f64 {
    let (j, m, n) = (spec.j() as f64, spec.m() as f64, n_exp as f64);
    let base = (m + 1.0) * 2f64.powf(m);
    base + if q > 1.0 {
        (n + 1.0) * 2f64.powf(m + (j + n) * q)
    } else if q == 1.0 {
        (j + n) * 2f64.powf(m + j + n)
    } else {
        2f64.powf(m + j + n)
    }
}

pub fn moment_bound_check(spec: &TentFamilySpec, n_exp: u32, q: f64, partition: &Partition) -> Result<MomentBound> {
    if n_exp > spec.m() {
        return Err(invalid("N", "must not exceed M"));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(invalid("q", "must be positive"));
    }
    let integral = sequential_counts(spec, n_exp, partition)
        .into_iter()
        .map(|(mu, c)| mu * (c as f64).powf(q))
        .sum();
    Ok(MomentBound { integral, bound: moment_majorant(spec, n_exp, q) })
}
