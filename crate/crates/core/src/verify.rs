//! The property suite behind `oscvar verify`: every module invariant, checked on seeded grids.
//!
//! Path properties that fail are shrunk before they are reported: samples are dropped and
//! values rounded for as long as the property keeps failing.

use crate::counterexample::{
    calibrate_dyadic_decomposition, identity_report, lepingle_counterexample, left_side_formula, left_side_l,
    measure_bounds, moment_bound_check, partition_families, random_partition, ratio_growth, separation_experiment,
    MRule, Partition, SeparationCase, TentFamilySpec,
};
use crate::fit::calibrate;
use crate::jumps::{
    jump_count, jump_count_oracle, jump_count_pairs, jump_count_pairs_oracle, jump_count_pairs_values,
    jump_count_values, sequential_jump_count_values,
};
use crate::martingale::{
    doob_ratio, oscillation_cohort, oscillation_ratio, random_levels, variation_ratio, weighted_doob_check,
    DyadicMartingale, Family,
};
use crate::measure::{lp_norm, weak_lp_norm, AtomFunction, FiniteWeightedSpace};
use crate::oscillation::{
    block_deviations, max_oscillation_oracle, max_oscillation_values, maximal_domination, oscillation_values,
};
use crate::path::RealPath;
use crate::radon::{
    boundary_lattice_count, davenport_gap, lift_check, radon_average, radon_oscillation_ratio,
    short_variation_kernel_bound, CanonicalExponentSet, ConvexBody, LatticeFunction, PolynomialMapping,
};
use crate::sums::{
    calibrate_phi_bounds, calibrate_weyl, continuous_symbol, convergents, fraction_set, gauss_decay_study, gauss_sum,
    major_arc_residual, weyl_sum, weyl_terms, DenominatorFilter, Frequency, Kernel, RationalFraction, WeylTerms,
};
use crate::variation::{long_short_split, rademacher_menshov_check, variation_oracle, variation_values};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Relative and absolute slack for floating-point inequalities.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Multiplies the number of random instances per check.
    pub effort: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 7, effort: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
    /// The smallest failing instance found, when the check failed.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub effort: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub const MODULES: [&str; 8] = [
    "measure_spaces",
    "variation",
    "jumps",
    "oscillation",
    "martingale_models",
    "radon_averages",
    "exponential_sums",
    "counterexample_lab",
];

/// Runs the checks of `modules` (all of them when empty) in a fixed order.
pub fn run_suite(cfg: &SuiteConfig, modules: &[&str]) -> SuiteReport {
    let mut checks = Vec::new();
    for (i, module) in MODULES.iter().enumerate() {
        if !modules.is_empty() && !modules.contains(module) {
            continue;
        }
        let mut s = Suite { cfg: *cfg, module, salt: i as u64 * 1000, out: Vec::new() };
        match i {
            0 => measure_checks(&mut s),
            1 => variation_checks(&mut s),
            2 => jump_checks(&mut s),
            3 => oscillation_checks(&mut s),
            4 => martingale_checks(&mut s),
            5 => radon_checks(&mut s),
            6 => sum_checks(&mut s),
            _ => counterexample_checks(&mut s),
        }
        checks.extend(s.out);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    SuiteReport { seed: cfg.seed, effort: cfg.effort, passed, failed: checks.len() - passed, checks }
}

struct Suite {
    cfg: SuiteConfig,
    module: &'static str,
    salt: u64,
    out: Vec<CheckResult>,
}

impl Suite {
    fn rng(&mut self) -> ChaCha8Rng {
        self.salt += 1;
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ self.salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn n(&self, base: usize) -> usize {
        base * self.cfg.effort.max(1)
    }

    fn record(&mut self, name: &'static str, cases: u64, detail: String, counterexample: Option<String>) {
        self.out.push(CheckResult { module: self.module, name, passed: counterexample.is_none(), cases, detail, counterexample });
    }

    /// A property of a path and a mask selecting index positions, on `cases` random paths.
    fn path_property(&mut self, name: &'static str, cases: usize, max_len: usize, prop: impl Fn(&[f64], u64) -> Option<String>) {
        let mut rng = self.rng();
        for case in 0..cases {
            let values = random_values(&mut rng, max_len);
            let mask: u64 = rng.gen();
            if let Some(msg) = prop(&values, mask) {
                let (values, msg) = shrink(values, mask, msg, &prop);
                let ce = format!("values {values:?}, mask {mask:#x}: {msg}");
                self.record(name, case as u64 + 1, "failed".into(), Some(ce));
                return;
            }
        }
        self.record(name, cases as u64, format!("{cases} random paths"), None);
    }

    /// Records a plain outcome.
    fn outcome(&mut self, name: &'static str, cases: u64, detail: String, failure: Option<String>) {
        self.record(name, cases, detail, failure);
    }
}

/// Paths of length `2..=max_len`; half on the grid `{0, ±1, ±2}` to provoke ties.
fn random_values<R: Rng>(rng: &mut R, max_len: usize) -> Vec<f64> {
    let len = rng.gen_range(2..=max_len.max(2));
    if rng.gen() {
        (0..len).map(|_| rng.gen_range(-2i32..=2) as f64).collect()
    } else {
        (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect()
    }
}

/// Drops samples and rounds values while `prop` keeps failing.
pub fn shrink(
    mut values: Vec<f64>,
    mask: u64,
    mut msg: String,
    prop: &impl Fn(&[f64], u64) -> Option<String>,
) -> (Vec<f64>, String) {
    loop {
        let mut progressed = false;
        let mut i = 0;
        while values.len() > 2 && i < values.len() {
            let mut cand = values.clone();
            cand.remove(i);
            if let Some(m) = prop(&cand, mask) {
                (values, msg) = (cand, m);
                progressed = true;
            } else {
                i += 1;
            }
        }
        for i in 0..values.len() {
            for simpler in [0.0, values[i].round(), (values[i] * 4.0).round() / 4.0] {
                if simpler == values[i] {
                    continue;
                }
                let mut cand = values.clone();
                cand[i] = simpler;
                if let Some(m) = prop(&cand, mask) {
                    (values, msg) = (cand, m);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return (values, msg);
        }
    }
}

/// Positions whose bit is set in `mask`, or `0` alone when none is.
fn positions(len: usize, mask: u64) -> Vec<usize> {
    let pos: Vec<usize> = (0..len.min(64)).filter(|&i| mask >> i & 1 == 1).collect();
    if pos.is_empty() {
        vec![0]
    } else {
        pos
    }
}

/// At least two positions.
fn blocks(len: usize, mask: u64) -> Vec<usize> {
    let pos = positions(len, mask);
    if pos.len() >= 2 {
        pos
    } else {
        vec![0, len - 1]
    }
}

fn le(a: f64, b: f64) -> bool {
    a <= b * (1.0 + TOL) + TOL
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn path(values: &[f64]) -> RealPath {
    RealPath::from_values(values.to_vec()).expect("finite values")
}

fn pick<T: Copy>(items: &[T], mask: u64, shift: u32) -> T {
    items[(mask >> shift) as usize % items.len()]
}

const RS: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 8.0];
const LAMBDAS: [f64; 6] = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0];

fn measure_checks(s: &mut Suite) {
    let mut rng = s.rng();
    let cases = s.n(2000);
    let mut failure = None;
    for _ in 0..cases {
        let len = rng.gen_range(1..=50);
        let vals: Vec<f64> = (0..len).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let ws: Vec<f64> = (0..len).map(|_| rng.gen_range(0.01..4.0)).collect();
        let p = rng.gen_range(1.0..6.0);
        let c = rng.gen_range(-3.0..3.0);
        let space = FiniteWeightedSpace::new(ws.clone()).expect("positive weights");
        let g = AtomFunction::new(vals.clone());
        let weak = weak_lp_norm(&g, &space, p).expect("valid");
        let strong = lp_norm(&g, &space, p).expect("valid");
        let scaled = AtomFunction::new(vals.iter().map(|v| c * v).collect());
        let bigger = AtomFunction::new(vals.iter().map(|v| v.abs() + rng.gen_range(0.0..2.0)).collect());
        // left limits at each attained value
        let abs: Vec<f64> = vals.iter().map(|v| v.abs()).collect();
        let direct = abs.iter().fold(0.0f64, |best, &level| {
            let mass: f64 = abs.iter().zip(&ws).filter(|(a, _)| **a >= level).map(|(_, w)| w).sum();
            best.max(level * mass.powf(1.0 / p))
        });
        let problems = [
            (!le(weak, strong), "weak norm above strong norm"),
            (!close(weak_lp_norm(&scaled, &space, p).unwrap(), c.abs() * weak, 1e-9) && weak > 1e-12, "weak norm not homogeneous"),
            (!close(lp_norm(&scaled, &space, p).unwrap(), c.abs() * strong, 1e-9) && strong > 1e-12, "strong norm not homogeneous"),
            (!le(weak, weak_lp_norm(&bigger, &space, p).unwrap()), "weak norm not monotone"),
            (!le(strong, lp_norm(&bigger, &space, p).unwrap()), "strong norm not monotone"),
            (!close(direct, weak, 1e-9) && weak > 0.0, "sort algorithm differs from the definition"),
        ];
        if let Some((_, what)) = problems.iter().find(|(bad, _)| *bad) {
            failure = Some(format!("{what}: values {vals:?}, weights {ws:?}, p {p}, c {c}"));
            break;
        }
    }
    s.outcome("chebyshev_homogeneity_monotonicity_definition", cases as u64, format!("{cases} random weighted functions"), failure);
}

fn variation_checks(s: &mut Suite) {
    // exhaustive over {0, ±1, ±2} up to length 6
    let mut failure = None;
    let mut cases = 0u64;
    'outer: for len in 1..=6u32 {
        for code in 0..5usize.pow(len) {
            let v: Vec<f64> = (0..len).map(|i| (code / 5usize.pow(i) % 5) as f64 - 2.0).collect();
            for r in [1.0, 2.0, 3.0] {
                cases += 1;
                let dp = variation_values(&v, r);
                let oracle = variation_oracle(&path(&v), r).expect("small path");
                if !close(dp, oracle, 1e-12) && oracle > 0.0 || (oracle == 0.0) != (dp == 0.0) {
                    failure = Some(format!("values {v:?}, r {r}: dp {dp}, oracle {oracle}"));
                    break 'outer;
                }
            }
        }
    }
    s.outcome("dp_equals_oracle_exhaustive", cases, "all paths of length ≤ 6 over {0, ±1, ±2}".into(), failure);
    s.path_property("dp_equals_oracle_random", s.n(300), 10, |v, mask| {
        let r = pick(&RS, mask, 0);
        let dp = variation_values(v, r);
        let oracle = variation_oracle(&path(v), r).ok()?;
        (!close(dp, oracle, 1e-12) && oracle > 0.0).then(|| format!("r {r}: dp {dp}, oracle {oracle}"))
    });
    s.path_property("non_increasing_in_r", s.n(1000), 14, |v, _| {
        let vs: Vec<f64> = RS.iter().map(|&r| variation_values(v, r)).collect();
        vs.windows(2).any(|w| !le(w[1], w[0])).then(|| format!("V^r over r ∈ {RS:?}: {vs:?}"))
    });
    s.path_property("restriction_monotone", s.n(1000), 14, |v, mask| {
        let r = pick(&RS, mask, 40);
        let sub: Vec<f64> = positions(v.len(), mask).iter().map(|&i| v[i]).collect();
        let (a, b) = (variation_values(&sub, r), variation_values(v, r));
        (!le(a, b)).then(|| format!("r {r}: sub-path {a} > full {b}"))
    });
    s.path_property("sup_below_start_plus_variation", s.n(1000), 14, |v, mask| {
        let r = pick(&RS, mask, 40);
        let var = variation_values(v, r);
        let sup = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        v.iter().position(|a| !le(sup, a.abs() + var)).map(|t| format!("r {r}, t0 {t}: sup {sup} > |a| + V {var}"))
    });
    s.path_property("variation_below_twice_lr_sum", s.n(1000), 14, |v, mask| {
        let r = pick(&RS, mask, 40);
        let var = variation_values(v, r);
        let sum = 2.0 * v.iter().map(|x| x.abs().powf(r)).sum::<f64>().powf(1.0 / r);
        (!le(var, sum)).then(|| format!("r {r}: V {var} > {sum}"))
    });
    s.path_property("long_short_split_constant_3", s.n(500), 24, |v, mask| {
        let tau = pick(&[0.3, 0.6, 0.9], mask, 50);
        let split = long_short_split(v, tau, &positions(v.len(), mask)).ok()?;
        (!split.holds(TOL)).then(|| format!("tau {tau}: {split:?}"))
    });
    let mut rng = s.rng();
    let cases = s.n(500);
    let mut failure = None;
    for _ in 0..cases {
        let m = rng.gen_range(1..=6u32);
        let top = 1usize << m;
        let j0 = rng.gen_range(0..top);
        let mut a = vec![0.0];
        for _ in j0..top {
            let last = *a.last().unwrap();
            a.push(last + if rng.gen() { 1.0 } else { -1.0 });
        }
        let mut idx: Vec<usize> = positions(a.len(), rng.gen()).iter().map(|p| p + j0).collect();
        if idx.len() < 2 {
            idx = vec![j0, top];
        }
        let chain = rademacher_menshov_check(&a, j0, m, &idx).expect("valid chain input");
        if !chain.holds(TOL) {
            failure = Some(format!("values {a:?}, j0 {j0}, m {m}, I {idx:?}: {chain:?}"));
            break;
        }
    }
    s.outcome("dyadic_chain_bounds", cases as u64, format!("{cases} random ±1 walks"), failure);
}

fn jump_checks(s: &mut Suite) {
    s.path_property("counters_equal_oracles", s.n(1000), 10, |v, mask| {
        let lambda = pick(&LAMBDAS, mask, 0);
        let p = path(v);
        let (n, no) = (jump_count(&p, lambda).ok()?, jump_count_oracle(&p, lambda).ok()?);
        let (m, mo) = (jump_count_pairs(&p, lambda).ok()?, jump_count_pairs_oracle(&p, lambda).ok()?);
        (n != no || m != mo).then(|| format!("lambda {lambda}: chains {n} vs {no}, pairs {m} vs {mo}"))
    });
    s.path_property("monotone_in_lambda_and_sandwich", s.n(1000), 16, |v, _| {
        let counts: Vec<usize> = LAMBDAS.iter().map(|&l| jump_count_values(v, l)).collect();
        if counts.windows(2).any(|w| w[1] > w[0]) {
            return Some(format!("N over lambda {LAMBDAS:?}: {counts:?}"));
        }
        LAMBDAS.iter().find_map(|&l| {
            let (n, pairs, half) = (jump_count_values(v, l), jump_count_pairs_values(v, l), jump_count_values(v, l / 2.0));
            (!(n <= pairs && pairs <= half)).then(|| format!("lambda {l}: {n} ≤ {pairs} ≤ {half} fails"))
        })
    });
    s.path_property("jumps_below_variation", s.n(1000), 16, |v, mask| {
        let (l, r) = (pick(&LAMBDAS, mask, 0), pick(&RS, mask, 8));
        let lhs = l * (jump_count_values(v, l) as f64).powf(1.0 / r);
        let var = variation_values(v, r);
        (!le(lhs, var)).then(|| format!("lambda {l}, r {r}: {lhs} > V {var}"))
    });
    s.path_property("sequential_jumps_below_oscillation", s.n(1000), 16, |v, mask| {
        let (l, r) = (pick(&LAMBDAS, mask, 40), pick(&RS, mask, 48));
        let pos = positions(v.len(), mask);
        let lhs = l * (sequential_jump_count_values(v, l, &pos) as f64).powf(1.0 / r);
        let osc = oscillation_values(v, &pos, r, true);
        (!le(lhs, osc)).then(|| format!("lambda {l}, r {r}, I {pos:?}: {lhs} > O {osc}"))
    });
    let mut failure = None;
    for x in [10usize, 100, 1000] {
        let r = lepingle_counterexample(1.0, x).expect("valid");
        if (r.jump_power - 1.0).abs() > 1e-12 || !(r.variation_power_sum > (x as f64).ln() - 1.0) {
            failure = Some(format!("X_max {x}: {r:?}"));
        }
    }
    s.outcome("jump_norm_one_while_variation_diverges", 3, "X_max ∈ {10, 100, 1000}".into(), failure);
}

fn oscillation_checks(s: &mut Suite) {
    s.path_property("max_oscillation_equals_oracle", s.n(500), 10, |v, mask| {
        let r = pick(&[1.0, 2.0, 2.5], mask, 0);
        let j = 1 + (mask >> 8) as usize % (v.len() - 1);
        let (dp, _) = max_oscillation_values(v, r, j);
        let (oracle, _) = max_oscillation_oracle(&path(v), r, j).ok()?;
        (!close(dp, oracle, 1e-12) && oracle > 0.0 || (oracle == 0.0) != (dp == 0.0))
            .then(|| format!("r {r}, J {j}: dp {dp}, oracle {oracle}"))
    });
    s.path_property("oscillation_below_variation", s.n(1000), 16, |v, mask| {
        let r = pick(&RS, mask, 50);
        let pos = blocks(v.len(), mask);
        let (o, var) = (oscillation_values(v, &pos, r, false), variation_values(v, r));
        (!le(o, var)).then(|| format!("r {r}, I {pos:?}: O {o} > V {var}"))
    });
    s.path_property("splitting_blocks", s.n(1000), 16, |v, mask| {
        let r = pick(&RS, mask, 50);
        let pos = blocks(v.len(), mask);
        let devs = block_deviations(v, &pos, false);
        let part = |keep: &dyn Fn(usize) -> bool| -> f64 {
            devs.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, d)| d.powf(r)).sum::<f64>().powf(1.0 / r)
        };
        let split = (mask >> 56) as usize;
        let (all, a, b) = (part(&|_| true), part(&|i| split >> (i % 8) & 1 == 1), part(&|i| split >> (i % 8) & 1 == 0));
        (!le(all, a + b)).then(|| format!("r {r}, I {pos:?}: {all} > {a} + {b}"))
    });
    let mut rng = s.rng();
    let cases = s.n(500);
    let mut failure = None;
    for _ in 0..cases {
        let len = rng.gen_range(2..=12);
        let a: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let b: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let c: f64 = rng.gen_range(-3.0..3.0);
        let pos = blocks(len, rng.gen());
        let r = RS[rng.gen_range(0..RS.len())];
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let scaled: Vec<f64> = a.iter().map(|x| c * x).collect();
        let (oa, ob) = (oscillation_values(&a, &pos, r, false), oscillation_values(&b, &pos, r, false));
        let triangle = le(oscillation_values(&sum, &pos, r, false), oa + ob);
        let homogeneous = (oscillation_values(&scaled, &pos, r, false) - c.abs() * oa).abs() <= 1e-9 * (1.0 + oa);
        if !(triangle && homogeneous) {
            failure = Some(format!("a {a:?}, b {b:?}, c {c}, I {pos:?}, r {r}"));
            break;
        }
    }
    s.outcome("seminorm_in_the_path", cases as u64, format!("{cases} random pairs"), failure);
    let cases = s.n(200);
    let mut failure = None;
    for _ in 0..cases {
        let atoms = rng.gen_range(1..=4);
        let cap = if rng.gen() { 8 } else { 20 };
        let len = rng.gen_range(1..=cap);
        let paths: Vec<RealPath> =
            (0..atoms).map(|_| path(&(0..len).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<_>>())).collect();
        let space = FiniteWeightedSpace::new((0..atoms).map(|_| rng.gen_range(0.1..2.0)).collect()).expect("positive");
        let (r, p) = (RS[rng.gen_range(0..RS.len())], [1.0, 1.5, 2.0, 3.0][rng.gen_range(0..4)]);
        let d = maximal_domination(&paths, &space, r, p).expect("valid");
        if !d.holds(TOL) {
            failure = Some(format!("paths {paths:?}, weights {:?}, r {r}, p {p}: {d:?}", space.weights()));
            break;
        }
    }
    s.outcome("maximal_function_domination", cases as u64, format!("{cases} random spaces, exhaustive I up to 12 samples"), failure);
}

fn martingale_checks(s: &mut Suite) {
    let mut rng = s.rng();
    let cases = s.n(300);
    let mut failures: BTreeMap<&str, String> = BTreeMap::new();
    for i in 0..cases {
        let depth = rng.gen_range(1..=10);
        let family = if i % 2 == 0 { Family::Uniform } else { Family::Walk };
        let mart = family.sample(depth, &mut rng);
        let p = [1.5, 2.0, 3.0][i % 3];
        if !mart.tower_holds() {
            failures.entry("tower").or_insert(format!("depth {depth}, {family:?}"));
        }
        let ratio = doob_ratio(&mart, p).expect("valid");
        if !le(ratio, p / (p - 1.0)) {
            failures.entry("doob").or_insert(format!("depth {depth}, p {p}: ratio {ratio}"));
        }
        let w = AtomFunction::new((0..1usize << depth).map(|_| rng.gen_range(0.0..2.0)).collect());
        let n = rng.gen_range(0..=depth);
        let wd = weighted_doob_check(&mart, &w, p, n).expect("valid");
        if !le(wd.lhs, wd.rhs) {
            failures.entry("weighted").or_insert(format!("depth {depth}, p {p}, n {n}: {wd:?}"));
        }
        let idx = random_levels(depth, &mut rng);
        for x in 0..mart.leaves().len() {
            let path = mart.path(x);
            if !le(oscillation_values(&path, &idx, 2.0, false), variation_values(&path, 2.0)) {
                failures.entry("pointwise").or_insert(format!("depth {depth}, leaf {x}, I {idx:?}"));
            }
        }
        let _ = oscillation_ratio(&mart, &idx, p);
    }
    let names = [
        ("tower", "tower_property_exact"),
        ("doob", "doob_ratio_below_conjugate"),
        ("weighted", "weighted_doob"),
        ("pointwise", "oscillation_below_variation_pointwise"),
    ];
    for (key, name) in names {
        s.outcome(name, cases as u64, format!("{cases} random martingales, depth ≤ 10"), failures.remove(key));
    }
    // the oscillation constant settles while the variation constant of the ±1 walk grows
    let samples = s.n(40);
    let shallow = oscillation_cohort(6, 2.0, samples, 3, &mut rng);
    let deep = oscillation_cohort(8, 2.0, samples, 3, &mut rng);
    let walk = |depth: u32, rng: &mut ChaCha8Rng| {
        (0..samples).map(|_| variation_ratio(&DyadicMartingale::random_walk(depth, rng), 2.0)).sum::<f64>() / samples as f64
    };
    let (v_shallow, v_deep) = (walk(4, &mut rng), walk(10, &mut rng));
    let stable = (deep - shallow).abs() <= 0.2 * shallow.max(deep);
    let grows = v_deep > v_shallow;
    s.outcome(
        "oscillation_constant_stable_variation_grows",
        2 * samples as u64,
        format!("oscillation {shallow:.4} → {deep:.4} (depth 6 → 8); variation {v_shallow:.4} → {v_deep:.4} (depth 4 → 10)"),
        (!(stable && grows)).then(|| format!("stable {stable}, grows {grows}")),
    );
}

fn random_lattice_function<R: Rng>(dim: usize, rng: &mut R) -> LatticeFunction {
    let pairs: Vec<(Vec<i64>, f64)> = (0..rng.gen_range(1..=4))
        .map(|_| ((0..dim).map(|_| rng.gen_range(-3..=3)).collect(), rng.gen_range(0.0..2.0)))
        .collect();
    LatticeFunction::from_pairs(dim, pairs).expect("consistent dimension")
}

fn radon_checks(s: &mut Suite) {
    let mut rng = s.rng();
    let setups: Vec<(ConvexBody, CanonicalExponentSet)> = vec![
        (ConvexBody::ball(1).unwrap(), CanonicalExponentSet::powers(&[1, 2]).unwrap()),
        (ConvexBody::cube(1).unwrap(), CanonicalExponentSet::full(1, 3).unwrap()),
        (ConvexBody::ball(2).unwrap(), CanonicalExponentSet::full(2, 2).unwrap()),
        (ConvexBody::cube(2).unwrap(), CanonicalExponentSet::full(2, 1).unwrap()),
    ];
    let cases = s.n(40);
    let mut failure = None;
    for i in 0..cases {
        let (body, gamma) = &setups[i % setups.len()];
        let t = rng.gen_range(1.0..6.0);
        let (f, g) = (random_lattice_function(gamma.len(), &mut rng), random_lattice_function(gamma.len(), &mut rng));
        let (a, b) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0));
        let combo = LatticeFunction::from_pairs(
            gamma.len(),
            f.iter().map(|(x, v)| (x.clone(), a * v)).chain(g.iter().map(|(x, v)| (x.clone(), b * v))),
        )
        .expect("consistent");
        let (mf, mg, mc) = (
            radon_average(&f, body, gamma, t).unwrap(),
            radon_average(&g, body, gamma, t).unwrap(),
            radon_average(&combo, body, gamma, t).unwrap(),
        );
        let linear = mc.iter().all(|(x, v)| (v - a * mf.get(x) - b * mg.get(x)).abs() <= 1e-12 * (1.0 + v.abs()))
            && mf.iter().chain(mg.iter()).all(|(x, _)| (mc.get(x) - a * mf.get(x) - b * mg.get(x)).abs() <= 1e-12);
        let positive = mc.iter().all(|(_, v)| *v >= 0.0);
        let mass = (mc.sum() - combo.sum()).abs() <= 1e-12 * (1.0 + combo.sum());
        if !(linear && positive && mass) {
            failure = Some(format!("setup {}, t {t}: linear {linear}, positive {positive}, mass {mass}", i % setups.len()));
            break;
        }
    }
    s.outcome("probability_kernel", cases as u64, format!("{cases} random pairs over balls and cubes"), failure);

    let polys = [
        PolynomialMapping::univariate(&[&[(2, 1)]]).unwrap(),
        PolynomialMapping::univariate(&[&[(1, 2), (3, -1)], &[(2, 3)]]).unwrap(),
        PolynomialMapping::new(
            2,
            vec![[(vec![1, 1], 1), (vec![2, 0], -2)].into_iter().collect(), [(vec![0, 2], 1), (vec![1, 0], 5)].into_iter().collect()],
        )
        .unwrap(),
    ];
    let mut failure = None;
    let mut cases = 0u64;
    for poly in &polys {
        let body = if poly.dim() == 1 { ConvexBody::ball(1).unwrap() } else { ConvexBody::ball(2).unwrap() };
        for modulus in [7u64, 12] {
            let size = (modulus as usize).pow(poly.components() as u32);
            let f: Vec<i64> = (0..size).map(|_| rng.gen_range(-5..=5)).collect();
            let t = rng.gen_range(2.0..6.0);
            cases += 1;
            let c = lift_check(poly, &body, t, modulus, &f).expect("valid lift input");
            if !c.exact() {
                failure = Some(format!("{poly:?}, q {modulus}, t {t}: {c:?}"));
            }
        }
    }
    s.outcome("lift_identity_exact", cases, "polynomial shifts on cyclic groups".into(), failure);

    let mut failure = None;
    let sweep: Vec<f64> = (2..=7).map(|i| 2f64.powi(i)).chain([5.0, 12.0, 40.0, 100.0]).collect();
    let mut detail = Vec::new();
    for body in [ConvexBody::ball(1).unwrap(), ConvexBody::ball(2).unwrap(), ConvexBody::cube(1).unwrap(), ConvexBody::cube(2).unwrap()] {
        let pairs: Vec<(f64, f64)> = sweep.iter().map(|&t| (davenport_gap(&body, t).unwrap(), 1.0)).collect();
        let (cal, val): (Vec<_>, Vec<_>) = pairs.iter().enumerate().partition(|(i, _)| i % 2 == 0);
        let c = calibrate(&cal.into_iter().map(|x| *x.1).collect::<Vec<_>>(), &val.into_iter().map(|x| *x.1).collect::<Vec<_>>(), 2.0);
        detail.push(format!("{:?}{}: C {:.3}", body.kind(), body.dim(), c.constant));
        if !c.passed() {
            failure = Some(format!("{:?}{}: {c:?}", body.kind(), body.dim()));
        }
    }
    s.outcome("davenport_gap_bounded", 4 * sweep.len() as u64, detail.join(", "), failure);

    let mut failure = None;
    let mut detail = Vec::new();
    for body in [ConvexBody::ball(2).unwrap(), ConvexBody::cube(2).unwrap(), ConvexBody::ball(1).unwrap()] {
        let diam = |t: f64| 2.0 * body.outer_radius() * t;
        let pairs = |ts: &[f64]| -> Vec<(f64, f64)> {
            ts.iter()
                .flat_map(|&t| {
                    [1.0, 2.0, 4.0].into_iter().map(move |sv| (t, sv))
                })
                .map(|(t, sv)| {
                    let count = boundary_lattice_count(&body, t, sv).unwrap() as f64;
                    (count, sv * diam(t).powi(body.dim() as i32 - 1))
                })
                .collect()
        };
        let c = calibrate(&pairs(&[8.0, 16.0, 32.0]), &pairs(&[12.0, 24.0, 48.0, 64.0]), 2.0);
        detail.push(format!("{:?}{}: C {:.3}", body.kind(), body.dim(), c.constant));
        if !c.passed() {
            failure = Some(format!("{:?}{}: {c:?}", body.kind(), body.dim()));
        }
    }
    s.outcome("boundary_count_ratio_bounded", 63, detail.join(", "), failure);

    let mut cal = Vec::new();
    let mut val = Vec::new();
    for (i, (body, gamma)) in setups.iter().take(3).enumerate() {
        for n in 2..=5u32 {
            let tau = 0.5;
            let (lo, hi) = ((n as f64).powf(tau), (n as f64 + 1.0).powf(tau));
            let mut times: Vec<f64> = (0..rng.gen_range(2..=5)).map(|_| rng.gen_range(lo..hi)).collect();
            times.sort_by(f64::total_cmp);
            times.dedup();
            let b = short_variation_kernel_bound(body, gamma, n, tau, &times).unwrap();
            if (i + n as usize).is_multiple_of(2) { cal.push((b.lhs, b.rhs)) } else { val.push((b.lhs, b.rhs)) }
        }
    }
    let c = calibrate(&cal, &val, 2.0);
    s.outcome("short_variation_kernel", (cal.len() + val.len()) as u64, format!("C {:.3}", c.constant), (!c.passed()).then(|| format!("{c:?}")));

    let mut cal = Vec::new();
    let mut val = Vec::new();
    for i in 0..s.n(24) {
        let (body, gamma) = &setups[i % 3];
        let f = random_lattice_function(gamma.len(), &mut rng);
        let times: Vec<f64> = (1..=8).map(|k| 1.5 * k as f64).collect();
        let idx = random_levels(7, &mut rng);
        let p = [1.5, 2.0, 3.0][i % 3];
        let ratio = radon_oscillation_ratio(&f, body, gamma, &times, &idx, p).unwrap();
        if i % 2 == 0 { cal.push((ratio, 1.0)) } else { val.push((ratio, 1.0)) }
    }
    let c = calibrate(&cal, &val, 2.0);
    s.outcome("radon_oscillation_constant_stable", (cal.len() + val.len()) as u64, format!("C {:.3}", c.constant), (!c.passed()).then(|| format!("{c:?}")));
}

fn odd_primes(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)).collect()
}

fn sum_checks(s: &mut Suite) {
    let linear = CanonicalExponentSet::powers(&[1]).unwrap();
    let quad = CanonicalExponentSet::powers(&[2]).unwrap();
    let mut failure = None;
    let mut cases = 0;
    for q in 2..=60u64 {
        for a in (1..=q).filter(|a| num_integer::gcd(*a, q) == 1) {
            cases += 1;
            let g = gauss_sum(&RationalFraction::new(vec![a], q).unwrap(), &linear).unwrap();
            if g.norm() != 0.0 {
                failure = Some(format!("G({a}/{q}) = {g} for Γ = {{1}}"));
            }
        }
    }
    for q in odd_primes(200) {
        cases += 1;
        let g = gauss_sum(&RationalFraction::new(vec![1], q).unwrap(), &quad).unwrap();
        if (g.norm() - (q as f64).powf(-0.5)).abs() > 1e-9 {
            failure = Some(format!("|G(1/{q})| = {} for Γ = {{2}}", g.norm()));
        }
    }
    s.outcome("gauss_linear_zero_quadratic_modulus", cases, "q ≤ 60 linear, odd primes ≤ 200 quadratic".into(), failure);

    let mixed = CanonicalExponentSet::powers(&[1, 2]).unwrap();
    let d2 = gauss_decay_study(&quad, 200, DenominatorFilter::Primes).unwrap();
    let dm = gauss_decay_study(&mixed, 60, DenominatorFilter::All).unwrap();
    let ok = d2.delta.is_some_and(|d| (d - 0.5).abs() < 0.05) && dm.delta.is_some_and(|d| d > 0.0);
    s.outcome(
        "gauss_decay_exponent",
        (d2.rows.len() + dm.rows.len()) as u64,
        format!("delta {:?} for Γ = {{2}} over primes, {:?} for Γ = {{1, 2}}", d2.delta, dm.delta),
        (!ok).then(|| "fitted exponent out of range".into()),
    );

    let interval = ConvexBody::ball(1).unwrap();
    let mut failure = None;
    let mut cases = 0;
    for q in 1..=5u64 {
        for a1 in 1..=q {
            for a2 in 1..=q {
                let Ok(frac) = RationalFraction::new(vec![a1, a2], q) else { continue };
                let g = gauss_sum(&frac, &mixed).unwrap();
                let xi = Frequency::new(frac, vec![0.0, 0.0]).unwrap();
                let gaps: Vec<f64> = (4..=10)
                    .map(|i| {
                        let t = (q << i) as f64;
                        (weyl_sum(&interval, &mixed, t, &xi).unwrap() - g).norm() * t
                    })
                    .collect();
                cases += 1;
                // the gap times t stays bounded by the single boundary term
                if gaps.iter().any(|&x| x > 1.0 + 1e-9) {
                    failure = Some(format!("{a1}/{q}, {a2}/{q}: t·|m_t − G| = {gaps:?}"));
                }
            }
        }
    }
    s.outcome("weyl_sum_tends_to_gauss_sum", cases, "k = 1, Γ = {1, 2}, q ≤ 5, t = q·2^i".into(), failure);

    let mut failure = None;
    for n in 1..=50u64 {
        let set = fraction_set(n, 0.5, 1).unwrap();
        let rep = set.report();
        let lcm_ok = rep.lcm_within_3_pow_n.unwrap_or(n > 30);
        if rep.size as u128 != rep.totient_sum || !rep.contains_range || !rep.within_ceiling || !rep.divisor_closed || !lcm_ok {
            failure = Some(format!("N {n}: {rep:?}"));
            break;
        }
    }
    for n in 1..=8u64 {
        let rep = fraction_set(n, 0.5, 2).unwrap().report();
        if rep.size as u128 != rep.totient_sum {
            failure = Some(format!("d = 2, N {n}: {rep:?}"));
        }
    }
    s.outcome("fraction_set_sizes_and_properties", 58, "d = 1, N ≤ 50; d = 2, N ≤ 8".into(), failure);

    let mut rng = s.rng();
    let setups: Vec<(ConvexBody, CanonicalExponentSet)> = vec![
        (ConvexBody::ball(1).unwrap(), CanonicalExponentSet::full(1, 2).unwrap()),
        (ConvexBody::cube(1).unwrap(), CanonicalExponentSet::full(1, 1).unwrap()),
        (ConvexBody::ball(2).unwrap(), CanonicalExponentSet::full(2, 1).unwrap()),
    ];
    let mut failure = None;
    for (body, gamma) in &setups {
        for n in [1.0, 3.0, 10.0] {
            let est = continuous_symbol(body, gamma, n, &vec![0.0; gamma.len()]).unwrap();
            if (est.value - 1.0).norm() > 1e-6 {
                failure = Some(format!("{:?}{}, N {n}: Φ(0) = {}", body.kind(), body.dim(), est.value));
            }
        }
        for _ in 0..5 {
            let xi: Vec<f64> = (0..gamma.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v = continuous_symbol(body, gamma, 2.0, &xi).unwrap().value;
            if v.norm() > 1.0 + 1e-6 {
                failure = Some(format!("{:?}{}, ξ {xi:?}: |Φ| = {}", body.kind(), body.dim(), v.norm()));
            }
        }
    }
    s.outcome("symbol_normalised_and_bounded", 24, "Φ_N(0) = 1 within 1e-6, |Φ_N| ≤ 1".into(), failure);

    let mut failure = None;
    let mut detail = Vec::new();
    let mut cases = 0;
    for (body, gamma) in &setups {
        let point = |n: f64, size: f64, dir: &[f64]| -> (f64, Vec<f64>) {
            let top = dir.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-12);
            (n, gamma.degrees().iter().zip(dir).map(|(&d, x)| x / top * size / n.powi(d as i32)).collect())
        };
        // calibration: a log grid of sizes through 1 along coordinate and diagonal directions
        let mut dirs: Vec<Vec<f64>> = (0..gamma.len()).map(|i| (0..gamma.len()).map(|c| f64::from(u8::from(c == i))).collect()).collect();
        dirs.push(vec![1.0; gamma.len()]);
        let cal: Vec<(f64, Vec<f64>)> = (0..=16)
            .flat_map(|i| {
                let size = 10f64.powf(-2.5 + 0.25 * i as f64);
                dirs.iter().enumerate().map(move |(d, dir)| (size, d, dir.clone()))
            })
            .map(|(size, d, dir)| point([1.0, 2.0, 4.0][d % 3], size, &dir))
            .collect();
        let val: Vec<(f64, Vec<f64>)> = (0..s.n(12))
            .map(|_| {
                let size = 10f64.powf(rng.gen_range(-2.5..1.5));
                let dir: Vec<f64> = (0..gamma.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                point([1.0, 2.0, 4.0][rng.gen_range(0..3)], size, &dir)
            })
            .collect();
        cases += cal.len() + val.len();
        let (decay, near) = calibrate_phi_bounds(body, gamma, &cal, &val, 2.0).unwrap();
        detail.push(format!("{:?}{}: decay C {:.3}, closeness C {:.3}", body.kind(), body.dim(), decay.constant, near.constant));
        if !(decay.passed() && near.passed()) {
            failure = Some(format!("{:?}{}: {decay:?} {near:?}", body.kind(), body.dim()));
        }
    }
    s.outcome("symbol_decay_and_closeness", cases as u64, detail.join("; "), failure);

    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let sqrt2 = 2f64.sqrt() - 1.0;
    let terms = |x: f64, ns: &[f64]| -> Vec<WeylTerms> {
        let mut out = Vec::new();
        for &n in ns {
            for (a, q) in convergents(x, (n * n) as u64) {
                if q < 2 {
                    continue;
                }
                if let Ok(t) = weyl_terms(&interval, &mixed, n, &[0.0, x], 1, a, q) {
                    out.push(t);
                }
            }
        }
        out
    };
    let cal = terms(golden, &[64.0, 256.0, 1024.0]);
    let val = terms(sqrt2, &[128.0, 512.0]);
    let w = calibrate_weyl(&cal, &val, 2.0);
    s.outcome(
        "weyl_inequality",
        (cal.len() + val.len()) as u64,
        format!("epsilon {:.4}, C {:.3}, worst validation {:.3}", w.epsilon, w.calibration.constant, w.calibration.worst_validation_ratio),
        (!w.passed()).then(|| format!("{w:?}")),
    );

    let mut cal = Vec::new();
    let mut val = Vec::new();
    for i in 0..s.n(16) {
        let n = [16.0, 32.0, 64.0][i % 3];
        let q = rng.gen_range(1..=5u64);
        let a: Vec<u64> = (0..2).map(|_| rng.gen_range(1..=q)).collect();
        let Ok(frac) = RationalFraction::new(a, q) else { continue };
        let theta = vec![rng.gen_range(-1.0..1.0) / (n * 8.0), rng.gen_range(-1.0..1.0) / (n * n * 8.0)];
        let xi = Frequency::new(frac, theta).unwrap();
        let kernel = Kernel::random_cosine(1, 3, n, &mut rng);
        let t = major_arc_residual(&interval, &mixed, n, &kernel, &xi, &[1.0, 1.0]).unwrap();
        if i % 2 == 0 { cal.push((t.lhs, t.rhs)) } else { val.push((t.lhs, t.rhs)) }
    }
    let c = calibrate(&cal, &val, 2.0);
    s.outcome("major_arc_residual", (cal.len() + val.len()) as u64, format!("C {:.3}", c.constant), (!c.passed()).then(|| format!("{c:?}")));
}

fn counterexample_checks(s: &mut Suite) {
    let mut rng = s.rng();
    let mut failure = None;
    let mut checks = 0;
    for j in 1..=3 {
        for m in 1..=4 {
            let spec = TentFamilySpec::new(j, m).unwrap();
            let rep = identity_report(&spec, 2, s.n(10), &mut rng);
            checks += rep.checks;
            if !rep.passed() {
                failure = Some(format!("j {j}, M {m}: {:?}", rep.violations));
            }
        }
    }
    s.outcome("exact_identities", checks, "support, stabilisation, jump table, sandwiches; j ≤ 3, M ≤ 4".into(), failure);

    let mut failure = None;
    let mut cases = 0;
    for j in 1..=3 {
        for m in 1..=3 {
            let spec = TentFamilySpec::new(j, m).unwrap();
            for _ in 0..s.n(50) {
                let part = random_partition(spec.horizon(), rng.gen_range(0..=m + j), &mut rng);
                for n in 0..=m {
                    let ws: Vec<u32> = (0..=j + n).collect();
                    for (w, b) in ws.iter().zip(measure_bounds(&spec, n, &ws, &part).unwrap()) {
                        cases += 1;
                        if !b.holds() {
                            failure = Some(format!("j {j}, M {m}, N {n}, W {w}, {part:?}: {b:?}"));
                        }
                    }
                }
            }
        }
    }
    s.outcome("measure_bound_explicit_constant", cases, "random I, j, M ≤ 3".into(), failure);

    let (mut cal, mut val) = (Vec::new(), Vec::new());
    for j in 1..=3 {
        for m in 1..=3 {
            let spec = TentFamilySpec::new(j, m).unwrap();
            for _ in 0..s.n(10) {
                let part = random_partition(spec.horizon(), rng.gen_range(0..=m + j), &mut rng);
                for n in 0..=m {
                    for q in [0.5, 1.0, 2.0] {
                        let b = moment_bound_check(&spec, n, q, &part).unwrap();
                        if (j + m) % 2 == 0 { cal.push((b.integral, b.bound)) } else { val.push((b.integral, b.bound)) }
                    }
                }
            }
        }
    }
    let c = calibrate(&cal, &val, 2.0);
    s.outcome("moment_bound_calibrated", (cal.len() + val.len()) as u64, format!("C {:.3} (even j + M), worst odd {:.3}", c.constant, c.worst_validation_ratio), (!c.passed()).then(|| format!("{c:?}")));

    let mut failure = None;
    for j in 1..=4 {
        for m in 1..=4 {
            let spec = TentFamilySpec::new(j, m).unwrap();
            for (p, r) in [(1.5, 2.0), (2.0, 3.0), (3.0, 1.5)] {
                let (l, f) = (left_side_l(&spec, p, r).unwrap(), left_side_formula(&spec, p, r));
                if !(l >= 0.5 * f && l <= 2.0 * f) {
                    failure = Some(format!("j {j}, M {m}, p {p}, r {r}: L {l}, formula {f}"));
                }
            }
        }
    }
    s.outcome("left_side_within_factor_two", 48, "j, M ≤ 4".into(), failure);

    let mut failure = None;
    let mut detail = String::new();
    for (j, m) in [(1, 3), (2, 3), (2, 4)] {
        let spec = TentFamilySpec::new(j, m).unwrap();
        let parts: Vec<Partition> = partition_families(&spec, 6, s.cfg.seed).into_iter().map(|f| f.partition).collect();
        let (cal, val) = parts.split_at(parts.len() / 2);
        let c = calibrate_dyadic_decomposition(&spec, 2.0, cal, val, 2.0);
        detail = format!("{detail}(j {j}, M {m}) C {:.3}; ", c.constant);
        if !(c.passed() && c.constant <= 4.0) {
            failure = Some(format!("j {j}, M {m}: {c:?}"));
        }
    }
    s.outcome("dyadic_decomposition_constant", 3, detail.trim_end_matches("; ").into(), failure);

    let cases = [
        SeparationCase { p: 2.0, rho: 2.0, r: 3.0 },
        SeparationCase { p: 3.0, rho: 2.0, r: 3.0 },
        SeparationCase { p: 1.5, rho: 2.0, r: 3.0 },
    ];
    let rows = separation_experiment(&cases, &[1, 2, 3], MRule::Linear(4), 4, s.cfg.seed).unwrap();
    let mut failure = None;
    let mut detail = Vec::new();
    for c in &cases {
        let mine: Vec<_> = rows.iter().filter(|r| r.p == c.p).cloned().collect();
        let (increasing, step) = ratio_growth(&mine);
        detail.push(format!("p {}: mean step {step:.3}", c.p));
        if !increasing {
            failure = Some(format!("p {}: ratios {:?}", c.p, mine.iter().map(|r| r.ratio).collect::<Vec<_>>()));
        }
    }
    s.outcome("separation_ratio_increasing", rows.len() as u64, format!("j = 1..3, M = 4j; {}", detail.join(", ")), failure);
}
