//! One function per subcommand: compute the rows, then write them.

use crate::table::{read_path_file, write_json, write_rows, Format};
use crate::{Body, Study};
use oscvar_core::counterexample::{separation_experiment, MRule, SeparationCase, SeparationRow};
use oscvar_core::jumps::{jump_count, jump_count_pairs, sequential_jump_count, sequential_jump_count_pairs};
use oscvar_core::martingale::{doob_ratio, oscillation_cohort, variation_ratio, DyadicMartingale, Family};
use oscvar_core::oscillation::{max_oscillation, oscillation_seminorm, oscillation_seminorm_unbounded};
use oscvar_core::radon::{
    boundary_lattice_count, davenport_gap, lattice_points, radon_average, CanonicalExponentSet, ConvexBody,
    LatticeFunction,
};
use oscvar_core::sums::{
    continuous_symbol, fraction_set, gauss_decay_study, gauss_sum, weyl_sum, DenominatorFilter, Frequency,
    RationalFraction,
};
use oscvar_core::variation::variation_seminorm;
use oscvar_core::verify::{run_suite, SuiteConfig, MODULES};
use oscvar_core::{IndexSequence, RealPath};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::Path;
use std::process::ExitCode;

type Out<'a> = Option<&'a Path>;

fn err(e: oscvar_core::Error) -> String {
    e.to_string()
}

fn index_of(path: &RealPath, times: &[f64]) -> Result<IndexSequence, String> {
    let index = IndexSequence::new(times.to_vec()).map_err(err)?;
    index.positions(path).map_err(err)?;
    Ok(index)
}

fn joined(index: &IndexSequence) -> String {
    index.entries().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct SeminormRow {
    quantity: &'static str,
    r: Option<f64>,
    lambda: Option<f64>,
    blocks: Option<usize>,
    value: f64,
}

pub fn seminorm(input: &Path, r: f64, j: Option<usize>, lambdas: &[f64], format: Format, out: Out) -> Result<(), String> {
    let path = read_path_file(input)?;
    let mut rows = vec![SeminormRow {
        quantity: "variation",
        r: Some(r),
        lambda: None,
        blocks: None,
        value: variation_seminorm(&path, r).map_err(err)?,
    }];
    if path.len() > 1 {
        let j = j.unwrap_or((path.len() - 1).min(16));
        let (value, _) = max_oscillation(&path, r, j).map_err(err)?;
        rows.push(SeminormRow { quantity: "max_oscillation", r: Some(r), lambda: None, blocks: Some(j), value });
    }
    for &l in lambdas {
        for (quantity, count) in [("jumps", jump_count(&path, l)), ("jump_pairs", jump_count_pairs(&path, l))] {
            let value = count.map_err(err)? as f64;
            rows.push(SeminormRow { quantity, r: None, lambda: Some(l), blocks: None, value });
        }
    }
    write_rows(&rows, format, out)
}

#[derive(Serialize)]
struct JumpRow {
    lambda: f64,
    jumps: usize,
    jump_pairs: usize,
    sequential: Option<usize>,
    sequential_pairs: Option<usize>,
}

pub fn jumps(input: &Path, lambdas: &[f64], index: Option<&[f64]>, format: Format, out: Out) -> Result<(), String> {
    let path = read_path_file(input)?;
    let index = index.map(|t| index_of(&path, t)).transpose()?;
    let mut rows = Vec::new();
    for &l in lambdas {
        let (sequential, sequential_pairs) = match &index {
            Some(i) => (
                Some(sequential_jump_count(&path, l, i).map_err(err)?),
                Some(sequential_jump_count_pairs(&path, l, i).map_err(err)?),
            ),
            None => (None, None),
        };
        rows.push(JumpRow {
            lambda: l,
            jumps: jump_count(&path, l).map_err(err)?,
            jump_pairs: jump_count_pairs(&path, l).map_err(err)?,
            sequential,
            sequential_pairs,
        });
    }
    write_rows(&rows, format, out)
}

#[derive(Serialize)]
struct OscillationRow {
    kind: &'static str,
    r: f64,
    blocks: Option<usize>,
    value: f64,
    index: String,
}

pub fn oscillate(input: &Path, r: f64, index: Option<&[f64]>, j: Option<usize>, format: Format, out: Out) -> Result<(), String> {
    let path = read_path_file(input)?;
    let mut rows = Vec::new();
    if let Some(times) = index {
        let i = index_of(&path, times)?;
        if i.len() >= 2 {
            let value = oscillation_seminorm(&path, &i, r).map_err(err)?;
            rows.push(OscillationRow { kind: "given", r, blocks: Some(i.blocks()), value, index: joined(&i) });
        }
        let value = oscillation_seminorm_unbounded(&path, &i, r).map_err(err)?;
        rows.push(OscillationRow { kind: "unbounded", r, blocks: None, value, index: joined(&i) });
    }
    if path.len() > 1 {
        let j = j.unwrap_or((path.len() - 1).min(8));
        let (value, best) = max_oscillation(&path, r, j).map_err(err)?;
        rows.push(OscillationRow { kind: "max", r, blocks: Some(j), value, index: joined(&best) });
    }
    write_rows(&rows, format, out)
}

#[derive(Serialize)]
struct MartingaleRow {
    depth: u32,
    p: f64,
    samples: usize,
    doob_max: f64,
    conjugate: f64,
    oscillation_constant: f64,
    walk_variation_mean: f64,
}

pub fn martingale(depths: &[u32], p: f64, samples: usize, partitions: usize, seed: u64, format: Format, out: Out) -> Result<(), String> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(format!("p must be in (1, ∞), found {p}"));
    }
    if samples == 0 || partitions == 0 {
        return Err("samples and partitions must be positive".into());
    }
    if let Some(d) = depths.iter().find(|&&d| d == 0 || d > 16) {
        return Err(format!("depth {d} outside 1..16"));
    }
    let mut rows = Vec::new();
    for &depth in depths {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(depth).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut doob_max = 0.0f64;
        let mut walk_sum = 0.0;
        for s in 0..samples {
            let family = if s % 2 == 0 { Family::Uniform } else { Family::Walk };
            doob_max = doob_max.max(doob_ratio(&family.sample(depth, &mut rng), p).map_err(err)?);
            walk_sum += variation_ratio(&DyadicMartingale::random_walk(depth, &mut rng), p);
        }
        rows.push(MartingaleRow {
            depth,
            p,
            samples,
            doob_max,
            conjugate: p / (p - 1.0),
            oscillation_constant: oscillation_cohort(depth, p, samples, partitions, &mut rng),
            walk_variation_mean: walk_sum / samples as f64,
        });
    }
    write_rows(&rows, format, out)
}

fn body_of(body: Body, dim: usize) -> Result<ConvexBody, String> {
    match body {
        Body::Ball => ConvexBody::ball(dim),
        Body::Cube => ConvexBody::cube(dim),
    }
    .map_err(err)
}

#[derive(Serialize)]
struct AverageRow {
    t: f64,
    lattice_points: usize,
    davenport_gap: f64,
    boundary_count: usize,
    boundary_ratio: f64,
    /// Support of the average of a point mass: distinct canonical images.
    image_points: usize,
}

pub fn average(body: Body, dim: usize, ts: &[f64], s: f64, degree: u32, format: Format, out: Out) -> Result<(), String> {
    let body = body_of(body, dim)?;
    let gamma = CanonicalExponentSet::full(dim, degree).map_err(err)?;
    let delta = LatticeFunction::delta(gamma.len());
    let mut rows = Vec::new();
    for &t in ts {
        let boundary_count = boundary_lattice_count(&body, t, s).map_err(err)?;
        let diam = 2.0 * body.outer_radius() * t;
        rows.push(AverageRow {
            t,
            lattice_points: lattice_points(&body, t).map_err(err)?.len(),
            davenport_gap: davenport_gap(&body, t).map_err(err)?,
            boundary_count,
            boundary_ratio: boundary_count as f64 / (s * diam.powi(dim as i32 - 1)),
            image_points: radon_average(&delta, &body, &gamma, t).map_err(err)?.support_len(),
        });
    }
    write_rows(&rows, format, out)
}

pub struct SumOptions {
    pub powers: Vec<u32>,
    pub q_max: u64,
    pub primes: bool,
    pub a: Option<Vec<u64>>,
    pub q: u64,
    pub t: Vec<f64>,
    pub body: Body,
    pub dim: usize,
    pub degree: u32,
    pub n: f64,
    pub sizes: Vec<f64>,
    pub n_max: u64,
}

#[derive(Serialize)]
struct GaussRow {
    q: u64,
    max_abs: f64,
    envelope: Option<f64>,
}

#[derive(Serialize)]
struct WeylRow {
    t: f64,
    weyl_abs: f64,
    gauss_abs: f64,
    gap: f64,
}

#[derive(Serialize)]
struct PhiRow {
    n: f64,
    size: f64,
    abs: f64,
    error: f64,
}

#[derive(Serialize)]
struct FractionRow {
    n: u64,
    size: usize,
    totient_sum: u128,
    lcm_within_3_pow_n: Option<bool>,
}

pub fn sums(study: Study, o: &SumOptions, format: Format, out: Out) -> Result<(), String> {
    match study {
        Study::Gauss => {
            let gamma = CanonicalExponentSet::powers(&o.powers).map_err(err)?;
            let filter = if o.primes { DenominatorFilter::Primes } else { DenominatorFilter::All };
            let d = gauss_decay_study(&gamma, o.q_max, filter).map_err(err)?;
            let rows: Vec<GaussRow> = d
                .rows
                .iter()
                .map(|&(q, max_abs)| GaussRow {
                    q,
                    max_abs,
                    envelope: d.delta.zip(d.envelope).map(|(delta, c)| c * (q as f64).powf(-delta)),
                })
                .collect();
            write_rows(&rows, format, out)
        }
        Study::Weyl => {
            let gamma = CanonicalExponentSet::powers(&o.powers).map_err(err)?;
            let a = o.a.clone().unwrap_or_else(|| vec![1; gamma.len()]);
            let frac = RationalFraction::new(a, o.q).map_err(err)?;
            let g = gauss_sum(&frac, &gamma).map_err(err)?;
            let xi = Frequency::new(frac, vec![0.0; gamma.len()]).map_err(err)?;
            let interval = ConvexBody::ball(1).map_err(err)?;
            let mut rows = Vec::new();
            for &t in &o.t {
                let m = weyl_sum(&interval, &gamma, t, &xi).map_err(err)?;
                rows.push(WeylRow { t, weyl_abs: m.norm(), gauss_abs: g.norm(), gap: (m - g).norm() });
            }
            write_rows(&rows, format, out)
        }
        Study::Phi => {
            let body = body_of(o.body, o.dim)?;
            let gamma = CanonicalExponentSet::full(o.dim, o.degree).map_err(err)?;
            let mut rows = Vec::new();
            for &size in &o.sizes {
                // along the all-ones direction, scaled so that |N^A ξ| = size
                let xi: Vec<f64> = gamma.degrees().iter().map(|&d| size / o.n.powi(d as i32)).collect();
                let est = continuous_symbol(&body, &gamma, o.n, &xi).map_err(err)?;
                rows.push(PhiRow { n: o.n, size, abs: est.value.norm(), error: est.error });
            }
            write_rows(&rows, format, out)
        }
        Study::Fractions => {
            let mut rows = Vec::new();
            for n in 1..=o.n_max {
                let rep = fraction_set(n, 0.5, o.dim).map_err(err)?.report();
                rows.push(FractionRow { n, size: rep.size, totient_sum: rep.totient_sum, lcm_within_3_pow_n: rep.lcm_within_3_pow_n });
            }
            write_rows(&rows, format, out)
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    j: u32,
    #[serde(rename = "M")]
    m: u32,
    p: f64,
    rho: f64,
    r: f64,
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "R_hat")]
    r_hat: f64,
    ratio: f64,
}

impl From<&SeparationRow> for TableRow {
    fn from(s: &SeparationRow) -> Self {
        Self { j: s.j, m: s.m, p: s.p, rho: s.rho, r: s.r, l: s.l, r_hat: s.r_hat, ratio: s.ratio }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn counterexample(ps: &[f64], rho: f64, r: f64, js: &[u32], m_factor: u32, random: usize, seed: u64, format: Format, out: Out) -> Result<(), String> {
    let cases: Vec<SeparationCase> = ps.iter().map(|&p| SeparationCase { p, rho, r }).collect();
    let rows = separation_experiment(&cases, js, MRule::Linear(m_factor), random, seed).map_err(err)?;
    let table: Vec<TableRow> = rows.iter().map(TableRow::from).collect();
    write_rows(&table, format, out)
}

#[derive(Serialize)]
struct CheckRow<'a> {
    module: &'a str,
    name: &'a str,
    passed: bool,
    cases: u64,
    detail: &'a str,
    counterexample: Option<&'a str>,
}

pub fn verify(seed: u64, effort: usize, modules: &[String], format: Format, out: Out) -> Result<ExitCode, String> {
    if let Some(m) = modules.iter().find(|m| !MODULES.contains(&m.as_str())) {
        return Err(format!("unknown module {m}; choose from {}", MODULES.join(", ")));
    }
    if effort == 0 {
        return Err("effort must be positive".into());
    }
    let names: Vec<&str> = modules.iter().map(String::as_str).collect();
    let report = run_suite(&SuiteConfig { seed, effort }, &names);
    match format {
        Format::Json => write_json(&report, out)?,
        Format::Csv => {
            let rows: Vec<CheckRow> = report
                .checks
                .iter()
                .map(|c| CheckRow {
                    module: c.module,
                    name: c.name,
                    passed: c.passed,
                    cases: c.cases,
                    detail: &c.detail,
                    counterexample: c.counterexample.as_deref(),
                })
                .collect();
            write_rows(&rows, format, out)?
        }
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}/{}: {}", c.module, c.name, c.counterexample.as_deref().unwrap_or(&c.detail));
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
