//! `oscvar`: seminorms of sampled paths, model sweeps, the separation table and the property suite.

mod commands;
mod config;
mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use table::Format;

#[derive(Debug, Parser)]
#[command(name = "oscvar", version, about = "Oscillation, variation and jump seminorms, with finite models and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format; `verify` defaults to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file of flags; `command = <name>` picks the subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Inclusive integer range `a..b`, a single value, or a comma list.
#[derive(Debug, Clone, PartialEq)]
pub struct IntGrid(pub Vec<u32>);

impl FromStr for IntGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = |_| format!("bad integer grid {s:?}");
        if let Some((a, b)) = s.split_once("..") {
            let (a, b): (u32, u32) = (a.trim().parse().map_err(bad)?, b.trim().trim_start_matches('=').parse().map_err(bad)?);
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            return Ok(Self((a..=b).collect()));
        }
        s.split(',').map(|x| x.trim().parse().map_err(bad)).collect::<Result<_, _>>().map(Self)
    }
}

/// A comma list of reals, or an inclusive integer range `a..b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.contains("..") {
            return IntGrid::from_str(s).map(|g| Self(g.0.into_iter().map(f64::from).collect()));
        }
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad number list {s:?}")))
            .collect::<Result<_, _>>()
            .map(Self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Body {
    Ball,
    Cube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    Gauss,
    Weyl,
    Phi,
    Fractions,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// r-variation, maximal oscillation and jump counts of one path.
    Seminorm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        /// Blocks for the maximal oscillation; default `min(len − 1, 16)`.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,2")]
        lambdas: Vec<f64>,
    },
    /// Jump counts, and sequential counts when `--index` is given.
    Jumps {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,2")]
        lambdas: Vec<f64>,
        /// Index times, drawn from the path's times.
        #[arg(long, value_delimiter = ',')]
        index: Option<Vec<f64>>,
    },
    /// Oscillation along a given index and the maximal oscillation with its maximiser.
    Oscillate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, value_delimiter = ',')]
        index: Option<Vec<f64>>,
        /// Blocks for the maximal oscillation; default `min(len − 1, 8)`.
        #[arg(long)]
        j: Option<usize>,
    },
    /// Doob ratios and empirical oscillation and variation constants of dyadic martingales.
    Martingale {
        #[arg(long, default_value = "2..8")]
        depths: IntGrid,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Random index sequences per sample.
        #[arg(long, default_value_t = 3)]
        partitions: usize,
    },
    /// Lattice counts and Radon averages over a sweep of dilations.
    Average {
        #[arg(long, value_enum, default_value = "ball")]
        body: Body,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value = "4,8,16,32,64")]
        t: Grid,
        /// Boundary strip width.
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// Exponents are every multi-index of degree 1 to this.
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Gauss sums, Weyl sums, the continuous symbol, and fraction-set sizes.
    Sums {
        #[arg(long, value_enum, default_value = "gauss")]
        study: Study,
        /// One-dimensional exponents for `gauss` and `weyl`.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        powers: Vec<u32>,
        #[arg(long, default_value_t = 50)]
        q_max: u64,
        /// Only prime denominators in `gauss`.
        #[arg(long)]
        primes: bool,
        /// Numerators for `weyl`; default all ones.
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u64>>,
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// Dilations for `weyl`.
        #[arg(long, default_value = "8,16,32,64,128")]
        t: Grid,
        #[arg(long, value_enum, default_value = "ball")]
        body: Body,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Dilation `N` for `phi`.
        #[arg(long, default_value_t = 1.0)]
        n: f64,
        /// Sizes `|N^A ξ|` for `phi`.
        #[arg(long, default_value = "0.01,0.1,1,10,100")]
        sizes: Grid,
        /// Largest resolution for `fractions`.
        #[arg(long, default_value_t = 50)]
        n_max: u64,
    },
    /// The separation table: L, R-hat and their ratio per j.
    Counterexample {
        #[arg(long, value_delimiter = ',', default_value = "2")]
        p: Vec<f64>,
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
        #[arg(long, default_value_t = 3.0)]
        r: f64,
        #[arg(long, default_value = "1..5")]
        j: IntGrid,
        /// `M = m_factor · j`.
        #[arg(long, default_value_t = 4)]
        m_factor: u32,
        /// Random index families on top of the structured ones.
        #[arg(long, default_value_t = 4)]
        random: usize,
    },
    /// The property suite; exits 1 on any failure.
    Verify {
        /// Multiplies the number of random cases.
        #[arg(long, default_value_t = 1)]
        effort: usize,
        #[arg(long, value_delimiter = ',')]
        modules: Vec<String>,
    },
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let c = &cli.common;
    let csv = c.format.unwrap_or(Format::Csv);
    let out = c.out.as_deref();
    match cli.command {
        Command::Seminorm { input, r, j, lambdas } => commands::seminorm(&input, r, j, &lambdas, csv, out),
        Command::Jumps { input, lambdas, index } => commands::jumps(&input, &lambdas, index.as_deref(), csv, out),
        Command::Oscillate { input, r, index, j } => commands::oscillate(&input, r, index.as_deref(), j, csv, out),
        Command::Martingale { depths, p, samples, partitions } => {
            commands::martingale(&depths.0, p, samples, partitions, c.seed, csv, out)
        }
        Command::Average { body, dim, t, s, degree } => commands::average(body, dim, &t.0, s, degree, csv, out),
        Command::Sums { study, powers, q_max, primes, a, q, t, body, dim, degree, n, sizes, n_max } => {
            let opts = commands::SumOptions { powers, q_max, primes, a, q, t: t.0, body, dim, degree, n, sizes: sizes.0, n_max };
            commands::sums(study, &opts, csv, out)
        }
        Command::Counterexample { p, rho, r, j, m_factor, random } => {
            commands::counterexample(&p, rho, r, &j.0, m_factor, random, c.seed, csv, out)
        }
        Command::Verify { effort, modules } => {
            return commands::verify(c.seed, effort, &modules, c.format.unwrap_or(Format::Json), out);
        }
    }
    .map(|()| ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
