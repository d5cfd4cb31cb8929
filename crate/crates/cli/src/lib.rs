//! Command-line front end: `pptm test bell`, `pptm zeta werner:p=0.75`, …
//!
//! Every command returns an [`Outcome`] holding the rendered output and the
//! process exit status, so the binary and the tests share one code path.

pub mod commands;
pub mod output;
pub mod selftest;
pub mod state_spec;

use std::str::FromStr;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use state_spec::{Range, StateSpec};

pub const EXIT_PPT_CONSISTENT: i32 = 0;
pub const EXIT_ENTANGLED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
/// Shots mode only: some `f(k)` is within three standard errors of zero.
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Highest order `k`, either a number or `auto` (the state dimension).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaxK {
    #[default]
    Auto,
    Fixed(usize),
}

impl FromStr for MaxK {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(MaxK::Auto);
        }
        match s.parse::<usize>()? {
            0 => bail!("--max-k must be at least 1"),
            k => Ok(MaxK::Fixed(k)),
        }
    }
}

impl MaxK {
    pub fn resolve(self, dimension: usize) -> anyhow::Result<usize> {
        match self {
            MaxK::Auto => Ok(dimension),
            MaxK::Fixed(k) if k > dimension => bail!("--max-k {k} exceeds the state dimension {dimension}"),
            MaxK::Fixed(k) => Ok(k),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Tolerance below which a negative f(k) counts as a violation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for the shot sampler.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Estimate moments from this many simulated circuit shots.
    #[arg(long, global = true)]
    pub shots: Option<u64>,
    /// Highest order k, or `auto` for the state dimension.
    #[arg(long, global = true, default_value = "auto")]
    pub max_k: MaxK,
    /// Also run the eigenvalue oracle.
    #[arg(long, global = true)]
    pub oracle: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { tol: 1e-9, format: None, seed: 0, shots: None, max_k: MaxK::Auto, oracle: false }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the moment hierarchy on a state; exit 0 if PPT-consistent, 1 if entangled.
    Test { state: StateSpec },
    /// f(k) for k = 1..max_k.
    Fseries { state: StateSpec },
    /// Partial-transpose moments p_k for k = 1..max_k.
    Moments { state: StateSpec },
    /// Prime cycles, zeta coefficients from both paths and the graph conditions.
    Zeta { state: StateSpec },
    /// Sweep one state parameter over lo:hi:step.
    Scan { state: StateSpec, param: String, range: Range },
    /// Cross-path consistency checks on seeded random inputs.
    Selftest {
        #[arg(long, default_value_t = 25)]
        cases: usize,
    },
    /// Write a state as JSON readable by `file:<path>`.
    Export { state: StateSpec },
}

#[derive(Debug, Clone, Parser)]
#[command(name = "pptm", version, about = "Moment-based PPT entanglement tests")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    pub fn new(stdout: String, code: i32) -> Self {
        Self { stdout, code }
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let cfg = &cli.config;
    if !(cfg.tol >= 0.0 && cfg.tol.is_finite()) {
        bail!("--tol must be a finite nonnegative number");
    }
    if cfg.shots == Some(0) {
        bail!("--shots must be at least 1");
    }
    match &cli.command {
        Command::Test { state } => commands::test(state, cfg),
        Command::Fseries { state } => commands::fseries(state, cfg),
        Command::Moments { state } => commands::moments(state, cfg),
        Command::Zeta { state } => commands::zeta(state, cfg),
        Command::Scan { state, param, range } => commands::scan(state, param, range, cfg),
        Command::Selftest { cases } => selftest::run(*cases, cfg),
        Command::Export { state } => commands::export(state),
    }
}

/// Parse and run; errors become exit status 2 with the message on the
/// second field.
pub fn run_args<I, S>(args: I) -> (Outcome, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (Outcome::new(String::new(), EXIT_ERROR), e.to_string()),
    };
    match run(&cli) {
        Ok(out) => (out, String::new()),
        Err(e) => (Outcome::new(String::new(), EXIT_ERROR), format!("error: {e:#}")),
    }
}
