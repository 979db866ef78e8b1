//! `specfact`: outer spectral factors and checked continuity bounds.
//!
//! Exit codes: 0 pass, 1 check failed, 2 parse or parameter error,
//! 3 domain error, 4 precision budget exceeded.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spectral_factor::{Error, Variant};

#[derive(Debug, Parser)]
#[command(name = "specfact", version, about = "Outer spectral factors of densities on the unit circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// FFT of the boundary formula sqrt(f) exp(i (log f)~ / 2).
    Boundary,
    /// Herglotz integral inside the disk, then a Cauchy integral.
    Herglotz,
    /// Root selection for trigonometric polynomials.
    FejerRiesz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Sup-norm bound with the stated constant 2.5.
    Thm2,
    /// L_p bound with constant C(p).
    CorP,
    /// Orlicz bound with a user-supplied N-function.
    Main,
    /// Orlicz estimate for 1 - cos of the conjugate.
    LemmaOrl,
    /// L_1 estimate for 1 - cos of the conjugate.
    LemmaL1,
    /// Three-term expansion of the squared H2 distance.
    Identity,
    /// Integral estimate for G of the conjugate.
    LemmaG,
    /// Weak-type (1,1) ratio of the conjugate.
    Weak11,
}

impl Check {
    /// Checks that take a single function `psi` instead of a pair.
    pub fn is_single(self) -> bool {
        matches!(self, Self::LemmaOrl | Self::LemmaL1 | Self::LemmaG | Self::Weak11)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GChoice {
    OneMinusCos,
    ClippedSquare,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the outer factor of a density and check its normalization.
    Factorize {
        /// Grid (JSON or CSV) or Fourier series (JSON); standard input if omitted.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "boundary")]
        method: Method,
        /// Grid size for series inputs (power of two).
        #[arg(long)]
        n: Option<usize>,
        /// Raise samples below this level instead of rejecting them.
        #[arg(long)]
        floor: Option<f64>,
        /// Degree used to read a grid as a trigonometric polynomial (fejer-riesz),
        /// or the number of coefficients kept (herglotz).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Evaluate one of the continuity bounds.
    Bounds {
        /// First density, or psi for single-function checks.
        f: PathBuf,
        /// Second density.
        g: Option<PathBuf>,
        #[arg(long, value_enum)]
        check: Check,
        /// Exponent for cor-p.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// N-function as inline JSON or a path; defaults to tau^2/2.
        #[arg(long)]
        phi: Option<String>,
        /// Integrand for lemma-g.
        #[arg(long, value_enum, default_value = "one-minus-cos")]
        g_fn: GChoice,
        /// Grid size for series inputs.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Metrics of the pair showing that the H2 distance is not controlled.
    Counterexample {
        /// Family index, eps = 1 / (2 pi n).
        #[arg(long, conflicts_with = "sweep")]
        n: Option<usize>,
        /// Rows for n = 1..=max_n.
        #[arg(long)]
        sweep: Option<usize>,
        /// Half-width of the bump in the strip coordinate.
        #[arg(long, default_value_t = spectral_factor::counterexample::DEFAULT_DELTA_U)]
        du: f64,
        #[arg(long, default_value = "floored", value_parser = parse_variant)]
        variant: Variant,
    },
    /// Print K, K0, C(2) and C_inf.
    Constants,
    /// Run a check on seeded random inputs.
    Sweep {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 1 runs sequentially.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        phi: Option<String>,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Parameter(_) | Error::Aliasing { .. } => 2,
        Error::Domain(_) | Error::NonPositiveSample { .. } | Error::Conditioning(_) => 3,
        Error::PrecisionBudget(_) => 4,
    }
}

fn run(cli: Cli) -> spectral_factor::Result<bool> {
    match cli.command {
        Command::Factorize { input, method, n, floor, degree } => {
            commands::factorize(input.as_deref(), method, n, floor, degree)
        }
        Command::Bounds { f, g, check, p, phi, g_fn, n } => {
            commands::bounds(&f, g.as_deref(), check, p, phi.as_deref(), g_fn, n)
        }
        Command::Counterexample { n, sweep, du, variant } => commands::counterexample(n, sweep, du, variant),
        Command::Constants => commands::constants(),
        Command::Sweep { check, trials, seed, jobs, n, p, phi } => {
            commands::sweep(check, trials, seed, jobs, n, p, phi.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("specfact: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
