//! `qracoop`: classical and quantum cooperative games on the command line.
//!
//! Every numeric result is computed by `qra-coop`; this crate only parses
//! arguments and formats output.

mod angle;
pub mod circuit;
mod commands;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qra_coop::{Angle, QraError};
use thiserror::Error;

pub use angle::parse_angle;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] QraError),
    /// A check ran and did not pass; its report is already printed.
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(QraError::UnknownParameter(_) | QraError::InvalidSweep(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qracoop", version, about = "Quantum cooperative games in the quantum register algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ring {
    /// f64 coefficients
    Float,
    /// exact rationals extended by sqrt(2); angles on the pi/4 lattice
    Exact,
    /// trigonometric polynomials in named angles (circuits only)
    Symbolic,
}

#[derive(Debug, Args)]
struct GameArgs {
    /// Player weights, comma separated (integers, fractions or decimals)
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_rational)]
    weights: Vec<BigRational>,
    /// Quota a coalition's weight must reach to win
    #[arg(long, value_parser = parse_rational)]
    quota: BigRational,
}

#[derive(Debug, Args)]
struct TwoArgs {
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    gamma: Angle,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    p1: Angle,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    p2: Angle,
}

#[derive(Debug, Args)]
struct ThreeArgs {
    /// Three-qubit entangler: 0 identity, 1 GHZ circuit
    #[arg(long, default_value_t = 0)]
    gamma123: u8,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    gamma12: Angle,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    gamma13: Angle,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    gamma23: Angle,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    p1: Angle,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    p2: Angle,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    p3: Angle,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    game: GameArgs,
    /// One or two parameters to vary over [0, pi/2]
    #[arg(long, value_delimiter = ',', required = true)]
    vary: Vec<String>,
    /// Points per axis
    #[arg(long, default_value_t = qra_coop::quantum::DEFAULT_GRID)]
    grid: usize,
    /// CSV destination (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    gamma: Option<Angle>,
    #[arg(long)]
    gamma123: Option<u8>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    gamma12: Option<Angle>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    gamma13: Option<Angle>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    gamma23: Option<Angle>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    p1: Option<Angle>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    p2: Option<Angle>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    p3: Option<Angle>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    /// all six orderings of the pairwise entanglers give one element
    J2Orderings,
    /// the general swap equals a chain of adjacent swaps
    #[value(name = "swap-theorem")]
    Swap,
    /// ordering invariance with the third entangler on the wrong qubits
    MisplacedBlock,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shapley-Shubik index of a weighted majority game
    Classic(GameArgs),
    /// Two-player quantum game
    Game2 {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        angles: TwoArgs,
        #[arg(long, value_enum, default_value_t = Ring::Float)]
        ring: Ring,
    },
    /// Three-player quantum game
    Game3 {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        angles: ThreeArgs,
        #[arg(long, value_enum, default_value_t = Ring::Float)]
        ring: Ring,
    },
    /// Grid sweep of a quantum game to CSV
    Sweep(SweepArgs),
    /// Symbolic circuit identities
    Prove {
        #[arg(value_enum)]
        theorem: Theorem,
        /// Largest register for `swap-theorem`
        #[arg(long, default_value_t = 5)]
        max_qubits: usize,
    },
    /// Compare every gate and protocol with the dense matrix simulator
    OracleCheck {
        #[arg(long, default_value_t = 100)]
        draws: usize,
        #[arg(long, default_value_t = qra_coop::crosscheck::DEFAULT_SEED)]
        seed: u64,
        /// Marker products whose sign-table divergence is accepted
        #[arg(long)]
        waivers: Option<PathBuf>,
    },
    /// Evaluate a circuit expression on |0...0>
    Circuit {
        /// e.g. "H(1); CNOT(1,2); CNOT(2,3)"
        expr: String,
        /// Register width (default: largest qubit index used)
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, value_enum, default_value_t = Ring::Float)]
        ring: Ring,
    },
}

/// Runs one command line. Returns the process exit code: 0 on success,
/// 1 on a domain error or failed check, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    let result = qra_coop::register::signature_self_test(3)
        .map_err(CliError::from)
        .and_then(|()| dispatch(cli.command, out, err));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Classic(g) => commands::classic(&g.weights, &g.quota, out),
        Command::Game2 { game, angles, ring } => {
            let cfg = qra_coop::quantum::TwoPlayerConfig::new(angles.gamma, angles.p1, angles.p2);
            commands::game2(&game.weights, &game.quota, &cfg, ring, out, err)
        }
        Command::Game3 { game, angles, ring } => {
            let cfg = qra_coop::quantum::ThreePlayerConfig {
                gamma123: angles.gamma123,
                gamma12: angles.gamma12,
                gamma13: angles.gamma13,
                gamma23: angles.gamma23,
                p1: angles.p1,
                p2: angles.p2,
                p3: angles.p3,
            };
            commands::game3(&game.weights, &game.quota, &cfg, ring, out, err)
        }
        Command::Sweep(args) => commands::sweep(args, out, err),
        Command::Prove { theorem, max_qubits } => commands::prove(theorem, max_qubits, out),
        Command::OracleCheck { draws, seed, waivers } => commands::oracle_check(draws, seed, waivers, out),
        Command::Circuit { expr, width, ring } => commands::circuit(&expr, width, ring, out),
    }
}

/// Integer, `a/b` fraction or decimal, exactly.
fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let bad = || format!("`{t}` is not a number");
    if let Some((int, frac)) = t.split_once('.') {
        let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        let unsigned = int.strip_prefix('-').unwrap_or(int);
        if frac.is_empty() || !digits(frac) || !digits(unsigned) {
            return Err(bad());
        }
        let int = if unsigned.is_empty() { format!("{int}0") } else { int.to_string() };
        return format!("{int}{frac}/1{}", "0".repeat(frac.len()))
            .parse()
            .map_err(|_| bad());
    }
    t.parse().map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("2").unwrap(), r(2, 1));
        assert_eq!(parse_rational("3/4").unwrap(), r(3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), r(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("x").is_err());
    }
}
