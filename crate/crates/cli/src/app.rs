//! Argument parsing and dispatch: `run(argv)` yields the exit code and both streams.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kmn_core::surgery::SurgeryOrder;
use kmn_core::weights::{Restrict, Window};

use crate::commands::{self, MatrixFormat, OracleSuite, Output};
use crate::error::{CliError, Result};

#[derive(Parser, Debug)]
#[command(name = "kmn", version, about = "Generalized Khovanov arc algebras K(m|n) for GL(m|n)")]
struct Cli {
    /// Seed for every sampled mode.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// The rank `(m|n)` and the window `p ≤ q`.
#[derive(Args, Debug, Clone, Copy)]
struct WindowArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_negative_numbers = true)]
    p: i64,
    #[arg(long, allow_negative_numbers = true)]
    q: i64,
    /// Keep only the weights of `Λ°_{p,q}`.
    #[arg(long)]
    restricted: bool,
}

impl WindowArgs {
    fn window(&self) -> Result<Window> {
        Ok(Window::new(self.m, self.n, self.p, self.q)?)
    }

    fn restrict(&self) -> Restrict {
        if self.restricted {
            Restrict::MaximalDefect
        } else {
            Restrict::All
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum MatrixFmt {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Order {
    LeftToRight,
    RightToLeft,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Suite {
    Hecke,
    Eigen,
    Casimir,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert a JSON array of weights between coefficient vectors and weight diagrams.
    Dict { file: PathBuf },
    /// Enumerate the weights of a window with their Bruhat Hasse diagram.
    Block {
        #[command(flatten)]
        w: WindowArgs,
    },
    /// Multiply two basis vectors given as JSON files.
    Mult {
        left: PathBuf,
        right: PathBuf,
        /// Include the surgery-by-surgery trace.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "left-to-right")]
        order: Order,
    },
    /// Cartan matrix of the truncation.
    Cartan {
        #[command(flatten)]
        w: WindowArgs,
        #[arg(long)]
        graded: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFmt,
    },
    /// Decomposition matrix of the truncation.
    Decomp {
        #[command(flatten)]
        w: WindowArgs,
        #[arg(long)]
        graded: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFmt,
    },
    /// Endomorphism rings of indecomposable projectives.
    Endo {
        #[command(flatten)]
        w: WindowArgs,
        /// A single weight instead of all of `Λ°_{p,q}`.
        #[arg(long)]
        weight: Option<PathBuf>,
    },
    /// Composition factors of a Kac module by layer.
    Kac { weight: PathBuf },
    /// Crystal graph of a window in DOT syntax.
    Crystal {
        #[command(flatten)]
        w: WindowArgs,
    },
    /// Crystal path to the ground state and the functor composite along it.
    Path { weight: PathBuf },
    /// Projective multiplicities from oriented stretched circle diagrams.
    Stretched {
        #[command(flatten)]
        w: WindowArgs,
        #[arg(long)]
        d: usize,
    },
    /// Tensor-space suites on `V(λ_{p,q}) ⊗ V^{⊗d}`.
    Oracle {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        w: WindowArgs,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Product closure and associativity, exhaustive or over seeded samples.
    Assoc {
        #[command(flatten)]
        w: WindowArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Seeded random basis vectors of the truncation.
    Sample {
        #[command(flatten)]
        w: WindowArgs,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Cross-validate functor composites, stretched diagrams and the tensor model.
    Xcheck {
        #[command(flatten)]
        w: WindowArgs,
        /// Largest `d` for the multiplicity comparison.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Largest `d` for the eigenspace comparison; defaults to `d`.
        #[arg(long)]
        oracle_d: Option<usize>,
    },
    /// ASCII drawing of a basis vector or weight JSON file.
    Render { file: PathBuf },
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exit {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Dict { file } => commands::dict(&file),
        Command::Block { w } => commands::block(&w.window()?, w.restrict()),
        Command::Mult { left, right, trace, order } => {
            let order = match order {
                Order::LeftToRight => SurgeryOrder::LeftToRight,
                Order::RightToLeft => SurgeryOrder::RightToLeft,
            };
            commands::mult(&left, &right, order, trace)
        }
        Command::Cartan { w, graded, format } => commands::cartan(&w.window()?, graded, matrix_format(format)),
        Command::Decomp { w, graded, format } => commands::decomp(&w.window()?, graded, matrix_format(format)),
        Command::Endo { w, weight } => commands::endo(&w.window()?, weight.as_deref()),
        Command::Kac { weight } => commands::kac(&weight),
        Command::Crystal { w } => commands::crystal(&w.window()?, w.restrict()),
        Command::Path { weight } => commands::path(&weight),
        Command::Stretched { w, d } => commands::stretched(&w.window()?, d),
        Command::Oracle { suite, w, d } => {
            let suite = match suite {
                Suite::Hecke => OracleSuite::Hecke,
                Suite::Eigen => OracleSuite::Eigen,
                Suite::Casimir => OracleSuite::Casimir,
            };
            commands::oracle(&w.window()?, d, suite)
        }
        Command::Assoc { w, samples } => commands::assoc(&w.window()?, samples, cli.seed),
        Command::Sample { w, count } => commands::sample(&w.window()?, count, cli.seed),
        Command::Xcheck { w, d, oracle_d } => {
            let oracle_d = oracle_d.unwrap_or(d);
            commands::xcheck(&w.window()?, d, oracle_d)
        }
        Command::Render { file } => commands::render(&file),
    }
}

fn matrix_format(f: MatrixFmt) -> MatrixFormat {
    match f {
        MatrixFmt::Json => MatrixFormat::Json,
        MatrixFmt::Csv => MatrixFormat::Csv,
    }
}

/// Parses `argv` (including the program name) and runs the command.
///
/// Exit codes: 0 on success, 1 on a domain error or failed check, 2 on a usage error.
pub fn run<I, T>(argv: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Exit { code, stdout, stderr };
        }
    };
    match dispatch(cli) {
        Ok(Output { text, failure: None }) => Exit { code: 0, stdout: text, stderr: String::new() },
        Ok(Output { text, failure: Some(reason) }) => {
            Exit { code: 1, stdout: text, stderr: CliError::CheckFailed(reason).to_json() + "\n" }
        }
        Err(e) => Exit { code: 1, stdout: String::new(), stderr: e.to_json() + "\n" },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_window_bounds_parse() {
        let exit = run(["kmn", "block", "--m", "1", "--n", "1", "--p", "-2", "--q", "-1", "--restricted"]);
        assert_eq!(exit.code, 0, "{}", exit.stderr);
        assert!(exit.stdout.contains("\"p\": -2"));
    }

    #[test]
    fn failed_checks_exit_one() {
        let exit = run(["kmn", "block", "--m", "1", "--n", "1", "--p", "1", "--q", "0"]);
        assert_eq!(exit.code, 1);
        assert!(exit.stdout.is_empty());
    }
}
