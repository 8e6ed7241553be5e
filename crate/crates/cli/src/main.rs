use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod check;
mod commands;
mod output;
mod parse;

use output::Format;

/// Six-vertex model with domain wall boundary conditions: exact partition
/// functions, orthogonal-polynomial norms and their large-size asymptotics.
#[derive(Parser, Debug)]
#[command(name = "dwbc", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Working precision in bits; 53 selects double precision.
    #[arg(long, global = true, env = "DWBC_BITS", default_value_t = 53)]
    pub bits: u32,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Critical,
    Ferro,
    Brute,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate configurations and sum their weights.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        #[arg(long, default_value = "1")]
        c: String,
        /// List every configuration as a matrix with its weight.
        #[arg(long)]
        dump: bool,
    },
    /// Partition function by one of the three routes.
    Zn {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Exact norms of the critical-line weight.
    Hk {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        kmax: usize,
    },
    /// MRS numbers, Lagrange multipliers and the asymptotic norm estimate.
    Mrs {
        #[arg(long)]
        alpha: String,
        /// One or more k values (repeat or separate with commas).
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        /// Skip the exact norms used for the relative error.
        #[arg(long)]
        no_exact: bool,
    },
    /// Residuals of the norm expansion over a quarter-octave k grid.
    Thm1 {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 16)]
        kmin: usize,
        #[arg(long, default_value_t = 128)]
        kmax: usize,
    },
    /// Fit of ln Z_n against the large-n law.
    Thm2 {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 60)]
        nmax: usize,
    },
    /// Run the invariant suite; exit 0 iff every item passes.
    Check {
        /// Per-item time limit in seconds.
        #[arg(long, default_value_t = 300)]
        timeout: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = cli.global;
    let result = match cli.command {
        Command::Enumerate { n, a, b, c, dump } => commands::enumerate(&g, n, [&a, &b, &c], dump),
        Command::Zn { mode, n, alpha, t, gamma, a, b, c } => {
            commands::zn(&g, mode, n, alpha.as_deref(), t.zip(gamma), [a, b, c])
        }
        Command::Hk { alpha, kmax } => commands::hk(&g, &alpha, kmax),
        Command::Mrs { alpha, k, no_exact } => commands::mrs(&g, &alpha, &k, !no_exact),
        Command::Thm1 { alpha, kmin, kmax } => commands::thm1(&g, &alpha, kmin, kmax),
        Command::Thm2 { alpha, nmax } => commands::thm2(&g, &alpha, nmax),
        Command::Check { timeout } => check::run(&g, timeout),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dwbc: {e}");
            ExitCode::from(e.code())
        }
    }
}
