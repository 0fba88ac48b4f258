use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use raminsep::commands::{self, CmdError, Emit, Method, Output};
use raminsep::report::ErrorOut;
use raminsep::sweep::SweepParams;

/// Indices of inseparability of single-break elementary abelian
/// p-extensions of F_q((t)).
#[derive(Parser)]
#[command(name = "raminsep", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct FieldArgs {
    /// Residue characteristic.
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Degree of the residue field over F_p.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Indices from an Eisenstein polynomial.
    Indices {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        minpoly: String,
    },
    /// Build the extension defined by Artin-Schreier generators.
    Build {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated generators.
        #[arg(long = "as")]
        betas: String,
        #[arg(long, value_enum, default_value_t = Emit::All)]
        emit: Emit,
        /// Use the exponent pair (u0 + p k, s0 + b k) in every step.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        pair_shift: i64,
    },
    /// Norm group of the extension cut out by an Eisenstein polynomial.
    Normgroup {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        minpoly: String,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Recover the indices from the norm group and compare.
    Recover {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        minpoly: String,
    },
    /// Evaluate the Artin-Schreier pairing [beta, eta).
    Pairing {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        eta: String,
    },
    /// Random sweep of all invariants.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        bmax: i64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn precision_from_env() -> Result<Option<i64>, String> {
    match std::env::var("RAMINSEP_PRECISION") {
        Ok(v) => v.trim().parse::<i64>().map(Some).map_err(|_| format!("RAMINSEP_PRECISION is not an integer: {v:?}")),
        Err(_) => Ok(None),
    }
}

fn run(cmd: Cmd, precision: Option<i64>) -> Result<Output, CmdError> {
    match cmd {
        Cmd::Indices { field, minpoly } => commands::indices(&commands::field(field.p, field.m)?, &minpoly),
        Cmd::Build { field, betas, emit, pair_shift } => {
            commands::build_cmd(&commands::field(field.p, field.m)?, &betas, emit, precision, pair_shift)
        }
        Cmd::Normgroup { field, minpoly, method } => {
            commands::normgroup(&commands::field(field.p, field.m)?, &minpoly, method, precision)
        }
        Cmd::Recover { field, minpoly } => commands::recover(&commands::field(field.p, field.m)?, &minpoly, precision),
        Cmd::Pairing { field, beta, eta } => commands::pairing_cmd(&commands::field(field.p, field.m)?, &beta, &eta),
        Cmd::Verify { field, nu, bmax, trials, seed } => {
            commands::verify(&SweepParams { p: field.p, m: field.m, nu, bmax, trials, seed, precision })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = match precision_from_env() {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.cmd, precision) {
        Ok(out) => {
            println!("{}", out.json);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: invariant violation");
                ExitCode::from(1)
            }
        }
        Err(CmdError::Parse(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CmdError::Math(e)) => {
            println!("{}", serde_json::to_string(&ErrorOut::new(&e)).expect("serializable"));
            ExitCode::from(3)
        }
    }
}
