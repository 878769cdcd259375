mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use interdict::scalar::parse_rational;
use interdict::Rational;
use num_traits::Signed;

use commands::CliError;

#[derive(Parser)]
#[command(name = "interdict", version, about = "Budgeted interdiction solvers with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a JSON report.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Framework)]
        method: Method,
        /// Trade-off parameter of the Lagrangian framework.
        #[arg(long, default_value = "1", value_parser = positive)]
        alpha: Rational,
        /// Accuracy of the approximation scheme.
        #[arg(long, value_parser = positive, required_if_eq("method", "ptas"))]
        epsilon: Option<Rational>,
    },
    /// Run the framework and certify its guarantee against brute force.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "1", value_parser = positive)]
        alpha: Rational,
    },
    /// Evaluate the Lagrangian dual at the given multipliers.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "lambda", required = true, value_parser = nonnegative)]
        lambdas: Vec<Rational>,
    },
    /// Verify every `*.json` instance in a directory and write a CSV.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "1", value_parser = positive)]
        alpha: Rational,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Framework,
    Ptas,
    Exact,
    Brute,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Framework => "framework",
            Method::Ptas => "ptas",
            Method::Exact => "exact",
            Method::Brute => "brute",
        }
    }
}

fn positive(text: &str) -> Result<Rational, String> {
    let r = parse_rational(text).map_err(|e| e.to_string())?;
    if !r.is_positive() {
        return Err(format!("{text} is not positive"));
    }
    Ok(r)
}

fn nonnegative(text: &str) -> Result<Rational, String> {
    let r = parse_rational(text).map_err(|e| e.to_string())?;
    if r.is_negative() {
        return Err(format!("{text} is negative"));
    }
    Ok(r)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            input,
            method,
            alpha,
            epsilon,
        } => commands::solve(&input, method, &alpha, epsilon.as_ref(), out),
        Command::Verify { input, alpha } => commands::verify(&input, &alpha, out),
        Command::Oracle { input, lambdas } => commands::oracle(&input, &lambdas, out),
        Command::Bench { dir, out: csv, alpha } => commands::bench(&dir, &csv, &alpha, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
