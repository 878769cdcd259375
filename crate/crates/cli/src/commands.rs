use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use interdict::exact::{solve_exact, ExactError};
use interdict::instance::{parse_instance, Instance, InstanceError};
use interdict::lagrangian::{clip, Branch, InterdictionResult, LagrangianError};
use interdict::oracles::{nu_star, oracle_for, solve_framework};
use interdict::ptas::{solve_ptas, PtasError};
use interdict::verify::{brute_force_opt_with_limit, check_guarantee, VerifyError, BRUTE_FORCE_LIMIT};
use interdict::Rational;
use num_traits::Zero;
use thiserror::Error;

use crate::report::{budget_ratio, digest, frac, ids, num, BenchRow, OracleEntry, OracleReport, SolveReport, VerifyReport};
use crate::Method;

pub const SIZE_GUARD_VAR: &str = "INTERDICT_SIZE_GUARD";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    SizeGuard(String),
    #[error("guarantee check failed: {0}")]
    Guarantee(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Internal(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::SizeGuard(_) => 4,
            CliError::Guarantee(_) => 5,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        match &e {
            InstanceError::Invalid(v) if v.iter().any(|v| v.size_limit) => CliError::SizeGuard(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<LagrangianError> for CliError {
    fn from(e: LagrangianError) -> Self {
        match e {
            LagrangianError::Size(_) => CliError::SizeGuard(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::TooLarge { .. } => CliError::SizeGuard(format!("{e}; raise it with {SIZE_GUARD_VAR}")),
            VerifyError::Lagrangian(e) => e.into(),
        }
    }
}

impl From<PtasError> for CliError {
    fn from(e: PtasError) -> Self {
        match e {
            PtasError::WrongKind(_) => CliError::Mismatch(e.to_string()),
            PtasError::Lagrangian(e) => e.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::WrongKind(_) => CliError::Mismatch(e.to_string()),
            ExactError::Lagrangian(e) => e.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Brute-force limit, raised by `INTERDICT_SIZE_GUARD`.
fn brute_force_limit() -> Result<usize, CliError> {
    match std::env::var(SIZE_GUARD_VAR) {
        Err(_) => Ok(BRUTE_FORCE_LIMIT),
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("{SIZE_GUARD_VAR}={text} is not a nonnegative integer"))),
    }
}

fn load(path: &Path) -> Result<(Instance, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Invalid("instance is not UTF-8".into()))?;
    Ok((parse_instance(&text)?, digest(&bytes)))
}

fn emit(out: &mut impl Write, value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialise");
    writeln!(out, "{text}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub fn solve(
    input: &Path,
    method: Method,
    alpha: &Rational,
    epsilon: Option<&Rational>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let start = Instant::now();
    let (inst, sha) = load(input)?;
    if method != Method::Ptas && epsilon.is_some() {
        return Err(CliError::Invalid("--epsilon only applies to --method ptas".into()));
    }
    let mut report = match method {
        Method::Framework => {
            let run = solve_framework(&inst, alpha)?;
            SolveReport::new(sha, &inst, method.name(), &run.result)
        }
        Method::Ptas => {
            let run = solve_ptas(&inst, epsilon.expect("clap requires --epsilon"))?;
            let mut r = SolveReport::new(sha, &inst, method.name(), &run.result);
            r.epsilon = Some(frac(&run.effective_epsilon));
            r
        }
        Method::Exact => {
            let run = solve_exact(&inst)?;
            SolveReport::new(sha, &inst, method.name(), &run.result)
        }
        Method::Brute => {
            let report = brute_force_opt_with_limit(&inst, brute_force_limit()?)?;
            let result = InterdictionResult {
                budget_used: inst.set_cost(&report.removal),
                removal: report.removal,
                value: report.opt,
                branch: Branch::WithinBudget,
                lower_bound: None,
                lambda_star: None,
                alpha: None,
            };
            SolveReport::new(sha, &inst, method.name(), &result)
        }
    };
    report.wall_time_ms = elapsed_ms(start);
    emit(out, &report)
}

fn verify_report(input: &Path, alpha: &Rational) -> Result<VerifyReport, CliError> {
    let start = Instant::now();
    let (inst, sha) = load(input)?;
    let limit = brute_force_limit()?;
    if inst.len() > limit {
        return Err(VerifyError::TooLarge { n: inst.len(), limit }.into());
    }
    let run = solve_framework(&inst, alpha)?;
    let brute = brute_force_opt_with_limit(&inst, limit)?;
    let check = check_guarantee(&run.result, &brute, alpha, inst.budget);
    let mut solve = SolveReport::new(sha, &inst, Method::Framework.name(), &run.result);
    solve.guarantee_checked = true;
    solve.wall_time_ms = elapsed_ms(start);
    Ok(VerifyReport {
        solve,
        opt: frac(&brute.opt),
        opt_removal: ids(&inst, &brute.removal),
        enumerated: brute.enumerated,
        pass: check.is_ok(),
        reason: check.err(),
    })
}

pub fn verify(input: &Path, alpha: &Rational, out: &mut impl Write) -> Result<(), CliError> {
    let report = verify_report(input, alpha)?;
    emit(out, &report)?;
    match report.reason {
        Some(reason) => Err(CliError::Guarantee(reason)),
        None => Ok(()),
    }
}

pub fn oracle(input: &Path, lambdas: &[Rational], out: &mut impl Write) -> Result<(), CliError> {
    let start = Instant::now();
    let (inst, sha) = load(input)?;
    let oracle = oracle_for(&inst);
    let evaluations = lambdas
        .iter()
        .map(|l| {
            let e = oracle(l)?;
            Ok(OracleEntry {
                lambda: frac(l),
                value: frac(&e.value),
                cost: num(e.cost),
                payment: frac(&e.payment),
                support: ids(&inst, &clip(&e.r)),
            })
        })
        .collect::<Result<Vec<_>, LagrangianError>>()?;
    let report = OracleReport {
        instance: sha,
        problem: inst.kind.name().into(),
        budget: num(inst.budget),
        nu_star: num(nu_star(&inst)?),
        evaluations,
        wall_time_ms: elapsed_ms(start),
    };
    emit(out, &report)
}

fn bench_row(path: &Path, alpha: &Rational) -> BenchRow {
    let start = Instant::now();
    let file = path.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned());
    let mut row = BenchRow {
        file,
        problem: String::new(),
        method: Method::Framework.name().into(),
        status: String::new(),
        value: String::new(),
        opt: String::new(),
        ratio: String::new(),
        budget_ratio: String::new(),
        detail: String::new(),
        time_ms: 0,
    };
    match verify_report(path, alpha) {
        Ok(r) => {
            row.problem = r.solve.problem;
            row.status = if r.pass { "pass" } else { "fail" }.into();
            row.value = r.solve.value;
            row.opt = r.opt;
            let value = interdict::scalar::parse_rational(&row.value).expect("own output");
            let opt = interdict::scalar::parse_rational(&row.opt).expect("own output");
            if !opt.is_zero() {
                row.ratio = frac(&(value / opt));
            }
            let used: u64 = r.solve.budget_used.parse().expect("own output");
            let budget: u64 = r.solve.budget.parse().expect("own output");
            row.budget_ratio = budget_ratio(used, budget);
            row.detail = r.reason.unwrap_or_default();
        }
        Err(e) => {
            row.status = "error".into();
            row.detail = e.to_string();
        }
    }
    row.time_ms = elapsed_ms(start);
    row
}

pub fn bench(dir: &Path, csv_path: &Path, alpha: &Rational, out: &mut impl Write) -> Result<(), CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::io(dir, e))?;
    files.retain(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"));
    files.sort();

    let rows: Vec<BenchRow> = files.iter().map(|p| bench_row(p, alpha)).collect();
    let mut writer = csv::Writer::from_path(csv_path).map_err(|e| CliError::io(csv_path, e.into()))?;
    if rows.is_empty() {
        writer
            .write_record(["file", "problem", "method", "status", "value", "opt", "ratio", "budget_ratio", "detail", "time_ms"])
            .map_err(|e| CliError::io(csv_path, e.into()))?;
    }
    for row in &rows {
        writer.serialize(row).map_err(|e| CliError::io(csv_path, e.into()))?;
    }
    writer.flush().map_err(|e| CliError::io(csv_path, e))?;

    let count = |s: &str| rows.iter().filter(|r| r.status == s).count();
    writeln!(
        out,
        "{} instances: {} pass, {} fail, {} error",
        rows.len(),
        count("pass"),
        count("fail"),
        count("error")
    )
    .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}
