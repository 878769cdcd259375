//! JSON report shapes. Every number is a string: an integer or `p/q`.

use interdict::instance::Instance;
use interdict::lagrangian::InterdictionResult;
use interdict::scalar::fmt_rational;
use interdict::Rational;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

pub fn num(value: u64) -> String {
    value.to_string()
}

pub fn frac(value: &Rational) -> String {
    fmt_rational(value)
}

/// Sorted ids of a removal set.
pub fn ids(inst: &Instance, removal: &[usize]) -> Vec<String> {
    let mut out = inst.ids(removal);
    out.sort();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub instance: String,
    pub problem: String,
    pub method: String,
    pub removal: Vec<String>,
    pub value: String,
    pub budget_used: String,
    pub budget: String,
    pub alpha: Option<String>,
    /// The accuracy actually used, after the `1/|E|` floor.
    pub epsilon: Option<String>,
    pub lambda_star: Option<String>,
    pub lower_bound: Option<String>,
    pub branch: String,
    pub guarantee_checked: bool,
    pub wall_time_ms: u64,
}

impl SolveReport {
    pub fn new(digest: String, inst: &Instance, method: &str, result: &InterdictionResult) -> Self {
        Self {
            instance: digest,
            problem: inst.kind.name().into(),
            method: method.into(),
            removal: ids(inst, &result.removal),
            value: frac(&result.value),
            budget_used: num(result.budget_used),
            budget: num(inst.budget),
            alpha: result.alpha.as_ref().map(frac),
            epsilon: None,
            lambda_star: result.lambda_star.as_ref().map(frac),
            lower_bound: result.lower_bound.as_ref().map(frac),
            branch: result.branch.name().into(),
            guarantee_checked: false,
            wall_time_ms: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    #[serde(flatten)]
    pub solve: SolveReport,
    pub opt: String,
    pub opt_removal: Vec<String>,
    pub enumerated: u64,
    pub pass: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub lambda: String,
    pub value: String,
    pub cost: String,
    pub payment: String,
    /// Elements with `r(e) ≥ 1`, sorted.
    pub support: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub instance: String,
    pub problem: String,
    pub budget: String,
    pub nu_star: String,
    pub evaluations: Vec<OracleEntry>,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub file: String,
    pub problem: String,
    pub method: String,
    pub status: String,
    pub value: String,
    pub opt: String,
    /// value / OPT, empty when OPT = 0.
    pub ratio: String,
    /// budget_used / B.
    pub budget_ratio: String,
    pub detail: String,
    pub time_ms: u64,
}

pub fn budget_ratio(used: u64, budget: u64) -> String {
    if budget == 0 {
        return String::new();
    }
    frac(&Rational::new(used.into(), budget.into()))
}
