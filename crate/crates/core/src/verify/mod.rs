//! Reference oracles and guarantee checks: exhaustive interdiction optimum,
//! a naive nominal evaluator, the approximation certificate, concavity and
//! kink audits of `L(λ)`, and a random instance generator.

mod generate;
mod naive;

pub use generate::generate;
pub use naive::naive_nominal;

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::instance::{set_of, Instance};
use crate::lagrangian::{psi, Branch, InterdictionResult, LagrangianError};
use crate::scalar::int;
use crate::Rational;

/// Largest ground set enumerated by [`brute_force_opt`] by default.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("ground set of {n} elements exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceReport {
    pub opt: Rational,
    /// Lexicographically smallest optimal removal set.
    pub removal: Vec<usize>,
    /// Number of budget-feasible sets evaluated.
    pub enumerated: u64,
}

pub fn brute_force_opt(inst: &Instance) -> Result<BruteForceReport, VerifyError> {
    brute_force_opt_with_limit(inst, BRUTE_FORCE_LIMIT)
}

/// Enumerates every `R ⊆ N` with `cost(R) ≤ B` and minimises ψ(R).
pub fn brute_force_opt_with_limit(
    inst: &Instance,
    limit: usize,
) -> Result<BruteForceReport, VerifyError> {
    let n = inst.len();
    if n > limit || n >= 64 {
        return Err(VerifyError::TooLarge { n, limit });
    }
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut enumerated = 0;
    for mask in 0u64..1 << n {
        let set = set_of(mask);
        if inst.set_cost(&set) > inst.budget {
            continue;
        }
        enumerated += 1;
        let value = psi(inst, &set)?;
        let better = match &best {
            None => true,
            Some((v, s)) => (&value, &set) < (v, s),
        };
        if better {
            best = Some((value, set));
        }
    }
    let (opt, removal) = best.expect("the empty set is affordable");
    Ok(BruteForceReport {
        opt,
        removal,
        enumerated,
    })
}

/// Checks the bicriteria guarantee of `result` against the optimum.
///
/// `within_budget` needs `budget ≤ B` and `value ≤ (1+α)·OPT`;
/// `over_budget` needs `budget ≤ (1+1/α)·B` and `value ≤ OPT`.
pub fn check_guarantee(
    result: &InterdictionResult,
    report: &BruteForceReport,
    alpha: &Rational,
    budget: u64,
) -> Result<(), String> {
    let used = int(result.budget_used as i64);
    let b = int(budget as i64);
    let one = Rational::one();
    match result.branch {
        Branch::WithinBudget => {
            if used > b {
                return Err(format!("within_budget uses {used} > B = {b}"));
            }
            let bound = (&one + alpha) * &report.opt;
            if result.value > bound {
                return Err(format!("value {} > (1+α)·OPT = {bound}", result.value));
            }
        }
        Branch::OverBudget => {
            if alpha.is_zero() {
                return Err("over_budget with α = 0".into());
            }
            let cap = (&one + &one / alpha) * &b;
            if used > cap {
                return Err(format!("over_budget uses {used} > (1+1/α)·B = {cap}"));
            }
            if result.value > report.opt {
                return Err(format!("value {} > OPT = {}", result.value, report.opt));
            }
        }
    }
    Ok(())
}

/// Checks `L(b) ≥` chord value for each triple `a < b < c`; triples with
/// repeated points are skipped. Returns the first failing triple.
pub fn probe_concavity<F>(
    l: F,
    triples: &[(Rational, Rational, Rational)],
) -> Result<(), (Rational, Rational, Rational)>
where
    F: Fn(&Rational) -> Rational,
{
    for (a, b, c) in triples {
        if !(a < b && b < c) {
            continue;
        }
        let (la, lb, lc) = (l(a), l(b), l(c));
        let chord = &la + (b - a) / (c - a) * (&lc - &la);
        if lb < chord {
            return Err((a.clone(), b.clone(), c.clone()));
        }
    }
    Ok(())
}

/// All `p/q` in `[0, ν*]` with `1 ≤ q ≤ c(N)`, ascending.
pub fn candidate_kinks(nu_star: u64, total_cost: u64) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for q in 1..=total_cost as i64 {
        for p in 0..=nu_star as i64 * q {
            set.insert(Rational::new(p.into(), q.into()));
        }
    }
    set.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinkAudit {
    pub grid: Vec<Rational>,
    pub values: Vec<Rational>,
    /// Interior grid points where `L` changes slope.
    pub kinks: Vec<Rational>,
    /// Smallest gap between consecutive kinks, if there are two.
    pub min_gap: Option<Rational>,
    pub max_value: Rational,
}

/// Evaluates `L` on every candidate kink.
///
/// All breakpoints of `L` lie on the grid, so `L` is linear between grid
/// neighbours and a grid point is a kink exactly when it sits strictly above
/// the chord of its neighbours.
pub fn kink_audit<F>(l: F, nu_star: u64, total_cost: u64) -> KinkAudit
where
    F: Fn(&Rational) -> Rational,
{
    let grid = candidate_kinks(nu_star, total_cost);
    let values: Vec<Rational> = grid.iter().map(&l).collect();
    let mut kinks = Vec::new();
    for k in 1..grid.len().saturating_sub(1) {
        let (a, b, c) = (&grid[k - 1], &grid[k], &grid[k + 1]);
        let chord = &values[k - 1] + (b - a) / (c - a) * (&values[k + 1] - &values[k - 1]);
        if values[k] != chord {
            kinks.push(b.clone());
        }
    }
    let min_gap = kinks.windows(2).map(|w| &w[1] - &w[0]).min();
    let max_value = values.iter().max().cloned().unwrap_or_else(Rational::zero);
    KinkAudit {
        grid,
        values,
        kinks,
        min_gap,
        max_value,
    }
}
