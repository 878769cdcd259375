//! The Lagrangian 2-pseudoapproximation engine.
//!
//! The budget constraint `cᵀr ≤ B` of the relaxed interdiction LP is moved
//! into the objective with a multiplier λ ≥ 0, giving the concave piecewise
//! linear function `L(λ) = min bᵀy + λ(cᵀr − B)`. A dual oracle evaluates
//! `L(λ)` together with an integral minimiser `(r, y)`. Bisection over
//! `[0, ν*]` brackets the maximiser λ* between an over-budget and an
//! under-budget minimiser, one of which is a good interdiction set.

mod psi;

pub use psi::{clip, psi, psi_vector};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::instance::Instance;
use crate::lp::LpError;
use crate::matroid::SizeGuard;
use crate::scalar::{floor_log2, int};
use crate::Rational;

/// One evaluation of `LP(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualOracleEval {
    pub lambda: Rational,
    /// L(λ).
    pub value: Rational,
    /// Integral interdiction part of the dual solution, indexed by element.
    pub r: Vec<u64>,
    /// cᵀr, or κ(A) for set-valued duals.
    pub cost: u64,
    /// bᵀy.
    pub payment: Rational,
}

impl DualOracleEval {
    /// `payment + λ·(cost − B)`.
    pub fn line_at(&self, lambda: &Rational, budget: u64) -> Rational {
        &self.payment + lambda * (int(self.cost as i64) - int(budget as i64))
    }

    pub fn is_consistent(&self, budget: u64) -> bool {
        !self.payment.is_negative() && self.value == self.line_at(&self.lambda, budget)
    }
}

/// Result of the bisection: λ* and two minimisers of `LP(λ*)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianOutcome {
    pub lambda_star: Rational,
    /// Minimiser with `cost ≥ B`.
    pub eval1: DualOracleEval,
    /// Minimiser with `cost ≤ B`.
    pub eval2: DualOracleEval,
    /// L(λ*).
    pub l_star: Rational,
    pub iterations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    WithinBudget,
    OverBudget,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::WithinBudget => "within_budget",
            Branch::OverBudget => "over_budget",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterdictionResult {
    /// Removed elements, ascending.
    pub removal: Vec<usize>,
    /// Nominal value after removal.
    pub value: Rational,
    pub budget_used: u64,
    pub branch: Branch,
    /// L(λ*), when the Lagrangian engine produced the result.
    pub lower_bound: Option<Rational>,
    pub lambda_star: Option<Rational>,
    pub alpha: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LagrangianError {
    #[error("oracle returned an inconsistent evaluation at λ = {0}")]
    InconsistentOracle(Rational),
    #[error("bracket invariant broken at λ = {0}")]
    BrokenBracket(Rational),
    #[error("neither bracket solution meets the selection conditions")]
    NoQualifyingSolution,
    #[error(transparent)]
    Size(#[from] SizeGuard),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// `1 + ⌊log₂(ν*·c(N)²)⌋`.
pub fn iteration_count(nu_star: u64, total_cost: u64) -> u64 {
    let product = BigInt::from(nu_star) * BigInt::from(total_cost) * BigInt::from(total_cost);
    1 + floor_log2(&product)
}

/// Bisection over `[0, ν*]` with the closed-form λ*.
///
/// Requires `B < total_cost` and `ν* ≥ 1`. The initial bracket is
/// `(λ¹, r¹) = (0, χ^N)` and `(λ², r²) = (ν*, 0)`, whose evaluations are
/// derived without calling the oracle.
pub fn bisect<F>(
    oracle: F,
    nu_star: u64,
    total_cost: u64,
    budget: u64,
    n: usize,
) -> Result<LagrangianOutcome, LagrangianError>
where
    F: Fn(&Rational) -> Result<DualOracleEval, LagrangianError>,
{
    assert!(budget < total_cost && nu_star >= 1, "trivial instance passed to bisect");
    let nu = int(nu_star as i64);
    let b = int(budget as i64);
    let mut e1 = DualOracleEval {
        lambda: Rational::zero(),
        value: Rational::zero(),
        r: vec![1; n],
        cost: total_cost,
        payment: Rational::zero(),
    };
    let mut e2 = DualOracleEval {
        value: &nu - &nu * &b,
        lambda: nu.clone(),
        r: vec![0; n],
        cost: 0,
        payment: nu,
    };
    let iterations = iteration_count(nu_star, total_cost);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..iterations {
        let lambda = (&e1.lambda + &e2.lambda) * &half;
        let eval = oracle(&lambda)?;
        if eval.lambda != lambda || !eval.is_consistent(budget) {
            return Err(LagrangianError::InconsistentOracle(lambda));
        }
        if eval.cost >= budget {
            e1 = eval;
        } else {
            e2 = eval;
        }
    }
    if e1.cost < budget || e2.cost >= budget {
        return Err(LagrangianError::BrokenBracket(e1.lambda.clone()));
    }
    let lambda_star = lambda_star(
        &e1.lambda, &e2.lambda, &e1.value, &e2.value, e1.cost, e2.cost, budget,
    );
    let l_star = e1.line_at(&lambda_star, budget);
    debug_assert_eq!(l_star, e2.line_at(&lambda_star, budget));
    Ok(LagrangianOutcome {
        lambda_star,
        eval1: e1,
        eval2: e2,
        l_star,
        iterations,
    })
}

/// Intersection of the segments through the two bracket solutions.
///
/// Equal costs mean parallel segments; the bracket then sits on a single
/// segment and `lambda1` is returned.
pub fn lambda_star(
    lambda1: &Rational,
    lambda2: &Rational,
    l1: &Rational,
    l2: &Rational,
    cost1: u64,
    cost2: u64,
    budget: u64,
) -> Rational {
    if cost1 == cost2 {
        return lambda1.clone();
    }
    let b = int(budget as i64);
    let (c1, c2) = (int(cost1 as i64), int(cost2 as i64));
    let numerator = l2 - l1 - lambda2 * (&c2 - &b) + lambda1 * (&c1 - &b);
    numerator / (c1 - c2)
}

/// Chooses the interdiction set from the two bracket solutions.
///
/// Order of preference: `r¹` when it already fits the budget (value ≤ L*),
/// then `r²` when `bᵀy² ≤ (1+α)L*`, then `r¹` when
/// `cᵀr¹ ≤ (1+1/α)B`.
pub fn select(
    outcome: &LagrangianOutcome,
    alpha: &Rational,
    inst: &Instance,
) -> Result<InterdictionResult, LagrangianError> {
    let budget = int(inst.budget as i64);
    let one = Rational::one();
    let r1_fits = outcome.eval1.cost <= inst.budget;
    let r2_good = outcome.eval2.payment <= (&one + alpha) * &outcome.l_star;
    let r1_good = int(outcome.eval1.cost as i64) <= (&one + one.clone() / alpha) * &budget;
    let (eval, branch) = if r1_fits {
        (&outcome.eval1, Branch::WithinBudget)
    } else if r2_good {
        (&outcome.eval2, Branch::WithinBudget)
    } else if r1_good {
        (&outcome.eval1, Branch::OverBudget)
    } else {
        return Err(LagrangianError::NoQualifyingSolution);
    };
    let removal = clip(&eval.r);
    Ok(InterdictionResult {
        value: psi(inst, &removal)?,
        budget_used: inst.set_cost(&removal),
        removal,
        branch,
        lower_bound: Some(outcome.l_star.clone()),
        lambda_star: Some(outcome.lambda_star.clone()),
        alpha: Some(alpha.clone()),
    })
}

/// Full framework run: trivial cases, bisection, selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameworkRun {
    pub result: InterdictionResult,
    /// `None` when a trivial case short-circuited the bisection.
    pub outcome: Option<LagrangianOutcome>,
    pub nu_star: u64,
    pub total_cost: u64,
}

/// Runs the engine with the given oracle and nominal optimum.
pub fn run_framework<F>(
    inst: &Instance,
    oracle: F,
    nu_star: u64,
    alpha: &Rational,
) -> Result<FrameworkRun, LagrangianError>
where
    F: Fn(&Rational) -> Result<DualOracleEval, LagrangianError>,
{
    let total_cost = inst.total_cost();
    let n = inst.len();
    let trivial = |removal: Vec<usize>| -> Result<FrameworkRun, LagrangianError> {
        Ok(FrameworkRun {
            result: InterdictionResult {
                value: psi(inst, &removal)?,
                budget_used: inst.set_cost(&removal),
                removal,
                branch: Branch::WithinBudget,
                lower_bound: Some(Rational::zero()),
                lambda_star: Some(Rational::zero()),
                alpha: Some(alpha.clone()),
            },
            outcome: None,
            nu_star,
            total_cost,
        })
    };
    if inst.budget >= total_cost {
        return trivial((0..n).collect());
    }
    if nu_star == 0 {
        return trivial(Vec::new());
    }
    let outcome = bisect(oracle, nu_star, total_cost, inst.budget, n)?;
    let result = select(&outcome, alpha, inst)?;
    Ok(FrameworkRun {
        result,
        outcome: Some(outcome),
        nu_star,
        total_cost,
    })
}
