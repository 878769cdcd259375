//! Integral dual oracles for `LP(λ)` on the three problem families, the
//! nominal optimum ν*, and the end-to-end framework solve.

use num_traits::{One, Zero};

use crate::flow::{max_flow, CapacitatedNetwork};
use crate::instance::{Instance, Payload};
use crate::lagrangian::{psi, run_framework, DualOracleEval, FrameworkRun, LagrangianError};
use crate::lp::{integral_dual, LinearProgram, Relation, Sense};
use crate::matroid::lagrangian_min_set;
use crate::scalar::{int, to_i64};
use crate::Rational;

pub type Oracle<'a> = Box<dyn Fn(&Rational) -> Result<DualOracleEval, LagrangianError> + 'a>;

/// ν* = ψ(∅).
pub fn nu_star(inst: &Instance) -> Result<u64, LagrangianError> {
    let v = psi(inst, &[])?;
    Ok(to_i64(&v).expect("integral nominal optimum") as u64)
}

fn eval(
    lambda: &Rational,
    budget: u64,
    r: Vec<u64>,
    cost: u64,
    payment: Rational,
) -> DualOracleEval {
    let value = &payment + lambda * (int(cost as i64) - int(budget as i64));
    DualOracleEval {
        lambda: lambda.clone(),
        value,
        r,
        cost,
        payment,
    }
}

/// Minimises `λ·κ(A) + r_w(N∖A)` by enumeration; `r = χ^A`.
pub fn matroid_oracle(inst: &Instance, lambda: &Rational) -> Result<DualOracleEval, LagrangianError> {
    let spec = inst.matroid().expect("matroid instance");
    let best = lagrangian_min_set(spec, &spec.weights, |a| inst.set_cost(a), lambda)?;
    let mut r = vec![0; inst.len()];
    for &e in &best.set {
        r[e] = 1;
    }
    Ok(eval(lambda, inst.budget, r, best.cost, int(best.rank as i64)))
}

/// Min cut under capacities `min(u, λc)`.
///
/// A cut arc with `λc_a < u_a` goes to `r`, any other cut arc is paid for
/// through `y` at its capacity `u_a`.
pub fn flow_oracle(inst: &Instance, lambda: &Rational) -> Result<DualOracleEval, LagrangianError> {
    let net = inst.network().expect("flow instance");
    let c = inst.linear_costs().expect("linear costs");
    let m = inst.len();
    let mut g = CapacitatedNetwork::new(net.vertices.len(), net.source, net.sink);
    for a in 0..m {
        let u = int(net.capacity[a] as i64);
        let lc = lambda * int(c[a] as i64);
        g.add_arc(net.tail[a], net.head[a], u.min(lc));
    }
    let cut = max_flow(&g).cut;
    let mut r = vec![0; m];
    let mut cost = 0;
    let mut payment = Rational::zero();
    for &a in &cut.arcs {
        if lambda * int(c[a] as i64) < int(net.capacity[a] as i64) {
            r[a] = 1;
            cost += c[a];
        } else {
            payment += int(net.capacity[a] as i64);
        }
    }
    let out = eval(lambda, inst.budget, r, cost, payment);
    debug_assert_eq!(out.value, &cut.capacity - lambda * int(inst.budget as i64));
    Ok(out)
}

/// `LP(λ)` for b-stable sets: `max 1ᵀz` with `z_i + z_j ≤ b_e` and
/// `0 ≤ z ≤ λc`. Row duals are `y`, upper-bound duals are `r`.
pub fn bstable_lagrangian_lp(inst: &Instance, lambda: &Rational) -> LinearProgram {
    let graph = inst.bipartite().expect("bipartite instance");
    let c = inst.linear_costs().expect("linear costs");
    let n = inst.len();
    let mut lp = LinearProgram::new(Sense::Maximize, vec![Rational::one(); n]);
    for e in &graph.edges {
        lp.constrain_sparse(
            [(e.left, Rational::one()), (e.right, Rational::one())],
            Relation::Le,
            int(e.b as i64),
        );
    }
    for v in 0..n {
        lp.set_bounds(v, Some(Rational::zero()), Some(lambda * int(c[v] as i64)));
    }
    lp
}

pub fn bstable_oracle(inst: &Instance, lambda: &Rational) -> Result<DualOracleEval, LagrangianError> {
    let graph = inst.bipartite().expect("bipartite instance");
    let c = inst.linear_costs().expect("linear costs");
    let sol = integral_dual(&bstable_lagrangian_lp(inst, lambda))?;
    let r: Vec<u64> = sol
        .upper_duals
        .iter()
        .map(|v| to_i64(v).expect("integral dual") as u64)
        .collect();
    let cost = r.iter().zip(c).map(|(x, y)| x * y).sum();
    let payment = graph
        .edges
        .iter()
        .zip(&sol.row_duals)
        .fold(Rational::zero(), |acc, (e, y)| acc + y * int(e.b as i64));
    let out = eval(lambda, inst.budget, r, cost, payment);
    debug_assert_eq!(out.value, &sol.objective - lambda * int(inst.budget as i64));
    Ok(out)
}

/// The dual oracle matching the instance payload.
pub fn oracle_for(inst: &Instance) -> Oracle<'_> {
    match inst.payload {
        Payload::Matroid(_) => Box::new(move |l| matroid_oracle(inst, l)),
        Payload::Flow(_) => Box::new(move |l| flow_oracle(inst, l)),
        Payload::Bipartite(_) => Box::new(move |l| bstable_oracle(inst, l)),
    }
}

/// L(λ) through the instance's oracle.
pub fn lagrangian_value(inst: &Instance, lambda: &Rational) -> Result<Rational, LagrangianError> {
    Ok(oracle_for(inst)(lambda)?.value)
}

/// Runs the Lagrangian framework end to end with parameter `alpha`.
pub fn solve_framework(inst: &Instance, alpha: &Rational) -> Result<FrameworkRun, LagrangianError> {
    let nu = nu_star(inst)?;
    run_framework(inst, oracle_for(inst), nu, alpha)
}

#[cfg(test)]
mod tests;
