//! Approximation scheme for b-stable set interdiction in bipartite graphs.
//!
//! The relaxed interdiction problem is a budgeted edge cover LP over an
//! auxiliary bipartite graph `G'`. A fractional optimum lies inside an edge
//! of the edge cover polytope; the under-budget endpoint is within `2·b_max`
//! of the LP value. Guessing the heaviest edges of an optimal cover shrinks
//! `b_max` enough for a `(1+ε)` guarantee.

mod hurkens;

pub use hurkens::hurkens_check;

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::instance::{Instance, Side};
use crate::lagrangian::{psi, Branch, InterdictionResult, LagrangianError};
use crate::lp::{edge_endpoints, solve_to_vertex, LinearProgram, LpError, Relation, Sense};
use crate::scalar::{int, to_i64, Field};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PtasError {
    #[error("problem kind {0} is not a bipartite b-stable problem")]
    WrongKind(String),
    #[error("ε must be positive")]
    NonPositiveEpsilon,
    #[error("optimal point is not in the interior of a polytope edge: {0}")]
    Degenerate(LpError),
    #[error("bound b(F²) ≤ bᵀy* + 2·b_max violated")]
    BoundViolated,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
}

/// `G'`: the input graph plus `w_I`, `w_J`, the edges `E_R` and `f`.
///
/// Vertices `0..n` are the original ones, `n` is `w_I` and `n + 1` is `w_J`.
/// Edges follow the LP variables: `E` first, then the `E_R` edge of each
/// vertex `v` at `|E| + v`, then `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryCoverGraph {
    pub num_vertices: usize,
    pub ends: Vec<(usize, usize)>,
    /// `b` extended by 0 outside `E`.
    pub b: Vec<u64>,
    /// `c(v)` on the `E_R` edge of `v`, 0 elsewhere.
    pub c: Vec<u64>,
    pub num_original_edges: usize,
}

impl AuxiliaryCoverGraph {
    pub fn new(inst: &Instance) -> Result<Self, PtasError> {
        let g = inst
            .bipartite()
            .ok_or_else(|| PtasError::WrongKind(inst.kind.name().into()))?;
        let costs = inst.linear_costs().expect("bipartite costs are linear");
        let n = g.side.len();
        let (w_i, w_j) = (n, n + 1);
        let mut ends: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.left, e.right)).collect();
        let mut b: Vec<u64> = g.edges.iter().map(|e| e.b).collect();
        let mut c = vec![0; g.edges.len()];
        for v in 0..n {
            ends.push(match g.side[v] {
                Side::Left => (v, w_j),
                Side::Right => (w_i, v),
            });
            b.push(0);
            c.push(costs[v]);
        }
        ends.push((w_i, w_j));
        b.push(0);
        c.push(0);
        Ok(Self {
            num_vertices: n + 2,
            ends,
            b,
            c,
            num_original_edges: g.edges.len(),
        })
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    /// Index of `f = {w_I, w_J}`.
    pub fn f(&self) -> usize {
        self.ends.len() - 1
    }

    pub fn is_cover(&self, edges: &[usize]) -> bool {
        let mut hit = vec![false; self.num_vertices];
        for &e in edges {
            let (u, v) = self.ends[e];
            hit[u] = true;
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn b_of(&self, edges: &[usize]) -> u64 {
        edges.iter().map(|&e| self.b[e]).sum()
    }

    pub fn c_of(&self, edges: &[usize]) -> u64 {
        edges.iter().map(|&e| self.c[e]).sum()
    }

    /// Original vertices joined to `w_I` or `w_J` by an edge of `edges`.
    pub fn interdicted(&self, edges: &[usize]) -> Vec<usize> {
        let m = self.num_original_edges;
        edges
            .iter()
            .filter(|&&e| e >= m && e < self.f())
            .map(|&e| e - m)
            .collect()
    }
}

/// `min bᵀy` over `P'` with `r_IJ = 1` and `cᵀr ≤ B`; the budget row is the
/// last constraint.
pub fn build_cover_lp(inst: &Instance) -> Result<(AuxiliaryCoverGraph, LinearProgram), PtasError> {
    let aux = AuxiliaryCoverGraph::new(inst)?;
    let objective = aux.b.iter().map(|&b| int(b as i64)).collect();
    let mut lp = LinearProgram::new(Sense::Minimize, objective);
    for v in 0..aux.num_vertices {
        let terms = (0..aux.num_edges())
            .filter(|&e| aux.ends[e].0 == v || aux.ends[e].1 == v)
            .map(|e| (e, Rational::one()));
        lp.constrain_sparse(terms, Relation::Ge, Rational::one());
    }
    for e in 0..aux.num_edges() {
        lp.set_bounds(e, Some(Rational::zero()), Some(Rational::one()));
    }
    lp.set_bounds(aux.f(), Some(Rational::one()), Some(Rational::one()));
    let budget_terms = (0..aux.num_edges())
        .filter(|&e| aux.c[e] > 0)
        .map(|e| (e, int(aux.c[e] as i64)));
    lp.constrain_sparse(budget_terms, Relation::Le, int(inst.budget as i64));
    Ok((aux, lp))
}

/// The two endpoints of the polytope edge through a fractional optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCoverPair {
    /// Over-budget cover.
    pub f1: Vec<usize>,
    /// Under-budget cover.
    pub f2: Vec<usize>,
    /// bᵀy* at the fractional optimum.
    pub lp_value: Rational,
    pub c1: u64,
    pub c2: u64,
    pub b1: u64,
    pub b2: u64,
    /// Largest `b` among edges not fixed by the residual.
    pub b_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub removal: Vec<usize>,
    pub value: Rational,
    pub budget_used: u64,
    pub lp_value: Rational,
    /// `None` when the optimum was integral.
    pub pair: Option<EdgeCoverPair>,
}

/// One LP solve plus edge extraction; `None` if the LP is infeasible.
pub fn solve_one(
    inst: &Instance,
    aux: &AuxiliaryCoverGraph,
    lp: &LinearProgram,
) -> Result<Option<Candidate>, PtasError> {
    let sol = match solve_to_vertex(lp) {
        Ok(s) => s,
        Err(LpError::Infeasible) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let m = aux.num_original_edges;
    let r_part = &sol.values[m..aux.f()];
    if r_part.iter().all(Field::is_integral) {
        let removal: Vec<usize> = (0..r_part.len()).filter(|&v| r_part[v].is_one()).collect();
        return Ok(Some(Candidate {
            value: psi(inst, &removal)?,
            budget_used: inst.set_cost(&removal),
            removal,
            lp_value: sol.objective,
            pair: None,
        }));
    }

    let mut polytope = lp.clone();
    polytope.constraints.pop();
    let ends = edge_endpoints(&polytope, &sol.values).map_err(PtasError::Degenerate)?;
    let support = |p: &[Rational]| -> Vec<usize> { (0..p.len()).filter(|&e| p[e].is_one()).collect() };
    let (mut f1, mut f2) = (support(&ends.first), support(&ends.second));
    if aux.c_of(&f1) < aux.c_of(&f2) {
        std::mem::swap(&mut f1, &mut f2);
    }
    let b_max = (0..m)
        .filter(|&e| lp.upper[e].as_ref().is_some_and(|u| u.is_one()) && !lp.lower[e].as_ref().is_some_and(|l| l.is_one()))
        .map(|e| aux.b[e])
        .max()
        .unwrap_or(0);
    let pair = EdgeCoverPair {
        c1: aux.c_of(&f1),
        c2: aux.c_of(&f2),
        b1: aux.b_of(&f1),
        b2: aux.b_of(&f2),
        lp_value: sol.objective.clone(),
        b_max,
        f1,
        f2,
    };
    if int(pair.b2 as i64) > &pair.lp_value + int(2 * b_max as i64) {
        return Err(PtasError::BoundViolated);
    }
    let removal = aux.interdicted(&pair.f2);
    Ok(Some(Candidate {
        value: psi(inst, &removal)?,
        budget_used: inst.set_cost(&removal),
        removal,
        lp_value: sol.objective,
        pair: Some(pair),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasRun {
    pub result: InterdictionResult,
    /// max(ε, 1/|E|).
    pub effective_epsilon: Rational,
    /// Number of residual problems solved.
    pub guesses: u64,
    /// Every candidate produced, in evaluation order.
    pub candidates: Vec<Candidate>,
}

/// `(1+ε)`-approximate interdiction within budget.
pub fn solve_ptas(inst: &Instance, epsilon: &Rational) -> Result<PtasRun, PtasError> {
    if !(epsilon > &Rational::zero()) {
        return Err(PtasError::NonPositiveEpsilon);
    }
    let (aux, lp) = build_cover_lp(inst)?;
    let m = aux.num_original_edges;
    let floor = Rational::new(1.into(), (m.max(1) as i64).into());
    let eps = epsilon.clone().max(floor);
    let finish = |best: Candidate, guesses, candidates| PtasRun {
        result: InterdictionResult {
            removal: best.removal,
            value: best.value,
            budget_used: best.budget_used,
            branch: Branch::WithinBudget,
            lower_bound: None,
            lambda_star: None,
            alpha: None,
        },
        effective_epsilon: eps.clone(),
        guesses,
        candidates,
    };

    if inst.budget >= inst.total_cost() {
        let all: Vec<usize> = (0..inst.len()).collect();
        let best = Candidate {
            value: psi(inst, &all)?,
            budget_used: inst.set_cost(&all),
            removal: all,
            lp_value: Rational::zero(),
            pair: None,
        };
        return Ok(finish(best, 0, Vec::new()));
    }

    let first = solve_one(inst, &aux, &lp)?.expect("removing nothing is always feasible");
    let b_max = aux.b[..m].iter().copied().max().unwrap_or(0);
    if first.pair.is_none() || int(2 * b_max as i64) <= &eps * &first.lp_value {
        return Ok(finish(first.clone(), 0, vec![first]));
    }

    // ⌈2/ε⌉ heaviest edges of an optimal cover, or all of them when the
    // cover is smaller.
    let k = to_i64(&(int(2) / &eps).ceil()).expect("ε ≥ 1/|E|") as usize;
    let k = k.min(m);
    let b = &aux.b;
    let mut candidates = vec![first];
    let mut guesses = 0;
    for size in 0..=k {
        for w in (0..m).combinations(size) {
            let mut residual = lp.clone();
            let min_b = w.iter().map(|&e| b[e]).min().unwrap_or(u64::MAX);
            for e in 0..m {
                if w.contains(&e) {
                    residual.set_bounds(e, Some(Rational::one()), Some(Rational::one()));
                } else if size < k || b[e] > min_b {
                    residual.set_bounds(e, Some(Rational::zero()), Some(Rational::zero()));
                }
            }
            guesses += 1;
            if let Some(c) = solve_one(inst, &aux, &residual)? {
                candidates.push(c);
            }
        }
    }
    let best = candidates
        .iter()
        .min_by(|x, y| {
            (&x.value, x.budget_used, &x.removal).cmp(&(&y.value, y.budget_used, &y.removal))
        })
        .expect("the unguessed candidate")
        .clone();
    Ok(finish(best, guesses, candidates))
}
