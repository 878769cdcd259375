//! Exact interdiction of maximum stable sets in bipartite graphs (`b ≡ 1`).
//!
//! By König, `α(G[V∖R]) = |V| − |R| − ν(G[V∖R])`. An optimal `R` has the
//! form `V_ℓ ∖ V(M)` for a prefix `V_ℓ` of the vertices in cost order and a
//! matching `M`, and its value depends only on `(ℓ, β_I, β_J, γ)`. Each
//! quadruple is tested with a maximum-weight matching LP over a face of the
//! bipartite matching polytope.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::instance::{BipartiteGraph, Instance, ProblemKind, Side};
use crate::lagrangian::{psi, Branch, InterdictionResult, LagrangianError};
use crate::lp::{solve_to_vertex, LinearProgram, LpError, Relation, Sense};
use crate::scalar::{int, to_i64};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("exact algorithm needs a bipartite_stable instance, got {0}")]
    WrongKind(String),
    #[error("matching LP returned a fractional vertex")]
    Fractional,
    #[error("self-check failed: quadruple value {expected}, König value {actual}")]
    SelfCheck { expected: i64, actual: i64 },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
}

/// Vertices by cost ascending, ties by index; `V_ℓ` is the first `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostOrder {
    pub order: Vec<usize>,
    /// 1-based position of each vertex in `order`.
    pub position: Vec<usize>,
}

impl CostOrder {
    pub fn new(costs: &[u64]) -> Self {
        let mut order: Vec<usize> = (0..costs.len()).collect();
        order.sort_by_key(|&v| (costs[v], v));
        let mut position = vec![0; costs.len()];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k + 1;
        }
        Self { order, position }
    }

    pub fn in_prefix(&self, v: usize, ell: usize) -> bool {
        self.position[v] <= ell
    }

    pub fn prefix(&self, ell: usize) -> &[usize] {
        &self.order[..ell]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quadruple {
    pub ell: usize,
    pub beta_i: usize,
    pub beta_j: usize,
    pub gamma: usize,
}

impl Quadruple {
    /// `|V| − γ − ℓ + β_I + β_J`.
    pub fn value(&self, n: usize) -> i64 {
        n as i64 - self.gamma as i64 - self.ell as i64 + self.beta_i as i64 + self.beta_j as i64
    }
}

fn require_stable(inst: &Instance) -> Result<&BipartiteGraph, ExactError> {
    match (inst.kind, inst.bipartite()) {
        (ProblemKind::BipartiteStable, Some(g)) => Ok(g),
        _ => Err(ExactError::WrongKind(inst.kind.name().into())),
    }
}

/// The face LP: `max wᵀx` with `x(δ(v)) ≤ 1`, `x(δ(V_ℓ ∩ I)) = β_I`,
/// `x(δ(V_ℓ ∩ J)) = β_J`, `x(E) = γ`, where `w(ij) = c'(i) + c'(j)`.
pub fn face_lp(inst: &Instance, order: &CostOrder, q: &Quadruple) -> LinearProgram {
    let g = inst.bipartite().expect("bipartite instance");
    let c = inst.linear_costs().expect("linear costs");
    let weight = |v: usize| if order.in_prefix(v, q.ell) { c[v] } else { 0 };
    let objective = g
        .edges
        .iter()
        .map(|e| int((weight(e.left) + weight(e.right)) as i64))
        .collect();
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    for v in 0..g.side.len() {
        lp.constrain_sparse(g.incident(v).map(|k| (k, Rational::one())), Relation::Le, Rational::one());
    }
    let ones = |filter: &dyn Fn(usize) -> bool| -> Vec<(usize, Rational)> {
        (0..g.edges.len())
            .filter(|&k| filter(k))
            .map(|k| (k, Rational::one()))
            .collect()
    };
    let in_i = ones(&|k| order.in_prefix(g.edges[k].left, q.ell));
    let in_j = ones(&|k| order.in_prefix(g.edges[k].right, q.ell));
    lp.constrain_sparse(in_i, Relation::Eq, int(q.beta_i as i64));
    lp.constrain_sparse(in_j, Relation::Eq, int(q.beta_j as i64));
    lp.constrain_sparse(ones(&|_| true), Relation::Eq, int(q.gamma as i64));
    for k in 0..g.edges.len() {
        lp.set_bounds(k, Some(Rational::zero()), Some(Rational::one()));
    }
    lp
}

/// Largest `w'(M)` over matchings meeting the quadruple's three equalities.
pub fn face_optimum(inst: &Instance, order: &CostOrder, q: &Quadruple) -> Result<Option<u64>, ExactError> {
    match solve_to_vertex(&face_lp(inst, order, q)) {
        Ok(sol) => {
            if !sol.is_integral() {
                return Err(ExactError::Fractional);
            }
            Ok(Some(to_i64(&sol.objective).expect("integral weight") as u64))
        }
        Err(LpError::Infeasible) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedMatching {
    /// Edge indices, ascending.
    pub edges: Vec<usize>,
    /// w'(M).
    pub weight: u64,
}

/// A maximum-`w'` matching for `q`, or `None` when the face is empty.
///
/// Among maximisers, the matching covering the latest vertices in cost order
/// is chosen, by a second LP over the optimal face.
pub fn constrained_matching(
    inst: &Instance,
    order: &CostOrder,
    q: &Quadruple,
) -> Result<Option<ConstrainedMatching>, ExactError> {
    let Some(weight) = face_optimum(inst, order, q)? else {
        return Ok(None);
    };
    let g = inst.bipartite().expect("bipartite instance");
    let mut lp = face_lp(inst, order, q);
    let first = lp.objective.clone();
    lp.constrain(first, Relation::Eq, int(weight as i64));
    lp.objective = g
        .edges
        .iter()
        .map(|e| int((order.position[e.left] + order.position[e.right]) as i64))
        .collect();
    let sol = solve_to_vertex(&lp)?;
    if !sol.is_integral() {
        return Err(ExactError::Fractional);
    }
    let edges = (0..g.edges.len()).filter(|&k| sol.values[k].is_one()).collect();
    Ok(Some(ConstrainedMatching { edges, weight }))
}

/// `V_ℓ ∖ V(M)`, ascending.
pub fn removal_of(inst: &Instance, order: &CostOrder, ell: usize, matching: &[usize]) -> Vec<usize> {
    let g = inst.bipartite().expect("bipartite instance");
    let mut covered = vec![false; g.side.len()];
    for &k in matching {
        covered[g.edges[k].left] = true;
        covered[g.edges[k].right] = true;
    }
    let mut r: Vec<usize> = order.prefix(ell).iter().copied().filter(|&v| !covered[v]).collect();
    r.sort_unstable();
    r
}

/// Whether `c(V_ℓ ∖ V(M)) ≤ B`.
pub fn quadruple_feasible(inst: &Instance, order: &CostOrder, q: &Quadruple, matching: &[usize]) -> bool {
    inst.set_cost(&removal_of(inst, order, q.ell, matching)) <= inst.budget
}

/// Every quadruple that survives the counting bounds, in search order:
/// value ascending, then larger `ℓ`, then lexicographic.
pub fn quadruples(inst: &Instance, order: &CostOrder) -> Vec<Quadruple> {
    let g = inst.bipartite().expect("bipartite instance");
    let n = g.side.len();
    let nu = max_matching(g, &vec![false; n]);
    let mut out = Vec::new();
    for ell in 0..=n {
        let in_i = order.prefix(ell).iter().filter(|&&v| g.side[v] == Side::Left).count();
        let in_j = ell - in_i;
        for gamma in 0..=nu {
            for beta_i in 0..=in_i.min(gamma) {
                for beta_j in 0..=in_j.min(gamma) {
                    out.push(Quadruple {
                        ell,
                        beta_i,
                        beta_j,
                        gamma,
                    });
                }
            }
        }
    }
    let left = g.vertices_on(Side::Left).count();
    assert!(out.len() <= (n + 1) * (left + 2) * (n - left + 2) * (nu + 1));
    out.sort_by_key(|q| (q.value(n), std::cmp::Reverse(q.ell), q.beta_i, q.beta_j, q.gamma));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRun {
    pub result: InterdictionResult,
    pub quadruple: Quadruple,
    pub matching: Vec<usize>,
    /// Face LPs solved before the first feasible quadruple.
    pub lp_calls: u64,
}

/// Optimal interdiction set for `b ≡ 1`.
pub fn solve_exact(inst: &Instance) -> Result<ExactRun, ExactError> {
    let g = require_stable(inst)?;
    let c = inst.linear_costs().expect("linear costs");
    let n = g.side.len();
    let order = CostOrder::new(c);
    let mut lp_calls = 0;
    for q in quadruples(inst, &order) {
        lp_calls += 1;
        let Some(weight) = face_optimum(inst, &order, &q)? else {
            continue;
        };
        let prefix_cost: u64 = order.prefix(q.ell).iter().map(|&v| c[v]).sum();
        if prefix_cost - weight > inst.budget {
            continue;
        }
        let m = constrained_matching(inst, &order, &q)?.expect("face is nonempty");
        debug_assert!(quadruple_feasible(inst, &order, &q, &m.edges));
        let removal = removal_of(inst, &order, q.ell, &m.edges);
        let mut removed = vec![false; n];
        for &v in &removal {
            removed[v] = true;
        }
        let konig = (n - removal.len() - max_matching(g, &removed)) as i64;
        if konig != q.value(n) {
            return Err(ExactError::SelfCheck {
                expected: q.value(n),
                actual: konig,
            });
        }
        let value = psi(inst, &removal)?;
        debug_assert_eq!(value, int(konig));
        return Ok(ExactRun {
            result: InterdictionResult {
                budget_used: inst.set_cost(&removal),
                removal,
                value,
                branch: Branch::WithinBudget,
                lower_bound: None,
                lambda_star: None,
                alpha: None,
            },
            quadruple: q,
            matching: m.edges,
            lp_calls,
        });
    }
    unreachable!("the quadruple (0, 0, 0, 0) is always feasible")
}

/// Maximum matching size avoiding `removed`, by augmenting paths.
pub fn max_matching(g: &BipartiteGraph, removed: &[bool]) -> usize {
    let n = g.side.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &g.edges {
        if !removed[e.left] && !removed[e.right] {
            adj[e.left].push(e.right);
        }
    }
    let mut mate: Vec<Option<usize>> = vec![None; n];
    fn augment(v: usize, adj: &[Vec<usize>], mate: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &w in &adj[v] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if mate[w].map_or(true, |u| augment(u, adj, mate, seen)) {
                mate[w] = Some(v);
                return true;
            }
        }
        false
    }
    (0..n)
        .filter(|&v| g.side[v] == Side::Left)
        .filter(|&v| augment(v, &adj, &mut mate, &mut vec![false; n]))
        .count()
}
