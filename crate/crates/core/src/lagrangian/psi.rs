//! Nominal values: φ(R) by the combinatorial solvers and ψ(r) straight from
//! its LP definition.

use num_traits::{One, Signed, Zero};

use super::LagrangianError;
use crate::flow::{max_flow, min_cost_flow, CapacitatedNetwork};
use crate::instance::{BipartiteGraph, FlowNetwork, Instance, MatroidSpec, Payload, Side};
use crate::lp::{solve_to_vertex, LinearProgram, LpError, Relation, Sense};
use crate::matroid::weighted_rank;
use crate::scalar::int;
use crate::Rational;

/// Support of `r ∧ 1`.
pub fn clip(r: &[u64]) -> Vec<usize> {
    (0..r.len()).filter(|&e| r[e] >= 1).collect()
}

/// Nominal optimum with the elements of `removal` forced to zero.
pub fn psi(inst: &Instance, removal: &[usize]) -> Result<Rational, LagrangianError> {
    let mut removed = vec![false; inst.len()];
    for &e in removal {
        removed[e] = true;
    }
    Ok(match &inst.payload {
        Payload::Matroid(spec) => {
            let rest: Vec<usize> = (0..inst.len()).filter(|&e| !removed[e]).collect();
            int(weighted_rank(spec, &rest, &spec.weights) as i64)
        }
        Payload::Flow(net) => {
            let mut g = CapacitatedNetwork::new(net.vertices.len(), net.source, net.sink);
            for a in 0..inst.len() {
                let u = if removed[a] { 0 } else { net.capacity[a] };
                g.add_arc(net.tail[a], net.head[a], int(u as i64));
            }
            max_flow(&g).value
        }
        Payload::Bipartite(graph) => edge_cover(graph, &removed),
    })
}

/// Cheapest `b`-weighted edge cover of the vertices outside `removed`.
///
/// By LP duality and total unimodularity this equals the largest b-stable
/// value with removed vertices fixed to zero. Computed as a min-cost
/// circulation with unit lower bounds on the covered vertices.
fn edge_cover(graph: &BipartiteGraph, removed: &[bool]) -> Rational {
    let n = graph.side.len();
    let (s, t) = (n, n + 1);
    let room = int(graph.edges.len() as i64 + 1);
    let mut net = CapacitatedNetwork::new(n + 2, s, t);
    for v in 0..n {
        let lower = if removed[v] { Rational::zero() } else { Rational::one() };
        match graph.side[v] {
            Side::Left => net.add_arc_with(s, v, room.clone(), lower, Rational::zero()),
            Side::Right => net.add_arc_with(v, t, room.clone(), lower, Rational::zero()),
        };
    }
    for e in &graph.edges {
        net.add_arc_with(e.left, e.right, room.clone(), Rational::zero(), int(e.b as i64));
    }
    net.add_arc(t, s, int(n as i64 * (graph.edges.len() as i64 + 1)));
    min_cost_flow(&net, &Rational::zero())
        .expect("every vertex has an incident edge")
        .cost
}

/// ψ(r) = max{(w − r)ᵀx : x in the nominal polytope}, from the definition.
///
/// Matroids use Edmonds' greedy over the polymatroid `P_w` with objective
/// `1 − r`; flows and b-stable sets solve the explicit LP.
pub fn psi_vector(inst: &Instance, r: &[u64]) -> Result<Rational, LagrangianError> {
    let coef: Vec<Rational> = r.iter().map(|&v| Rational::one() - int(v as i64)).collect();
    match &inst.payload {
        Payload::Matroid(spec) => Ok(polymatroid_greedy(spec, &coef)),
        Payload::Flow(net) => Ok(flow_lp(net, r)?),
        Payload::Bipartite(graph) => Ok(bstable_lp(graph, &coef)?),
    }
}

fn polymatroid_greedy(spec: &MatroidSpec, coef: &[Rational]) -> Rational {
    let mut order: Vec<usize> = (0..coef.len()).filter(|&e| coef[e].is_positive()).collect();
    order.sort_by(|&a, &b| coef[b].cmp(&coef[a]).then(a.cmp(&b)));
    let mut prefix = Vec::new();
    let mut prev = 0;
    let mut total = Rational::zero();
    for e in order {
        prefix.push(e);
        let now = weighted_rank(spec, &prefix, &spec.weights);
        total += &coef[e] * int((now - prev) as i64);
        prev = now;
    }
    total
}

fn flow_lp(net: &FlowNetwork, r: &[u64]) -> Result<Rational, LpError> {
    let m = net.tail.len();
    let objective = (0..m)
        .map(|a| {
            let w = if net.tail[a] == net.source { 1 } else { 0 };
            int(w - r[a] as i64)
        })
        .collect();
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    for a in 0..m {
        lp.set_bounds(a, Some(Rational::zero()), Some(int(net.capacity[a] as i64)));
    }
    for v in 0..net.vertices.len() {
        if v == net.source || v == net.sink {
            continue;
        }
        let terms = (0..m).filter_map(|a| {
            if net.head[a] == v && net.tail[a] != v {
                Some((a, Rational::one()))
            } else if net.tail[a] == v && net.head[a] != v {
                Some((a, -Rational::one()))
            } else {
                None
            }
        });
        lp.constrain_sparse(terms, Relation::Eq, Rational::zero());
    }
    Ok(solve_to_vertex(&lp)?.objective)
}

fn bstable_lp(graph: &BipartiteGraph, coef: &[Rational]) -> Result<Rational, LpError> {
    let mut lp = LinearProgram::new(Sense::Maximize, coef.to_vec());
    for e in &graph.edges {
        lp.constrain_sparse(
            [(e.left, Rational::one()), (e.right, Rational::one())],
            Relation::Le,
            int(e.b as i64),
        );
    }
    Ok(solve_to_vertex(&lp)?.objective)
}
