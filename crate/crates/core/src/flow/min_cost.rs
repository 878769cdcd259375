use super::{CapacitatedNetwork, Residual};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct MinCostFlow<T> {
    pub flow: Vec<T>,
    pub cost: T,
}

/// Minimum-cost s-t flow of exactly `value`, respecting lower bounds.
///
/// Lower bounds are shifted out into vertex imbalances, which a super source
/// and super sink then absorb; successive shortest paths with vertex
/// potentials route the imbalances. Returns `None` when no feasible flow of
/// that value exists. The network must not contain a negative-cost cycle.
pub fn min_cost_flow<T: Field>(net: &CapacitatedNetwork<T>, value: &T) -> Option<MinCostFlow<T>> {
    let n = net.num_vertices;
    let (super_s, super_t) = (n, n + 1);
    if net.arcs.iter().any(|a| a.lower > a.capacity || a.lower.is_negative()) {
        return None;
    }

    // supply[v] > 0: v must emit that much more than it receives.
    let mut supply = vec![T::zero(); n];
    supply[net.source] += value;
    supply[net.sink] -= value;
    for a in &net.arcs {
        supply[a.tail] -= &a.lower;
        supply[a.head] += &a.lower;
    }

    let mut edges: Vec<(usize, usize, T)> = net
        .arcs
        .iter()
        .map(|a| {
            let mut room = a.capacity.clone();
            room -= &a.lower;
            (a.tail, a.head, room)
        })
        .collect();
    let mut cost: Vec<T> = net.arcs.iter().map(|a| a.cost.clone()).collect();
    let mut required = T::zero();
    for (v, s) in supply.iter().enumerate() {
        if s.is_positive() {
            edges.push((super_s, v, s.clone()));
            required += s;
        } else if s.is_negative() {
            edges.push((v, super_t, -s.clone()));
        } else {
            continue;
        }
        cost.push(T::zero());
    }

    let mut res = Residual::new(n + 2, edges.into_iter());
    let edge_cost = |e: usize| -> T {
        if e % 2 == 0 {
            cost[e / 2].clone()
        } else {
            -cost[e / 2].clone()
        }
    };

    let mut potential = bellman_ford(&res, super_s, &edge_cost);
    let mut routed = T::zero();
    while routed < required {
        let (dist, pred) = dijkstra(&res, super_s, &potential, &edge_cost);
        if dist[super_t].is_none() {
            return None;
        }
        for v in 0..n + 2 {
            if let (Some(d), Some(p)) = (&dist[v], &mut potential[v]) {
                *p += d;
            }
        }
        let mut path = Vec::new();
        let mut v = super_t;
        while v != super_s {
            let e = pred[v].expect("path edge");
            path.push(e);
            v = res.to[e ^ 1];
        }
        let mut amount = required.clone();
        amount -= &routed;
        for &e in &path {
            if res.residual[e] < amount {
                amount = res.residual[e].clone();
            }
        }
        for &e in &path {
            res.push(e, &amount);
        }
        routed += &amount;
    }

    let flow: Vec<T> = net
        .arcs
        .iter()
        .enumerate()
        .map(|(a, arc)| {
            let mut f = res.residual[2 * a + 1].clone();
            f += &arc.lower;
            f
        })
        .collect();
    let mut total = T::zero();
    for (a, f) in net.arcs.iter().zip(&flow) {
        let mut t = a.cost.clone();
        t *= f;
        total += &t;
    }
    Some(MinCostFlow { flow, cost: total })
}

/// Shortest distances from `from` over positive-residual edges; `None` for
/// unreachable vertices.
fn bellman_ford<T: Field>(
    res: &Residual<T>,
    from: usize,
    cost: &impl Fn(usize) -> T,
) -> Vec<Option<T>> {
    let n = res.adjacency.len();
    let mut dist: Vec<Option<T>> = vec![None; n];
    dist[from] = Some(T::zero());
    for _ in 0..n {
        let mut changed = false;
        for v in 0..n {
            let Some(dv) = dist[v].clone() else { continue };
            for &e in &res.adjacency[v] {
                if !res.residual[e].is_positive() {
                    continue;
                }
                let mut cand = dv.clone();
                cand += &cost(e);
                let w = res.to[e];
                if dist[w].as_ref().map_or(true, |d| cand < *d) {
                    dist[w] = Some(cand);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Dijkstra on reduced costs `cost(e) + π(tail) − π(head)`, which are
/// nonnegative on residual edges between reachable vertices.
#[allow(clippy::type_complexity)]
fn dijkstra<T: Field>(
    res: &Residual<T>,
    from: usize,
    potential: &[Option<T>],
    cost: &impl Fn(usize) -> T,
) -> (Vec<Option<T>>, Vec<Option<usize>>) {
    let n = res.adjacency.len();
    let mut dist: Vec<Option<T>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    dist[from] = Some(T::zero());
    loop {
        let next = (0..n)
            .filter(|&v| !done[v] && dist[v].is_some())
            .min_by(|&a, &b| dist[a].cmp(&dist[b]).then(a.cmp(&b)));
        let Some(v) = next else { break };
        done[v] = true;
        let dv = dist[v].clone().expect("settled vertex has a distance");
        for &e in &res.adjacency[v] {
            let w = res.to[e];
            if done[w] || !res.residual[e].is_positive() {
                continue;
            }
            let (Some(pv), Some(pw)) = (&potential[v], &potential[w]) else {
                continue;
            };
            let mut cand = dv.clone();
            cand += &cost(e);
            cand += pv;
            cand -= pw;
            if dist[w].as_ref().map_or(true, |d| cand < *d) {
                dist[w] = Some(cand);
                pred[w] = Some(e);
            }
        }
    }
    (dist, pred)
}
