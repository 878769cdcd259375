//! Nominal optimum by plain enumeration, sharing no code with the solvers.

use crate::instance::{set_of, Instance, MatroidSpec, MatroidVariant, Payload};
use crate::scalar::int;
use crate::Rational;

/// Nominal value with `removal` deleted, by exhaustive search.
///
/// Matroids: heaviest independent subset of `N∖R`. Flows: cheapest s-t cut
/// with removed arcs at capacity 0. b-stable sets: cheapest `b`-weighted
/// edge cover of the surviving vertices over all edge subsets.
pub fn naive_nominal(inst: &Instance, removal: &[usize]) -> Rational {
    let n = inst.len();
    let alive: Vec<bool> = (0..n).map(|e| !removal.contains(&e)).collect();
    let best = match &inst.payload {
        Payload::Matroid(spec) => (0u64..1 << n)
            .map(set_of)
            .filter(|s| s.iter().all(|&e| alive[e]) && independent(spec, s))
            .map(|s| s.iter().map(|&e| spec.weights[e]).sum::<u64>())
            .max()
            .unwrap_or(0),
        Payload::Flow(net) => {
            let nv = net.vertices.len();
            (0u64..1 << nv)
                .filter(|m| m >> net.source & 1 == 1 && m >> net.sink & 1 == 0)
                .map(|m| {
                    (0..n)
                        .filter(|&a| alive[a] && m >> net.tail[a] & 1 == 1 && m >> net.head[a] & 1 == 0)
                        .map(|a| net.capacity[a])
                        .sum::<u64>()
                })
                .min()
                .unwrap_or(0)
        }
        Payload::Bipartite(g) => {
            let m = g.edges.len();
            (0u64..1 << m)
                .filter(|&mask| {
                    (0..n).all(|v| {
                        !alive[v]
                            || (0..m).any(|k| {
                                mask >> k & 1 == 1 && (g.edges[k].left == v || g.edges[k].right == v)
                            })
                    })
                })
                .map(|mask| set_of(mask).iter().map(|&k| g.edges[k].b).sum::<u64>())
                .min()
                .expect("all edges cover every vertex")
        }
    };
    int(best as i64)
}

fn independent(spec: &MatroidSpec, set: &[usize]) -> bool {
    match &spec.variant {
        MatroidVariant::Uniform { k } => set.len() <= *k,
        MatroidVariant::Partition {
            block_of,
            capacities,
        } => (0..capacities.len())
            .all(|b| set.iter().filter(|&&e| block_of[e] == b).count() <= capacities[b]),
        MatroidVariant::Graphic { vertices, ends } => {
            // Acyclic iff no edge joins two vertices already connected by
            // earlier edges; connectivity by repeated relabelling.
            let mut label: Vec<usize> = (0..vertices.len()).collect();
            for &e in set {
                let (a, b) = ends[e];
                let (la, lb) = (label[a], label[b]);
                if la == lb {
                    return false;
                }
                for l in label.iter_mut() {
                    if *l == lb {
                        *l = la;
                    }
                }
            }
            true
        }
        MatroidVariant::Explicit { bases } => {
            let m: u64 = set.iter().map(|&e| 1u64 << e).sum();
            bases.iter().any(|&b| m & !b == 0)
        }
    }
}
