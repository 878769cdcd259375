use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{
    set_of, validate, BipartiteEdge, BipartiteGraph, Costs, FlowNetwork, Instance, MatroidSpec,
    MatroidVariant, Payload, ProblemKind, Side, SubmodularCost, EXPLICIT_MATROID_LIMIT,
};
use crate::matroid::{is_independent, rank};

/// Deterministic random instance of `kind` with `size` ground elements.
///
/// Costs, capacities, weights and `b` lie in `[1, 5]`; the budget lies in
/// `[1, c(N) − 1]` whenever `c(N) ≥ 2`. `size` counts matroid elements,
/// arcs, or bipartite vertices.
pub fn generate(kind: ProblemKind, size: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (kind as u64).wrapping_mul(0x9e37_79b9));
    let size = size.max(if kind.is_bipartite() { 2 } else { 1 });
    let (ground, payload) = match kind {
        k if k.is_matroid() => {
            let ground = ids("e", size);
            let spec = random_matroid(&mut rng, size, k == ProblemKind::MatroidCardinality);
            (ground, Payload::Matroid(spec))
        }
        ProblemKind::MaxFlow => (ids("a", size), Payload::Flow(random_network(&mut rng, size))),
        _ => {
            let (ground, graph) =
                random_bipartite(&mut rng, size, kind == ProblemKind::BipartiteStable);
            (ground, Payload::Bipartite(graph))
        }
    };
    let costs = if kind == ProblemKind::MatroidSubmodularCost {
        Costs::Submodular(random_submodular(&mut rng, size))
    } else {
        Costs::Linear((0..size).map(|_| rng.gen_range(1..=5)).collect())
    };
    let mut inst = Instance {
        kind,
        ground,
        costs,
        budget: 1,
        payload,
    };
    let total = inst.total_cost();
    if total >= 2 {
        inst.budget = rng.gen_range(1..total);
    }
    debug_assert!(validate(&inst).is_empty(), "{:?}", validate(&inst));
    inst
}

/// Zero-padded ids so that lexicographic order is index order.
fn ids(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i:02}")).collect()
}

fn random_matroid(rng: &mut ChaCha8Rng, n: usize, unit: bool) -> MatroidSpec {
    let weights = (0..n)
        .map(|_| if unit { 1 } else { rng.gen_range(1..=5) })
        .collect();
    let choice = if n <= EXPLICIT_MATROID_LIMIT { rng.gen_range(0..4) } else { rng.gen_range(0..3) };
    let graphic = |rng: &mut ChaCha8Rng| {
        let nv = rng.gen_range(2..=(n + 1).min(6));
        MatroidVariant::Graphic {
            vertices: ids("v", nv),
            ends: (0..n)
                .map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv)))
                .collect(),
        }
    };
    let variant = match choice {
        0 => MatroidVariant::Uniform {
            k: rng.gen_range(1..=n),
        },
        1 => {
            let blocks = rng.gen_range(1..=3.min(n));
            MatroidVariant::Partition {
                block_of: (0..n).map(|_| rng.gen_range(0..blocks)).collect(),
                capacities: (0..blocks).map(|_| rng.gen_range(1..=2)).collect(),
            }
        }
        2 => graphic(rng),
        _ => {
            let inner = MatroidSpec {
                variant: graphic(rng),
                weights: vec![1; n],
            };
            let all: Vec<usize> = (0..n).collect();
            let r = rank(&inner, &all) as u32;
            let bases = (0u64..1 << n)
                .filter(|&m| m.count_ones() == r && is_independent(&inner, &set_of(m)))
                .collect();
            MatroidVariant::Explicit { bases }
        }
    };
    MatroidSpec { variant, weights }
}

/// Coverage costs, optionally tabulated together with a truncated
/// cardinality term `min(|A|, cap)`.
fn random_submodular(rng: &mut ChaCha8Rng, n: usize) -> SubmodularCost {
    let items = rng.gen_range(1..=n.max(2));
    let weights: Vec<u64> = (0..items).map(|_| rng.gen_range(1..=2)).collect();
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut c: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..items)).collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let coverage = SubmodularCost::Coverage {
        universe: ids("u", items),
        weights,
        covers,
    };
    if n > 12 || rng.gen_bool(0.5) {
        return coverage;
    }
    let cap = rng.gen_range(1..=n as u64);
    let table = (0u64..1 << n)
        .map(|m| coverage.value(&set_of(m)) + (m.count_ones() as u64).min(cap))
        .collect();
    SubmodularCost::Explicit(table)
}

fn random_network(rng: &mut ChaCha8Rng, m: usize) -> FlowNetwork {
    let inner = rng.gen_range(1..=3.min(m).max(1));
    let nv = inner + 2;
    let (source, sink) = (0, 1);
    let mut tail = Vec::with_capacity(m);
    let mut head = Vec::with_capacity(m);
    for a in 0..m {
        let t = if a == 0 || rng.gen_bool(0.3) {
            source
        } else {
            rng.gen_range(0..nv)
        };
        let h = loop {
            let h = if rng.gen_bool(0.3) { sink } else { rng.gen_range(1..nv) };
            if h != t {
                break h;
            }
        };
        tail.push(t);
        head.push(h);
    }
    let mut vertices = vec!["s".to_string(), "t".to_string()];
    vertices.extend(ids("v", inner));
    FlowNetwork {
        vertices,
        tail,
        head,
        capacity: (0..m).map(|_| rng.gen_range(1..=5)).collect(),
        source,
        sink,
    }
}

fn random_bipartite(rng: &mut ChaCha8Rng, n: usize, unit: bool) -> (Vec<String>, BipartiteGraph) {
    let left = rng.gen_range(1..n);
    let right = n - left;
    let mut ground = ids("i", left);
    ground.extend(ids("j", right));
    let side = (0..n)
        .map(|v| if v < left { Side::Left } else { Side::Right })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..left {
        pairs.push((i, left + rng.gen_range(0..right)));
    }
    for j in left..n {
        pairs.push((rng.gen_range(0..left), j));
    }
    let mut all: Vec<(usize, usize)> = (0..left).flat_map(|i| (left..n).map(move |j| (i, j))).collect();
    all.shuffle(rng);
    let extra = rng.gen_range(0..=n);
    pairs.extend(all.into_iter().take(extra));
    pairs.sort_unstable();
    pairs.dedup();
    let edges = pairs
        .into_iter()
        .map(|(l, r)| BipartiteEdge {
            left: l,
            right: r,
            b: if unit { 1 } else { rng.gen_range(1..=5) },
        })
        .collect();
    (ground, BipartiteGraph { side, edges })
}
