use std::fmt;

use thiserror::Error;

use super::{
    set_of, Costs, Instance, MatroidVariant, Payload, ProblemKind, Side, SubmodularCost,
    EXPLICIT_MATROID_LIMIT, EXPLICIT_SUBMODULAR_LIMIT,
};

/// One violated invariant, as a human-readable message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub message: String,
    /// The instance exceeds a fixed enumeration limit rather than being
    /// malformed.
    pub size_limit: bool,
}

const SIZE_LIMIT_PREFIX: &str = "size limit: ";

impl Violation {
    pub fn new(message: String) -> Self {
        Self {
            size_limit: message.starts_with(SIZE_LIMIT_PREFIX),
            message,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exhaustive check needs at most {limit} elements, got {n}")]
pub struct TooLarge {
    pub n: usize,
    pub limit: usize,
}

/// Every violated invariant of `inst`; empty means valid.
pub fn validate(inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut fail = |msg: &str| out.push(Violation::new(msg.to_string()));
    let n = inst.len();

    if inst.budget < 1 {
        fail("budget must be at least 1");
    }
    if inst.ground.windows(2).any(|w| w[0] >= w[1]) {
        fail("ground set must be sorted with unique ids");
    }

    match (&inst.costs, inst.kind) {
        (Costs::Linear(c), kind) if kind != ProblemKind::MatroidSubmodularCost => {
            if c.len() != n {
                fail("cost vector length differs from the ground set");
            } else if c.iter().any(|&x| x == 0) {
                fail("costs must be positive integers");
            }
        }
        (Costs::Submodular(k), ProblemKind::MatroidSubmodularCost) => {
            validate_submodular(k, n, &mut fail)
        }
        (Costs::Linear(_), _) => fail("matroid_submodular_cost needs submodular costs"),
        (Costs::Submodular(_), _) => fail("submodular costs need problem matroid_submodular_cost"),
    }

    match (&inst.payload, inst.kind) {
        (Payload::Matroid(m), kind) if kind.is_matroid() => {
            if m.weights.len() != n {
                fail("weight vector length differs from the ground set");
            } else if kind == ProblemKind::MatroidCardinality && m.weights.iter().any(|&w| w != 1)
            {
                fail("matroid_cardinality needs unit weights");
            }
            validate_matroid(&m.variant, n, &mut fail);
        }
        (Payload::Flow(net), ProblemKind::MaxFlow) => {
            let nv = net.vertices.len();
            if net.tail.len() != n || net.head.len() != n || net.capacity.len() != n {
                fail("arc vectors differ in length from the ground set");
            } else {
                if net.tail.iter().chain(&net.head).any(|&v| v >= nv) {
                    fail("arc references an unknown vertex");
                }
                if net.capacity.iter().any(|&u| u == 0) {
                    fail("capacities must be positive integers");
                }
                if net.head.contains(&net.source) {
                    fail("arc enters source");
                }
                if (0..n).any(|a| net.tail[a] == net.head[a]) {
                    fail("arc is a loop");
                }
            }
            if net.source >= nv || net.sink >= nv {
                fail("source or sink is not a vertex");
            }
            if net.source == net.sink {
                fail("source equals sink");
            }
            if has_duplicates(&net.vertices) {
                fail("duplicate vertex id");
            }
        }
        (Payload::Bipartite(g), kind) if kind.is_bipartite() => {
            if g.side.len() != n {
                fail("side vector length differs from the ground set");
                return out;
            }
            let mut degree = vec![0usize; n];
            for e in &g.edges {
                if e.left >= n || e.right >= n {
                    fail("edge references an unknown vertex");
                    continue;
                }
                if g.side[e.left] != Side::Left || g.side[e.right] != Side::Right {
                    fail("edge does not join the left part to the right part");
                }
                degree[e.left] += 1;
                degree[e.right] += 1;
                if e.b == 0 {
                    fail("edge capacities b must be positive integers");
                }
                if kind == ProblemKind::BipartiteStable && e.b != 1 {
                    fail("bipartite_stable needs b = 1 on every edge");
                }
            }
            if degree.contains(&0) {
                fail("unbounded nominal problem: isolated vertex");
            }
            if g.edges.windows(2).any(|w| (w[0].left, w[0].right) >= (w[1].left, w[1].right)) {
                fail("edges must be sorted without duplicates");
            }
        }
        _ => fail("payload does not match the problem kind"),
    }
    out
}

fn validate_submodular(k: &SubmodularCost, n: usize, fail: &mut impl FnMut(&str)) {
    match k {
        SubmodularCost::Linear(c) => {
            if c.len() != n {
                fail("cost vector length differs from the ground set");
            } else if c.contains(&0) {
                fail("costs must be positive integers");
            }
            return;
        }
        SubmodularCost::Explicit(values) => {
            if n > EXPLICIT_SUBMODULAR_LIMIT {
                fail("size limit: explicit cost tables need at most 20 elements");
                return;
            }
            if values.len() != 1 << n {
                fail("explicit cost table must list every subset");
                return;
            }
        }
        SubmodularCost::Coverage {
            universe,
            weights,
            covers,
        } => {
            if weights.len() != universe.len() || covers.len() != n {
                fail("coverage vectors differ in length");
                return;
            }
            if covers.iter().flatten().any(|&u| u >= universe.len()) {
                fail("coverage references an unknown universe item");
                return;
            }
            if n > EXPLICIT_SUBMODULAR_LIMIT {
                // Coverage functions are monotone and submodular by construction.
                if (0..n).any(|e| k.value(&[e]) == 0) {
                    fail("every element must have positive cost");
                }
                return;
            }
        }
    }
    let table = value_table(k, n);
    if table[0] != 0 {
        fail("cost of the empty set must be 0");
    }
    if (0..n).any(|e| table[1 << e] == 0) {
        fail("every element must have positive cost");
    }
    let monotone = (0..table.len()).all(|m| {
        (0..n).all(|e| m >> e & 1 == 1 || table[m | 1 << e] >= table[m])
    });
    if !monotone {
        fail("not monotone");
    }
    if !locally_submodular(&table, n) {
        fail("not submodular");
    }
}

fn validate_matroid(variant: &MatroidVariant, n: usize, fail: &mut impl FnMut(&str)) {
    match variant {
        MatroidVariant::Uniform { k } => {
            if *k > n {
                fail("uniform matroid needs k ≤ n");
            }
        }
        MatroidVariant::Partition {
            block_of,
            capacities,
        } => {
            if block_of.len() != n || block_of.iter().any(|&b| b >= capacities.len()) {
                fail("partition blocks must cover the ground set disjointly");
            }
        }
        MatroidVariant::Graphic { vertices, ends } => {
            if ends.len() != n
                || ends
                    .iter()
                    .any(|&(u, v)| u >= vertices.len() || v >= vertices.len())
            {
                fail("graphic edge references an unknown vertex");
            }
            if has_duplicates(vertices) {
                fail("duplicate vertex id");
            }
        }
        MatroidVariant::Explicit { bases } => {
            if n > EXPLICIT_MATROID_LIMIT {
                fail("size limit: explicit matroids need at most 16 elements");
                return;
            }
            if bases.is_empty() {
                fail("explicit matroid needs at least one independent set");
                return;
            }
            if bases.iter().any(|&b| b >> n != 0) {
                fail("explicit matroid references an unknown element");
                return;
            }
            if !explicit_is_matroid(bases, n) {
                fail("explicit family violates the matroid exchange axiom");
            }
        }
    }
}

/// Whether the subset-closure of `bases` is a matroid.
///
/// A down-closed family is a matroid exactly when its cardinality rank
/// function is submodular, which is checked locally.
pub(crate) fn explicit_is_matroid(bases: &[u64], n: usize) -> bool {
    let size = 1usize << n;
    let mut rank = vec![0u64; size];
    for m in 0..size {
        let m64 = m as u64;
        if bases.iter().any(|&b| m64 & !b == 0) {
            rank[m] = m64.count_ones() as u64;
        } else {
            rank[m] = set_of(m64).iter().map(|&e| rank[m & !(1 << e)]).max().unwrap_or(0);
        }
    }
    locally_submodular(&rank, n)
}

/// f(A+e) + f(A+f) ≥ f(A+e+f) + f(A) for all A and distinct e, f ∉ A, which
/// is equivalent to submodularity.
fn locally_submodular(table: &[u64], n: usize) -> bool {
    (0..table.len()).all(|a| {
        (0..n).filter(|&e| a >> e & 1 == 0).all(|e| {
            (e + 1..n).filter(|&f| a >> f & 1 == 0).all(|f| {
                table[a | 1 << e] + table[a | 1 << f] >= table[a | 1 << e | 1 << f] + table[a]
            })
        })
    })
}

fn value_table(k: &SubmodularCost, n: usize) -> Vec<u64> {
    match k {
        SubmodularCost::Explicit(values) => values.clone(),
        _ => (0..1u64 << n).map(|m| k.value(&set_of(m))).collect(),
    }
}

fn has_duplicates(ids: &[String]) -> bool {
    let mut sorted: Vec<&String> = ids.iter().collect();
    sorted.sort();
    sorted.windows(2).any(|w| w[0] == w[1])
}

/// Exhaustive submodularity check of κ over a ground set of size `n`.
pub fn check_submodular(k: &SubmodularCost, n: usize) -> Result<bool, TooLarge> {
    if let SubmodularCost::Linear(_) = k {
        return Ok(true);
    }
    if n > EXPLICIT_SUBMODULAR_LIMIT {
        return Err(TooLarge {
            n,
            limit: EXPLICIT_SUBMODULAR_LIMIT,
        });
    }
    Ok(locally_submodular(&value_table(k, n), n))
}
