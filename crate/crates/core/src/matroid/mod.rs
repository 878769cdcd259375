//! Matroid independence, greedy weighted rank, and the brute-force minimiser
//! of `λ·cost(A) + r_w(N∖A)` that serves as the integral dual oracle for
//! matroid interdiction.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::instance::{set_of, MatroidSpec, MatroidVariant};
use crate::Rational;

/// Largest ground set the Lagrangian set minimiser will enumerate.
pub const LAGRANGIAN_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ground set of {n} elements exceeds the enumeration limit of {limit}")]
pub struct SizeGuard {
    pub n: usize,
    pub limit: usize,
}

/// Incremental independence test for the greedy algorithm.
struct Builder<'a> {
    spec: &'a MatroidSpec,
    size: usize,
    block_load: Vec<usize>,
    parent: Vec<usize>,
    mask: u64,
}

impl<'a> Builder<'a> {
    fn new(spec: &'a MatroidSpec) -> Self {
        let (block_load, parent) = match &spec.variant {
            MatroidVariant::Partition { capacities, .. } => (vec![0; capacities.len()], Vec::new()),
            MatroidVariant::Graphic { vertices, .. } => (Vec::new(), (0..vertices.len()).collect()),
            _ => (Vec::new(), Vec::new()),
        };
        Self {
            spec,
            size: 0,
            block_load,
            parent,
            mask: 0,
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Adds `e` if the current set stays independent.
    fn try_add(&mut self, e: usize) -> bool {
        let ok = match &self.spec.variant {
            MatroidVariant::Uniform { k } => self.size < *k,
            MatroidVariant::Partition {
                block_of,
                capacities,
            } => {
                let b = block_of[e];
                if self.block_load[b] < capacities[b] {
                    self.block_load[b] += 1;
                    true
                } else {
                    false
                }
            }
            MatroidVariant::Graphic { ends, .. } => {
                let (u, v) = ends[e];
                let (ru, rv) = (self.find(u), self.find(v));
                if ru == rv {
                    false
                } else {
                    self.parent[ru] = rv;
                    true
                }
            }
            MatroidVariant::Explicit { bases } => {
                let m = self.mask | 1 << e;
                bases.iter().any(|&b| m & !b == 0)
            }
        };
        if ok {
            self.size += 1;
            if e < 64 {
                self.mask |= 1 << e;
            }
        }
        ok
    }
}

pub fn is_independent(spec: &MatroidSpec, set: &[usize]) -> bool {
    let mut b = Builder::new(spec);
    set.iter().all(|&e| b.try_add(e))
}

/// Elements sorted by weight descending, ties by canonical index.
pub fn greedy_order(weights: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    order
}

/// r_w(S): weight of a heaviest independent subset of `set`, by greedy.
pub fn weighted_rank(spec: &MatroidSpec, set: &[usize], weights: &[u64]) -> u64 {
    let mut in_set = vec![false; weights.len()];
    for &e in set {
        in_set[e] = true;
    }
    rank_in_order(spec, &greedy_order(weights), |e| in_set[e], weights)
}

fn rank_in_order(
    spec: &MatroidSpec,
    order: &[usize],
    member: impl Fn(usize) -> bool,
    weights: &[u64],
) -> u64 {
    let mut b = Builder::new(spec);
    let mut total = 0;
    for &e in order {
        if weights[e] > 0 && member(e) && b.try_add(e) {
            total += weights[e];
        }
    }
    total
}

/// Unweighted rank of `set`.
pub fn rank(spec: &MatroidSpec, set: &[usize]) -> u64 {
    let mut b = Builder::new(spec);
    set.iter().filter(|&&e| b.try_add(e)).count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianSetResult {
    pub set: Vec<usize>,
    /// λ·cost(A) + r_w(N∖A).
    pub value: Rational,
    pub cost: u64,
    /// r_w(N∖A).
    pub rank: u64,
}

/// Minimises `λ·cost(A) + r_w(N∖A)` over every `A ⊆ N`.
///
/// Ties go to the smaller cost, then to the lexicographically smallest `A`.
pub fn lagrangian_min_set(
    spec: &MatroidSpec,
    weights: &[u64],
    cost: impl Fn(&[usize]) -> u64,
    lambda: &Rational,
) -> Result<LagrangianSetResult, SizeGuard> {
    let n = weights.len();
    if n > LAGRANGIAN_LIMIT {
        return Err(SizeGuard {
            n,
            limit: LAGRANGIAN_LIMIT,
        });
    }
    assert!(!lambda.is_negative(), "λ must be nonnegative");
    let order = greedy_order(weights);
    let (p, q) = (lambda.numer().clone(), lambda.denom().clone());

    // Compare q·value = p·cost + q·rank in integers.
    let mut best: Option<(BigInt, u64, Vec<usize>, u64)> = None;
    for mask in 0u64..1 << n {
        let set = set_of(mask);
        let c = cost(&set);
        let r = rank_in_order(spec, &order, |e| mask >> e & 1 == 0, weights);
        let key = &p * BigInt::from(c) + &q * BigInt::from(r);
        let better = match &best {
            None => true,
            Some((bk, bc, bs, _)) => (&key, c, &set) < (bk, *bc, bs),
        };
        if better {
            best = Some((key, c, set, r));
        }
    }
    let (key, cost, set, rank) = best.expect("at least the empty set");
    Ok(LagrangianSetResult {
        set,
        value: Rational::new(key, q),
        cost,
        rank,
    })
}
