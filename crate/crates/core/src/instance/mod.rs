//! Instance data model shared by every solver.
//!
//! Elements of the ground set are addressed by their index in
//! [`Instance::ground`], which is kept sorted lexicographically by identifier.
//! That canonical order is the tie-breaking order everywhere downstream.

mod format;
mod validate;

pub use format::{
    parse_instance, serialize_instance, InstanceDoc, CAPACITY_LEFT, CAPACITY_RIGHT,
};
pub use validate::{check_submodular, validate, TooLarge, Violation};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest ground set for explicit matroids.
pub const EXPLICIT_MATROID_LIMIT: usize = 16;
/// Largest ground set for explicit submodular tables and exhaustive checks.
pub const EXPLICIT_SUBMODULAR_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    MatroidCardinality,
    MatroidWeighted,
    MatroidSubmodularCost,
    MaxFlow,
    BipartiteBstable,
    BipartiteStable,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::MatroidCardinality,
        ProblemKind::MatroidWeighted,
        ProblemKind::MatroidSubmodularCost,
        ProblemKind::MaxFlow,
        ProblemKind::BipartiteBstable,
        ProblemKind::BipartiteStable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::MatroidCardinality => "matroid_cardinality",
            ProblemKind::MatroidWeighted => "matroid_weighted",
            ProblemKind::MatroidSubmodularCost => "matroid_submodular_cost",
            ProblemKind::MaxFlow => "max_flow",
            ProblemKind::BipartiteBstable => "bipartite_bstable",
            ProblemKind::BipartiteStable => "bipartite_stable",
        }
    }

    pub fn is_matroid(self) -> bool {
        matches!(
            self,
            ProblemKind::MatroidCardinality
                | ProblemKind::MatroidWeighted
                | ProblemKind::MatroidSubmodularCost
        )
    }

    pub fn is_bipartite(self) -> bool {
        matches!(self, ProblemKind::BipartiteBstable | ProblemKind::BipartiteStable)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub kind: ProblemKind,
    pub ground: Vec<String>,
    pub costs: Costs,
    pub budget: u64,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Costs {
    Linear(Vec<u64>),
    Submodular(SubmodularCost),
}

/// A monotone submodular interdiction cost κ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubmodularCost {
    Linear(Vec<u64>),
    /// `values[mask]` is κ of the subset whose bit `i` marks element `i`.
    Explicit(Vec<u64>),
    /// κ(A) = total weight of the universe items covered by A.
    Coverage {
        universe: Vec<String>,
        weights: Vec<u64>,
        covers: Vec<Vec<usize>>,
    },
}

impl SubmodularCost {
    pub fn value(&self, set: &[usize]) -> u64 {
        match self {
            SubmodularCost::Linear(c) => set.iter().map(|&e| c[e]).sum(),
            SubmodularCost::Explicit(values) => values[mask_of(set) as usize],
            SubmodularCost::Coverage { weights, covers, .. } => {
                let mut hit = vec![false; weights.len()];
                for &e in set {
                    for &u in &covers[e] {
                        hit[u] = true;
                    }
                }
                hit.iter().zip(weights).filter(|(h, _)| **h).map(|(_, w)| w).sum()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Matroid(MatroidSpec),
    Flow(FlowNetwork),
    Bipartite(BipartiteGraph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidSpec {
    pub variant: MatroidVariant,
    pub weights: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidVariant {
    Uniform {
        k: usize,
    },
    Partition {
        /// Block index of each element.
        block_of: Vec<usize>,
        capacities: Vec<usize>,
    },
    Graphic {
        vertices: Vec<String>,
        /// Endpoints of each element (edge).
        ends: Vec<(usize, usize)>,
    },
    /// Maximal independent sets as element bitmasks.
    Explicit {
        bases: Vec<u64>,
    },
}

/// A directed network whose arcs are the ground set, in ground order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub vertices: Vec<String>,
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub capacity: Vec<u64>,
    pub source: usize,
    pub sink: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteEdge {
    pub left: usize,
    pub right: usize,
    pub b: u64,
}

/// A bipartite graph whose vertices are the ground set, in ground order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub side: Vec<Side>,
    pub edges: Vec<BipartiteEdge>,
}

impl BipartiteGraph {
    pub fn vertices_on(&self, side: Side) -> impl Iterator<Item = usize> + '_ {
        self.side
            .iter()
            .enumerate()
            .filter(move |(_, s)| **s == side)
            .map(|(v, _)| v)
    }

    pub fn b_max(&self) -> u64 {
        self.edges.iter().map(|e| e.b).max().unwrap_or(0)
    }

    pub fn incident(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.left == v || e.right == v)
            .map(|(k, _)| k)
    }
}

impl Instance {
    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ground.binary_search_by(|g| g.as_str().cmp(id)).ok()
    }

    /// Interdiction cost of a set of element indices.
    pub fn set_cost(&self, set: &[usize]) -> u64 {
        match &self.costs {
            Costs::Linear(c) => set.iter().map(|&e| c[e]).sum(),
            Costs::Submodular(k) => k.value(set),
        }
    }

    /// c(N), or κ(N) for submodular costs.
    pub fn total_cost(&self) -> u64 {
        let all: Vec<usize> = (0..self.len()).collect();
        self.set_cost(&all)
    }

    pub fn linear_costs(&self) -> Option<&[u64]> {
        match &self.costs {
            Costs::Linear(c) | Costs::Submodular(SubmodularCost::Linear(c)) => Some(c),
            Costs::Submodular(_) => None,
        }
    }

    pub fn matroid(&self) -> Option<&MatroidSpec> {
        match &self.payload {
            Payload::Matroid(m) => Some(m),
            _ => None,
        }
    }

    pub fn network(&self) -> Option<&FlowNetwork> {
        match &self.payload {
            Payload::Flow(f) => Some(f),
            _ => None,
        }
    }

    pub fn bipartite(&self) -> Option<&BipartiteGraph> {
        match &self.payload {
            Payload::Bipartite(g) => Some(g),
            _ => None,
        }
    }

    pub fn ids(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&e| self.ground[e].clone()).collect()
    }
}

/// Bitmask of a set of element indices (indices below 64).
pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &e| m | (1u64 << e))
}

/// Element indices of a bitmask, ascending.
pub fn set_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

#[cfg(test)]
mod tests;
