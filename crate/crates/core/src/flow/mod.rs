//! Network-flow kernels over an exact ordered field: shortest-augmenting-path
//! max-flow with a min-cut certificate, min-cost flow with lower bounds, and
//! path decomposition.

mod decompose;
mod min_cost;

pub use decompose::{path_decompose, Decomposition};
pub use min_cost::{min_cost_flow, MinCostFlow};

use std::collections::VecDeque;

use crate::scalar::Field;
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowArc<T = Rational> {
    pub tail: usize,
    pub head: usize,
    pub capacity: T,
    pub lower: T,
    pub cost: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacitatedNetwork<T = Rational> {
    pub num_vertices: usize,
    pub arcs: Vec<FlowArc<T>>,
    pub source: usize,
    pub sink: usize,
}

impl<T: Field> CapacitatedNetwork<T> {
    pub fn new(num_vertices: usize, source: usize, sink: usize) -> Self {
        Self {
            num_vertices,
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    /// Adds an arc with zero lower bound and zero cost; returns its index.
    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: T) -> usize {
        self.add_arc_with(tail, head, capacity, T::zero(), T::zero())
    }

    pub fn add_arc_with(&mut self, tail: usize, head: usize, capacity: T, lower: T, cost: T) -> usize {
        assert!(tail < self.num_vertices && head < self.num_vertices, "arc endpoint");
        self.arcs.push(FlowArc {
            tail,
            head,
            capacity,
            lower,
            cost,
        });
        self.arcs.len() - 1
    }

    /// Net flow leaving `v`.
    pub fn excess_out(&self, flow: &[T], v: usize) -> T {
        let mut net = T::zero();
        for (a, f) in self.arcs.iter().zip(flow) {
            if a.tail == v {
                net += f;
            }
            if a.head == v {
                net -= f;
            }
        }
        net
    }

    /// Bounds and conservation at every vertex except source and sink.
    pub fn is_feasible_flow(&self, flow: &[T]) -> bool {
        flow.len() == self.arcs.len()
            && self
                .arcs
                .iter()
                .zip(flow)
                .all(|(a, f)| *f >= a.lower && *f <= a.capacity)
            && (0..self.num_vertices)
                .filter(|&v| v != self.source && v != self.sink)
                .all(|v| self.excess_out(flow, v).is_zero())
    }
}

/// A minimum s-t cut.
#[derive(Debug, Clone, PartialEq)]
pub struct CutCertificate<T = Rational> {
    /// Vertices reachable from the source in the final residual network.
    pub source_side: Vec<bool>,
    /// Arcs leaving the source side, ascending.
    pub arcs: Vec<usize>,
    pub capacity: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxFlow<T = Rational> {
    pub value: T,
    pub flow: Vec<T>,
    pub cut: CutCertificate<T>,
}

/// Residual graph with a forward and a backward edge per arc.
pub(crate) struct Residual<T> {
    /// `adjacency[v]` lists edge ids `2a` (forward) and `2a+1` (backward).
    pub adjacency: Vec<Vec<usize>>,
    pub to: Vec<usize>,
    pub residual: Vec<T>,
}

impl<T: Field> Residual<T> {
    pub fn new(n: usize, arcs: impl Iterator<Item = (usize, usize, T)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let mut to = Vec::new();
        let mut residual = Vec::new();
        for (a, (tail, head, cap)) in arcs.enumerate() {
            adjacency[tail].push(2 * a);
            adjacency[head].push(2 * a + 1);
            to.push(head);
            to.push(tail);
            residual.push(cap);
            residual.push(T::zero());
        }
        Self {
            adjacency,
            to,
            residual,
        }
    }

    pub fn push(&mut self, edge: usize, amount: &T) {
        self.residual[edge] -= amount;
        self.residual[edge ^ 1] += amount;
    }

    /// BFS predecessor edges from `from`; `None` for unreached vertices.
    pub fn bfs(&self, from: usize) -> Vec<Option<usize>> {
        let n = self.adjacency.len();
        let mut pred = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adjacency[v] {
                let w = self.to[e];
                if !seen[w] && self.residual[e].is_positive() {
                    seen[w] = true;
                    pred[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        pred
    }
}

/// Maximum s-t flow by shortest augmenting paths. Lower bounds and costs are
/// ignored; capacities must be nonnegative.
pub fn max_flow<T: Field>(net: &CapacitatedNetwork<T>) -> MaxFlow<T> {
    let (s, t) = (net.source, net.sink);
    let mut res = Residual::new(
        net.num_vertices,
        net.arcs.iter().map(|a| (a.tail, a.head, a.capacity.clone())),
    );
    let mut value = T::zero();
    if s != t {
        loop {
            let pred = res.bfs(s);
            if pred[t].is_none() {
                break;
            }
            let mut path = Vec::new();
            let mut v = t;
            while v != s {
                let e = pred[v].expect("path edge");
                path.push(e);
                v = res.to[e ^ 1];
            }
            let bottleneck = path
                .iter()
                .map(|&e| res.residual[e].clone())
                .min()
                .expect("nonempty path");
            for &e in &path {
                res.push(e, &bottleneck);
            }
            value += &bottleneck;
        }
    }
    let flow: Vec<T> = (0..net.arcs.len()).map(|a| res.residual[2 * a + 1].clone()).collect();
    let pred = res.bfs(s);
    let source_side: Vec<bool> = (0..net.num_vertices)
        .map(|v| v == s || pred[v].is_some())
        .collect();
    let arcs: Vec<usize> = (0..net.arcs.len())
        .filter(|&a| source_side[net.arcs[a].tail] && !source_side[net.arcs[a].head])
        .collect();
    let mut capacity = T::zero();
    for &a in &arcs {
        capacity += &net.arcs[a].capacity;
    }
    debug_assert!(capacity == value, "max-flow/min-cut mismatch");
    MaxFlow {
        value,
        flow,
        cut: CutCertificate {
            source_side,
            arcs,
            capacity,
        },
    }
}

#[cfg(test)]
mod tests;
