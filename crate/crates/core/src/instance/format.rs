//! JSON interchange format.
//!
//! ```json
//! {
//!   "problem": "max_flow",
//!   "ground": ["a1", "a2"],
//!   "costs": {"a1": 1, "a2": 1},
//!   "budget": 1,
//!   "payload": {"network": {
//!     "vertices": ["s", "t"],
//!     "arcs": {"a1": {"tail": "s", "head": "t", "capacity": 2},
//!              "a2": {"tail": "s", "head": "t", "capacity": 3}},
//!     "source": "s", "sink": "t"}}
//! }
//! ```
//!
//! `costs` is either a map from element to positive integer or
//! `{"submodular": {"linear" | "explicit" | "coverage": ...}}`. `payload` is one
//! of `{"matroid": ...}`, `{"network": ...}` or `{"bipartite": ...}`; see the
//! document structs below for their fields.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{
    mask_of, set_of, validate, BipartiteEdge, BipartiteGraph, Costs, FlowNetwork, Instance,
    InstanceError, MatroidSpec, MatroidVariant, Payload, ProblemKind, Side, SubmodularCost,
    Violation, EXPLICIT_SUBMODULAR_LIMIT,
};

/// Identifiers of the two vertices added by the vertex-capacity reduction.
pub const CAPACITY_LEFT: &str = "cap_left";
pub const CAPACITY_RIGHT: &str = "cap_right";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub problem: ProblemKind,
    pub ground: Vec<String>,
    pub costs: CostsDoc,
    pub budget: u64,
    pub payload: PayloadDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CostsDoc {
    Submodular { submodular: SubmodularDoc },
    Linear(BTreeMap<String, u64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SubmodularDoc {
    Linear(BTreeMap<String, u64>),
    /// One entry per subset of the ground set.
    Explicit(Vec<TableEntry>),
    Coverage {
        universe: BTreeMap<String, u64>,
        covers: BTreeMap<String, Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub set: Vec<String>,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PayloadDoc {
    Matroid(MatroidDoc),
    Network(NetworkDoc),
    Bipartite(BipartiteDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatroidDoc {
    #[serde(flatten)]
    pub variant: MatroidVariantDoc,
    /// Defaults to all ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatroidVariantDoc {
    Uniform { k: usize },
    Partition { blocks: Vec<BlockDoc> },
    Graphic {
        vertices: Vec<String>,
        edges: BTreeMap<String, [String; 2]>,
    },
    /// Maximal independent sets.
    Explicit { bases: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub elements: Vec<String>,
    pub capacity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    pub vertices: Vec<String>,
    pub arcs: BTreeMap<String, ArcDoc>,
    pub source: String,
    pub sink: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub tail: String,
    pub head: String,
    pub capacity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteDoc {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    /// Upper bounds `x ≤ u`; rewritten away at parse time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_capacities: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    /// `[left, right]`.
    pub ends: [String; 2],
    #[serde(default = "one")]
    pub b: u64,
}

fn one() -> u64 {
    1
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let inst = doc.into_instance().map_err(InstanceError::Invalid)?;
    let violations = validate(&inst);
    if violations.is_empty() {
        Ok(inst)
    } else {
        Err(InstanceError::Invalid(violations))
    }
}

/// Canonical pretty-printed document for `inst`.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut text = serde_json::to_string_pretty(&InstanceDoc::from_instance(inst))
        .expect("instance documents always serialize");
    text.push('\n');
    text
}

struct Resolver<'a> {
    index: HashMap<&'a str, usize>,
    len: usize,
    what: &'static str,
    violations: Vec<Violation>,
}

impl<'a> Resolver<'a> {
    fn new(ids: &'a [String], what: &'static str) -> Self {
        let mut index = HashMap::new();
        let mut violations = Vec::new();
        for (k, id) in ids.iter().enumerate() {
            if index.insert(id.as_str(), k).is_some() {
                violations.push(Violation::new(format!("duplicate {what} id {id:?}")));
            }
        }
        Self {
            index,
            len: ids.len(),
            what,
            violations,
        }
    }

    fn get(&mut self, id: &str) -> usize {
        match self.index.get(id) {
            Some(&k) => k,
            None => {
                self.violations
                    .push(Violation::new(format!("unknown {} id {id:?}", self.what)));
                usize::MAX
            }
        }
    }

    /// Resolves a map keyed by ids that must be exactly the id set.
    fn dense<V: Clone>(&mut self, map: &BTreeMap<String, V>, field: &str) -> Option<Vec<V>> {
        let mut out: Vec<Option<V>> = vec![None; self.len];
        for (id, v) in map {
            let k = self.get(id);
            if k != usize::MAX {
                out[k] = Some(v.clone());
            }
        }
        let missing = out.iter().filter(|v| v.is_none()).count();
        if missing > 0 {
            self.violations.push(Violation::new(format!(
                "{field} misses {missing} {} id(s)",
                self.what
            )));
            return None;
        }
        Some(out.into_iter().map(Option::unwrap).collect())
    }
}

impl InstanceDoc {
    /// Resolves identifiers into a canonical [`Instance`]. Only structural
    /// problems are reported here; everything else is left to `validate`.
    pub fn into_instance(self) -> Result<Instance, Vec<Violation>> {
        let mut doc = self;
        if let PayloadDoc::Bipartite(g) = &doc.payload {
            if g.vertex_capacities.is_some() {
                reduce_vertex_capacities(&mut doc)?;
            }
        }
        let mut ground = doc.ground.clone();
        ground.sort();
        let mut el = Resolver::new(&ground, "element");

        let costs = match &doc.costs {
            CostsDoc::Linear(map) => Costs::Linear(el.dense(map, "costs").unwrap_or_default()),
            CostsDoc::Submodular { submodular } => {
                Costs::Submodular(submodular_from_doc(submodular, &mut el, ground.len()))
            }
        };

        let payload = match &doc.payload {
            PayloadDoc::Matroid(m) => {
                let weights = match &m.weights {
                    Some(w) => el.dense(w, "weights").unwrap_or_default(),
                    None => vec![1; ground.len()],
                };
                let variant = match &m.variant {
                    MatroidVariantDoc::Uniform { k } => MatroidVariant::Uniform { k: *k },
                    MatroidVariantDoc::Partition { blocks } => {
                        let mut block_of = vec![usize::MAX; ground.len()];
                        for (b, block) in blocks.iter().enumerate() {
                            for id in &block.elements {
                                let e = el.get(id);
                                if e == usize::MAX {
                                    continue;
                                }
                                if block_of[e] != usize::MAX {
                                    el.violations.push(Violation::new(format!(
                                        "element {id:?} lies in two partition blocks"
                                    )));
                                }
                                block_of[e] = b;
                            }
                        }
                        MatroidVariant::Partition {
                            block_of,
                            capacities: blocks.iter().map(|b| b.capacity).collect(),
                        }
                    }
                    MatroidVariantDoc::Graphic { vertices, edges } => {
                        let mut vx = Resolver::new(vertices, "vertex");
                        let ends = el
                            .dense(edges, "graphic edges")
                            .unwrap_or_default()
                            .into_iter()
                            .map(|[u, v]| (vx.get(&u), vx.get(&v)))
                            .collect();
                        el.violations.append(&mut vx.violations);
                        MatroidVariant::Graphic {
                            vertices: vertices.clone(),
                            ends,
                        }
                    }
                    MatroidVariantDoc::Explicit { bases } => {
                        if ground.len() > 63 {
                            el.violations
                                .push(Violation::new("explicit matroid too large".to_string()));
                        }
                        let mut masks: Vec<u64> = bases
                            .iter()
                            .map(|b| {
                                let set: Vec<usize> = b.iter().map(|id| el.get(id)).collect();
                                if set.iter().any(|&e| e >= 63) {
                                    0
                                } else {
                                    mask_of(&set)
                                }
                            })
                            .collect();
                        masks.sort_unstable();
                        masks.dedup();
                        MatroidVariant::Explicit { bases: masks }
                    }
                };
                Payload::Matroid(MatroidSpec { variant, weights })
            }
            PayloadDoc::Network(n) => {
                let mut vx = Resolver::new(&n.vertices, "vertex");
                let arcs = el.dense(&n.arcs, "arcs").unwrap_or_default();
                let net = FlowNetwork {
                    vertices: n.vertices.clone(),
                    tail: arcs.iter().map(|a| vx.get(&a.tail)).collect(),
                    head: arcs.iter().map(|a| vx.get(&a.head)).collect(),
                    capacity: arcs.iter().map(|a| a.capacity).collect(),
                    source: vx.get(&n.source),
                    sink: vx.get(&n.sink),
                };
                el.violations.append(&mut vx.violations);
                Payload::Flow(net)
            }
            PayloadDoc::Bipartite(g) => {
                let mut side = vec![None; ground.len()];
                for (ids, s) in [(&g.left, Side::Left), (&g.right, Side::Right)] {
                    for id in ids {
                        let v = el.get(id);
                        if v == usize::MAX {
                            continue;
                        }
                        if side[v].is_some() {
                            el.violations
                                .push(Violation::new(format!("vertex {id:?} listed twice")));
                        }
                        side[v] = Some(s);
                    }
                }
                if side.iter().any(Option::is_none) {
                    el.violations.push(Violation::new(
                        "ground set differs from the vertex set".to_string(),
                    ));
                }
                let side: Vec<Side> = side.into_iter().map(|s| s.unwrap_or(Side::Left)).collect();
                let mut edges: Vec<BipartiteEdge> = g
                    .edges
                    .iter()
                    .map(|e| BipartiteEdge {
                        left: el.get(&e.ends[0]),
                        right: el.get(&e.ends[1]),
                        b: e.b,
                    })
                    .collect();
                edges.sort_by_key(|e| (e.left, e.right));
                Payload::Bipartite(BipartiteGraph { side, edges })
            }
        };

        if el.violations.is_empty() {
            Ok(Instance {
                kind: doc.problem,
                ground,
                costs,
                budget: doc.budget,
                payload,
            })
        } else {
            Err(el.violations)
        }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let id = |e: usize| inst.ground[e].clone();
        let keyed = |values: &[u64]| -> BTreeMap<String, u64> {
            values.iter().enumerate().map(|(e, &v)| (id(e), v)).collect()
        };
        let costs = match &inst.costs {
            Costs::Linear(c) => CostsDoc::Linear(keyed(c)),
            Costs::Submodular(k) => CostsDoc::Submodular {
                submodular: match k {
                    SubmodularCost::Linear(c) => SubmodularDoc::Linear(keyed(c)),
                    SubmodularCost::Explicit(values) => SubmodularDoc::Explicit(
                        values
                            .iter()
                            .enumerate()
                            .map(|(mask, &value)| TableEntry {
                                set: inst.ids(&set_of(mask as u64)),
                                value,
                            })
                            .collect(),
                    ),
                    SubmodularCost::Coverage {
                        universe,
                        weights,
                        covers,
                    } => SubmodularDoc::Coverage {
                        universe: universe.iter().cloned().zip(weights.iter().copied()).collect(),
                        covers: covers
                            .iter()
                            .enumerate()
                            .map(|(e, items)| {
                                (id(e), items.iter().map(|&u| universe[u].clone()).collect())
                            })
                            .collect(),
                    },
                },
            },
        };
        let payload = match &inst.payload {
            Payload::Matroid(m) => {
                let variant = match &m.variant {
                    MatroidVariant::Uniform { k } => MatroidVariantDoc::Uniform { k: *k },
                    MatroidVariant::Partition {
                        block_of,
                        capacities,
                    } => MatroidVariantDoc::Partition {
                        blocks: capacities
                            .iter()
                            .enumerate()
                            .map(|(b, &capacity)| BlockDoc {
                                elements: (0..inst.len())
                                    .filter(|&e| block_of[e] == b)
                                    .map(id)
                                    .collect(),
                                capacity,
                            })
                            .collect(),
                    },
                    MatroidVariant::Graphic { vertices, ends } => MatroidVariantDoc::Graphic {
                        vertices: vertices.clone(),
                        edges: ends
                            .iter()
                            .enumerate()
                            .map(|(e, &(u, v))| (id(e), [vertices[u].clone(), vertices[v].clone()]))
                            .collect(),
                    },
                    MatroidVariant::Explicit { bases } => MatroidVariantDoc::Explicit {
                        bases: bases.iter().map(|&b| inst.ids(&set_of(b))).collect(),
                    },
                };
                let weights = if inst.kind == ProblemKind::MatroidCardinality
                    && m.weights.iter().all(|&w| w == 1)
                {
                    None
                } else {
                    Some(keyed(&m.weights))
                };
                PayloadDoc::Matroid(MatroidDoc { variant, weights })
            }
            Payload::Flow(n) => PayloadDoc::Network(NetworkDoc {
                vertices: n.vertices.clone(),
                arcs: (0..inst.len())
                    .map(|a| {
                        (
                            id(a),
                            ArcDoc {
                                tail: n.vertices[n.tail[a]].clone(),
                                head: n.vertices[n.head[a]].clone(),
                                capacity: n.capacity[a],
                            },
                        )
                    })
                    .collect(),
                source: n.vertices[n.source].clone(),
                sink: n.vertices[n.sink].clone(),
            }),
            Payload::Bipartite(g) => PayloadDoc::Bipartite(BipartiteDoc {
                left: g.vertices_on(Side::Left).map(id).collect(),
                right: g.vertices_on(Side::Right).map(id).collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|e| EdgeDoc {
                        ends: [id(e.left), id(e.right)],
                        b: e.b,
                    })
                    .collect(),
                vertex_capacities: None,
            }),
        };
        InstanceDoc {
            problem: inst.kind,
            ground: inst.ground.clone(),
            costs,
            budget: inst.budget,
            payload,
        }
    }
}

fn submodular_from_doc(doc: &SubmodularDoc, el: &mut Resolver<'_>, n: usize) -> SubmodularCost {
    match doc {
        SubmodularDoc::Linear(map) => {
            SubmodularCost::Linear(el.dense(map, "costs").unwrap_or_default())
        }
        SubmodularDoc::Explicit(entries) => {
            if n > EXPLICIT_SUBMODULAR_LIMIT {
                el.violations.push(Violation::new(format!(
                    "explicit cost table needs at most {EXPLICIT_SUBMODULAR_LIMIT} elements"
                )));
                return SubmodularCost::Explicit(Vec::new());
            }
            let mut values: Vec<Option<u64>> = vec![None; 1 << n];
            for entry in entries {
                let set: Vec<usize> = entry.set.iter().map(|id| el.get(id)).collect();
                if set.contains(&usize::MAX) {
                    continue;
                }
                let slot = &mut values[mask_of(&set) as usize];
                if slot.replace(entry.value).is_some() {
                    el.violations.push(Violation::new(format!(
                        "cost table lists {:?} twice",
                        entry.set
                    )));
                }
            }
            let missing = values.iter().filter(|v| v.is_none()).count();
            if missing > 0 {
                el.violations.push(Violation::new(format!(
                    "cost table misses {missing} subset(s)"
                )));
            }
            SubmodularCost::Explicit(values.into_iter().map(Option::unwrap_or_default).collect())
        }
        SubmodularDoc::Coverage { universe, covers } => {
            let items: Vec<String> = universe.keys().cloned().collect();
            let mut ux = Resolver::new(&items, "universe item");
            let covers = el
                .dense(covers, "covers")
                .unwrap_or_default()
                .into_iter()
                .map(|list| {
                    let mut c: Vec<usize> = list.iter().map(|u| ux.get(u)).collect();
                    c.sort_unstable();
                    c.dedup();
                    c
                })
                .collect();
            el.violations.append(&mut ux.violations);
            SubmodularCost::Coverage {
                universe: items,
                weights: universe.values().copied().collect(),
                covers,
            }
        }
    }
}

/// Rewrites `x ≤ u` vertex bounds into an uncapacitated instance: a new left
/// vertex joined to every right vertex `j` with `b = u(j)`, and symmetrically.
/// The new vertices cost `B + 1`, so they are never interdicted.
fn reduce_vertex_capacities(doc: &mut InstanceDoc) -> Result<(), Vec<Violation>> {
    let PayloadDoc::Bipartite(g) = &mut doc.payload else {
        return Ok(());
    };
    let caps = g.vertex_capacities.take().unwrap_or_default();
    let mut violations = Vec::new();
    for id in [CAPACITY_LEFT, CAPACITY_RIGHT] {
        if doc.ground.iter().any(|g| g == id) {
            violations.push(Violation::new(format!(
                "vertex id {id:?} is reserved for vertex capacities"
            )));
        }
    }
    for v in g.left.iter().chain(&g.right) {
        if !caps.contains_key(v) {
            violations.push(Violation::new(format!("vertex {v:?} has no capacity")));
        }
    }
    if caps.len() != g.left.len() + g.right.len() {
        violations.push(Violation::new(
            "vertex capacities name unknown vertices".to_string(),
        ));
    }
    let CostsDoc::Linear(costs) = &mut doc.costs else {
        violations.push(Violation::new(
            "vertex capacities need linear costs".to_string(),
        ));
        return Err(violations);
    };
    if !violations.is_empty() {
        return Err(violations);
    }
    for j in g.right.clone() {
        g.edges.push(EdgeDoc {
            ends: [CAPACITY_LEFT.to_string(), j.clone()],
            b: caps[&j],
        });
    }
    for i in g.left.clone() {
        g.edges.push(EdgeDoc {
            ends: [i.clone(), CAPACITY_RIGHT.to_string()],
            b: caps[&i],
        });
    }
    g.left.push(CAPACITY_LEFT.to_string());
    g.right.push(CAPACITY_RIGHT.to_string());
    for id in [CAPACITY_LEFT, CAPACITY_RIGHT] {
        doc.ground.push(id.to_string());
        costs.insert(id.to_string(), doc.budget + 1);
    }
    Ok(())
}
