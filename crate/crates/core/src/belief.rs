//! Belief functions on simplicial models and the KD45 relations they induce.
//!
//! An assignment gives each agent `a` an idempotent map `f_a` on the
//! `a`-coloured vertices. `B_a φ` holds at `X` when `φ` holds at every facet
//! containing `f_a(X_a)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::agents::AgentId;
use crate::complex::{SimplicialModel, VertexIdx};
use crate::duality::kappa;
use crate::error::{Error, Result};
use crate::kripke::{KripkeModel, StateIdx};

/// JSON shape: agent name → (vertex id → vertex id).
pub type RawBeliefAssignment = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssignmentIssue {
    UnknownAgent(String),
    UnknownVertex(String),
    /// A source or target vertex does not have the agent's colour.
    ColourViolation { agent: String, from: String, to: String },
    /// `f(f(v)) != f(v)`.
    NotIdempotent { agent: String, vertex: String },
}

impl fmt::Display for AssignmentIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssignmentIssue::UnknownAgent(a) => write!(f, "unknown agent `{a}`"),
            AssignmentIssue::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            AssignmentIssue::ColourViolation { agent, from, to } => {
                write!(f, "{from} -> {to} leaves the {agent}-coloured vertices")
            }
            AssignmentIssue::NotIdempotent { agent, vertex } => {
                write!(f, "f_{agent} is not idempotent at {vertex}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssignmentReport {
    pub issues: Vec<AssignmentIssue>,
    /// Vertices with no entry; they are taken to be fixed points.
    pub defaulted: Vec<(String, String)>,
}

impl AssignmentReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Check a raw assignment against a model.
pub fn validate_assignment(model: &SimplicialModel, raw: &RawBeliefAssignment) -> AssignmentReport {
    let mut report = AssignmentReport::default();
    let agents = model.agents();
    for (name, map) in raw {
        let Some(a) = agents.get(name) else {
            report.issues.push(AssignmentIssue::UnknownAgent(name.clone()));
            continue;
        };
        for (from, to) in map {
            let (Some(u), Some(v)) = (model.vertex_by_id(from), model.vertex_by_id(to)) else {
                for id in [from, to] {
                    if model.vertex_by_id(id).is_none() {
                        report.issues.push(AssignmentIssue::UnknownVertex(id.clone()));
                    }
                }
                continue;
            };
            if model.vertex(u).agent != a || model.vertex(v).agent != a {
                report.issues.push(AssignmentIssue::ColourViolation {
                    agent: name.clone(),
                    from: from.clone(),
                    to: to.clone(),
                });
                continue;
            }
            let image = map.get(to).unwrap_or(to);
            if image != to {
                report.issues.push(AssignmentIssue::NotIdempotent {
                    agent: name.clone(),
                    vertex: from.clone(),
                });
            }
        }
    }
    for v in model.vertices() {
        let listed = raw
            .get(agents.name(v.agent))
            .is_some_and(|map| map.contains_key(&v.id));
        if !listed {
            report.defaulted.push((agents.name(v.agent).to_string(), v.id.clone()));
        }
    }
    report
}

/// A validated assignment, stored as one target per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefAssignment {
    targets: Vec<VertexIdx>,
}

impl BeliefAssignment {
    pub fn identity(model: &SimplicialModel) -> Self {
        BeliefAssignment {
            targets: (0..model.num_vertices()).collect(),
        }
    }

    pub fn from_raw(model: &SimplicialModel, raw: &RawBeliefAssignment) -> Result<Self> {
        let report = validate_assignment(model, raw);
        if let Some(issue) = report.issues.first() {
            return Err(Error::InvalidAssignment(issue.to_string()));
        }
        let mut targets: Vec<VertexIdx> = (0..model.num_vertices()).collect();
        for map in raw.values() {
            for (from, to) in map {
                targets[model.require_vertex(from)?] = model.require_vertex(to)?;
            }
        }
        Ok(BeliefAssignment { targets })
    }

    /// Build from vertex-index pairs; the same checks as `from_raw` apply.
    pub fn from_pairs(model: &SimplicialModel, pairs: &[(VertexIdx, VertexIdx)]) -> Result<Self> {
        let mut raw = RawBeliefAssignment::new();
        for &(u, v) in pairs {
            let (vu, vv) = (model.vertex(u), model.vertex(v));
            raw.entry(model.agents().name(vu.agent).to_string())
                .or_default()
                .insert(vu.id.clone(), vv.id.clone());
        }
        Self::from_raw(model, &raw)
    }

    pub fn to_raw(&self, model: &SimplicialModel) -> RawBeliefAssignment {
        let mut raw = RawBeliefAssignment::new();
        for (u, &v) in self.targets.iter().enumerate() {
            let vu = model.vertex(u);
            raw.entry(model.agents().name(vu.agent).to_string())
                .or_default()
                .insert(vu.id.clone(), model.vertex(v).id.clone());
        }
        raw
    }

    /// f_a(v) for the colour a of v.
    pub fn target(&self, v: VertexIdx) -> VertexIdx {
        self.targets[v]
    }

    /// Does f_a keep the values of a's own atoms?
    pub fn is_locally_correct(&self, model: &SimplicialModel, a: AgentId) -> bool {
        let own = |v: VertexIdx| -> Vec<&String> {
            model
                .vertex(v)
                .atoms
                .iter()
                .filter(|p| model.agents().owner_of(p) == Some(a))
                .collect()
        };
        (0..model.num_vertices())
            .filter(|&v| model.vertex(v).agent == a)
            .all(|v| own(v) == own(self.targets[v]))
    }

    /// Per-agent local correctness, by agent name.
    pub fn local_correctness(&self, model: &SimplicialModel) -> BTreeMap<String, bool> {
        model
            .agents()
            .ids()
            .map(|a| (model.agents().name(a).to_string(), self.is_locally_correct(model, a)))
            .collect()
    }

    /// Carry the assignment to a model sharing vertex ids, such as a restriction.
    pub fn transfer(&self, from: &SimplicialModel, to: &SimplicialModel) -> Result<Self> {
        let mut targets = Vec::with_capacity(to.num_vertices());
        for v in to.vertices() {
            let u = from.require_vertex(&v.id)?;
            targets.push(to.require_vertex(&from.vertex(self.targets[u]).id)?);
        }
        Ok(BeliefAssignment { targets })
    }
}

/// κ(C) with the belief relations `R_a`: κ(X) R_a κ(Y) iff f_a(X_a) ∈ Y.
#[derive(Clone, Debug)]
pub struct Kd45Frame {
    pub model: KripkeModel,
    succ: Vec<Vec<Vec<StateIdx>>>,
}

impl Kd45Frame {
    pub fn successors(&self, a: AgentId, s: StateIdx) -> &[StateIdx] {
        &self.succ[a][s]
    }

    pub fn is_serial(&self, a: AgentId) -> bool {
        self.succ[a].iter().all(|r| !r.is_empty())
    }

    pub fn is_transitive(&self, a: AgentId) -> bool {
        let r = &self.succ[a];
        (0..r.len()).all(|s| r[s].iter().all(|&t| r[t].iter().all(|u| r[s].binary_search(u).is_ok())))
    }

    pub fn is_euclidean(&self, a: AgentId) -> bool {
        let r = &self.succ[a];
        (0..r.len()).all(|s| r[s].iter().all(|&t| r[s].iter().all(|u| r[t].binary_search(u).is_ok())))
    }

    pub fn is_kd45(&self) -> bool {
        self.model
            .agents()
            .ids()
            .all(|a| self.is_serial(a) && self.is_transitive(a) && self.is_euclidean(a))
    }

    /// All pairs of `R_a` as state ids.
    pub fn pairs(&self, a: AgentId) -> Vec<(String, String)> {
        let id = |s: StateIdx| self.model.state(s).id.clone();
        self.succ[a]
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |&t| (id(s), id(t))))
            .collect()
    }
}

pub fn derive_kd45(model: &SimplicialModel, bf: &BeliefAssignment) -> Kd45Frame {
    let succ = model
        .agents()
        .ids()
        .map(|a| {
            (0..model.num_facets())
                .map(|x| {
                    let mut ys = model.vertex_star(bf.target(model.facet(x)[a])).to_vec();
                    ys.sort_unstable();
                    ys
                })
                .collect()
        })
        .collect();
    Kd45Frame {
        model: kappa(model).model,
        succ,
    }
}
