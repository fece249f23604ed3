//! Simplicial action models with vertex preconditions and postconditions
//! for factual change, and their restricted product with a model.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::agents::{default_agent_names, AgentId, AgentSet};
use crate::complex::{validate, FacetIdx, RawSimplicialModel, RawVertex, SimplicialModel};
use crate::error::{Error, Result};
use crate::formula::{parse, Formula, LanguageTag};
use crate::refine::aligned;
use crate::semantics::{bind_simplicial, FacetEvaluator};

#[derive(Clone, Debug, PartialEq)]
pub struct ActionVertex {
    pub id: String,
    pub agent: AgentId,
    pub pre: Formula,
    /// New values of the agent's atoms; unlisted atoms keep their value.
    pub post: BTreeMap<String, Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawActionVertex {
    pub id: String,
    pub agent: String,
    #[serde(default = "default_pre")]
    pub pre: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub post: BTreeMap<String, String>,
}

fn default_pre() -> String {
    "true".into()
}

/// JSON shape of an action model; formulas are written in the text grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawActionModel {
    pub agents: Vec<String>,
    pub vertices: Vec<RawActionVertex>,
    pub facets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ActionModel {
    agents: AgentSet,
    vertices: Vec<ActionVertex>,
    /// Colour-indexed rows, as in [`SimplicialModel`].
    facets: Vec<Vec<usize>>,
}

impl ActionModel {
    pub fn from_raw(raw: &RawActionModel) -> Result<Self> {
        let skeleton = RawSimplicialModel {
            agents: raw.agents.clone(),
            vertices: raw
                .vertices
                .iter()
                .map(|v| RawVertex {
                    id: v.id.clone(),
                    agent: v.agent.clone(),
                    atoms: Vec::new(),
                })
                .collect(),
            facets: raw.facets.clone(),
        };
        let report = validate(&skeleton);
        if !report.is_valid() {
            return Err(Error::InvalidAction(report.to_string()));
        }
        let agents = AgentSet::new(raw.agents.iter().cloned())?;
        let mut vertices = Vec::with_capacity(raw.vertices.len());
        for v in &raw.vertices {
            let agent = agents.require(&v.agent)?;
            let mut post = BTreeMap::new();
            for (p, f) in &v.post {
                if agents.owner_of(p) != Some(agent) {
                    return Err(Error::InvalidAction(format!(
                        "vertex `{}` assigns `{p}`, which {} does not own",
                        v.id, v.agent
                    )));
                }
                post.insert(p.clone(), parse(f)?);
            }
            vertices.push(ActionVertex {
                id: v.id.clone(),
                agent,
                pre: parse(&v.pre)?,
                post,
            });
        }
        let index: HashMap<&str, usize> = raw.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let facets = raw
            .facets
            .iter()
            .map(|f| {
                let mut row = vec![0; agents.len()];
                for id in f {
                    let v = index[id.as_str()];
                    row[vertices[v].agent] = v;
                }
                row
            })
            .collect();
        Ok(ActionModel { agents, vertices, facets })
    }

    pub fn to_raw(&self) -> RawActionModel {
        RawActionModel {
            agents: self.agents.names().to_vec(),
            vertices: self
                .vertices
                .iter()
                .map(|v| RawActionVertex {
                    id: v.id.clone(),
                    agent: self.agents.name(v.agent).to_string(),
                    pre: v.pre.to_string(),
                    post: v.post.iter().map(|(p, f)| (p.clone(), f.to_string())).collect(),
                })
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|row| row.iter().map(|&v| self.vertices[v].id.clone()).collect())
                .collect(),
        }
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    pub fn vertices(&self) -> &[ActionVertex] {
        &self.vertices
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facet(&self, f: usize) -> &[usize] {
        &self.facets[f]
    }

    /// pre(X) = ⋀_{v ∈ X} pre(v), in colour order.
    pub fn facet_pre(&self, f: usize) -> Formula {
        Formula::conj(self.facets[f].iter().map(|&v| self.vertices[v].pre.clone()))
    }

    /// All facet preconditions.
    pub fn facet_pres(&self) -> Vec<Formula> {
        (0..self.facets.len()).map(|f| self.facet_pre(f)).collect()
    }

    /// Replace vertex preconditions by pre(v) = ⋁_{X ∋ v} pre(X).
    pub fn with_facet_pres(&self, pres: &[Formula]) -> Result<ActionModel> {
        if pres.len() != self.facets.len() {
            return Err(Error::InvalidAction(format!(
                "{} facet preconditions for {} facets",
                pres.len(),
                self.facets.len()
            )));
        }
        let mut out = self.clone();
        for (v, vx) in out.vertices.iter_mut().enumerate() {
            vx.pre = Formula::disj(
                self.facets
                    .iter()
                    .zip(pres)
                    .filter(|(row, _)| row.contains(&v))
                    .map(|(_, f)| f.clone()),
            );
        }
        Ok(out)
    }
}

/// Vertex preconditions from facet preconditions.
pub fn vertex_pre_from_facet_pre(skeleton: &ActionModel, pres: &[Formula]) -> Result<ActionModel> {
    skeleton.with_facet_pres(pres)
}

/// Facet preconditions from vertex preconditions.
pub fn facet_pre_from_vertex_pre(a: &ActionModel) -> Vec<Formula> {
    a.facet_pres()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreconditionLocality {
    pub vertex: String,
    /// The precondition is syntactically `K[a] φ` for the vertex's agent.
    pub knowledge_syntactic: bool,
    /// pre(v) ↔ K_a pre(v) at every facet of the supplied model.
    pub knowledge_semantic: Option<bool>,
    /// The precondition lies in the language of the vertex's agent alone.
    pub own_language: bool,
}

pub fn check_local_preconditions(a: &ActionModel, model: Option<&SimplicialModel>) -> Result<Vec<PreconditionLocality>> {
    let ev = model.map(FacetEvaluator::new);
    a.vertices
        .iter()
        .map(|v| {
            let name = a.agents.name(v.agent);
            let knowledge_syntactic = matches!(&v.pre, Formula::K(b, _) if b == name);
            let own_language = v.pre.in_language(&LanguageTag::new(&a.agents, &[name]));
            let knowledge_semantic = match (&ev, model) {
                (Some(ev), Some(m)) => {
                    let iff = Formula::and(
                        Formula::implies(v.pre.clone(), Formula::k(name, v.pre.clone())),
                        Formula::implies(Formula::k(name, v.pre.clone()), v.pre.clone()),
                    );
                    Some(ev.truth(&bind_simplicial(m, &iff)?)?.iter().all(|&b| b))
                }
                _ => None,
            };
            Ok(PreconditionLocality {
                vertex: v.id.clone(),
                knowledge_syntactic,
                knowledge_semantic,
                own_language,
            })
        })
        .collect()
}

/// The product model with, for each facet, the pair of facets it came from.
#[derive(Clone, Debug)]
pub struct Product {
    pub model: SimplicialModel,
    pub origin: Vec<(FacetIdx, usize)>,
}

/// The restricted product C ⊗ A. Product vertices are named `(v,v')`.
/// An atom assigned by `post(v')` takes the value of its postcondition at the
/// source facet; this must be the same at every surviving facet through `v`.
pub fn product(c: &SimplicialModel, a: &ActionModel) -> Result<Product> {
    let order = aligned(c.agents(), &a.agents)?;
    let ev = FacetEvaluator::new(c);
    let pre_truth: Vec<Vec<bool>> = a
        .vertices
        .iter()
        .map(|v| ev.truth(&bind_simplicial(c, &v.pre)?))
        .collect::<Result<_>>()?;
    let mut post_truth: Vec<BTreeMap<&str, Vec<bool>>> = Vec::with_capacity(a.vertices.len());
    for v in &a.vertices {
        let mut row = BTreeMap::new();
        for (p, f) in &v.post {
            row.insert(p.as_str(), ev.truth(&bind_simplicial(c, f)?)?);
        }
        post_truth.push(row);
    }

    let mut origin = Vec::new();
    for x in 0..c.num_facets() {
        for y in 0..a.facets.len() {
            if a.facets[y].iter().all(|&v| pre_truth[v][x]) {
                origin.push((x, y));
            }
        }
    }
    if origin.is_empty() {
        return Err(Error::EmptyProduct);
    }

    let n = c.agents().len();
    let mut raw = RawSimplicialModel::new(c.agents().names().iter().cloned());
    // product vertex -> (source facet that fixed its values, atoms)
    let mut made: HashMap<(usize, usize), (FacetIdx, usize)> = HashMap::new();
    for &(x, y) in &origin {
        let mut facet = Vec::with_capacity(n);
        for ag in 0..n {
            let (v, w) = (c.facet(x)[ag], a.facets[y][order[ag]]);
            let id = format!("({},{})", c.vertex(v).id, a.vertices[w].id);
            match made.get(&(v, w)) {
                Some(&(first, _)) => {
                    for (p, truth) in &post_truth[w] {
                        if truth[first] != truth[x] {
                            return Err(Error::PostconditionNotUniform {
                                vertex: id,
                                atom: p.to_string(),
                                facet_a: c.facet_name(first),
                                facet_b: c.facet_name(x),
                            });
                        }
                    }
                }
                None => {
                    let mut atoms: Vec<String> = c
                        .vertex(v)
                        .atoms
                        .iter()
                        .filter(|p| !post_truth[w].contains_key(p.as_str()))
                        .cloned()
                        .collect();
                    atoms.extend(post_truth[w].iter().filter(|(_, t)| t[x]).map(|(p, _)| p.to_string()));
                    atoms.sort();
                    made.insert((v, w), (x, raw.vertices.len()));
                    raw.vertices.push(RawVertex {
                        id: id.clone(),
                        agent: c.agents().name(ag).to_string(),
                        atoms,
                    });
                }
            }
            facet.push(id);
        }
        raw.facets.push(facet);
    }
    Ok(Product {
        model: SimplicialModel::from_raw(&raw)?,
        origin,
    })
}

// ---------------------------------------------------------------------------
// Builders

fn single_facet(agents: &[String], pre: &Formula, post: Option<(&str, &str, &Formula)>) -> Result<ActionModel> {
    let raw = RawActionModel {
        agents: agents.to_vec(),
        vertices: agents
            .iter()
            .map(|a| RawActionVertex {
                id: a.clone(),
                agent: a.clone(),
                pre: pre.to_string(),
                post: match post {
                    Some((owner, p, f)) if owner == a => BTreeMap::from([(p.to_string(), f.to_string())]),
                    _ => BTreeMap::new(),
                },
            })
            .collect(),
        facets: vec![agents.to_vec()],
    };
    ActionModel::from_raw(&raw)
}

/// Everyone learns `φ`: one action facet, every precondition `φ`.
pub fn public_announcement(agents: &[String], phi: &Formula) -> Result<ActionModel> {
    single_facet(agents, phi, None)
}

/// `atom := φ` by its owner `agent`, publicly.
pub fn public_assignment(agents: &[String], agent: &str, atom: &str, phi: &Formula) -> Result<ActionModel> {
    single_facet(agents, &Formula::True, Some((agent, atom, phi)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConsensusPolicy {
    /// Undecided agents reset to 1 (`x`) or 0 (`y`) nondeterministically.
    #[default]
    Random,
    /// Undecided agents set 1 unless they know a strict majority holds 0.
    Majority,
}

impl std::str::FromStr for ConsensusPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "random" => Ok(ConsensusPolicy::Random),
            "majority" => Ok(ConsensusPolicy::Majority),
            _ => Err(format!("unknown policy `{s}`")),
        }
    }
}

/// The binary consensus action for `n` agents: per agent `w`, `x`, `y`, `z`
/// vertices over atoms `1_<agent>`, all `4^n` facets.
pub fn binary_consensus_action(n: usize, policy: ConsensusPolicy) -> Result<ActionModel> {
    if n < 2 {
        return Err(Error::InvalidAction("binary consensus needs at least two agents".into()));
    }
    let names = default_agent_names(n);
    let one = |a: &String| Formula::atom(format!("1_{a}"));
    let all1 = Formula::conj(names.iter().map(one));
    let all0 = Formula::conj(names.iter().map(|a| Formula::not(one(a))));
    let zero_majority = Formula::disj((0u64..1 << n).filter(|m| m.count_ones() as usize * 2 > n).map(|m| {
        Formula::conj(
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, a)| Formula::not(one(a))),
        )
    }));
    let mut vertices = Vec::new();
    for a in &names {
        let k1 = Formula::k(a.clone(), all1.clone());
        let k0 = Formula::k(a.clone(), all0.clone());
        let undecided = Formula::and(Formula::not(k1.clone()), Formula::not(k0.clone()));
        let p = format!("1_{a}");
        let (up, down) = match policy {
            ConsensusPolicy::Random => (Formula::True, Formula::False),
            ConsensusPolicy::Majority => {
                let f = Formula::not(Formula::k(a.clone(), zero_majority.clone()));
                (f.clone(), f)
            }
        };
        for (kind, pre, post) in [
            ("w", k1, one(a)),
            ("x", undecided.clone(), up),
            ("y", undecided, down),
            ("z", k0, one(a)),
        ] {
            vertices.push(RawActionVertex {
                id: format!("{kind}_{a}"),
                agent: a.clone(),
                pre: pre.to_string(),
                post: BTreeMap::from([(p.clone(), post.to_string())]),
            });
        }
    }
    let mut facets = vec![Vec::new()];
    for a in &names {
        facets = facets
            .into_iter()
            .flat_map(|f: Vec<String>| {
                ["w", "x", "y", "z"].into_iter().map(move |k| {
                    let mut g = f.clone();
                    g.push(format!("{k}_{a}"));
                    g
                })
            })
            .collect();
    }
    ActionModel::from_raw(&RawActionModel {
        agents: names,
        vertices,
        facets,
    })
}
