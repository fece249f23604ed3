//! Finite multi-agent S5 models, stored as one partition per agent.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::agents::{AgentId, AgentSet};
use crate::complex::UnionFind;
use crate::error::{Error, Result};
use crate::iso::{self, Labels, Structure};

pub type StateIdx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub id: String,
    pub atoms: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawState {
    pub id: String,
    #[serde(default)]
    pub atoms: Vec<String>,
}

/// A relation in a Kripke file: either blocks, or pairs to be closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawRelation {
    Blocks(Vec<Vec<String>>),
    Pairs { pairs: Vec<(String, String)> },
}

/// The JSON shape of a Kripke model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawKripkeModel {
    pub agents: Vec<String>,
    pub states: Vec<RawState>,
    pub relations: BTreeMap<String, RawRelation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct KripkeModel {
    agents: AgentSet,
    states: Vec<State>,
    state_index: HashMap<String, StateIdx>,
    atoms: BTreeSet<String>,
    /// `block[a][s]`: block of s under agent a, numbered by first occurrence.
    block: Vec<Vec<usize>>,
    members: Vec<Vec<Vec<StateIdx>>>,
}

impl fmt::Debug for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KripkeModel")
            .field("agents", &self.agents)
            .field("states", &self.states.len())
            .finish()
    }
}

fn normalize(labels: &[usize]) -> (Vec<usize>, Vec<Vec<StateIdx>>) {
    let mut ids = HashMap::new();
    let mut members: Vec<Vec<StateIdx>> = Vec::new();
    let block = labels
        .iter()
        .enumerate()
        .map(|(s, &l)| {
            let b = *ids.entry(l).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[b].push(s);
            b
        })
        .collect();
    (block, members)
}

impl KripkeModel {
    /// `partitions[a][s]` is any label; states with equal labels are a-indistinguishable.
    pub fn new(agents: AgentSet, states: Vec<State>, partitions: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_atoms(agents, states, partitions, None)
    }

    pub fn with_atoms(
        agents: AgentSet,
        states: Vec<State>,
        partitions: Vec<Vec<usize>>,
        declared: Option<BTreeSet<String>>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidKripke("no states".into()));
        }
        if partitions.len() != agents.len() || partitions.iter().any(|p| p.len() != states.len()) {
            return Err(Error::InvalidKripke("one partition per agent over all states required".into()));
        }
        let mut state_index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if state_index.insert(s.id.clone(), i).is_some() {
                return Err(Error::InvalidKripke(format!("state `{}` declared twice", s.id)));
            }
        }
        let used: BTreeSet<String> = states.iter().flat_map(|s| s.atoms.iter().cloned()).collect();
        let atoms = match declared {
            Some(d) => {
                if let Some(p) = used.iter().find(|p| !d.contains(*p)) {
                    return Err(Error::UnknownAtom(p.clone()));
                }
                d
            }
            None => used,
        };
        let (block, members) = partitions.iter().map(|p| normalize(p)).unzip();
        Ok(KripkeModel {
            agents,
            states,
            state_index,
            atoms,
            block,
            members,
        })
    }

    pub fn from_raw(raw: &RawKripkeModel) -> Result<Self> {
        let agents = AgentSet::new(raw.agents.iter().cloned())?;
        let states: Vec<State> = raw
            .states
            .iter()
            .map(|s| State {
                id: s.id.clone(),
                atoms: s.atoms.iter().cloned().collect(),
            })
            .collect();
        let index: HashMap<&str, usize> = raw.states.iter().enumerate().map(|(i, s)| (s.id.as_str(), i)).collect();
        let lookup = |id: &String| index.get(id.as_str()).copied().ok_or_else(|| Error::UnknownState(id.clone()));
        for r in raw.relations.keys() {
            agents.require(r)?;
        }
        let mut partitions = Vec::new();
        for a in agents.names() {
            let rel = raw
                .relations
                .get(a)
                .ok_or_else(|| Error::InvalidKripke(format!("no relation for agent `{a}`")))?;
            let mut uf = UnionFind::new(states.len());
            let closed;
            match rel {
                RawRelation::Blocks(blocks) => {
                    let mut covered = vec![0usize; states.len()];
                    for b in blocks {
                        let ids = b.iter().map(lookup).collect::<Result<Vec<_>>>()?;
                        for &s in &ids {
                            covered[s] += 1;
                        }
                        for w in ids.windows(2) {
                            uf.union(w[0], w[1]);
                        }
                    }
                    closed = covered.iter().any(|&c| c != 1);
                }
                RawRelation::Pairs { pairs } => {
                    for (s, t) in pairs {
                        uf.union(lookup(s)?, lookup(t)?);
                    }
                    closed = true;
                }
            }
            if closed {
                log::warn!("relation of agent `{a}` closed into an equivalence relation");
            }
            partitions.push(uf.labels());
        }
        let declared = raw.atoms.as_ref().map(|v| v.iter().cloned().collect());
        Self::with_atoms(agents, states, partitions, declared)
    }

    pub fn to_raw(&self) -> RawKripkeModel {
        let relations = self
            .agents
            .ids()
            .map(|a| {
                let blocks = self.members[a]
                    .iter()
                    .map(|b| b.iter().map(|&s| self.states[s].id.clone()).collect())
                    .collect();
                (self.agents.name(a).to_string(), RawRelation::Blocks(blocks))
            })
            .collect();
        let used: BTreeSet<&String> = self.states.iter().flat_map(|s| s.atoms.iter()).collect();
        let atoms = if used.len() == self.atoms.len() {
            None
        } else {
            Some(self.atoms.iter().cloned().collect())
        };
        RawKripkeModel {
            agents: self.agents.names().to_vec(),
            states: self
                .states
                .iter()
                .map(|s| RawState {
                    id: s.id.clone(),
                    atoms: s.atoms.iter().cloned().collect(),
                })
                .collect(),
            relations,
            atoms,
        }
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, s: StateIdx) -> &State {
        &self.states[s]
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_by_id(&self, id: &str) -> Option<StateIdx> {
        self.state_index.get(id).copied()
    }

    pub fn require_state(&self, id: &str) -> Result<StateIdx> {
        self.state_by_id(id).ok_or_else(|| Error::UnknownState(id.to_string()))
    }

    /// Declared atoms P.
    pub fn atoms(&self) -> &BTreeSet<String> {
        &self.atoms
    }

    pub fn holds(&self, s: StateIdx, atom: &str) -> bool {
        self.states[s].atoms.contains(atom)
    }

    /// Block of `s` in the partition of agent `a`.
    pub fn block(&self, a: AgentId, s: StateIdx) -> usize {
        self.block[a][s]
    }

    pub fn block_ids(&self, a: AgentId) -> &[usize] {
        &self.block[a]
    }

    pub fn blocks(&self, a: AgentId) -> &[Vec<StateIdx>] {
        &self.members[a]
    }

    /// The class [s]_a.
    pub fn class(&self, a: AgentId, s: StateIdx) -> &[StateIdx] {
        &self.members[a][self.block[a][s]]
    }

    pub fn related(&self, a: AgentId, s: StateIdx, t: StateIdx) -> bool {
        self.block[a][s] == self.block[a][t]
    }

    /// Is `p` constant on every block of agent `a`?
    pub fn is_local_for(&self, p: &str, a: AgentId) -> bool {
        self.members[a]
            .iter()
            .all(|b| b.iter().all(|&s| self.holds(s, p) == self.holds(b[0], p)))
    }

    /// Does the intersection of all partitions separate every pair of states?
    pub fn is_proper(&self) -> bool {
        self.improper_witness().is_none()
    }

    pub fn improper_witness(&self) -> Option<(StateIdx, StateIdx)> {
        let mut seen: HashMap<Vec<usize>, StateIdx> = HashMap::new();
        for s in 0..self.states.len() {
            let key: Vec<usize> = self.agents.ids().map(|a| self.block[a][s]).collect();
            if let Some(&t) = seen.get(&key) {
                return Some((t, s));
            }
            seen.insert(key, s);
        }
        None
    }

    pub fn analyze(&self) -> LocalityReport {
        let local_for: BTreeMap<String, Vec<String>> = self
            .atoms
            .iter()
            .map(|p| {
                let ags = self
                    .agents
                    .ids()
                    .filter(|&a| self.is_local_for(p, a))
                    .map(|a| self.agents.name(a).to_string())
                    .collect();
                (p.clone(), ags)
            })
            .collect();
        let is_local = local_for.values().all(|v| !v.is_empty());
        let distinct: HashSet<&BTreeSet<String>> = self.states.iter().map(|s| &s.atoms).collect();
        LocalityReport {
            is_local,
            is_proper: self.is_proper(),
            is_factual: distinct.len() == self.states.len(),
            local_for,
        }
    }

    pub fn to_distributed(&self) -> Result<DistributedView> {
        let report = self.analyze();
        if !report.is_local || !report.is_proper {
            return Err(Error::NotLocalProper(report.describe()));
        }
        let tuples = (0..self.states.len())
            .map(|s| self.agents.ids().map(|a| self.block[a][s]).collect())
            .collect();
        let local_valuation = self
            .agents
            .ids()
            .map(|a| {
                self.members[a]
                    .iter()
                    .map(|b| {
                        self.states[b[0]]
                            .atoms
                            .iter()
                            .filter(|p| self.is_local_for(p, a))
                            .cloned()
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(DistributedView { tuples, local_valuation })
    }

    /// Add one agent per coalition, related by the intersection of its members' relations.
    pub fn enrich_with_coalitions<S: AsRef<str>>(&self, coalitions: &[Vec<S>]) -> Result<KripkeModel> {
        let mut names = self.agents.names().to_vec();
        let mut partitions = self.block.clone();
        for c in coalitions {
            if c.is_empty() {
                return Err(Error::EmptyAgentSet);
            }
            let mask = self.agents.mask_of(c)?;
            let members = self.agents.names_of_mask(mask);
            names.push(format!("D({})", members.join(",")));
            partitions.push(self.intersection_labels(mask));
        }
        KripkeModel::with_atoms(
            AgentSet::new(names)?,
            self.states.clone(),
            partitions,
            Some(self.atoms.clone()),
        )
    }

    /// Block labels of the common refinement of the agents in `mask`.
    pub fn intersection_labels(&self, mask: crate::agents::AgentMask) -> Vec<usize> {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        (0..self.states.len())
            .map(|s| {
                let key: Vec<usize> = crate::agents::mask_members(mask).map(|a| self.block[a][s]).collect();
                let next = ids.len();
                *ids.entry(key).or_insert(next)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityReport {
    /// For each atom, the agents for which it is local.
    pub local_for: BTreeMap<String, Vec<String>>,
    pub is_local: bool,
    pub is_proper: bool,
    pub is_factual: bool,
}

impl LocalityReport {
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (p, ags) in &self.local_for {
            if ags.is_empty() {
                parts.push(format!("atom `{p}` is local for no agent"));
            }
        }
        if !self.is_proper {
            parts.push("model is improper".into());
        }
        parts.join("; ")
    }
}

/// Each state as its tuple of block ids, with per-agent local valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributedView {
    pub tuples: Vec<Vec<usize>>,
    /// `local_valuation[a][block]`: atoms local for a that hold on the block.
    pub local_valuation: Vec<Vec<BTreeSet<String>>>,
}

fn structure(m: &KripkeModel, order: &[String], labels: &mut Labels<BTreeSet<String>>) -> Structure {
    let agents: Vec<usize> = order.iter().map(|n| m.agents.get(n).expect("aligned agents")).collect();
    Structure {
        point_label: m.states.iter().map(|s| labels.get(s.atoms.clone())).collect(),
        block: agents.iter().map(|&a| m.block[a].clone()).collect(),
        block_label: agents.iter().map(|&a| vec![0; m.members[a].len()]).collect(),
    }
}

/// A bijection of states preserving atoms and every relation.
pub fn kripke_isomorphic(m1: &KripkeModel, m2: &KripkeModel) -> Option<Vec<StateIdx>> {
    if !m1.agents.same_members(&m2.agents) || m1.num_states() != m2.num_states() {
        return None;
    }
    let order = m1.agents.names().to_vec();
    let mut labels = Labels::default();
    let (s1, s2) = (structure(m1, &order, &mut labels), structure(m2, &order, &mut labels));
    iso::find(&s1, &s2)
}

/// Convenience constructor used by tests and scenarios: states as (id, atoms)
/// and each agent's relation as blocks of state ids.
pub fn kripke_from_blocks(agents: &[&str], states: &[(&str, &[&str])], relations: &[(&str, &[&[&str]])]) -> Result<KripkeModel> {
    let raw = RawKripkeModel {
        agents: agents.iter().map(|s| s.to_string()).collect(),
        states: states
            .iter()
            .map(|(id, atoms)| RawState {
                id: id.to_string(),
                atoms: atoms.iter().map(|s| s.to_string()).collect(),
            })
            .collect(),
        relations: relations
            .iter()
            .map(|(a, blocks)| {
                let blocks = blocks.iter().map(|b| b.iter().map(|s| s.to_string()).collect()).collect();
                (a.to_string(), RawRelation::Blocks(blocks))
            })
            .collect(),
        atoms: None,
    };
    KripkeModel::from_raw(&raw)
}
