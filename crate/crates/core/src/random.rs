//! Seeded random models, formulas and belief functions for property tests
//! and benchmarks.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agents::{default_agent_names, AgentSet};
use crate::belief::BeliefAssignment;
use crate::complex::{RawSimplicialModel, RawVertex, SimplicialModel};
use crate::error::Result;
use crate::formula::Formula;
use crate::kripke::{KripkeModel, State};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random simplicial model.
#[derive(Clone, Debug)]
pub struct SimplicialShape {
    pub agents: usize,
    /// Upper bound; duplicates are dropped.
    pub facets: usize,
    pub vertices_per_agent: usize,
    /// Atoms `p_<a>`, `q_<a>`, ... per agent.
    pub atoms_per_agent: usize,
}

impl Default for SimplicialShape {
    fn default() -> Self {
        SimplicialShape {
            agents: 3,
            facets: 6,
            vertices_per_agent: 3,
            atoms_per_agent: 1,
        }
    }
}

pub fn atom_names(agent: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{}_{agent}", (b'p' + i as u8) as char)).collect()
}

/// A random pure chromatic model; facets pick one vertex per colour.
pub fn simplicial<R: Rng>(rng: &mut R, shape: &SimplicialShape) -> Result<SimplicialModel> {
    let names = default_agent_names(shape.agents);
    let per = shape.vertices_per_agent.max(1);
    let mut facets = BTreeSet::new();
    for _ in 0..shape.facets.max(1) {
        facets.insert((0..shape.agents).map(|_| rng.gen_range(0..per)).collect::<Vec<_>>());
    }
    let mut used = vec![BTreeSet::new(); shape.agents];
    for f in &facets {
        for (a, &v) in f.iter().enumerate() {
            used[a].insert(v);
        }
    }
    let mut raw = RawSimplicialModel::new(names.iter().cloned());
    for (a, name) in names.iter().enumerate() {
        let atoms = atom_names(name, shape.atoms_per_agent);
        for &v in &used[a] {
            raw.vertices.push(RawVertex {
                id: format!("{name}{v}"),
                agent: name.clone(),
                atoms: atoms.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect(),
            });
        }
    }
    raw.facets = facets
        .into_iter()
        .map(|f| f.iter().enumerate().map(|(a, v)| format!("{}{v}", names[a])).collect())
        .collect();
    SimplicialModel::from_raw(&raw)
}

/// A random partition of `0..n` into at most `max_blocks` blocks, as block ids.
fn partition<R: Rng>(rng: &mut R, n: usize, max_blocks: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..max_blocks.max(1))).collect()
}

/// A random local proper S5 model with between 1 and `max_states` states.
/// Each agent's atoms are constant on its blocks; properness is enforced by
/// splitting the first agent's blocks where all agents agree.
pub fn local_proper_kripke<R: Rng>(
    rng: &mut R,
    agents: usize,
    max_states: usize,
    atoms_per_agent: usize,
) -> Result<KripkeModel> {
    let names = default_agent_names(agents);
    let n = rng.gen_range(1..=max_states.max(1));
    let mut parts: Vec<Vec<usize>> = (0..agents)
        .map(|_| {
            let k = rng.gen_range(1..=n);
            partition(rng, n, k)
        })
        .collect();
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut fresh = n;
    for s in 0..n {
        let key: Vec<usize> = parts.iter().map(|p| p[s]).collect();
        if seen.insert(key, s).is_some() {
            parts[0][s] = fresh;
            fresh += 1;
        }
    }
    let mut states: Vec<State> = (0..n)
        .map(|s| State {
            id: format!("s{s}"),
            atoms: BTreeSet::new(),
        })
        .collect();
    let mut declared = BTreeSet::new();
    for (a, name) in names.iter().enumerate() {
        for p in atom_names(name, atoms_per_agent) {
            let mut value: BTreeMap<usize, bool> = BTreeMap::new();
            for s in 0..n {
                if *value.entry(parts[a][s]).or_insert_with(|| rng.gen_bool(0.5)) {
                    states[s].atoms.insert(p.clone());
                }
            }
            declared.insert(p);
        }
    }
    KripkeModel::with_atoms(AgentSet::new(names)?, states, parts, Some(declared))
}

/// A random S5 model with global atoms `p`, `q`, ...; not necessarily local or proper.
pub fn kripke<R: Rng>(rng: &mut R, agents: usize, max_states: usize, atoms: usize) -> Result<KripkeModel> {
    let names = default_agent_names(agents);
    let n = rng.gen_range(1..=max_states.max(1));
    let parts: Vec<Vec<usize>> = (0..agents)
        .map(|_| {
            let k = rng.gen_range(1..=n);
            partition(rng, n, k)
        })
        .collect();
    let atom_list: Vec<String> = (0..atoms).map(|i| ((b'p' + i as u8) as char).to_string()).collect();
    let states = (0..n)
        .map(|s| State {
            id: format!("s{s}"),
            atoms: atom_list.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect(),
        })
        .collect();
    KripkeModel::with_atoms(AgentSet::new(names)?, states, parts, Some(atom_list.into_iter().collect()))
}

/// Which operators a random formula may use.
#[derive(Clone, Debug)]
pub struct FormulaShape {
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
    pub depth: usize,
    pub group: bool,
    pub belief: bool,
}

impl FormulaShape {
    pub fn knowledge(agents: &[String], atoms: &[String], depth: usize) -> Self {
        FormulaShape {
            agents: agents.to_vec(),
            atoms: atoms.to_vec(),
            depth,
            group: false,
            belief: false,
        }
    }
}

fn subset<R: Rng>(rng: &mut R, agents: &[String]) -> Vec<String> {
    loop {
        let s: Vec<String> = agents.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// A random formula with modal depth at most `shape.depth`.
pub fn formula<R: Rng>(rng: &mut R, shape: &FormulaShape) -> Formula {
    gen(rng, shape, shape.depth, 4)
}

fn gen<R: Rng>(rng: &mut R, shape: &FormulaShape, depth: usize, fuel: usize) -> Formula {
    let leaf = |rng: &mut R| match shape.atoms.choose(rng) {
        Some(p) if rng.gen_ratio(9, 10) => Formula::atom(p.clone()),
        _ => {
            if rng.gen_bool(0.5) {
                Formula::True
            } else {
                Formula::False
            }
        }
    };
    if fuel == 0 {
        return leaf(rng);
    }
    let modal = depth > 0 && !shape.agents.is_empty();
    let choices = if modal { 10 } else { 5 };
    match rng.gen_range(0..choices) {
        0 | 1 => leaf(rng),
        2 => Formula::not(gen(rng, shape, depth, fuel - 1)),
        3 => Formula::and(gen(rng, shape, depth, fuel - 1), gen(rng, shape, depth, fuel - 1)),
        4 => {
            if rng.gen_bool(0.5) {
                Formula::or(gen(rng, shape, depth, fuel - 1), gen(rng, shape, depth, fuel - 1))
            } else {
                Formula::implies(gen(rng, shape, depth, fuel - 1), gen(rng, shape, depth, fuel - 1))
            }
        }
        5 | 6 => {
            let ag = shape.agents.choose(rng).unwrap().clone();
            let body = gen(rng, shape, depth - 1, fuel - 1);
            if rng.gen_bool(0.5) {
                Formula::k(ag, body)
            } else {
                Formula::khat(ag, body)
            }
        }
        7 if shape.belief => {
            let ag = shape.agents.choose(rng).unwrap().clone();
            let body = gen(rng, shape, depth - 1, fuel - 1);
            if rng.gen_bool(0.5) {
                Formula::b(ag, body)
            } else {
                Formula::BHat(ag, Box::new(body))
            }
        }
        8 | 9 if shape.group => {
            let body = Box::new(gen(rng, shape, depth - 1, fuel - 1));
            match rng.gen_range(0..5) {
                0 => Formula::E(subset(rng, &shape.agents), body),
                1 => Formula::C(subset(rng, &shape.agents), body),
                2 => Formula::D(subset(rng, &shape.agents), body),
                3 => {
                    let k = rng.gen_range(1..=2);
                    Formula::CDFam((0..k).map(|_| subset(rng, &shape.agents)).collect(), body)
                }
                _ => Formula::CDDim(rng.gen_range(0..shape.agents.len()), body),
            }
        }
        _ => {
            let ag = shape.agents.choose(rng).unwrap().clone();
            Formula::k(ag, gen(rng, shape, depth - 1, fuel - 1))
        }
    }
}

/// Idempotent belief functions: per agent a random nonempty set of fixed
/// vertices, every other vertex sent to one of them.
pub fn belief<R: Rng>(rng: &mut R, model: &SimplicialModel) -> Result<BeliefAssignment> {
    let mut pairs = Vec::new();
    for a in model.agents().ids() {
        let vs: Vec<usize> = (0..model.num_vertices()).filter(|&v| model.vertex(v).agent == a).collect();
        let mut fixed: Vec<usize> = vs.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if fixed.is_empty() {
            fixed.push(*vs.choose(rng).expect("every colour has a vertex"));
        }
        for &v in &vs {
            let t = if fixed.contains(&v) { v } else { *fixed.choose(rng).unwrap() };
            pairs.push((v, t));
        }
    }
    BeliefAssignment::from_pairs(model, &pairs)
}
