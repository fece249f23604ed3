use std::collections::HashMap;

use super::Formula;
use crate::agents::{AgentId, AgentMask, AgentSet};
use crate::error::{Error, Result};

pub type NodeId = usize;

/// A formula node with agents resolved to indices and children shared by id.
/// `E` has no node of its own: it is expanded into a conjunction of `K`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    True,
    False,
    Atom(String),
    Not(NodeId),
    And(Vec<NodeId>),
    Or(Vec<NodeId>),
    Implies(NodeId, NodeId),
    K(AgentId, NodeId),
    KHat(AgentId, NodeId),
    C(AgentMask, NodeId),
    D(AgentMask, NodeId),
    CDFam(Vec<AgentMask>, NodeId),
    CDDim(usize, NodeId),
    B(AgentId, NodeId),
    BHat(AgentId, NodeId),
}

impl Node {
    pub fn children(&self) -> Vec<NodeId> {
        use Node::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(c) | K(_, c) | KHat(_, c) | C(_, c) | D(_, c) | CDFam(_, c) | CDDim(_, c) | B(_, c) | BHat(_, c) => {
                vec![*c]
            }
            And(cs) | Or(cs) => cs.clone(),
            Implies(a, b) => vec![*a, *b],
        }
    }
}

/// Hash-consed store of nodes. Children always have smaller ids than their parents.
#[derive(Clone, Debug, Default)]
pub struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
}

impl Arena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Conjunction with the usual unit laws; a single item is returned as is.
    pub fn and(&mut self, items: Vec<NodeId>) -> NodeId {
        match items.len() {
            0 => self.add(Node::True),
            1 => items[0],
            _ => self.add(Node::And(items)),
        }
    }

    pub fn or(&mut self, items: Vec<NodeId>) -> NodeId {
        match items.len() {
            0 => self.add(Node::False),
            1 => items[0],
            _ => self.add(Node::Or(items)),
        }
    }

    /// Ids reachable from `root`, in increasing (children-first) order.
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        let mut mark = vec![false; root + 1];
        mark[root] = true;
        for id in (0..=root).rev() {
            if mark[id] {
                for c in self.nodes[id].children() {
                    mark[c] = true;
                }
            }
        }
        (0..=root).filter(|&i| mark[i]).collect()
    }

    pub fn uses_belief(&self, root: NodeId) -> bool {
        self.reachable(root)
            .iter()
            .any(|&i| matches!(self.nodes[i], Node::B(..) | Node::BHat(..)))
    }

    /// Size of the formula once sharing is expanded (saturating).
    pub fn tree_size(&self, root: NodeId) -> u64 {
        let mut size = vec![0u64; root + 1];
        for id in self.reachable(root) {
            size[id] = self.nodes[id]
                .children()
                .iter()
                .fold(1u64, |acc, &c| acc.saturating_add(size[c]));
        }
        size[root]
    }

    /// Expand a node into a syntax tree. Conjunctions and disjunctions nest to the left.
    pub fn to_formula(&self, id: NodeId, agents: &AgentSet) -> Formula {
        let name = |a: AgentId| agents.name(a).to_string();
        let rec = |c: NodeId| Box::new(self.to_formula(c, agents));
        match &self.nodes[id] {
            Node::True => Formula::True,
            Node::False => Formula::False,
            Node::Atom(p) => Formula::Atom(p.clone()),
            Node::Not(c) => Formula::Not(rec(*c)),
            Node::And(cs) => Formula::conj(cs.iter().map(|&c| self.to_formula(c, agents))),
            Node::Or(cs) => Formula::disj(cs.iter().map(|&c| self.to_formula(c, agents))),
            Node::Implies(a, b) => Formula::Implies(rec(*a), rec(*b)),
            Node::K(a, c) => Formula::K(name(*a), rec(*c)),
            Node::KHat(a, c) => Formula::KHat(name(*a), rec(*c)),
            Node::C(m, c) => Formula::C(agents.names_of_mask(*m), rec(*c)),
            Node::D(m, c) => Formula::D(agents.names_of_mask(*m), rec(*c)),
            Node::CDFam(fam, c) => Formula::CDFam(fam.iter().map(|&m| agents.names_of_mask(m)).collect(), rec(*c)),
            Node::CDDim(m, c) => Formula::CDDim(*m, rec(*c)),
            Node::B(a, c) => Formula::B(name(*a), rec(*c)),
            Node::BHat(a, c) => Formula::BHat(name(*a), rec(*c)),
        }
    }

    /// Print the shared form: one line per node, children referenced as `#id`.
    pub fn dag_listing(&self, root: NodeId, agents: &AgentSet) -> String {
        let r = |c: &NodeId| format!("#{c}");
        let list = |cs: &[NodeId]| cs.iter().map(r).collect::<Vec<_>>();
        let mut out = String::new();
        for id in self.reachable(root) {
            let line = match &self.nodes[id] {
                Node::True => "true".to_string(),
                Node::False => "false".to_string(),
                Node::Atom(p) => Formula::Atom(p.clone()).to_string(),
                Node::Not(c) => format!("~{}", r(c)),
                Node::And(cs) => list(cs).join(" & "),
                Node::Or(cs) => list(cs).join(" | "),
                Node::Implies(a, b) => format!("{} -> {}", r(a), r(b)),
                Node::K(a, c) => format!("K[{}] {}", agents.name(*a), r(c)),
                Node::KHat(a, c) => format!("Khat[{}] {}", agents.name(*a), r(c)),
                Node::C(m, c) => format!("C[{}] {}", agents.names_of_mask(*m).join(","), r(c)),
                Node::D(m, c) => format!("D[{}] {}", agents.names_of_mask(*m).join(","), r(c)),
                Node::CDFam(fam, c) => {
                    let sets: Vec<String> =
                        fam.iter().map(|&m| format!("{{{}}}", agents.names_of_mask(m).join(","))).collect();
                    format!("CD[{}] {}", sets.join(","), r(c))
                }
                Node::CDDim(m, c) => format!("CDdim[{m}] {}", r(c)),
                Node::B(a, c) => format!("B[{}] {}", agents.name(*a), r(c)),
                Node::BHat(a, c) => format!("Bhat[{}] {}", agents.name(*a), r(c)),
            };
            out.push_str(&format!("#{id} = {line}\n"));
        }
        out
    }

    /// Add a syntax tree, resolving agents and checking atoms.
    pub fn bind(&mut self, f: &Formula, agents: &AgentSet, atom_ok: &dyn Fn(&str) -> bool) -> Result<NodeId> {
        use Formula as F;
        let group = |g: &[String]| -> Result<AgentMask> {
            if g.is_empty() {
                return Err(Error::EmptyAgentSet);
            }
            agents.mask_of(g)
        };
        let node = match f {
            F::True => Node::True,
            F::False => Node::False,
            F::Atom(p) => {
                if !atom_ok(p) {
                    return Err(Error::UnknownAtom(p.clone()));
                }
                Node::Atom(p.clone())
            }
            F::Not(g) => Node::Not(self.bind(g, agents, atom_ok)?),
            F::And(a, b) => {
                let (x, y) = (self.bind(a, agents, atom_ok)?, self.bind(b, agents, atom_ok)?);
                Node::And(vec![x, y])
            }
            F::Or(a, b) => {
                let (x, y) = (self.bind(a, agents, atom_ok)?, self.bind(b, agents, atom_ok)?);
                Node::Or(vec![x, y])
            }
            F::Implies(a, b) => {
                let (x, y) = (self.bind(a, agents, atom_ok)?, self.bind(b, agents, atom_ok)?);
                Node::Implies(x, y)
            }
            F::K(a, g) => Node::K(agents.require(a)?, self.bind(g, agents, atom_ok)?),
            F::KHat(a, g) => Node::KHat(agents.require(a)?, self.bind(g, agents, atom_ok)?),
            F::B(a, g) => Node::B(agents.require(a)?, self.bind(g, agents, atom_ok)?),
            F::BHat(a, g) => Node::BHat(agents.require(a)?, self.bind(g, agents, atom_ok)?),
            F::E(g, body) => {
                let mask = group(g)?;
                let inner = self.bind(body, agents, atom_ok)?;
                let ks = crate::agents::mask_members(mask).map(|a| self.add(Node::K(a, inner))).collect();
                return Ok(self.and(ks));
            }
            F::C(g, body) => Node::C(group(g)?, self.bind(body, agents, atom_ok)?),
            F::D(g, body) => Node::D(group(g)?, self.bind(body, agents, atom_ok)?),
            F::CDFam(fam, body) => {
                if fam.is_empty() {
                    return Err(Error::EmptyAgentSet);
                }
                let masks = fam.iter().map(|g| group(g)).collect::<Result<Vec<_>>>()?;
                Node::CDFam(masks, self.bind(body, agents, atom_ok)?)
            }
            F::CDDim(m, body) => {
                if *m >= agents.len() {
                    return Err(Error::DimensionArgument { m: *m, agents: agents.len() });
                }
                Node::CDDim(*m, self.bind(body, agents, atom_ok)?)
            }
        };
        Ok(self.add(node))
    }
}

/// A formula bound to an agent set.
#[derive(Clone, Debug)]
pub struct Bound {
    pub arena: Arena,
    pub root: NodeId,
}

impl Bound {
    pub fn new(f: &Formula, agents: &AgentSet, atom_ok: &dyn Fn(&str) -> bool) -> Result<Self> {
        let mut arena = Arena::new();
        let root = arena.bind(f, agents, atom_ok)?;
        Ok(Bound { arena, root })
    }
}
