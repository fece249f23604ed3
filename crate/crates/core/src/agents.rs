use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of an agent inside its [`AgentSet`]; doubles as the vertex colour.
pub type AgentId = usize;

/// Bit set of agents. Agent sets are limited to 64 members.
pub type AgentMask = u64;

pub const MAX_AGENTS: usize = 64;

/// Ordered, duplicate-free list of agent names.
#[derive(Clone, PartialEq, Eq)]
pub struct AgentSet {
    names: Vec<String>,
    index: HashMap<String, AgentId>,
}

impl AgentSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAgentSet);
        }
        if names.len() > MAX_AGENTS {
            return Err(Error::InvalidModel(crate::complex::ValidationReport::single(
                crate::complex::Violation::TooManyAgents(names.len()),
            )));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidModel(crate::complex::ValidationReport::single(
                    crate::complex::Violation::DuplicateAgent(n.clone()),
                )));
            }
        }
        Ok(AgentSet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: AgentId) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<AgentId> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<AgentId> {
        self.get(name).ok_or_else(|| Error::UnknownAgent(name.to_string()))
    }

    pub fn ids(&self) -> std::ops::Range<AgentId> {
        0..self.names.len()
    }

    pub fn full_mask(&self) -> AgentMask {
        mask_below(self.names.len())
    }

    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<AgentMask> {
        names
            .iter()
            .try_fold(0, |m, n| Ok(m | 1 << self.require(n.as_ref())?))
    }

    pub fn names_of_mask(&self, mask: AgentMask) -> Vec<String> {
        self.ids()
            .filter(|&a| mask >> a & 1 == 1)
            .map(|a| self.names[a].clone())
            .collect()
    }

    /// The agent owning a local variable, read from the `name_agent` suffix.
    pub fn owner_of(&self, atom: &str) -> Option<AgentId> {
        let cut = atom.rfind('_')?;
        if cut == 0 {
            return None;
        }
        if let Some(a) = self.get(&atom[cut + 1..]) {
            return Some(a);
        }
        // agent names may themselves contain underscores
        self.ids().find(|&a| {
            let suffix = &self.names[a];
            atom.len() > suffix.len() + 1
                && atom.ends_with(suffix.as_str())
                && atom.as_bytes()[atom.len() - suffix.len() - 1] == b'_'
        })
    }

    /// Same agents, possibly in a different order.
    pub fn same_members(&self, other: &AgentSet) -> bool {
        self.len() == other.len() && self.names.iter().all(|n| other.get(n).is_some())
    }
}

impl fmt::Debug for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

pub fn mask_below(n: usize) -> AgentMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_members(mask: AgentMask) -> impl Iterator<Item = AgentId> {
    (0..64).filter(move |a| mask >> a & 1 == 1)
}

/// Default agent names for generated scenarios: a, b, c, ...
pub fn default_agent_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn owner_by_suffix() {
        let ags = AgentSet::new(["a", "b", "ab"]).unwrap();
        assert_eq!(ags.owner_of("p_a"), Some(0));
        assert_eq!(ags.owner_of("x_ab"), Some(2));
        assert_eq!(ags.owner_of("1_b"), Some(1));
        assert_eq!(ags.owner_of("p"), None);
        assert_eq!(ags.owner_of("p_c"), None);
    }

    #[test]
    fn rejects_empty_and_duplicates() {
        assert_eq!(AgentSet::new(Vec::<String>::new()), Err(Error::EmptyAgentSet));
        assert!(AgentSet::new(["a", "a"]).is_err());
    }
}
