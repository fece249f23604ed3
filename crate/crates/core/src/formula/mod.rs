//! The epistemic language: syntax tree, text grammar, printer, and the
//! shared-node form used by the evaluators.
//!
//! ```text
//! φ ::= true | false | p_a | ~φ | φ & φ | φ | φ | φ -> φ | (φ)
//!     | K[a] φ | Khat[a] φ | E[a,b] φ | C[a,b] φ | D[a,b] φ
//!     | CD[{a,b},{b,c}] φ | CDdim[m] φ | B[a] φ | Bhat[a] φ
//! ```
//!
//! `->` is right associative and binds loosest, then `|`, then `&`.
//! Prefix operators bind tightest. Atoms are identifiers over
//! `[A-Za-z0-9_'^.]`, or any text in double quotes.

mod dag;
mod parse;
mod print;

use std::collections::BTreeSet;

pub use dag::{Arena, Bound, Node, NodeId};
pub use parse::parse;

use crate::agents::AgentSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// A variable; its owner is the agent named by its `_agent` suffix.
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    K(String, Box<Formula>),
    KHat(String, Box<Formula>),
    E(Vec<String>, Box<Formula>),
    C(Vec<String>, Box<Formula>),
    D(Vec<String>, Box<Formula>),
    CDFam(Vec<Vec<String>>, Box<Formula>),
    CDDim(usize, Box<Formula>),
    B(String, Box<Formula>),
    BHat(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn k(agent: impl Into<String>, f: Formula) -> Self {
        Formula::K(agent.into(), Box::new(f))
    }

    pub fn khat(agent: impl Into<String>, f: Formula) -> Self {
        Formula::KHat(agent.into(), Box::new(f))
    }

    pub fn b(agent: impl Into<String>, f: Formula) -> Self {
        Formula::B(agent.into(), Box::new(f))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(f) | K(_, f) | KHat(_, f) | E(_, f) | C(_, f) | D(_, f) | CDFam(_, f) | CDDim(_, f) | B(_, f)
            | BHat(_, f) => vec![f],
            And(a, b) | Or(a, b) | Implies(a, b) => vec![a, b],
        }
    }

    /// Nesting depth of modal operators.
    pub fn modal_depth(&self) -> usize {
        use Formula::*;
        let inner = self.children().iter().map(|c| c.modal_depth()).max().unwrap_or(0);
        match self {
            K(..) | KHat(..) | E(..) | C(..) | D(..) | CDFam(..) | CDDim(..) | B(..) | BHat(..) => inner + 1,
            _ => inner,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Agents named by modalities.
    pub fn agents(&self) -> BTreeSet<String> {
        use Formula::*;
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            K(a, _) | KHat(a, _) | B(a, _) | BHat(a, _) => {
                out.insert(a.clone());
            }
            E(g, _) | C(g, _) | D(g, _) => out.extend(g.iter().cloned()),
            CDFam(fam, _) => out.extend(fam.iter().flatten().cloned()),
            _ => {}
        });
        out
    }

    pub fn uses_belief(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::B(..) | Formula::BHat(..)));
        found
    }

    fn visit(&self, g: &mut impl FnMut(&Formula)) {
        g(self);
        for c in self.children() {
            c.visit(g);
        }
    }

    /// Are all agents and atoms of the formula inside the tag's language?
    pub fn in_language(&self, tag: &LanguageTag) -> bool {
        use Formula::*;
        let within = |g: &[String]| g.iter().all(|a| tag.agents.contains(a));
        let here = match self {
            Atom(p) => tag.allows_atom(p),
            K(a, _) | KHat(a, _) | B(a, _) | BHat(a, _) => tag.agents.contains(a),
            E(g, _) | C(g, _) | D(g, _) => within(g),
            CDFam(fam, _) => fam.iter().all(|g| within(g)),
            CDDim(m, _) => *m < tag.agents.len(),
            _ => true,
        };
        here && self.children().iter().all(|c| c.in_language(tag))
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A sublanguage: agents A' and the atoms owned by them.
#[derive(Clone, Debug)]
pub struct LanguageTag {
    pub agents: BTreeSet<String>,
    universe: AgentSet,
}

impl LanguageTag {
    /// The language of the agents `subset`, with atom ownership read against `universe`.
    pub fn new<S: AsRef<str>>(universe: &AgentSet, subset: &[S]) -> Self {
        LanguageTag {
            agents: subset.iter().map(|s| s.as_ref().to_string()).collect(),
            universe: universe.clone(),
        }
    }

    pub fn allows_atom(&self, p: &str) -> bool {
        self.universe
            .owner_of(p)
            .is_some_and(|a| self.agents.contains(self.universe.name(a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn language_membership() {
        let ags = AgentSet::new(["a", "b", "c"]).unwrap();
        let bc = LanguageTag::new(&ags, &["b", "c"]);
        assert!(!parse("K[a] p_c").unwrap().in_language(&bc));
        assert!(parse("K[b] p_c & ~K[c] p_b").unwrap().in_language(&bc));
        assert!(parse("true").unwrap().in_language(&bc));
        assert!(!parse("K[b] p_a").unwrap().in_language(&bc));
        assert!(parse("CDdim[1] p_b").unwrap().in_language(&bc));
        assert!(!parse("CDdim[2] p_b").unwrap().in_language(&bc));
    }

    #[test]
    fn depth_and_agents() {
        let f = parse("C[a,b] (K[c] p_c -> (K[a] ~p_a | K[b] ~p_b))").unwrap();
        assert_eq!(f.modal_depth(), 2);
        assert_eq!(f.agents().len(), 3);
        assert_eq!(f.atoms().len(), 3);
    }
}
