//! Truth of formulas in Kripke models and in simplicial models under the
//! facet, multi-pointed, language-restricted and simplex semantics.
//!
//! Evaluators label every node of a bound formula with its truth vector
//! over all points, children first, so each (point, subformula) pair is
//! computed once per query.

use std::collections::VecDeque;

use crate::agents::{mask_members, AgentMask};
use crate::belief::{BeliefAssignment, Kd45Frame};
use crate::complex::{FacetIdx, Simplex, SimplicialModel};
use crate::error::{Error, Result};
use crate::formula::{Arena, Bound, Formula, LanguageTag, Node, NodeId};
use crate::kripke::{KripkeModel, StateIdx};

/// Evaluation mode for simplicial models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Facet,
    Multipoint,
    Restricted,
    Simplex,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "facet" => Ok(Mode::Facet),
            "multipoint" => Ok(Mode::Multipoint),
            "restricted" => Ok(Mode::Restricted),
            "simplex" => Ok(Mode::Simplex),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// Truth vectors per node; nodes not reachable from the root stay empty.
pub type Labelling = Vec<Vec<bool>>;

/// Bind a formula against a simplicial model: agents must exist, atoms must be owned.
pub fn bind_simplicial(model: &SimplicialModel, f: &Formula) -> Result<Bound> {
    let agents = model.agents();
    Bound::new(f, agents, &|p| agents.owner_of(p).is_some())
}

/// Bind a formula against a Kripke model: atoms must be declared.
pub fn bind_kripke(model: &KripkeModel, f: &Formula) -> Result<Bound> {
    Bound::new(f, model.agents(), &|p| model.atoms().contains(p))
}

// ---------------------------------------------------------------------------
// Simplicial models

/// Facet-level evaluator holding the per-model adjacency index.
pub struct FacetEvaluator<'m> {
    model: &'m SimplicialModel,
    belief: Option<&'m BeliefAssignment>,
    /// For each facet, the other facets it meets and the colours of the intersection.
    adjacency: Vec<Vec<(FacetIdx, AgentMask)>>,
}

impl<'m> FacetEvaluator<'m> {
    pub fn new(model: &'m SimplicialModel) -> Self {
        let n = model.num_facets();
        let mut adjacency = Vec::with_capacity(n);
        let mut scratch: Vec<AgentMask> = vec![0; n];
        let mut touched = Vec::new();
        for x in 0..n {
            for (a, &v) in model.facet(x).iter().enumerate() {
                for &y in model.vertex_star(v) {
                    if y != x {
                        if scratch[y] == 0 {
                            touched.push(y);
                        }
                        scratch[y] |= 1 << a;
                    }
                }
            }
            touched.sort_unstable();
            adjacency.push(touched.iter().map(|&y| (y, scratch[y])).collect());
            for &y in &touched {
                scratch[y] = 0;
            }
            touched.clear();
        }
        FacetEvaluator {
            model,
            belief: None,
            adjacency,
        }
    }

    pub fn with_belief(mut self, belief: Option<&'m BeliefAssignment>) -> Self {
        self.belief = belief;
        self
    }

    pub fn model(&self) -> &SimplicialModel {
        self.model
    }

    /// Neighbouring facets with the colour sets of the intersections.
    pub fn adjacency(&self, x: FacetIdx) -> &[(FacetIdx, AgentMask)] {
        &self.adjacency[x]
    }

    /// Components of the facet graph whose edges satisfy `edge`.
    pub fn components(&self, edge: impl Fn(AgentMask) -> bool) -> Vec<usize> {
        let n = self.model.num_facets();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(y, m) in &self.adjacency[x] {
                    if comp[y] == usize::MAX && edge(m) {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// The facets reachable from `x` through edges satisfying `edge`.
    pub fn reach(&self, x: FacetIdx, edge: impl Fn(AgentMask) -> bool) -> Vec<FacetIdx> {
        let comp = self.components(edge);
        (0..self.model.num_facets()).filter(|&y| comp[y] == comp[x]).collect()
    }

    fn all_per_component(&self, comp: &[usize], body: &[bool]) -> Vec<bool> {
        let k = comp.iter().max().map_or(0, |m| m + 1);
        let mut ok = vec![true; k];
        for (x, &c) in comp.iter().enumerate() {
            ok[c] &= body[x];
        }
        comp.iter().map(|&c| ok[c]).collect()
    }

    fn star_all(&self, v: usize, body: &[bool]) -> bool {
        self.model.vertex_star(v).iter().all(|&y| body[y])
    }

    fn belief_target(&self, x: FacetIdx, a: usize) -> Result<usize> {
        let bf = self.belief.ok_or(Error::BeliefWithoutAssignment)?;
        Ok(bf.target(self.model.facet(x)[a]))
    }

    /// Truth vectors over all facets for every node reachable from `root`.
    pub fn label(&self, arena: &Arena, root: NodeId) -> Result<Labelling> {
        let n = self.model.num_facets();
        let mut val: Labelling = vec![Vec::new(); root + 1];
        for id in arena.reachable(root) {
            let row: Vec<bool> = match arena.node(id) {
                Node::True => vec![true; n],
                Node::False => vec![false; n],
                Node::Atom(p) => (0..n)
                    .map(|x| self.model.facet(x).iter().any(|&v| self.model.vertex(v).atoms.contains(p)))
                    .collect(),
                Node::Not(c) => val[*c].iter().map(|b| !b).collect(),
                Node::And(cs) => (0..n).map(|x| cs.iter().all(|&c| val[c][x])).collect(),
                Node::Or(cs) => (0..n).map(|x| cs.iter().any(|&c| val[c][x])).collect(),
                Node::Implies(a, b) => (0..n).map(|x| !val[*a][x] || val[*b][x]).collect(),
                Node::K(a, c) => {
                    let body = &val[*c];
                    (0..n).map(|x| self.star_all(self.model.facet(x)[*a], body)).collect()
                }
                Node::KHat(a, c) => {
                    let body = &val[*c];
                    (0..n)
                        .map(|x| self.model.vertex_star(self.model.facet(x)[*a]).iter().any(|&y| body[y]))
                        .collect()
                }
                Node::D(mask, c) => {
                    let body = &val[*c];
                    (0..n)
                        .map(|x| body[x] && self.adjacency[x].iter().all(|&(y, m)| m & mask != *mask || body[y]))
                        .collect()
                }
                Node::C(mask, c) => self.all_per_component(&self.components(|m| m & mask != 0), &val[*c]),
                Node::CDFam(fam, c) => {
                    self.all_per_component(&self.components(|m| fam.iter().any(|b| m & b == *b)), &val[*c])
                }
                Node::CDDim(dim, c) => {
                    self.all_per_component(&self.components(|m| m.count_ones() as usize > *dim), &val[*c])
                }
                Node::B(a, c) => {
                    let body = &val[*c];
                    (0..n)
                        .map(|x| Ok(self.star_all(self.belief_target(x, *a)?, body)))
                        .collect::<Result<_>>()?
                }
                Node::BHat(a, c) => {
                    let body = &val[*c];
                    (0..n)
                        .map(|x| Ok(self.model.vertex_star(self.belief_target(x, *a)?).iter().any(|&y| body[y])))
                        .collect::<Result<_>>()?
                }
            };
            val[id] = row;
        }
        Ok(val)
    }

    /// Truth of a bound formula at every facet.
    pub fn truth(&self, bound: &Bound) -> Result<Vec<bool>> {
        Ok(self.label(&bound.arena, bound.root)?.swap_remove(bound.root))
    }

    pub fn eval(&self, x: FacetIdx, f: &Formula) -> Result<bool> {
        let b = bind_simplicial(self.model, f)?;
        Ok(self.truth(&b)?[x])
    }

    /// Simplex semantics at an arbitrary simplex, reusing facet labels for modal bodies.
    pub fn eval_simplex_bound(&self, s: &Simplex, arena: &Arena, root: NodeId) -> Result<bool> {
        self.model.star(s)?;
        let val = self.label(arena, root)?;
        self.simplex_node(s, arena, root, &val)
    }

    fn simplex_node(&self, s: &Simplex, arena: &Arena, id: NodeId, val: &Labelling) -> Result<bool> {
        let m = self.model;
        let colours = m.colours(s);
        let rec = |c: NodeId| self.simplex_node(s, arena, c, val);
        let star = || m.star(s).expect("checked face");
        let closure_all = |c: NodeId, edge: &dyn Fn(AgentMask) -> bool| {
            let comp = self.components(edge);
            let start = comp[star()[0]];
            (0..m.num_facets()).filter(|&y| comp[y] == start).all(|y| val[c][y])
        };
        Ok(match arena.node(id) {
            Node::True => true,
            Node::False => false,
            Node::Atom(p) => s.vertices().iter().any(|&v| m.vertex(v).atoms.contains(p)),
            Node::Not(c) => !rec(*c)?,
            Node::And(cs) => {
                for &c in cs {
                    if !rec(c)? {
                        return Ok(false);
                    }
                }
                true
            }
            Node::Or(cs) => {
                for &c in cs {
                    if rec(c)? {
                        return Ok(true);
                    }
                }
                false
            }
            Node::Implies(a, b) => !rec(*a)? || rec(*b)?,
            Node::K(a, c) => match m.vertex_of_colour(s, *a) {
                Some(v) => self.star_all(v, &val[*c]),
                None => false,
            },
            Node::KHat(a, c) => match m.vertex_of_colour(s, *a) {
                Some(v) => m.vertex_star(v).iter().any(|&y| val[*c][y]),
                None => true,
            },
            Node::D(mask, c) => {
                colours & mask == *mask && {
                    let x = star()[0];
                    val[*c][x] && self.adjacency[x].iter().all(|&(y, mm)| mm & mask != *mask || val[*c][y])
                }
            }
            Node::C(mask, c) => colours & mask == *mask && closure_all(*c, &|mm| mm & mask != 0),
            Node::CDFam(fam, c) => {
                let union = fam.iter().fold(0, |u, b| u | b);
                colours & union == union && closure_all(*c, &|mm| fam.iter().any(|b| mm & b == *b))
            }
            Node::CDDim(dim, c) => s.len() > *dim && closure_all(*c, &|mm| mm.count_ones() as usize > *dim),
            Node::B(a, c) => match m.vertex_of_colour(s, *a) {
                Some(v) => {
                    let bf = self.belief.ok_or(Error::BeliefWithoutAssignment)?;
                    self.star_all(bf.target(v), &val[*c])
                }
                None => false,
            },
            Node::BHat(a, c) => match m.vertex_of_colour(s, *a) {
                Some(v) => {
                    let bf = self.belief.ok_or(Error::BeliefWithoutAssignment)?;
                    m.vertex_star(bf.target(v)).iter().any(|&y| val[*c][y])
                }
                None => true,
            },
        })
    }
}

pub fn eval_facet(model: &SimplicialModel, x: FacetIdx, f: &Formula, belief: Option<&BeliefAssignment>) -> Result<bool> {
    if x >= model.num_facets() {
        return Err(Error::UnknownFacet(format!("F{x}")));
    }
    FacetEvaluator::new(model).with_belief(belief).eval(x, f)
}

/// Truth at every facet of the star of `s`.
pub fn eval_multipoint(model: &SimplicialModel, s: &Simplex, f: &Formula, belief: Option<&BeliefAssignment>) -> Result<bool> {
    let star = model.star(s)?;
    let b = bind_simplicial(model, f)?;
    let truth = FacetEvaluator::new(model).with_belief(belief).truth(&b)?;
    Ok(star.iter().all(|&x| truth[x]))
}

/// Evaluate inside the restriction of the model to the colours of `s`.
pub fn eval_restricted(model: &SimplicialModel, s: &Simplex, f: &Formula, belief: Option<&BeliefAssignment>) -> Result<bool> {
    model.star(s)?;
    bind_simplicial(model, f)?;
    let names = model.agents().names_of_mask(model.colours(s));
    let tag = LanguageTag::new(model.agents(), &names);
    if !f.in_language(&tag) {
        return Err(Error::FormulaOutsideLanguage(names.join(",")));
    }
    let restricted = model.restrict_to_agents(&names)?;
    let point = model.transfer(s, &restricted)?;
    let bf = match belief {
        Some(bf) => Some(bf.transfer(model, &restricted)?),
        None => None,
    };
    eval_multipoint(&restricted, &point, f, bf.as_ref())
}

/// Simplex semantics: atoms hold if some vertex has them; modalities need their agents present.
pub fn eval_simplex(model: &SimplicialModel, s: &Simplex, f: &Formula, belief: Option<&BeliefAssignment>) -> Result<bool> {
    model.star(s)?;
    let b = bind_simplicial(model, f)?;
    FacetEvaluator::new(model)
        .with_belief(belief)
        .eval_simplex_bound(s, &b.arena, b.root)
}

/// Dispatch on the mode.
pub fn eval_simplicial(
    model: &SimplicialModel,
    mode: Mode,
    s: &Simplex,
    f: &Formula,
    belief: Option<&BeliefAssignment>,
) -> Result<bool> {
    match mode {
        Mode::Facet => {
            let x = model
                .facet_of(s)
                .ok_or_else(|| Error::UnknownFacet(model.display_simplex(s)))?;
            eval_facet(model, x, f, belief)
        }
        Mode::Multipoint => eval_multipoint(model, s, f, belief),
        Mode::Restricted => eval_restricted(model, s, f, belief),
        Mode::Simplex => eval_simplex(model, s, f, belief),
    }
}

// ---------------------------------------------------------------------------
// Kripke models

pub struct KripkeEvaluator<'m> {
    model: &'m KripkeModel,
    beliefs: Option<&'m Kd45Frame>,
}

impl<'m> KripkeEvaluator<'m> {
    pub fn new(model: &'m KripkeModel) -> Self {
        KripkeEvaluator { model, beliefs: None }
    }

    /// Use the relations of a belief frame for `B` and `Bhat`.
    pub fn with_beliefs(mut self, frame: Option<&'m Kd45Frame>) -> Self {
        self.beliefs = frame;
        self
    }

    fn groups_all(labels: &[usize], body: &[bool]) -> Vec<bool> {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut ok = vec![true; k];
        for (s, &l) in labels.iter().enumerate() {
            ok[l] &= body[s];
        }
        labels.iter().map(|&l| ok[l]).collect()
    }

    /// Labels of the components of the union of the given equivalences.
    fn closure(&self, relations: &[Vec<usize>]) -> Vec<usize> {
        let n = self.model.num_states();
        let mut uf = crate::complex::UnionFind::new(n);
        for labels in relations {
            let mut first = std::collections::HashMap::new();
            for (s, &l) in labels.iter().enumerate() {
                match first.get(&l) {
                    Some(&t) => uf.union(t, s),
                    None => {
                        first.insert(l, s);
                    }
                }
            }
        }
        uf.labels()
    }

    pub fn label(&self, arena: &Arena, root: NodeId) -> Result<Labelling> {
        self.label_nodes(arena, &arena.reachable(root), root + 1)
    }

    /// Truth vectors for every node of the arena.
    pub fn label_all(&self, arena: &Arena) -> Result<Labelling> {
        let ids: Vec<NodeId> = (0..arena.len()).collect();
        self.label_nodes(arena, &ids, arena.len())
    }

    fn label_nodes(&self, arena: &Arena, ids: &[NodeId], size: usize) -> Result<Labelling> {
        let m = self.model;
        let n = m.num_states();
        let mut val: Labelling = vec![Vec::new(); size];
        for &id in ids {
            let row: Vec<bool> = match arena.node(id) {
                Node::True => vec![true; n],
                Node::False => vec![false; n],
                Node::Atom(p) => (0..n).map(|s| m.holds(s, p)).collect(),
                Node::Not(c) => val[*c].iter().map(|b| !b).collect(),
                Node::And(cs) => (0..n).map(|s| cs.iter().all(|&c| val[c][s])).collect(),
                Node::Or(cs) => (0..n).map(|s| cs.iter().any(|&c| val[c][s])).collect(),
                Node::Implies(a, b) => (0..n).map(|s| !val[*a][s] || val[*b][s]).collect(),
                Node::K(a, c) => Self::groups_all(m.block_ids(*a), &val[*c]),
                Node::KHat(a, c) => {
                    let neg: Vec<bool> = val[*c].iter().map(|b| !b).collect();
                    Self::groups_all(m.block_ids(*a), &neg).iter().map(|b| !b).collect()
                }
                Node::D(mask, c) => Self::groups_all(&m.intersection_labels(*mask), &val[*c]),
                Node::C(mask, c) => {
                    let rels: Vec<Vec<usize>> = mask_members(*mask).map(|a| m.block_ids(a).to_vec()).collect();
                    Self::groups_all(&self.closure(&rels), &val[*c])
                }
                Node::CDFam(fam, c) => {
                    let rels: Vec<Vec<usize>> = fam.iter().map(|&b| m.intersection_labels(b)).collect();
                    Self::groups_all(&self.closure(&rels), &val[*c])
                }
                Node::CDDim(dim, c) => {
                    let rels: Vec<Vec<usize>> = subsets_of_size(m.agents().len(), dim + 1)
                        .into_iter()
                        .map(|b| m.intersection_labels(b))
                        .collect();
                    Self::groups_all(&self.closure(&rels), &val[*c])
                }
                Node::B(a, c) => {
                    let frame = self.beliefs.ok_or(Error::BeliefWithoutAssignment)?;
                    (0..n).map(|s| frame.successors(*a, s).iter().all(|&t| val[*c][t])).collect()
                }
                Node::BHat(a, c) => {
                    let frame = self.beliefs.ok_or(Error::BeliefWithoutAssignment)?;
                    (0..n).map(|s| frame.successors(*a, s).iter().any(|&t| val[*c][t])).collect()
                }
            };
            val[id] = row;
        }
        Ok(val)
    }

    pub fn truth(&self, bound: &Bound) -> Result<Vec<bool>> {
        Ok(self.label(&bound.arena, bound.root)?.swap_remove(bound.root))
    }

    pub fn eval(&self, s: StateIdx, f: &Formula) -> Result<bool> {
        let b = bind_kripke(self.model, f)?;
        Ok(self.truth(&b)?[s])
    }
}

pub fn eval_kripke(model: &KripkeModel, s: StateIdx, f: &Formula) -> Result<bool> {
    if s >= model.num_states() {
        return Err(Error::UnknownState(format!("#{s}")));
    }
    KripkeEvaluator::new(model).eval(s, f)
}

/// The set of states where `f` holds.
pub fn denotation(model: &KripkeModel, f: &Formula) -> Result<Vec<bool>> {
    KripkeEvaluator::new(model).truth(&bind_kripke(model, f)?)
}

/// All agent masks with exactly `k` members among the first `n` agents.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<AgentMask> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::RawSimplicialModel;
    use crate::formula::parse;
    use crate::kripke::kripke_from_blocks;

    fn ex51() -> SimplicialModel {
        let mut r = RawSimplicialModel::new(["a", "b", "c"]);
        r.vertex("a0", "a", &[])
            .vertex("a1", "a", &["p_a"])
            .vertex("b0", "b", &[])
            .vertex("b1", "b", &["p_b"])
            .vertex("c1", "c", &["p_c"])
            .facet(&["a0", "c1", "b1"])
            .facet(&["a1", "c1", "b1"])
            .facet(&["a1", "c1", "b0"]);
        r.build().unwrap()
    }

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn facet_and_local_semantics() {
        let m = ex51();
        assert!(eval_facet(&m, 0, &f("K[a] ~p_a"), None).unwrap());
        let bc = m.simplex(&["b1", "c1"]).unwrap();
        assert!(!eval_multipoint(&m, &bc, &f("K[a] ~p_a"), None).unwrap());
        let c1 = m.simplex(&["c1"]).unwrap();
        assert!(eval_multipoint(&m, &c1, &f("K[c](p_a | p_b)"), None).unwrap());
        assert!(eval_restricted(&m, &bc, &f("K[b] p_c & ~K[c] p_b"), None).unwrap());
        assert!(matches!(
            eval_restricted(&m, &bc, &f("K[a] ~p_a"), None),
            Err(Error::FormulaOutsideLanguage(_))
        ));
        assert!(eval_restricted(&m, &c1, &f("K[c] p_c"), None).unwrap());
        assert!(matches!(
            eval_restricted(&m, &c1, &f("K[c](p_a | p_b)"), None),
            Err(Error::FormulaOutsideLanguage(_))
        ));
    }

    #[test]
    fn simplex_semantics_guards() {
        let m = ex51();
        let a0 = m.simplex(&["a0"]).unwrap();
        assert!(!eval_simplex(&m, &a0, &f("K[b] p_b"), None).unwrap());
        assert!(eval_simplex(&m, &a0, &f("~p_a"), None).unwrap());
        assert!(eval_simplex(&m, &m.facet_simplex(0), &f("~p_a"), None).unwrap());
        assert!(eval_simplex(&m, &m.facet_simplex(0), &f("K[a] ~p_a"), None).unwrap());
    }

    #[test]
    fn negation_is_not_monotone_along_stars() {
        // truth at a vertex need not persist to facets around it
        let m = ex51();
        let b1 = m.simplex(&["b1"]).unwrap();
        let y = m.simplex(&["a1", "b1", "c1"]).unwrap();
        assert!(eval_simplex(&m, &b1, &f("~p_a"), None).unwrap());
        assert!(!eval_simplex(&m, &y, &f("~p_a"), None).unwrap());
    }

    #[test]
    fn kripke_clauses() {
        let chain = kripke_from_blocks(
            &["a", "b"],
            &[("s", &["p"]), ("t", &[]), ("u", &["p"])],
            &[("a", &[&["s", "t"], &["u"]]), ("b", &[&["s"], &["t", "u"]])],
        )
        .unwrap();
        assert!(!eval_kripke(&chain, 1, &f("K[a] p")).unwrap());
        assert!(eval_kripke(&chain, 1, &f("Khat[a] p")).unwrap());
        assert!(eval_kripke(&chain, 1, &f("K[a] true")).unwrap());
        assert_eq!(
            eval_kripke(&chain, 0, &f("B[a] p")).unwrap_err(),
            Error::BeliefWithoutAssignment
        );
        assert_eq!(eval_kripke(&chain, 0, &f("q")).unwrap_err(), Error::UnknownAtom("q".into()));
    }

    #[test]
    fn adjacency_labels() {
        let m = ex51();
        let ev = FacetEvaluator::new(&m);
        // X meets Y in {b1,c1} and Z in {c1}
        assert_eq!(ev.adjacency(0), &[(1, 0b110), (2, 0b100)]);
    }
}
