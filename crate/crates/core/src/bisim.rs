//! Bisimulations and simulations between simplicial models and between
//! Kripke models, quotients, the coalition-aware variant, and coverings.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{faces, FacetIdx, Simplex, SimplicialModel, VertexIdx};
use crate::duality::{kappa, sigma};
use crate::error::{Error, Result};
use crate::kripke::{KripkeModel, State};
use crate::maps::{is_chromatic, is_simplicial, is_value_preserving, VertexMap};
use crate::refine::{aligned, coarsest, Frame, LabelTable};

/// A relation between the points (facets or states) of two models.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    pub pairs: BTreeSet<(usize, usize)>,
}

/// A relation between facets.
pub type FacetRelation = Relation;

impl Relation {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Relation {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// Every point on both sides takes part.
    pub fn is_total(&self, left: usize, right: usize) -> bool {
        let l: BTreeSet<usize> = self.pairs.iter().map(|p| p.0).collect();
        let r: BTreeSet<usize> = self.pairs.iter().map(|p| p.1).collect();
        l.len() == left && r.len() == right
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Facet pairs as `F<i>` names.
    pub fn to_raw(&self) -> RawRelation {
        RawRelation {
            pairs: self.pairs.iter().map(|&(x, y)| (format!("F{x}"), format!("F{y}"))).collect(),
        }
    }

    pub fn from_raw(raw: &RawRelation, left: &SimplicialModel, right: &SimplicialModel) -> Result<Self> {
        let pairs = raw
            .pairs
            .iter()
            .map(|(x, y)| Ok((left.resolve_facet(x)?, right.resolve_facet(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation::new(pairs))
    }
}

/// Sidecar JSON for relations: `{"pairs": [["F0","F2"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRelation {
    pub pairs: Vec<(String, String)>,
}

fn relation_from_classes(classes: &[usize], left: usize) -> Relation {
    let mut by_class: HashMap<usize, Vec<usize>> = HashMap::new();
    for (y, &c) in classes[left..].iter().enumerate() {
        by_class.entry(c).or_default().push(y);
    }
    let mut pairs = BTreeSet::new();
    for (x, c) in classes[..left].iter().enumerate() {
        for &y in by_class.get(c).into_iter().flatten() {
            pairs.insert((x, y));
        }
    }
    Relation { pairs }
}

/// The largest bisimulation between the facets of two simplicial models.
pub fn max_bisimulation(c: &SimplicialModel, d: &SimplicialModel) -> Result<FacetRelation> {
    let order_d = aligned(c.agents(), d.agents())?;
    let order_c: Vec<usize> = c.agents().ids().collect();
    let mut table = LabelTable::default();
    let fc = Frame::of_simplicial(c, &order_c, &mut table);
    let fd = Frame::of_simplicial(d, &order_d, &mut table);
    Ok(relation_from_classes(&coarsest(&fc.union(&fd)), c.num_facets()))
}

pub fn bisimilar_pointed(c: &SimplicialModel, x: FacetIdx, d: &SimplicialModel, y: FacetIdx) -> Result<bool> {
    Ok(max_bisimulation(c, d)?.contains(x, y))
}

pub fn total_bisimilar(c: &SimplicialModel, d: &SimplicialModel) -> Result<bool> {
    Ok(max_bisimulation(c, d)?.is_total(c.num_facets(), d.num_facets()))
}

/// Classes of the largest autobisimulation of a simplicial model.
pub fn facet_classes(c: &SimplicialModel) -> Vec<usize> {
    let order: Vec<usize> = c.agents().ids().collect();
    coarsest(&Frame::of_simplicial(c, &order, &mut LabelTable::default()))
}

pub fn kripke_max_bisimulation(m: &KripkeModel, n: &KripkeModel) -> Result<Relation> {
    let order_n = aligned(m.agents(), n.agents())?;
    let order_m: Vec<usize> = m.agents().ids().collect();
    let mut table = LabelTable::default();
    let fm = Frame::of_kripke(m, &order_m, &mut table);
    let fn_ = Frame::of_kripke(n, &order_n, &mut table);
    Ok(relation_from_classes(&coarsest(&fm.union(&fn_)), m.num_states()))
}

pub fn kripke_total_bisimilar(m: &KripkeModel, n: &KripkeModel) -> Result<bool> {
    Ok(kripke_max_bisimulation(m, n)?.is_total(m.num_states(), n.num_states()))
}

/// Classes of the largest autobisimulation of a Kripke model.
pub fn state_classes(m: &KripkeModel) -> Vec<usize> {
    let order: Vec<usize> = m.agents().ids().collect();
    coarsest(&Frame::of_kripke(m, &order, &mut LabelTable::default()))
}

/// The largest relation that is also a bisimulation for the intersection
/// relation of every nonempty coalition.
pub fn group_max_bisimulation(m: &KripkeModel, n: &KripkeModel) -> Result<Relation> {
    let order_n = aligned(m.agents(), n.agents())?;
    let order_m: Vec<usize> = m.agents().ids().collect();
    let mut table = LabelTable::default();
    let fm = Frame::of_kripke_groups(m, &order_m, &mut table);
    let fn_ = Frame::of_kripke_groups(n, &order_n, &mut table);
    Ok(relation_from_classes(&coarsest(&fm.union(&fn_)), m.num_states()))
}

/// The same on facets, through κ.
pub fn group_max_bisimulation_simplicial(c: &SimplicialModel, d: &SimplicialModel) -> Result<FacetRelation> {
    group_max_bisimulation(&kappa(c).model, &kappa(d).model)
}

/// The bisimulation quotient together with the class of every state.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub model: KripkeModel,
    pub class_of: Vec<usize>,
}

/// Merge bisimilar states. Each class keeps the id of its first state;
/// classes are related by `a` when some members are.
pub fn quotient(m: &KripkeModel) -> Quotient {
    let class_of = state_classes(m);
    let k = class_of.iter().max().map_or(0, |c| c + 1);
    let mut rep = vec![usize::MAX; k];
    for (s, &c) in class_of.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = s;
        }
    }
    let states: Vec<State> = rep.iter().map(|&s| m.state(s).clone()).collect();
    let partitions = m
        .agents()
        .ids()
        .map(|a| {
            let mut uf = crate::complex::UnionFind::new(k);
            for block in m.blocks(a) {
                for w in block.windows(2) {
                    uf.union(class_of[w[0]], class_of[w[1]]);
                }
            }
            uf.labels()
        })
        .collect();
    let model = KripkeModel::with_atoms(m.agents().clone(), states, partitions, Some(m.atoms().clone()))
        .expect("quotient of a valid model");
    Quotient { model, class_of }
}

/// σ of the quotient of κ(C). Fails when the quotient relates two classes by every agent.
pub fn simplicial_quotient(c: &SimplicialModel) -> Result<SimplicialModel> {
    let q = quotient(&kappa(c).model);
    if let Some((s, t)) = q.model.improper_witness() {
        let name = |i: usize| {
            let f = q.class_of.iter().position(|&k| k == i).expect("nonempty class");
            c.display_simplex(&c.facet_simplex(f))
        };
        return Err(Error::QuotientImproper(name(s), name(t)));
    }
    Ok(sigma(&q.model)?.model)
}

// ---------------------------------------------------------------------------
// Checking a given relation

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    Empty,
    Atoms,
    Forth,
    Back,
}

/// The first failure of a clause: the pair it fails at, the agent and the
/// point that has no partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseFailure {
    pub clause: Clause,
    pub pair: Option<(usize, usize)>,
    pub agent: Option<String>,
    pub unmatched: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RelationKind {
    Bisimulation,
    /// Atoms and forth hold; back fails as recorded.
    Simulation(ClauseFailure),
    Neither(ClauseFailure),
}

fn check_frames(left: &Frame, right: &Frame, names: &[String], rel: &Relation) -> RelationKind {
    if rel.is_empty() {
        return RelationKind::Neither(ClauseFailure {
            clause: Clause::Empty,
            pair: None,
            agent: None,
            unmatched: None,
        });
    }
    let fail = |clause, pair, agent: Option<usize>, unmatched| ClauseFailure {
        clause,
        pair: Some(pair),
        agent: agent.map(|a: usize| names[a].clone()),
        unmatched,
    };
    for &(x, y) in &rel.pairs {
        if left.labels[x] != right.labels[y] {
            return RelationKind::Neither(fail(Clause::Atoms, (x, y), None, None));
        }
    }
    let (ml, mr) = (left.members(), right.members());
    let forth = || {
        for &(x, y) in &rel.pairs {
            for a in 0..names.len() {
                for &u in &ml[a][&left.blocks[a][x]] {
                    if !mr[a][&right.blocks[a][y]].iter().any(|&v| rel.contains(u, v)) {
                        return Some(fail(Clause::Forth, (x, y), Some(a), Some(u)));
                    }
                }
            }
        }
        None
    };
    let back = || {
        for &(x, y) in &rel.pairs {
            for a in 0..names.len() {
                for &v in &mr[a][&right.blocks[a][y]] {
                    if !ml[a][&left.blocks[a][x]].iter().any(|&u| rel.contains(u, v)) {
                        return Some(fail(Clause::Back, (x, y), Some(a), Some(v)));
                    }
                }
            }
        }
        None
    };
    match (forth(), back()) {
        (None, None) => RelationKind::Bisimulation,
        (None, Some(b)) => RelationKind::Simulation(b),
        (Some(f), _) => RelationKind::Neither(f),
    }
}

/// Classify a facet relation as bisimulation, simulation, or neither.
pub fn check_relation(c: &SimplicialModel, d: &SimplicialModel, rel: &FacetRelation) -> Result<RelationKind> {
    let order_d = aligned(c.agents(), d.agents())?;
    let order_c: Vec<usize> = c.agents().ids().collect();
    let mut table = LabelTable::default();
    let (fc, fd) = (
        Frame::of_simplicial(c, &order_c, &mut table),
        Frame::of_simplicial(d, &order_d, &mut table),
    );
    Ok(check_frames(&fc, &fd, c.agents().names(), rel))
}

pub fn check_kripke_relation(m: &KripkeModel, n: &KripkeModel, rel: &Relation) -> Result<RelationKind> {
    let order_n = aligned(m.agents(), n.agents())?;
    let order_m: Vec<usize> = m.agents().ids().collect();
    let mut table = LabelTable::default();
    let (fm, fn_) = (
        Frame::of_kripke(m, &order_m, &mut table),
        Frame::of_kripke(n, &order_n, &mut table),
    );
    Ok(check_frames(&fm, &fn_, m.agents().names(), rel))
}

/// Vertex pairs (X_a, X'_a) for every related pair of facets and agent.
pub fn induced_vertex_relation(c: &SimplicialModel, d: &SimplicialModel, rel: &FacetRelation) -> Result<BTreeSet<(VertexIdx, VertexIdx)>> {
    let order_d = aligned(c.agents(), d.agents())?;
    let order_d = &order_d;
    Ok(rel
        .pairs
        .iter()
        .flat_map(|&(x, y)| c.agents().ids().map(move |a| (c.facet(x)[a], d.facet(y)[order_d[a]])))
        .collect())
}

/// Is every simplex of `c` inside the domain of `vrel` related to a simplex of `d`?
pub fn is_simplex_preserving(c: &SimplicialModel, d: &SimplicialModel, vrel: &BTreeSet<(VertexIdx, VertexIdx)>) -> bool {
    let mut image: BTreeMap<VertexIdx, Vec<VertexIdx>> = BTreeMap::new();
    for &(u, v) in vrel {
        image.entry(u).or_default().push(v);
    }
    let mut seen = BTreeSet::new();
    for f in 0..c.num_facets() {
        for s in faces(&c.facet_simplex(f)) {
            if !seen.insert(s.clone()) || !s.vertices().iter().all(|v| image.contains_key(v)) {
                continue;
            }
            let ok = (0..d.num_facets()).any(|g| {
                s.vertices()
                    .iter()
                    .all(|u| image[u].iter().any(|v| d.facet(g).contains(v)))
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

/// The facet relation X ↦ f(X) of a chromatic simplicial map.
pub fn induced_facet_relation(c: &SimplicialModel, f: &VertexMap, d: &SimplicialModel) -> Result<FacetRelation> {
    if !is_simplicial(f, c, d) || !is_chromatic(f, c, d) {
        return Err(Error::NotSimplicialMap("facets are not sent to facets of the same colours".into()));
    }
    let pairs = (0..c.num_facets())
        .map(|x| {
            d.facet_of(&f.image(&c.facet_simplex(x)))
                .map(|y| (x, y))
                .ok_or_else(|| Error::NotSimplicialMap(c.display_simplex(&c.facet_simplex(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Relation::new(pairs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub is_covering: bool,
    pub connected: bool,
    /// A simplex of the target whose preimage does not split into disjoint sheets.
    pub witness: Option<String>,
    /// Whether the induced facet relation is a total bisimulation.
    pub total_bisimulation: bool,
}

/// Check that `f` makes `c` an epistemic covering of `d`: `c` connected, and
/// the preimage of every simplex of `d` an exact union of disjoint simplices
/// each mapped onto it.
pub fn is_covering(c: &SimplicialModel, f: &VertexMap, d: &SimplicialModel) -> Result<CoveringReport> {
    let rel = induced_facet_relation(c, f, d)?;
    if !is_value_preserving(f, c, d) {
        let v = (0..c.num_vertices())
            .find(|&v| c.vertex(v).atoms != d.vertex(f.apply(v)).atoms)
            .expect("a vertex breaking values");
        return Err(Error::NotValuePreserving(c.vertex(v).id.clone()));
    }
    let connected = c.is_connected();
    let mut witness = None;
    let mut seen = BTreeSet::new();
    'outer: for g in 0..d.num_facets() {
        for s in faces(&d.facet_simplex(g)) {
            if seen.insert(s.clone()) && !splits_into_sheets(c, f, d, &s) {
                witness = Some(d.display_simplex(&s));
                break 'outer;
            }
        }
    }
    let total = matches!(check_relation(c, d, &rel)?, RelationKind::Bisimulation)
        && rel.is_total(c.num_facets(), d.num_facets());
    Ok(CoveringReport {
        is_covering: connected && witness.is_none(),
        connected,
        witness,
        total_bisimulation: total,
    })
}

fn splits_into_sheets(c: &SimplicialModel, f: &VertexMap, d: &SimplicialModel, target: &Simplex) -> bool {
    let pre: Vec<VertexIdx> = (0..c.num_vertices()).filter(|&v| target.contains(f.apply(v))).collect();
    if pre.is_empty() {
        return false;
    }
    let colours: Vec<usize> = target.vertices().iter().map(|&v| d.vertex(v).agent).collect();
    let mut sheets: BTreeSet<Vec<VertexIdx>> = BTreeSet::new();
    for x in 0..c.num_facets() {
        let mut z: Vec<VertexIdx> = colours.iter().map(|&a| c.facet(x)[a]).collect();
        if z.iter().all(|&v| target.contains(f.apply(v))) {
            z.sort_unstable();
            sheets.insert(z);
        }
    }
    let sheets: Vec<Vec<VertexIdx>> = sheets.into_iter().collect();
    let mut covered = vec![false; c.num_vertices()];
    exact_cover(&pre, &sheets, &mut covered)
}

fn exact_cover(pre: &[VertexIdx], sheets: &[Vec<VertexIdx>], covered: &mut [bool]) -> bool {
    let Some(&v) = pre.iter().find(|&&v| !covered[v]) else {
        return true;
    };
    for s in sheets.iter().filter(|s| s.contains(&v)) {
        if s.iter().any(|&u| covered[u]) {
            continue;
        }
        for &u in s {
            covered[u] = true;
        }
        if exact_cover(pre, sheets, covered) {
            return true;
        }
        for &u in s {
            covered[u] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::RawSimplicialModel;

    fn cycle(n: usize) -> SimplicialModel {
        let mut r = RawSimplicialModel::new(["a", "b"]);
        for i in 0..n {
            r.vertex(&format!("a{i}"), "a", &[]).vertex(&format!("b{i}"), "b", &[]);
        }
        for i in 0..n {
            r.facet(&[&format!("a{i}"), &format!("b{i}")]);
            r.facet(&[&format!("a{}", (i + 1) % n), &format!("b{i}")]);
        }
        r.build().unwrap()
    }

    fn edge() -> SimplicialModel {
        let mut r = RawSimplicialModel::new(["a", "b"]);
        r.vertex("a", "a", &[]).vertex("b", "b", &[]).facet(&["a", "b"]);
        r.build().unwrap()
    }

    #[test]
    fn cycles_are_totally_bisimilar() {
        let (c4, c6) = (cycle(2), cycle(3));
        let r = max_bisimulation(&c4, &c6).unwrap();
        assert_eq!(r.len(), 4 * 6);
        assert_eq!(simplicial_quotient(&c4).unwrap().num_facets(), 1);
    }

    #[test]
    fn fold_is_a_covering() {
        let (c4, e) = (cycle(2), edge());
        let f = VertexMap::from_indices((0..c4.num_vertices()).map(|v| c4.vertex(v).agent).collect());
        let rep = is_covering(&c4, &f, &e).unwrap();
        assert!(rep.is_covering && rep.total_bisimulation);
        let rel = induced_facet_relation(&c4, &f, &e).unwrap();
        assert_eq!(check_relation(&c4, &e, &rel).unwrap(), RelationKind::Bisimulation);
    }

    #[test]
    fn identity_relation_is_a_bisimulation() {
        let c = cycle(3);
        let id = Relation::new((0..c.num_facets()).map(|x| (x, x)));
        assert_eq!(check_relation(&c, &c, &id).unwrap(), RelationKind::Bisimulation);
        assert!(matches!(
            check_relation(&c, &c, &Relation::default()).unwrap(),
            RelationKind::Neither(ClauseFailure { clause: Clause::Empty, .. })
        ));
    }

    #[test]
    fn single_related_pair_is_neither() {
        let c = cycle(2);
        let r = Relation::new([(0, 0)]);
        assert!(matches!(
            check_relation(&c, &c, &r).unwrap(),
            RelationKind::Neither(ClauseFailure { clause: Clause::Forth, .. })
        ));
    }
}
