//! Vertex maps between simplicial models and the predicates on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialModel, VertexIdx};
use crate::error::{Error, Result};
use crate::iso::{self, Labels, Structure};

/// A total function from the vertices of a source model to those of a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    map: Vec<VertexIdx>,
}

impl VertexMap {
    pub fn from_indices(map: Vec<VertexIdx>) -> Self {
        VertexMap { map }
    }

    pub fn from_ids(src: &SimplicialModel, dst: &SimplicialModel, ids: &BTreeMap<String, String>) -> Result<Self> {
        for k in ids.keys() {
            src.require_vertex(k)?;
        }
        let map = src
            .vertices()
            .iter()
            .map(|v| {
                let target = ids
                    .get(&v.id)
                    .ok_or_else(|| Error::NotSimplicialMap(format!("vertex `{}` is unmapped", v.id)))?;
                dst.require_vertex(target)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexMap { map })
    }

    pub fn identity(m: &SimplicialModel) -> Self {
        VertexMap { map: (0..m.num_vertices()).collect() }
    }

    pub fn apply(&self, v: VertexIdx) -> VertexIdx {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[VertexIdx] {
        &self.map
    }

    /// Image of a simplex as a vertex set (may collapse vertices).
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&v| self.map[v]).collect())
    }

    pub fn to_ids(&self, src: &SimplicialModel, dst: &SimplicialModel) -> BTreeMap<String, String> {
        src.vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), dst.vertex(self.map[i]).id.clone()))
            .collect()
    }
}

/// Images of simplices are simplices. Checking facets suffices since faces map to faces.
pub fn is_simplicial(f: &VertexMap, src: &SimplicialModel, dst: &SimplicialModel) -> bool {
    f.map.len() == src.num_vertices()
        && (0..src.num_facets()).all(|x| dst.is_simplex(&f.image(&src.facet_simplex(x))))
}

pub fn is_chromatic(f: &VertexMap, src: &SimplicialModel, dst: &SimplicialModel) -> bool {
    src.vertices()
        .iter()
        .enumerate()
        .all(|(i, v)| src.agents().name(v.agent) == dst.agents().name(dst.vertex(f.map[i]).agent))
}

pub fn is_value_preserving(f: &VertexMap, src: &SimplicialModel, dst: &SimplicialModel) -> bool {
    src.vertices()
        .iter()
        .enumerate()
        .all(|(i, v)| v.atoms == dst.vertex(f.map[i]).atoms)
}

/// No facet loses dimension under the map.
pub fn is_rigid(f: &VertexMap, src: &SimplicialModel, _dst: &SimplicialModel) -> bool {
    src.facets().iter().all(|row| {
        let img: BTreeSet<VertexIdx> = row.iter().map(|&v| f.map[v]).collect();
        img.len() == row.len()
    })
}

fn structure(m: &SimplicialModel, agent_order: &[String], labels: &mut Labels<BTreeSet<String>>) -> Structure {
    let agents: Vec<usize> = agent_order.iter().map(|n| m.agents().get(n).expect("aligned agents")).collect();
    let mut dense = vec![usize::MAX; m.num_vertices()];
    let mut block_label = vec![Vec::new(); agents.len()];
    for (pos, &a) in agents.iter().enumerate() {
        for (v, vx) in m.vertices().iter().enumerate() {
            if vx.agent == a {
                dense[v] = block_label[pos].len();
                block_label[pos].push(labels.get(vx.atoms.clone()));
            }
        }
    }
    let block = agents
        .iter()
        .map(|&a| m.facets().iter().map(|row| dense[row[a]]).collect())
        .collect();
    Structure {
        point_label: vec![0; m.num_facets()],
        block,
        block_label,
    }
}

/// A colour- and value-preserving simplicial bijection whose inverse is simplicial.
pub fn is_isomorphic(m1: &SimplicialModel, m2: &SimplicialModel) -> Option<VertexMap> {
    if !m1.agents().same_members(m2.agents())
        || m1.num_facets() != m2.num_facets()
        || m1.num_vertices() != m2.num_vertices()
    {
        return None;
    }
    let order = m1.agents().names().to_vec();
    let mut labels = Labels::default();
    let (s1, s2) = (structure(m1, &order, &mut labels), structure(m2, &order, &mut labels));
    let facet_map = iso::find(&s1, &s2)?;
    let mut map = vec![usize::MAX; m1.num_vertices()];
    for (x, &y) in facet_map.iter().enumerate() {
        for a in m1.agents().ids() {
            let b = m2.agents().get(m1.agents().name(a)).expect("aligned agents");
            map[m1.facet(x)[a]] = m2.facet(y)[b];
        }
    }
    Some(VertexMap { map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::RawSimplicialModel;

    fn cycle(len: usize) -> SimplicialModel {
        let mut r = RawSimplicialModel::new(["a", "b"]);
        for i in 0..len / 2 {
            r.vertex(&format!("a{i}"), "a", &["p_a"]).vertex(&format!("b{i}"), "b", &[]);
        }
        for i in 0..len / 2 {
            let j = (i + 1) % (len / 2);
            r.facet(&[&format!("a{i}"), &format!("b{i}")]);
            r.facet(&[&format!("b{i}"), &format!("a{j}")]);
        }
        r.build().unwrap()
    }

    fn edge() -> SimplicialModel {
        let mut r = RawSimplicialModel::new(["a", "b"]);
        r.vertex("a", "a", &["p_a"]).vertex("b", "b", &[]).facet(&["a", "b"]);
        r.build().unwrap()
    }

    #[test]
    fn fold_of_cycle_onto_edge() {
        let (c, e) = (cycle(4), edge());
        let ids = c
            .vertices()
            .iter()
            .map(|v| (v.id.clone(), c.agents().name(v.agent).to_string()))
            .collect();
        let f = VertexMap::from_ids(&c, &e, &ids).unwrap();
        assert!(is_simplicial(&f, &c, &e));
        assert!(is_chromatic(&f, &c, &e));
        assert!(is_value_preserving(&f, &c, &e));
        assert!(is_rigid(&f, &c, &e));
    }

    #[test]
    fn colour_clash_is_not_chromatic() {
        let e = edge();
        let f = VertexMap::from_indices(vec![0, 0]);
        assert!(!is_chromatic(&f, &e, &e));
        assert!(!is_rigid(&f, &e, &e));
        let id = VertexMap::identity(&e);
        assert!(is_simplicial(&id, &e, &e) && is_chromatic(&id, &e, &e));
    }

    #[test]
    fn isomorphism_search() {
        assert!(is_isomorphic(&cycle(4), &cycle(4)).is_some());
        assert!(is_isomorphic(&cycle(4), &cycle(6)).is_none());
        let c = cycle(6);
        let f = is_isomorphic(&c, &c.canonical()).unwrap();
        assert!(is_simplicial(&f, &c, &c.canonical()));
    }
}
