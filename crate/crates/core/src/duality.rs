//! Translations between local proper Kripke models and simplicial models.
//!
//! `sigma` turns each equivalence class `[s]_a` into an `a`-coloured vertex
//! and each state into the facet of its classes; `kappa` turns each facet
//! into a state, relating facets that share their `a`-vertex.

use std::collections::BTreeSet;

use crate::complex::{FacetIdx, RawSimplicialModel, RawVertex, SimplicialModel};
use crate::error::{Error, Result};
use crate::kripke::{kripke_isomorphic, KripkeModel, State, StateIdx};
use crate::maps::is_isomorphic;

/// A translated model together with the correspondence of points.
#[derive(Clone, Debug)]
pub struct Translation<M> {
    pub model: M,
    /// `points[i]`: the image of the i-th state (or facet) of the source.
    pub points: Vec<usize>,
}

/// The atoms a translation can place: each must name its owner and be local for it.
fn check_local_proper(m: &KripkeModel) -> Result<()> {
    let agents = m.agents();
    for p in m.atoms() {
        match agents.owner_of(p) {
            Some(a) if m.is_local_for(p, a) => {}
            Some(a) => {
                return Err(Error::NotLocalProper(format!(
                    "atom `{p}` is not local for its owner {}",
                    agents.name(a)
                )))
            }
            None => return Err(Error::NotLocalProper(format!("atom `{p}` has no owning agent"))),
        }
    }
    if let Some((s, t)) = m.improper_witness() {
        return Err(Error::NotLocalProper(format!(
            "states {} and {} are related by every agent",
            m.state(s).id,
            m.state(t).id
        )));
    }
    Ok(())
}

/// σ(M). Vertex ids are `<least state id of the class>@<agent>`.
pub fn sigma(m: &KripkeModel) -> Result<Translation<SimplicialModel>> {
    check_local_proper(m)?;
    let agents = m.agents();
    let mut raw = RawSimplicialModel::new(agents.names().iter().cloned());
    let mut vid: Vec<Vec<String>> = Vec::with_capacity(agents.len());
    for a in agents.ids() {
        let name = agents.name(a);
        let mut ids = Vec::with_capacity(m.blocks(a).len());
        for block in m.blocks(a) {
            let least = block.iter().map(|&s| m.state(s).id.as_str()).min().expect("nonempty block");
            let id = format!("{least}@{name}");
            let atoms = m
                .state(block[0])
                .atoms
                .iter()
                .filter(|p| agents.owner_of(p) == Some(a))
                .cloned()
                .collect();
            raw.vertices.push(RawVertex {
                id: id.clone(),
                agent: name.to_string(),
                atoms,
            });
            ids.push(id);
        }
        vid.push(ids);
    }
    for s in 0..m.num_states() {
        raw.facets.push(agents.ids().map(|a| vid[a][m.block(a, s)].clone()).collect());
    }
    let model = SimplicialModel::from_raw(&raw)?;
    Ok(Translation {
        model,
        points: (0..m.num_states()).collect(),
    })
}

/// κ(C). State ids are the facet names `F<i>`.
pub fn kappa(c: &SimplicialModel) -> Translation<KripkeModel> {
    let states = (0..c.num_facets())
        .map(|f| State {
            id: c.facet_name(f),
            atoms: c.facet_atoms(f),
        })
        .collect();
    let partitions = c
        .agents()
        .ids()
        .map(|a| (0..c.num_facets()).map(|f| c.facet(f)[a]).collect())
        .collect();
    let declared: BTreeSet<String> = c.atoms();
    let model = KripkeModel::with_atoms(c.agents().clone(), states, partitions, Some(declared))
        .expect("facets of a valid model give a valid Kripke model");
    Translation {
        model,
        points: (0..c.num_facets()).collect(),
    }
}

/// The state ↦ facet correspondence as id pairs, for sidecar output.
pub fn state_facet_pairs(k: &KripkeModel, c: &SimplicialModel, points: &[usize]) -> Vec<(String, String)> {
    points
        .iter()
        .enumerate()
        .map(|(s, &f)| (k.state(s).id.clone(), c.display_simplex(&c.facet_simplex(f))))
        .collect()
}

/// κ(σ(M)) ≅ M.
pub fn roundtrip_kripke(m: &KripkeModel) -> Result<bool> {
    let back = kappa(&sigma(m)?.model).model;
    Ok(kripke_isomorphic(&back, m).is_some())
}

/// σ(κ(C)) ≅ C.
pub fn roundtrip_simplicial(c: &SimplicialModel) -> Result<bool> {
    let back = sigma(&kappa(c).model)?.model;
    Ok(is_isomorphic(&back, c).is_some())
}

/// The facet of σ(M) that corresponds to state `s`.
pub fn sigma_point(t: &Translation<SimplicialModel>, s: StateIdx) -> FacetIdx {
    t.points[s]
}
