//! Graphviz and JSON output, and JSON input with format detection.

use std::fmt::Write;

use serde_json::Value;

use crate::belief::RawBeliefAssignment;
use crate::complex::{RawSimplicialModel, SimplicialModel};
use crate::dynamics::{ActionModel, RawActionModel};
use crate::error::{Error, Result};
use crate::kripke::{KripkeModel, RawKripkeModel};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn atoms_label<'a>(atoms: impl IntoIterator<Item = &'a String>) -> String {
    let v: Vec<&str> = atoms.into_iter().map(String::as_str).collect();
    if v.is_empty() {
        "∅".into()
    } else {
        v.join(" ")
    }
}

/// Facets adjacent along a shared (n-1)-face, with the colours of the intersection.
pub fn dual_edges(m: &SimplicialModel) -> Vec<(usize, usize, Vec<String>)> {
    let n = m.agents().len();
    let mut out = Vec::new();
    for x in 0..m.num_facets() {
        for y in x + 1..m.num_facets() {
            let shared: Vec<String> = m
                .agents()
                .ids()
                .filter(|&a| m.facet(x)[a] == m.facet(y)[a])
                .map(|a| m.agents().name(a).to_string())
                .collect();
            if n > 1 && shared.len() == n - 1 {
                out.push((x, y, shared));
            }
        }
    }
    out
}

/// Facet graph: one node per facet labelled by its valuation, one edge per
/// pair of facets sharing an (n-1)-face, labelled by the shared colours.
pub fn dot_facets(m: &SimplicialModel) -> String {
    let mut s = String::from("graph facets {\n  node [shape=box];\n");
    for f in 0..m.num_facets() {
        let ids: Vec<&str> = m.facet(f).iter().map(|&v| m.vertex(v).id.as_str()).collect();
        let label = format!("{} {{{}}}\n{}", m.facet_name(f), ids.join(","), atoms_label(&m.facet_atoms(f)));
        let _ = writeln!(s, "  {} [label={}];", quote(&m.facet_name(f)), quote(&label));
    }
    for (x, y, shared) in dual_edges(m) {
        let _ = writeln!(
            s,
            "  {} -- {} [label={}];",
            quote(&m.facet_name(x)),
            quote(&m.facet_name(y)),
            quote(&format!("{{{}}}", shared.join(",")))
        );
    }
    s.push_str("}\n");
    s
}

/// Vertex graph: the 1-skeleton, vertices grouped by colour.
pub fn dot_vertices(m: &SimplicialModel) -> String {
    let mut s = String::from("graph vertices {\n");
    for v in m.vertices() {
        let label = format!("{}\n{}", v.id, atoms_label(&v.atoms));
        let _ = writeln!(
            s,
            "  {} [label={}, group={}];",
            quote(&v.id),
            quote(&label),
            quote(m.agents().name(v.agent))
        );
    }
    let mut edges = std::collections::BTreeSet::new();
    for row in m.facets() {
        for i in 0..row.len() {
            for j in i + 1..row.len() {
                edges.insert((row[i].min(row[j]), row[i].max(row[j])));
            }
        }
    }
    for (u, v) in edges {
        let _ = writeln!(s, "  {} -- {};", quote(&m.vertex(u).id), quote(&m.vertex(v).id));
    }
    s.push_str("}\n");
    s
}

/// States and, for each pair of distinct related states, an edge labelled by the agents relating them.
pub fn dot_kripke(m: &KripkeModel) -> String {
    let mut s = String::from("graph kripke {\n");
    for st in m.states() {
        let label = format!("{}\n{}", st.id, atoms_label(&st.atoms));
        let _ = writeln!(s, "  {} [label={}];", quote(&st.id), quote(&label));
    }
    for x in 0..m.num_states() {
        for y in x + 1..m.num_states() {
            let ags: Vec<&str> = m
                .agents()
                .ids()
                .filter(|&a| m.related(a, x, y))
                .map(|a| m.agents().name(a))
                .collect();
            if !ags.is_empty() {
                let _ = writeln!(
                    s,
                    "  {} -- {} [label={}];",
                    quote(&m.state(x).id),
                    quote(&m.state(y).id),
                    quote(&ags.join(","))
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Canonical JSON of a simplicial model.
pub fn json_simplicial(m: &SimplicialModel) -> String {
    serde_json::to_string_pretty(&m.to_raw_canonical()).expect("serializable")
}

pub fn json_kripke(m: &KripkeModel) -> String {
    serde_json::to_string_pretty(&m.to_raw()).expect("serializable")
}

pub fn json_action(a: &ActionModel) -> String {
    serde_json::to_string_pretty(&a.to_raw()).expect("serializable")
}

/// A model read from JSON.
#[derive(Clone, Debug)]
pub enum AnyModel {
    Simplicial(SimplicialModel),
    Kripke(KripkeModel),
    Action(ActionModel),
}

impl AnyModel {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyModel::Simplicial(_) => "simplicial",
            AnyModel::Kripke(_) => "kripke",
            AnyModel::Action(_) => "action",
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyModel::Simplicial(m) => json_simplicial(m),
            AnyModel::Kripke(m) => json_kripke(m),
            AnyModel::Action(a) => json_action(a),
        }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

/// Parse JSON, telling the formats apart by their keys: `states` for Kripke
/// models, `facets` with vertex `pre` or `post` fields for action models,
/// `facets` otherwise for simplicial models.
pub fn load_json(text: &str) -> Result<AnyModel> {
    let v: Value = serde_json::from_str(text).map_err(json_err)?;
    let obj = v.as_object().ok_or_else(|| Error::Json("expected a JSON object".into()))?;
    if obj.contains_key("states") {
        let raw: RawKripkeModel = serde_json::from_value(v).map_err(json_err)?;
        return Ok(AnyModel::Kripke(KripkeModel::from_raw(&raw)?));
    }
    if !obj.contains_key("facets") {
        return Err(Error::Json("expected a `facets` or `states` key".into()));
    }
    let is_action = obj
        .get("vertices")
        .and_then(Value::as_array)
        .is_some_and(|vs| vs.iter().any(|v| v.get("pre").is_some() || v.get("post").is_some()));
    if is_action {
        let raw: RawActionModel = serde_json::from_value(v).map_err(json_err)?;
        return Ok(AnyModel::Action(ActionModel::from_raw(&raw)?));
    }
    let raw: RawSimplicialModel = serde_json::from_value(v).map_err(json_err)?;
    Ok(AnyModel::Simplicial(SimplicialModel::from_raw(&raw)?))
}

/// Parse a belief assignment, `{agent: {vertex: vertex}}`.
pub fn load_belief(text: &str) -> Result<RawBeliefAssignment> {
    serde_json::from_str(text).map_err(json_err)
}
