//! Generators for standard models and a registry of small worked examples.

use std::collections::BTreeMap;

use crate::agents::default_agent_names;
use crate::belief::{BeliefAssignment, RawBeliefAssignment};
use crate::complex::{RawSimplicialModel, RawVertex, SimplicialModel};
use crate::dynamics::{public_assignment, ActionModel, RawActionModel, RawActionVertex};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{kripke_from_blocks, KripkeModel};

/// Muddy children for `n` children. Child `i` sees every forehead but its
/// own; its vertex is named `agent:bits` with `_` in its own position and
/// carries `mud_<other>_<self>` for every muddy child it sees.
pub fn muddy_children(n: usize) -> Result<SimplicialModel> {
    if n < 2 {
        return Err(Error::DimensionArgument { m: n, agents: 2 });
    }
    let names = default_agent_names(n);
    let mut raw = RawSimplicialModel::new(names.iter().cloned());
    let mut seen = BTreeMap::new();
    for pattern in 0u64..1 << n {
        let mut facet = Vec::with_capacity(n);
        for (i, me) in names.iter().enumerate() {
            let bits: String = (0..n)
                .map(|j| match (j == i, pattern >> j & 1) {
                    (true, _) => '_',
                    (false, 1) => '1',
                    (false, _) => '0',
                })
                .collect();
            let id = format!("{me}:{bits}");
            seen.entry(id.clone()).or_insert_with(|| RawVertex {
                id: id.clone(),
                agent: me.clone(),
                atoms: (0..n)
                    .filter(|&j| j != i && pattern >> j & 1 == 1)
                    .map(|j| format!("mud_{}_{me}", names[j]))
                    .collect(),
            });
            facet.push(id);
        }
        raw.facets.push(facet);
    }
    raw.vertices = seen.into_values().collect();
    SimplicialModel::from_raw(&raw)
}

/// Every agent holds a private bit: vertices `<agent>0`, `<agent>1`, the
/// latter carrying `1_<agent>`; one facet per bit vector.
pub fn binary_inputs(n: usize) -> Result<SimplicialModel> {
    if n < 2 {
        return Err(Error::DimensionArgument { m: n, agents: 2 });
    }
    let names = default_agent_names(n);
    let mut raw = RawSimplicialModel::new(names.iter().cloned());
    for a in &names {
        raw.vertices.push(RawVertex {
            id: format!("{a}0"),
            agent: a.clone(),
            atoms: vec![],
        });
        raw.vertices.push(RawVertex {
            id: format!("{a}1"),
            agent: a.clone(),
            atoms: vec![format!("1_{a}")],
        });
    }
    for bits in 0u64..1 << n {
        raw.facets
            .push(names.iter().enumerate().map(|(i, a)| format!("{a}{}", bits >> i & 1)).collect());
    }
    SimplicialModel::from_raw(&raw)
}

/// Ordered partitions of `0..n`, each as a block index per element.
pub fn ordered_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn go(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            let k = cur.iter().max().map_or(0, |m| m + 1);
            if (0..k).all(|b| cur.contains(&b)) {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..cur.len() {
            cur[i] = b;
            go(i + 1, cur, out);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

/// One round of immediate-snapshot communication. For a facet X and an
/// ordered partition of the agents, an agent in block j hears from every agent
/// in blocks up to j. The new vertex of `a` is named `a|<heard source ids>`
/// and keeps a's atoms, plus `heard_<b>_<a>` and `saw_<p>_<a>` for each agent
/// b it heard from and each atom p true at b's vertex.
pub fn chromatic_subdivision(c: &SimplicialModel) -> Result<SimplicialModel> {
    let agents = c.agents();
    let n = agents.len();
    let mut raw = RawSimplicialModel::new(agents.names().iter().cloned());
    let mut made: BTreeMap<String, RawVertex> = BTreeMap::new();
    let partitions = ordered_partitions(n);
    for x in 0..c.num_facets() {
        let row = c.facet(x);
        for blocks in &partitions {
            let mut facet = Vec::with_capacity(n);
            for a in 0..n {
                let heard: Vec<usize> = (0..n).filter(|&b| blocks[b] <= blocks[a]).collect();
                let mut ids: Vec<&str> = heard.iter().map(|&b| c.vertex(row[b]).id.as_str()).collect();
                ids.sort_unstable();
                let id = format!("{}|{}", agents.name(a), ids.join(","));
                made.entry(id.clone()).or_insert_with(|| {
                    let me = agents.name(a);
                    let mut atoms: Vec<String> = c.vertex(row[a]).atoms.iter().cloned().collect();
                    for &b in heard.iter().filter(|&&b| b != a) {
                        atoms.push(format!("heard_{}_{me}", agents.name(b)));
                        atoms.extend(c.vertex(row[b]).atoms.iter().map(|p| format!("saw_{p}_{me}")));
                    }
                    atoms.sort();
                    RawVertex {
                        id: id.clone(),
                        agent: me.to_string(),
                        atoms,
                    }
                });
                facet.push(id);
            }
            raw.facets.push(facet);
        }
    }
    raw.vertices = made.into_values().collect();
    SimplicialModel::from_raw(&raw)
}

/// A registry entry.
#[derive(Clone, Debug)]
pub enum PaperModel {
    Simplicial(SimplicialModel),
    Kripke(KripkeModel),
    Action(ActionModel),
    Belief(SimplicialModel, BeliefAssignment),
}

impl PaperModel {
    pub fn kind(&self) -> &'static str {
        match self {
            PaperModel::Simplicial(_) => "simplicial",
            PaperModel::Kripke(_) => "kripke",
            PaperModel::Action(_) => "action",
            PaperModel::Belief(..) => "belief",
        }
    }
}

/// Registered names with a one-line description.
pub const NAMES: &[(&str, &str)] = &[
    ("ex2.3", "three states; g and w confuse s,t; b confuses t,u"),
    ("ex2.4", "two input triangles differing in a's bit"),
    ("ex4.1-left-big", "four facets, all values 0"),
    ("ex4.1-left-small", "one facet, all values 0"),
    ("ex4.1-right-big", "three facets, two of them a0,b0,c0"),
    ("ex4.1-right-small", "two facets a0,b0,c0 and a1,b0,c0"),
    ("ex4.2-C", "four facets F1..F4 of the subdivided triangle"),
    ("ex4.2-Cprime", "the same without the middle facet"),
    ("ex4.3-C", "4-cycle for agents a,b"),
    ("ex4.3-Cprime", "6-cycle for agents a,b"),
    ("ex4.3-Cdprime", "single edge for agents a,b"),
    ("sec4-path", "path b0-a1-b1-a2"),
    ("sec4-path-subdiv", "the path with its middle edge subdivided"),
    ("sec4-edge", "single edge a1-b1"),
    ("sec4-edge-subdiv", "the edge subdivided into three"),
    ("ex5.1", "three facets X, Y, Z"),
    ("sec6-improper", "one agent confusing p and ~p"),
    ("sec6-chain", "p -a- ~p -b- p"),
    ("sec6-chain-local", "the chain with local variables q_a, q_b"),
    ("ex6.1-square", "four states s,t,u,v, not bisimulation minimal"),
    ("ex7.2-x", "~p -ab- p"),
    ("ex7.2-square", "the square model (y)"),
    ("ex7.2-x3", "(x) with a third agent ab telling the states apart"),
    ("ex7.3-Cprime", "ex5.1 extended by V, U, W through b0"),
    ("ex8-f", "ex4.2-C with f_a(a0) = a1"),
    ("ex8-fc", "ex4.2-C with f_c(c0) = c1"),
    ("ex8-fprime", "ex4.2-C with a1->a0, b1->b0, c1->c0"),
    ("ex9.1-action", "a and b do not know the value of c"),
    ("ex9.2-C", "two facets differing in c's value"),
    ("ex9.2-action", "c publicly sets p_c to true"),
];

pub fn lookup(name: &str) -> Result<PaperModel> {
    use PaperModel::*;
    Ok(match name {
        "ex2.3" => Kripke(kripke_from_blocks(
            &["g", "w", "b"],
            &[("s", &[]), ("t", &[]), ("u", &[])],
            &[
                ("g", &[&["s", "t"], &["u"]]),
                ("w", &[&["s", "t"], &["u"]]),
                ("b", &[&["s"], &["t", "u"]]),
            ],
        )?),
        "ex2.4" => Simplicial(build(
            &["a", "b", "c"],
            &[("a0", &[]), ("a1", &["p_a"]), ("b0", &[]), ("c0", &[])],
            &[&["a0", "b0", "c0"], &["a1", "b0", "c0"]],
        )?),
        "ex4.1-left-big" => Simplicial(build(
            &["a", "b", "c"],
            &[("a0", &[]), ("a0'", &[]), ("b0", &[]), ("b0'", &[]), ("c0", &[]), ("c0'", &[])],
            &[
                &["a0", "b0'", "c0'"],
                &["a0'", "b0'", "c0"],
                &["a0'", "b0", "c0'"],
                &["a0'", "b0'", "c0'"],
            ],
        )?),
        "ex4.1-left-small" => Simplicial(build(
            &["a", "b", "c"],
            &[("a0", &[]), ("b0", &[]), ("c0", &[])],
            &[&["a0", "b0", "c0"]],
        )?),
        "ex4.1-right-big" => Simplicial(build(
            &["a", "b", "c"],
            &[("a0", &[]), ("a1", &["p_a"]), ("b0", &[]), ("b0'", &[]), ("b0''", &[]), ("c0", &[])],
            &[&["a0", "b0'", "c0"], &["a1", "b0", "c0"], &["a0", "b0''", "c0"]],
        )?),
        "ex4.1-right-small" => Simplicial(build(
            &["a", "b", "c"],
            &[("a0", &[]), ("a1", &["p_a"]), ("b0", &[]), ("b0'", &[]), ("c0", &[])],
            &[&["a0", "b0'", "c0"], &["a1", "b0", "c0"]],
        )?),
        "ex4.2-C" => Simplicial(triangle4(true)?),
        "ex4.2-Cprime" => Simplicial(triangle4(false)?),
        "ex4.3-C" => Simplicial(cycle(2)?),
        "ex4.3-Cprime" => Simplicial(cycle(3)?),
        "ex4.3-Cdprime" => Simplicial(build(&["a", "b"], &[("a", &["p_a"]), ("b", &[])], &[&["a", "b"]])?),
        "sec4-path" => Simplicial(valued(&["b0", "a1", "b1", "a2"], &[&["b0", "a1"], &["a1", "b1"], &["b1", "a2"]])?),
        "sec4-path-subdiv" => Simplicial(valued(
            &["b0", "a1", "b1'", "a1'", "b1", "a2"],
            &[&["b0", "a1"], &["a1", "b1'"], &["b1'", "a1'"], &["a1'", "b1"], &["b1", "a2"]],
        )?),
        "sec4-edge" => Simplicial(valued(&["a1", "b1"], &[&["a1", "b1"]])?),
        "sec4-edge-subdiv" => Simplicial(valued(
            &["a1", "b1'", "a1'", "b1"],
            &[&["a1", "b1'"], &["b1'", "a1'"], &["a1'", "b1"]],
        )?),
        "ex5.1" => Simplicial(build(
            &["a", "b", "c"],
            &[("a0", &[]), ("a1", &["p_a"]), ("b0", &[]), ("b1", &["p_b"]), ("c1", &["p_c"])],
            &[&["a0", "c1", "b1"], &["a1", "c1", "b1"], &["a1", "c1", "b0"]],
        )?),
        "sec6-improper" => Kripke(kripke_from_blocks(
            &["a"],
            &[("s", &[]), ("t", &["p"])],
            &[("a", &[&["s", "t"]])],
        )?),
        "sec6-chain" => Kripke(kripke_from_blocks(
            &["a", "b"],
            &[("s", &["p"]), ("t", &[]), ("u", &["p"])],
            &[("a", &[&["s", "t"], &["u"]]), ("b", &[&["s"], &["t", "u"]])],
        )?),
        "sec6-chain-local" => Kripke(kripke_from_blocks(
            &["a", "b"],
            &[("s", &["q_a", "q_b"]), ("t", &["q_a"]), ("u", &[])],
            &[("a", &[&["s", "t"], &["u"]]), ("b", &[&["s"], &["t", "u"]])],
        )?),
        "ex6.1-square" | "ex7.2-square" => Kripke(square()?),
        "ex7.2-x" => Kripke(kripke_from_blocks(
            &["a", "b"],
            &[("s", &[]), ("t", &["p"])],
            &[("a", &[&["s", "t"]]), ("b", &[&["s", "t"]])],
        )?),
        "ex7.2-x3" => Kripke(kripke_from_blocks(
            &["a", "b", "ab"],
            &[("s", &[]), ("t", &["p"])],
            &[("a", &[&["s", "t"]]), ("b", &[&["s", "t"]]), ("ab", &[&["s"], &["t"]])],
        )?),
        "ex7.3-Cprime" => Simplicial(build(
            &["a", "b", "c"],
            &[
                ("a0", &[]),
                ("a1", &["p_a"]),
                ("b0", &[]),
                ("b1", &["p_b"]),
                ("c1", &["p_c"]),
                ("a0'", &[]),
                ("a1'", &["p_a"]),
                ("b1'", &["p_b"]),
                ("c0", &[]),
            ],
            &[
                &["a0", "c1", "b1"],
                &["a1", "c1", "b1"],
                &["a1", "c1", "b0"],
                &["a1'", "c0", "b0"],
                &["a1'", "c0", "b1'"],
                &["a0'", "c0", "b1'"],
            ],
        )?),
        "ex8-f" => belief(&[("a0", "a1")])?,
        "ex8-fc" => belief(&[("c0", "c1")])?,
        "ex8-fprime" => belief(&[("a1", "a0"), ("b1", "b0"), ("c1", "c0")])?,
        "ex9.1-action" => {
            let v = |id: &str, agent: &str, pre: &str| RawActionVertex {
                id: id.into(),
                agent: agent.into(),
                pre: pre.into(),
                post: BTreeMap::new(),
            };
            Action(ActionModel::from_raw(&RawActionModel {
                agents: vec!["a".into(), "b".into(), "c".into()],
                vertices: vec![
                    v("a'", "a", "~(K[a] p_c | K[a] ~p_c)"),
                    v("b'", "b", "~(K[b] p_c | K[b] ~p_c)"),
                    v("c0'", "c", "~p_c"),
                    v("c1'", "c", "p_c"),
                ],
                facets: vec![
                    vec!["a'".into(), "b'".into(), "c0'".into()],
                    vec!["a'".into(), "b'".into(), "c1'".into()],
                ],
            })?)
        }
        "ex9.2-C" => Simplicial(build(
            &["a", "b", "c"],
            &[("a1", &["p_a"]), ("b1", &["p_b"]), ("c0", &[]), ("c1", &["p_c"])],
            &[&["a1", "b1", "c0"], &["a1", "b1", "c1"]],
        )?),
        "ex9.2-action" => Action(public_assignment(
            &["a".into(), "b".into(), "c".into()],
            "c",
            "p_c",
            &Formula::True,
        )?),
        _ => return Err(Error::UnknownScenario(name.to_string())),
    })
}

/// A registered simplicial model.
pub fn paper_model(name: &str) -> Result<SimplicialModel> {
    match lookup(name)? {
        PaperModel::Simplicial(m) | PaperModel::Belief(m, _) => Ok(m),
        other => Err(Error::UnknownScenario(format!("{name} is a {} entry", other.kind()))),
    }
}

/// A registered Kripke model.
pub fn paper_kripke(name: &str) -> Result<KripkeModel> {
    match lookup(name)? {
        PaperModel::Kripke(m) => Ok(m),
        other => Err(Error::UnknownScenario(format!("{name} is a {} entry", other.kind()))),
    }
}

/// A registered action model.
pub fn paper_action(name: &str) -> Result<ActionModel> {
    match lookup(name)? {
        PaperModel::Action(a) => Ok(a),
        other => Err(Error::UnknownScenario(format!("{name} is a {} entry", other.kind()))),
    }
}

/// A registered model with its belief functions.
pub fn paper_belief(name: &str) -> Result<(SimplicialModel, BeliefAssignment)> {
    match lookup(name)? {
        PaperModel::Belief(m, f) => Ok((m, f)),
        other => Err(Error::UnknownScenario(format!("{name} is a {} entry", other.kind()))),
    }
}

fn build(agents: &[&str], vertices: &[(&str, &[&str])], facets: &[&[&str]]) -> Result<SimplicialModel> {
    let mut raw = RawSimplicialModel::new(agents.iter().copied());
    for (id, atoms) in vertices {
        let agent = &id[..1];
        raw.vertex(id, agent, atoms);
    }
    for f in facets {
        raw.facet(f);
    }
    raw.build()
}

/// Two agents whose vertex names carry a value; value k becomes atom `v<k>_<agent>`.
fn valued(ids: &[&str], facets: &[&[&str]]) -> Result<SimplicialModel> {
    let atoms: Vec<(String, String)> = ids
        .iter()
        .map(|id| {
            let (agent, value) = (&id[..1], id[1..].trim_end_matches('\''));
            (id.to_string(), format!("v{value}_{agent}"))
        })
        .collect();
    let mut raw = RawSimplicialModel::new(["a", "b"]);
    for (id, p) in &atoms {
        raw.vertex(id, &id[..1], &[p.as_str()]);
    }
    for f in facets {
        raw.facet(f);
    }
    raw.build()
}

fn triangle4(middle: bool) -> Result<SimplicialModel> {
    let mut facets: Vec<&[&str]> = vec![&["a0", "b1", "c1"], &["a1", "b1", "c0"], &["a1", "b0", "c1"]];
    if middle {
        facets.push(&["a1", "b1", "c1"]);
    }
    build(
        &["a", "b", "c"],
        &[
            ("a0", &[]),
            ("a1", &["p_a"]),
            ("b0", &[]),
            ("b1", &["p_b"]),
            ("c0", &[]),
            ("c1", &["p_c"]),
        ],
        &facets,
    )
}

/// The 2k-cycle for agents a, b with constant values (p_a everywhere, p_b nowhere).
fn cycle(k: usize) -> Result<SimplicialModel> {
    let mut raw = RawSimplicialModel::new(["a", "b"]);
    for i in 0..k {
        raw.vertex(&format!("a{i}"), "a", &["p_a"]);
        raw.vertex(&format!("b{i}"), "b", &[]);
    }
    for i in 0..k {
        raw.facet(&[&format!("a{i}"), &format!("b{i}")]);
        raw.facet(&[&format!("a{}", (i + 1) % k), &format!("b{i}")]);
    }
    raw.build()
}

fn square() -> Result<KripkeModel> {
    kripke_from_blocks(
        &["a", "b"],
        &[("s", &["p"]), ("t", &[]), ("u", &[]), ("v", &["p"])],
        &[("a", &[&["s", "t"], &["u", "v"]]), ("b", &[&["s", "u"], &["t", "v"]])],
    )
}

fn belief(pairs: &[(&str, &str)]) -> Result<PaperModel> {
    let m = triangle4(true)?;
    let mut raw = RawBeliefAssignment::new();
    for (from, to) in pairs {
        raw.entry(from[..1].to_string())
            .or_default()
            .insert(from.to_string(), to.to_string());
    }
    let f = BeliefAssignment::from_raw(&m, &raw)?;
    Ok(PaperModel::Belief(m, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;

    #[test]
    fn muddy_counts() {
        let m = muddy_children(3).unwrap();
        assert_eq!((m.num_facets(), m.num_vertices()), (8, 12));
        assert!((0..m.num_vertices()).all(|v| m.vertex_star(v).len() == 2));
        let m = muddy_children(2).unwrap();
        assert_eq!((m.num_facets(), m.num_vertices()), (4, 4));
    }

    #[test]
    fn binary_inputs_is_a_sphere() {
        let m = binary_inputs(3).unwrap();
        assert_eq!(m.f_vector(), vec![6, 12, 8]);
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.boundary().is_empty());
        assert_eq!(binary_inputs(2).unwrap().f_vector(), vec![4, 4]);
    }

    #[test]
    fn fubini_numbers() {
        let fub: Vec<usize> = (1..=4).map(|n| ordered_partitions(n).len()).collect();
        assert_eq!(fub, vec![1, 3, 13, 75]);
    }

    #[test]
    fn subdivision_counts() {
        let tri = paper_model("ex4.1-left-small").unwrap();
        assert_eq!(chromatic_subdivision(&tri).unwrap().num_facets(), 13);
        let edge = paper_model("ex4.3-Cdprime").unwrap();
        assert_eq!(chromatic_subdivision(&edge).unwrap().num_facets(), 3);
    }

    #[test]
    fn subdivision_of_two_triangles_shares_a_subdivided_edge() {
        let s = chromatic_subdivision(&paper_model("ex2.4").unwrap()).unwrap();
        assert_eq!(s.num_facets(), 26);
        // vertices reachable from both inputs are exactly those that never heard from a
        let from = |f: usize| if f < 13 { "a0" } else { "a1" };
        let mut shared = Vec::new();
        for v in 0..s.num_vertices() {
            let sources: std::collections::BTreeSet<&str> = s.vertex_star(v).iter().map(|&f| from(f)).collect();
            if sources.len() == 2 {
                shared.push(v);
            }
        }
        assert_eq!(shared.len(), 4);
        assert!(shared.iter().all(|&v| !s.vertex(v).id.contains('a')));
        let edges = s
            .skeleton(1)
            .unwrap()
            .into_iter()
            .filter(|e: &Simplex| e.len() == 2 && e.vertices().iter().all(|v| shared.contains(v)))
            .count();
        assert_eq!(edges, 3);
    }

    #[test]
    fn subdivision_patterns() {
        // the four communication patterns of one triangle, as (b, c) views of a
        let s = chromatic_subdivision(&paper_model("ex4.1-left-small").unwrap()).unwrap();
        let f = |ids: &[&str]| s.facet_of(&s.simplex(ids).unwrap()).unwrap();
        let x = f(&["a|a0,b0,c0", "b|a0,b0,c0", "c|a0,b0,c0"]);
        let y = f(&["a|a0", "b|a0,b0,c0", "c|a0,b0,c0"]);
        let w = f(&["a|a0,b0", "b|a0,b0", "c|a0,b0,c0"]);
        let z = f(&["a|a0", "b|a0,b0", "c|a0,b0,c0"]);
        let common = |p: usize, q: usize| s.facet(p).iter().zip(s.facet(q)).filter(|(u, v)| u == v).count();
        assert_eq!((common(x, y), common(x, w), common(x, z)), (2, 1, 1));
    }

    #[test]
    fn registry_is_complete_and_valid() {
        for (name, _) in NAMES {
            let entry = lookup(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            if let PaperModel::Kripke(m) = &entry {
                assert!(m.num_states() > 0);
            }
        }
        assert_eq!(paper_model("nope").unwrap_err().kind(), "UnknownScenario");
        assert!(paper_model("ex2.3").is_err());
        assert_eq!(paper_model("ex4.2-C").unwrap().num_facets(), 4);
        assert_eq!(paper_kripke("ex7.2-square").unwrap().num_states(), 4);
        assert_eq!(paper_model("ex5.1").unwrap().num_facets(), 3);
    }

    #[test]
    fn registry_is_byte_stable() {
        let a = serde_json::to_string(&paper_model("ex7.3-Cprime").unwrap().to_raw()).unwrap();
        let b = serde_json::to_string(&paper_model("ex7.3-Cprime").unwrap().to_raw()).unwrap();
        assert_eq!(a, b);
    }
}
