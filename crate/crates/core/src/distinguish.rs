//! Distinguishing formulas for the states of finite Kripke models, the
//! localization of models by fresh local atoms, and a comparison of the
//! information two models over the same states carry.
//!
//! Formulas are built in a shared [`Arena`]: the `k`-th column of a table
//! refers to the whole `k-1`-th column, so printing them as trees is
//! exponential while the shared form stays small.

use std::collections::{BTreeMap, BTreeSet};

use crate::agents::AgentSet;
use crate::bisim::{check_kripke_relation, state_classes, Relation, RelationKind};
use crate::error::{Error, Result};
use crate::formula::{Arena, Formula, Node, NodeId};
use crate::kripke::{KripkeModel, State, StateIdx};
use crate::semantics::KripkeEvaluator;

/// Atoms that are neither constant (on models with more than one state)
/// nor equivalent to a lexicographically smaller atom.
pub fn non_redundant_atoms(m: &KripkeModel) -> Vec<String> {
    if m.num_states() <= 1 {
        return m.atoms().iter().cloned().collect();
    }
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut out = Vec::new();
    for p in m.atoms() {
        let ext: Vec<bool> = (0..m.num_states()).map(|s| m.holds(s, p)).collect();
        if ext.iter().all(|&b| b) || ext.iter().all(|&b| !b) {
            continue;
        }
        if seen.insert(ext) {
            out.push(p.clone());
        }
    }
    out
}

fn literals(m: &KripkeModel, atoms: &[String], s: StateIdx) -> Vec<(String, bool)> {
    atoms.iter().map(|p| (p.clone(), m.holds(s, p))).collect()
}

fn literal_formula(lits: &[(String, bool)]) -> Formula {
    Formula::conj(lits.iter().map(|(p, v)| {
        let a = Formula::atom(p.clone());
        if *v {
            a
        } else {
            Formula::not(a)
        }
    }))
}

/// τ_s: the conjunction of the literals of `s` over the non-redundant atoms.
pub fn factual_description(m: &KripkeModel, s: StateIdx) -> Formula {
    literal_formula(&literals(m, &non_redundant_atoms(m), s))
}

/// δ_s^k for all states and k = 0..=|S|, with denotations.
#[derive(Clone, Debug)]
pub struct DeltaTable {
    pub arena: Arena,
    agents: AgentSet,
    /// `columns[k][s]`.
    columns: Vec<Vec<NodeId>>,
    /// `denotation[k][s][t]`: t ⊨ δ_s^k.
    denotation: Vec<Vec<Vec<bool>>>,
}

impl DeltaTable {
    fn build(m: &KripkeModel, mut arena: Arena, base: Vec<NodeId>) -> Result<Self> {
        let n = m.num_states();
        let mut columns = vec![base.clone()];
        for k in 0..n {
            let prev = columns[k].clone();
            let col = (0..n)
                .map(|s| {
                    let mut parts = vec![base[s]];
                    let mut boxes = Vec::new();
                    for a in m.agents().ids() {
                        let mut seen = BTreeSet::new();
                        let class: Vec<NodeId> =
                            m.class(a, s).iter().map(|&t| prev[t]).filter(|&d| seen.insert(d)).collect();
                        for &d in &class {
                            parts.push(arena.add(Node::KHat(a, d)));
                        }
                        let disj = arena.or(class);
                        boxes.push(arena.add(Node::K(a, disj)));
                    }
                    parts.extend(boxes);
                    arena.and(parts)
                })
                .collect();
            columns.push(col);
        }
        let val = KripkeEvaluator::new(m).label_all(&arena)?;
        let denotation = columns
            .iter()
            .map(|col| col.iter().map(|&d| val[d].clone()).collect())
            .collect();
        Ok(DeltaTable {
            arena,
            agents: m.agents().clone(),
            columns,
            denotation,
        })
    }

    /// Number of columns minus one, which is |S|.
    pub fn depth(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn node(&self, s: StateIdx, k: usize) -> NodeId {
        self.columns[k][s]
    }

    pub fn formula(&self, s: StateIdx, k: usize) -> Formula {
        self.arena.to_formula(self.columns[k][s], &self.agents)
    }

    /// δ_s = δ_s^{|S|}.
    pub fn distinguishing(&self, s: StateIdx) -> Formula {
        self.formula(s, self.depth())
    }

    /// Size of δ_s^k as a tree.
    pub fn tree_size(&self, s: StateIdx, k: usize) -> u64 {
        self.arena.tree_size(self.columns[k][s])
    }

    /// Node-per-line listing of δ_s^k with shared subformulas.
    pub fn listing(&self, s: StateIdx, k: usize) -> String {
        self.arena.dag_listing(self.columns[k][s], &self.agents)
    }

    pub fn denotation(&self, s: StateIdx, k: usize) -> &[bool] {
        &self.denotation[k][s]
    }

    /// Does every column have a denotation contained in the previous one?
    pub fn is_monotone(&self) -> bool {
        (1..self.columns.len()).all(|k| {
            self.denotation[k]
                .iter()
                .zip(&self.denotation[k - 1])
                .all(|(now, before)| now.iter().zip(before).all(|(&x, &y)| !x || y))
        })
    }

    /// The first k after which no denotation changes.
    pub fn stable_from(&self) -> usize {
        let last = self.depth();
        (0..=last)
            .find(|&k| self.denotation[k] == self.denotation[last])
            .unwrap_or(last)
    }

    /// {(s, t) | t ⊨ δ_s^k for every k}.
    pub fn relation(&self) -> Relation {
        let n = self.columns[0].len();
        Relation::new(
            (0..n)
                .flat_map(|s| (0..n).map(move |t| (s, t)))
                .filter(|&(s, t)| self.denotation.iter().all(|col| col[s][t])),
        )
    }
}

/// Procedure (1): δ_s^0 = τ_s.
pub fn delta_global(m: &KripkeModel) -> Result<DeltaTable> {
    let atoms = non_redundant_atoms(m);
    let mut arena = Arena::new();
    let base = (0..m.num_states())
        .map(|s| literal_node(&mut arena, &literals(m, &atoms, s)))
        .collect();
    DeltaTable::build(m, arena, base)
}

fn literal_node(arena: &mut Arena, lits: &[(String, bool)]) -> NodeId {
    let parts = lits
        .iter()
        .map(|(p, v)| {
            let a = arena.add(Node::Atom(p.clone()));
            if *v {
                a
            } else {
                arena.add(Node::Not(a))
            }
        })
        .collect();
    arena.and(parts)
}

/// The name of the fresh local atom for agent `a` standing for the
/// disjunction of the given factual descriptions.
fn local_atom_name(taus: &BTreeSet<Vec<(String, bool)>>, n_atoms: usize, agent: &str) -> String {
    if n_atoms == 0 || (n_atoms < 63 && taus.len() as u64 == 1u64 << n_atoms) {
        return format!("top_{agent}");
    }
    let show = |t: &Vec<(String, bool)>| {
        t.iter()
            .map(|(p, v)| if *v { p.clone() } else { format!("~{p}") })
            .collect::<Vec<_>>()
            .join("&")
    };
    let body = if taus.len() == 1 {
        show(taus.iter().next().expect("one"))
    } else {
        taus.iter()
            .map(|t| if t.len() > 1 { format!("({})", show(t)) } else { show(t) })
            .collect::<Vec<_>>()
            .join("|")
    };
    format!("{body}_{agent}")
}

/// The result of procedure (2).
#[derive(Clone, Debug)]
pub struct LocalDelta {
    /// Same states and relations, valued by one fresh atom per agent and class.
    pub model: KripkeModel,
    pub table: DeltaTable,
    /// Is the relation defined by the new table a bisimulation of the input model?
    pub conjecture_holds: bool,
}

/// Procedure (2): localize by the disjunctions τ_{[s]_a} and build δ over the new atoms.
pub fn delta_local(m: &KripkeModel) -> Result<LocalDelta> {
    let atoms = non_redundant_atoms(m);
    let mut names: Vec<Vec<String>> = Vec::new();
    for a in m.agents().ids() {
        let agent = m.agents().name(a);
        let per_block: Vec<String> = m
            .blocks(a)
            .iter()
            .map(|b| {
                let taus: BTreeSet<Vec<(String, bool)>> = b.iter().map(|&t| literals(m, &atoms, t)).collect();
                local_atom_name(&taus, atoms.len(), agent)
            })
            .collect();
        names.push(per_block);
    }
    let states: Vec<State> = (0..m.num_states())
        .map(|s| State {
            id: m.state(s).id.clone(),
            atoms: m.agents().ids().map(|a| names[a][m.block(a, s)].clone()).collect(),
        })
        .collect();
    let partitions = m.agents().ids().map(|a| m.block_ids(a).to_vec()).collect();
    let local = KripkeModel::new(m.agents().clone(), states, partitions)?;
    let mut arena = Arena::new();
    let base = (0..m.num_states())
        .map(|s| {
            let parts = m
                .agents()
                .ids()
                .map(|a| arena.add(Node::Atom(names[a][m.block(a, s)].clone())))
                .collect();
            arena.and(parts)
        })
        .collect();
    let table = DeltaTable::build(&local, arena, base)?;
    let conjecture_holds = matches!(check_kripke_relation(m, m, &table.relation())?, RelationKind::Bisimulation);
    Ok(LocalDelta {
        model: local,
        table,
        conjecture_holds,
    })
}

/// One fresh atom per equivalence class: `p^<ids of the class>_<agent>`.
pub fn localize_ledent(m: &KripkeModel) -> KripkeModel {
    let name = |a: usize, s: StateIdx| {
        let ids: Vec<&str> = m.class(a, s).iter().map(|&t| m.state(t).id.as_str()).collect();
        format!("p^{}_{}", ids.join("."), m.agents().name(a))
    };
    let states = (0..m.num_states())
        .map(|s| State {
            id: m.state(s).id.clone(),
            atoms: m.agents().ids().map(|a| name(a, s)).collect(),
        })
        .collect();
    let partitions = m.agents().ids().map(|a| m.block_ids(a).to_vec()).collect();
    KripkeModel::new(m.agents().clone(), states, partitions).expect("same shape as the input")
}

/// ⋀_a p_a^{[s]_a} in a Ledent localization.
pub fn ledent_description(localized: &KripkeModel, s: StateIdx) -> Formula {
    Formula::conj(localized.state(s).atoms.iter().map(|p| Formula::atom(p.clone())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SameInformation {
    Equal,
    /// States `pair` are bisimilar in the model named by `merged_in` (0 or 1) but not in the other.
    Differs { merged_in: usize, pair: (String, String) },
}

/// Compare the maximal autobisimulation partitions of two models over the same state ids.
pub fn same_information(m: &KripkeModel, n: &KripkeModel) -> Result<SameInformation> {
    let ids_m: BTreeSet<&str> = m.states().iter().map(|s| s.id.as_str()).collect();
    let ids_n: BTreeSet<&str> = n.states().iter().map(|s| s.id.as_str()).collect();
    if ids_m != ids_n || ids_m.len() != m.num_states() {
        return Err(Error::StateSetMismatch);
    }
    let class_by_id = |k: &KripkeModel| -> BTreeMap<String, usize> {
        let c = state_classes(k);
        k.states().iter().map(|s| s.id.clone()).zip(c).collect()
    };
    let (cm, cn) = (class_by_id(m), class_by_id(n));
    let ids: Vec<&String> = cm.keys().collect();
    for (i, s) in ids.iter().enumerate() {
        for t in &ids[i + 1..] {
            let (a, b) = (cm[*s] == cm[*t], cn[*s] == cn[*t]);
            if a != b {
                return Ok(SameInformation::Differs {
                    merged_in: if a { 0 } else { 1 },
                    pair: ((*s).clone(), (*t).clone()),
                });
            }
        }
    }
    Ok(SameInformation::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::kripke_from_blocks;
    use crate::semantics::denotation;

    fn chain() -> KripkeModel {
        kripke_from_blocks(
            &["a", "b"],
            &[("s", &["p"]), ("t", &[]), ("u", &["p"])],
            &[("a", &[&["s", "t"], &["u"]]), ("b", &[&["s"], &["t", "u"]])],
        )
        .unwrap()
    }

    #[test]
    fn redundancy() {
        let m = kripke_from_blocks(
            &["a"],
            &[("s", &["p", "q", "r"]), ("t", &["r"])],
            &[("a", &[&["s"], &["t"]])],
        )
        .unwrap();
        assert_eq!(non_redundant_atoms(&m), vec!["p".to_string()]);
        let single = kripke_from_blocks(&["a"], &[("s", &["p"])], &[("a", &[&["s"]])]).unwrap();
        assert_eq!(non_redundant_atoms(&single), vec!["p".to_string()]);
        assert_eq!(factual_description(&chain(), 1).to_string(), "~p");
    }

    #[test]
    fn chain_is_distinguished() {
        let m = chain();
        let t = delta_global(&m).unwrap();
        assert!(t.is_monotone());
        for s in 0..3 {
            let den = t.denotation(s, t.depth());
            assert_eq!(den.iter().filter(|&&b| b).count(), 1);
            assert!(den[s]);
        }
        assert_eq!(denotation(&m, &t.distinguishing(1)).unwrap(), vec![false, true, false]);
    }

    #[test]
    fn local_atoms_of_the_chain() {
        let l = delta_local(&chain()).unwrap();
        let names: Vec<Vec<&str>> = l
            .model
            .states()
            .iter()
            .map(|s| s.atoms.iter().map(String::as_str).collect())
            .collect();
        assert_eq!(names, vec![vec!["p_b", "top_a"], vec!["top_a", "top_b"], vec!["p_a", "top_b"]]);
        assert!(l.conjecture_holds);
        for (s, k, text) in [(0, 1, "top_a & p_b"), (1, 2, "top_a & top_b"), (2, 1, "p_a & top_b")] {
            assert_eq!(l.table.denotation(s, k), denotation(&l.model, &parse(text).unwrap()).unwrap());
        }
        assert_eq!(
            denotation(&l.model, &parse("Khat[a] p_b & Khat[b] p_a").unwrap()).unwrap(),
            vec![false, true, false]
        );
        assert_eq!(same_information(&chain(), &l.model).unwrap(), SameInformation::Equal);
    }

    #[test]
    fn ledent_atoms() {
        let l = localize_ledent(&chain());
        assert_eq!(l.atoms().len(), 4);
        assert!(l.state(0).atoms.contains("p^s.t_a"));
        assert_eq!(denotation(&l, &ledent_description(&l, 2)).unwrap(), vec![false, false, true]);
    }
}
