#![allow(dead_code)]

use chromatic::random::{self, FormulaShape, SimplicialShape};
use chromatic::{Formula, KripkeModel, SimplicialModel};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    random::rng(seed)
}

pub fn simplicial(seed: u64, agents: usize, facets: usize) -> SimplicialModel {
    let shape = SimplicialShape {
        agents,
        facets,
        vertices_per_agent: 3,
        atoms_per_agent: 1,
    };
    random::simplicial(&mut rng(seed), &shape).unwrap()
}

pub fn arb_simplicial() -> impl Strategy<Value = SimplicialModel> {
    (any::<u64>(), 1usize..=4, 1usize..=10).prop_map(|(s, n, f)| simplicial(s, n, f))
}

pub fn arb_small_simplicial() -> impl Strategy<Value = SimplicialModel> {
    (any::<u64>(), 2usize..=3, 1usize..=10).prop_map(|(s, n, f)| simplicial(s, n, f))
}

pub fn arb_local_kripke(max_states: usize) -> impl Strategy<Value = KripkeModel> {
    (any::<u64>(), 1usize..=3).prop_map(move |(s, n)| random::local_proper_kripke(&mut rng(s), n, max_states, 1).unwrap())
}

pub fn arb_kripke(max_states: usize) -> impl Strategy<Value = KripkeModel> {
    (any::<u64>(), 1usize..=3).prop_map(move |(s, n)| random::kripke(&mut rng(s), n, max_states, 2).unwrap())
}

pub fn knowledge_shape(m: &SimplicialModel, depth: usize) -> FormulaShape {
    FormulaShape::knowledge(m.agents().names(), &m.atoms().into_iter().collect::<Vec<_>>(), depth)
}

pub fn kripke_shape(m: &KripkeModel, depth: usize) -> FormulaShape {
    FormulaShape::knowledge(m.agents().names(), &m.atoms().iter().cloned().collect::<Vec<_>>(), depth)
}

pub fn formula(seed: u64, shape: &FormulaShape) -> Formula {
    random::formula(&mut rng(seed), shape)
}

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Rebuild `f` bottom-up, letting `step` replace each rebuilt node.
pub fn rewrite(f: &Formula, step: &dyn Fn(Formula) -> Formula) -> Formula {
    use Formula::*;
    let r = |x: &Formula| Box::new(rewrite(x, step));
    let node = match f {
        True | False | Atom(_) => f.clone(),
        Not(x) => Not(r(x)),
        And(x, y) => And(r(x), r(y)),
        Or(x, y) => Or(r(x), r(y)),
        Implies(x, y) => Implies(r(x), r(y)),
        K(a, x) => K(a.clone(), r(x)),
        KHat(a, x) => KHat(a.clone(), r(x)),
        E(g, x) => E(g.clone(), r(x)),
        C(g, x) => C(g.clone(), r(x)),
        D(g, x) => D(g.clone(), r(x)),
        CDFam(fam, x) => CDFam(fam.clone(), r(x)),
        CDDim(m, x) => CDDim(*m, r(x)),
        B(a, x) => B(a.clone(), r(x)),
        BHat(a, x) => BHat(a.clone(), r(x)),
    };
    step(node)
}

/// Drop negations: `~x` becomes `x` and `x -> y` becomes `x | y`.
pub fn negation_free(f: &Formula) -> Formula {
    rewrite(f, &|g| match g {
        Formula::Not(x) => *x,
        Formula::Implies(x, y) => Formula::Or(x, y),
        other => other,
    })
}
