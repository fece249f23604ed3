mod common;

use std::collections::BTreeSet;

use chromatic::bisim::{
    facet_classes, group_max_bisimulation, induced_vertex_relation, is_simplex_preserving, kripke_max_bisimulation,
    kripke_total_bisimilar, max_bisimulation, simplicial_quotient, total_bisimilar,
};
use chromatic::distinguish::delta_global;
use chromatic::duality::{kappa, sigma};
use chromatic::semantics::eval_facet;
use common::*;
use proptest::prelude::*;

fn same_agents_pair() -> impl Strategy<Value = (chromatic::SimplicialModel, chromatic::SimplicialModel)> {
    (any::<u64>(), any::<u64>(), 1usize..=3, 1usize..=8, 1usize..=8)
        .prop_map(|(s, t, n, f, g)| (simplicial(s, n, f), simplicial(t, n, g)))
}

proptest! {
    #![proptest_config(cases(500))]

    #[test]
    fn bisimilar_facets_agree_on_formulas((c, d) in same_agents_pair(), seed in any::<u64>()) {
        let rel = max_bisimulation(&c, &d).unwrap();
        let f = formula(seed, &knowledge_shape(&c, 3));
        for &(x, y) in &rel.pairs {
            prop_assert_eq!(eval_facet(&c, x, &f, None).unwrap(), eval_facet(&d, y, &f, None).unwrap(), "{}", f);
        }
    }
}

proptest! {
    #![proptest_config(cases(100))]

    #[test]
    fn modally_equivalent_facets_are_bisimilar(c in (any::<u64>(), 1usize..=3, 1usize..=10).prop_map(|(s, n, f)| simplicial(s, n, f))) {
        let k = kappa(&c);
        let table = delta_global(&k.model).unwrap();
        let classes = facet_classes(&c);
        for x in 0..c.num_facets() {
            let truth = table.denotation(k.points[x], table.depth());
            for y in 0..c.num_facets() {
                prop_assert_eq!(truth[k.points[y]], classes[x] == classes[y]);
            }
        }
    }
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn kappa_preserves_the_largest_bisimulation((c, d) in same_agents_pair()) {
        let rel = max_bisimulation(&c, &d).unwrap();
        let (kc, kd) = (kappa(&c), kappa(&d));
        let krel = kripke_max_bisimulation(&kc.model, &kd.model).unwrap();
        let mapped: BTreeSet<(usize, usize)> = rel.pairs.iter().map(|&(x, y)| (kc.points[x], kd.points[y])).collect();
        prop_assert_eq!(mapped, krel.pairs);
    }

    #[test]
    fn sigma_preserves_bisimilarity(m in arb_local_kripke(10), n in arb_local_kripke(10)) {
        prop_assume!(m.agents().names() == n.agents().names());
        let (sm, sn) = (sigma(&m).unwrap().model, sigma(&n).unwrap().model);
        prop_assert_eq!(kripke_total_bisimilar(&m, &n).unwrap(), total_bisimilar(&sm, &sn).unwrap());
        let twice = sm.disjoint_union(&sm, "l", "r").unwrap();
        prop_assert!(total_bisimilar(&sm, &twice).unwrap());
        prop_assert!(kripke_total_bisimilar(&m, &kappa(&twice).model).unwrap());
    }

    #[test]
    fn induced_vertex_relations_preserve_simplices((c, d) in same_agents_pair()) {
        let rel = max_bisimulation(&c, &d).unwrap();
        let v = induced_vertex_relation(&c, &d, &rel).unwrap();
        prop_assert!(is_simplex_preserving(&c, &d, &v));
        let back: BTreeSet<(usize, usize)> = v.iter().map(|&(a, b)| (b, a)).collect();
        prop_assert!(is_simplex_preserving(&d, &c, &back));
    }

    #[test]
    fn group_bisimulation_is_finer(m in arb_kripke(8), n in arb_kripke(8)) {
        prop_assume!(m.agents().names() == n.agents().names());
        let g = group_max_bisimulation(&m, &n).unwrap();
        let s = kripke_max_bisimulation(&m, &n).unwrap();
        prop_assert!(g.pairs.is_subset(&s.pairs));
    }

    #[test]
    fn quotients_are_bisimilar_and_minimal(c in arb_simplicial()) {
        if let Ok(q) = simplicial_quotient(&c) {
            prop_assert!(total_bisimilar(&c, &q).unwrap());
            let classes = facet_classes(&q);
            prop_assert_eq!(classes.iter().collect::<BTreeSet<_>>().len(), q.num_facets());
        }
    }
}

#[test]
fn group_bisimulation_is_strictly_finer_on_the_square() {
    let square = chromatic::scenarios::paper_kripke("ex7.2-square").unwrap();
    let x = chromatic::scenarios::paper_kripke("ex7.2-x").unwrap();
    let g = group_max_bisimulation(&square, &x).unwrap();
    let s = kripke_max_bisimulation(&square, &x).unwrap();
    assert!(g.pairs.len() < s.pairs.len());
}
