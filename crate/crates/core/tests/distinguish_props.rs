mod common;

use chromatic::bisim::state_classes;
use chromatic::distinguish::{delta_global, delta_local, localize_ledent, same_information, SameInformation};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(cases(100))]

    #[test]
    fn delta_denotations_shrink_and_stabilise(m in arb_kripke(12)) {
        let t = delta_global(&m).unwrap();
        prop_assert!(t.is_monotone());
        prop_assert_eq!(t.depth(), m.num_states());
        prop_assert!(t.stable_from() <= m.num_states());
    }

    #[test]
    fn delta_picks_out_bisimulation_classes(m in arb_kripke(12)) {
        let t = delta_global(&m).unwrap();
        let classes = state_classes(&m);
        for s in 0..m.num_states() {
            let den = t.denotation(s, t.depth());
            for u in 0..m.num_states() {
                prop_assert_eq!(den[u], classes[s] == classes[u]);
            }
        }
    }

    #[test]
    fn local_delta_is_local_and_keeps_properness(m in arb_kripke(10)) {
        let d = delta_local(&m).unwrap();
        let r = d.model.analyze();
        prop_assert!(r.is_local);
        if m.is_proper() {
            prop_assert!(r.is_proper);
        }
    }

    #[test]
    fn ledent_uses_one_atom_per_class(m in arb_kripke(10)) {
        let l = localize_ledent(&m);
        let expected: usize = m.agents().ids().map(|a| m.blocks(a).len()).sum();
        prop_assert_eq!(l.atoms().len(), expected);
        prop_assert!(l.analyze().is_local);
    }

    #[test]
    fn a_model_has_its_own_information(m in arb_kripke(10)) {
        prop_assert!(matches!(same_information(&m, &m).unwrap(), SameInformation::Equal));
    }
}
