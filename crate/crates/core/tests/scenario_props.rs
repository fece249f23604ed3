mod common;

use chromatic::complex::validate;
use chromatic::scenarios::{binary_inputs, chromatic_subdivision, lookup, muddy_children, ordered_partitions, PaperModel, NAMES};
use common::*;
use proptest::prelude::*;

/// Ordered set partitions of an n-set, by choosing the first block.
fn fubini(n: usize) -> usize {
    fn choose(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    if n == 0 {
        return 1;
    }
    (1..=n).map(|k| choose(n, k) * fubini(n - k)).sum()
}

#[test]
fn fubini_oracle() {
    assert_eq!((1..=4).map(fubini).collect::<Vec<_>>(), vec![1, 3, 13, 75]);
    for n in 1..=4 {
        assert_eq!(ordered_partitions(n).len(), fubini(n));
    }
}

#[test]
fn generators_produce_valid_models() {
    for n in 2..=4 {
        for m in [binary_inputs(n).unwrap(), muddy_children(n).unwrap()] {
            assert!(validate(&m.to_raw()).is_valid());
            assert!(validate(&chromatic_subdivision(&m).unwrap().to_raw()).is_valid());
        }
    }
}

#[test]
fn registry_models_are_well_formed() {
    for (name, _) in NAMES {
        match lookup(name).unwrap() {
            PaperModel::Simplicial(m) | PaperModel::Belief(m, _) => assert!(validate(&m.to_raw()).is_valid(), "{name}"),
            PaperModel::Kripke(m) => {
                let r = m.analyze();
                if ["sec6-improper", "ex7.2-x"].contains(name) {
                    assert!(!r.is_proper);
                } else {
                    assert!(r.is_proper, "{name}");
                }
            }
            PaperModel::Action(a) => assert!(a.num_facets() > 0, "{name}"),
        }
    }
}

proptest! {
    #![proptest_config(cases(60))]

    #[test]
    fn subdivision_multiplies_facets(seed in any::<u64>(), n in 2usize..=4, f in 1usize..=4) {
        let m = simplicial(seed, n, f);
        let s = chromatic_subdivision(&m).unwrap();
        prop_assert_eq!(s.num_facets(), m.num_facets() * fubini(n));
        prop_assert!(validate(&s.to_raw()).is_valid());
    }
}
