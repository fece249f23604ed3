use chromatic::{parse, Formula};
use proptest::prelude::*;

fn agent() -> impl Strategy<Value = String> {
    prop_oneof![Just("a"), Just("b"), Just("c"), Just("ab")].prop_map(String::from)
}

fn group() -> impl Strategy<Value = Vec<String>> {
    prop::collection::btree_set(agent(), 1..4).prop_map(|s| s.into_iter().collect())
}

fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("p_a"),
        Just("q_b"),
        Just("1_c"),
        Just("mud_b_a"),
        Just("p"),
        Just("x'"),
        Just("two words"),
        Just("K"),
    ]
    .prop_map(String::from)
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::True), Just(Formula::False), atom().prop_map(Formula::Atom)];
    leaf.prop_recursive(6, 64, 3, |inner| {
        let b = move || inner.clone().prop_map(Box::new);
        prop_oneof![
            b().prop_map(Formula::Not),
            (b(), b()).prop_map(|(x, y)| Formula::And(x, y)),
            (b(), b()).prop_map(|(x, y)| Formula::Or(x, y)),
            (b(), b()).prop_map(|(x, y)| Formula::Implies(x, y)),
            (agent(), b()).prop_map(|(a, x)| Formula::K(a, x)),
            (agent(), b()).prop_map(|(a, x)| Formula::KHat(a, x)),
            (group(), b()).prop_map(|(g, x)| Formula::E(g, x)),
            (group(), b()).prop_map(|(g, x)| Formula::C(g, x)),
            (group(), b()).prop_map(|(g, x)| Formula::D(g, x)),
            (prop::collection::vec(group(), 1..3), b()).prop_map(|(gs, x)| Formula::CDFam(gs, x)),
            (0usize..3, b()).prop_map(|(m, x)| Formula::CDDim(m, x)),
            (agent(), b()).prop_map(|(a, x)| Formula::B(a, x)),
            (agent(), b()).prop_map(|(a, x)| Formula::BHat(a, x)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_print(f in formula()) {
        let text = f.to_string();
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }
}

proptest! {
    #[test]
    fn parser_never_panics(s in "[-~&|()\\[\\]{},a-cpKDCEB_0-9 >]{0,40}") {
        let _ = parse(&s);
    }

    #[test]
    fn printing_is_a_normal_form(f in formula()) {
        let once = parse(&f.to_string()).unwrap().to_string();
        let twice = parse(&once).unwrap().to_string();
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn whitespace_and_redundant_brackets_normalise() {
    let a = parse("  K[a]((p_a)) ->  ~ q_b ").unwrap();
    let b = parse("K[a] p_a -> ~q_b").unwrap();
    assert_eq!(a, b);
}
