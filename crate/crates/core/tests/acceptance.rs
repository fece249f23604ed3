//! The acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use chromatic::belief::derive_kd45;
use chromatic::bisim::{
    facet_classes, group_max_bisimulation, is_covering, kripke_max_bisimulation, kripke_total_bisimilar,
    max_bisimulation, simplicial_quotient, total_bisimilar,
};
use chromatic::complex::RawSimplicialModel;
use chromatic::distinguish::{delta_global, delta_local};
use chromatic::duality::{kappa, roundtrip_kripke, roundtrip_simplicial, sigma, sigma_point};
use chromatic::dynamics::{binary_consensus_action, product, ConsensusPolicy};
use chromatic::maps::VertexMap;
use chromatic::random::{self, FormulaShape};
use chromatic::scenarios::{
    binary_inputs, chromatic_subdivision, muddy_children, paper_action, paper_belief, paper_kripke, paper_model,
};
use chromatic::semantics::{
    denotation, eval_facet, eval_kripke, eval_multipoint, eval_restricted, eval_simplex, eval_simplicial,
};
use chromatic::{parse, BeliefAssignment, Formula, Mode, Simplex, SimplicialModel};
use common::{formula, knowledge_shape, kripke_shape, negation_free, rng, simplicial};
use rand::Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_simplicial(seed: u64, agents: std::ops::RangeInclusive<usize>, facets: std::ops::RangeInclusive<usize>) -> SimplicialModel {
    let mut r = rng(seed);
    let n = r.gen_range(agents);
    let f = r.gen_range(facets);
    simplicial(seed.wrapping_mul(31).wrapping_add(7), n, f)
}

fn roundtrip() -> Outcome {
    ensure!(ok(roundtrip_kripke(&ok(paper_kripke("ex2.3"))?))?, "ex2.3");
    for n in 1..=4 {
        let mut generated = Vec::new();
        generated.extend(muddy_children(n).ok());
        if let Ok(b) = binary_inputs(n) {
            generated.push(ok(chromatic_subdivision(&b))?);
            generated.push(b);
        }
        for c in &generated {
            ensure!(ok(roundtrip_simplicial(c))?, "generator model with {} facets, n = {n}", c.num_facets());
        }
    }
    for seed in 0..200 {
        let mut r = rng(seed);
        let agents = r.gen_range(1..=4);
        let m = ok(random::local_proper_kripke(&mut r, agents, 30, 1))?;
        ensure!(ok(roundtrip_kripke(&m))?, "random model, seed {seed}");
        ensure!(ok(roundtrip_simplicial(&ok(sigma(&m))?.model))?, "sigma image, seed {seed}");
    }
    Ok(())
}

fn transfer() -> Outcome {
    for seed in 0..500u64 {
        let mut r = rng(seed);
        let agents = r.gen_range(1..=3);
        let m = ok(random::local_proper_kripke(&mut r, agents, 12, 1))?;
        let t = ok(sigma(&m))?;
        let s = r.gen_range(0..m.num_states());
        let f = formula(seed ^ 0x5eed, &kripke_shape(&m, 3));
        let lhs = ok(eval_kripke(&m, s, &f))?;
        let rhs = ok(eval_facet(&t.model, sigma_point(&t, s), &f, None))?;
        ensure!(lhs == rhs, "seed {seed}: {f} at {}", m.state(s).id);
    }
    Ok(())
}

fn at(c: &SimplicialModel, mode: Mode, simplex: &str, f: &str, belief: Option<&BeliefAssignment>) -> Result<bool, String> {
    let s = ok(c.resolve(simplex))?;
    ok(eval_simplicial(c, mode, &s, &ok(parse(f))?, belief))
}

fn expect(c: &SimplicialModel, mode: Mode, simplex: &str, f: &str, want: bool, belief: Option<&BeliefAssignment>) -> Outcome {
    let got = at(c, mode, simplex, f, belief)?;
    ensure!(got == want, "{f} at {{{simplex}}}: got {got}, expected {want}");
    Ok(())
}

fn goldens() -> Outcome {
    use Mode::{Facet, Multipoint, Restricted, Simplex as Smp};

    let c = ok(paper_model("ex5.1"))?;
    let x = "a0,b1,c1";
    expect(&c, Facet, x, "K[a] ~p_a", true, None)?;
    expect(&c, Multipoint, "b1,c1", "K[a] ~p_a", false, None)?;
    expect(&c, Multipoint, "c1", "K[c] (p_a | p_b)", true, None)?;
    for (simplex, f) in [("b1,c1", "K[a] ~p_a"), ("c1", "K[c] (p_a | p_b)")] {
        let s = ok(c.resolve(simplex))?;
        match eval_restricted(&c, &s, &ok(parse(f))?, None) {
            Err(e) => ensure!(e.kind() == "FormulaOutsideLanguage", "{f}: {}", e.kind()),
            Ok(v) => return Err(format!("{f} at {{{simplex}}} evaluated to {v}")),
        }
    }
    expect(&c, Restricted, "b1,c1", "K[b] p_c & ~K[c] p_b", true, None)?;
    expect(&c, Restricted, "c1", "K[c] p_c", true, None)?;
    expect(&c, Facet, x, "C[a,b,c] p_c", true, None)?;

    let big = ok(paper_model("ex4.2-C"))?;
    let small = ok(paper_model("ex4.2-Cprime"))?;
    let (f1, f2, f4) = ("a0,b1,c1", "a1,b1,c0", "a1,b1,c1");
    let cab = "C[a,b] (K[c] p_c -> (K[a] ~p_a | K[b] ~p_b))";
    expect(&small, Facet, f1, cab, true, None)?;
    expect(&big, Facet, f1, cab, false, None)?;
    expect(&big, Facet, f1, "C[a,b] (K[a] ~p_a | K[b] ~p_b)", false, None)?;
    expect(&big, Facet, f2, "K[c] (K[a] p_a & K[b] p_b)", true, None)?;
    expect(&big, Facet, f2, "C[a,b] (K[a] p_a & K[b] p_b)", false, None)?;
    expect(&big, Smp, "a0,b1", "K[a] ~p_a", true, None)?;
    expect(&big, Smp, "a0,b1", "C[a,b] ~p_a", false, None)?;
    expect(&big, Facet, f4, "D[a,b,c] (p_a & p_b & p_c)", true, None)?;
    expect(&big, Facet, f4, "D[a,c] (p_a & p_b & p_c)", false, None)?;

    let wide = ok(paper_model("ex7.3-Cprime"))?;
    expect(&wide, Facet, x, "CDdim[1] p_c", true, None)?;
    expect(&wide, Facet, x, "C[a,b,c] p_c", false, None)?;
    expect(&wide, Facet, "a1',c0,b0", "CDdim[1] ~p_c", true, None)?;

    let (m, fa) = ok(paper_belief("ex8-f"))?;
    expect(&m, Facet, f1, "~p_a & B[a] p_a", true, Some(&fa))?;
    expect(&m, Facet, f1, "(p_b & p_c) & Bhat[a] (p_b & p_c) & ~B[a] (p_b & p_c)", true, Some(&fa))?;
    ensure!(!fa.is_locally_correct(&m, 0), "f_a is locally correct");
    let (m, fc) = ok(paper_belief("ex8-fc"))?;
    expect(&m, Facet, f2, "~p_c & B[c] p_c", true, Some(&fc))?;
    let (m, fp) = ok(paper_belief("ex8-fprime"))?;
    expect(
        &m,
        Facet,
        f1,
        "B[a] (~p_a & p_b & p_c) & B[b] (p_a & ~p_b & p_c) & B[c] (p_a & p_b & ~p_c)",
        true,
        Some(&fp),
    )?;
    let frame = derive_kd45(&m, &fp);
    for a in m.agents().ids() {
        for s in 0..m.num_facets() {
            ensure!(frame.successors(a, s).len() == 1, "f' leaves agent {a} unsure at F{s}");
        }
    }

    let act = ok(paper_action("ex9.1-action"))?;
    let p = ok(product(&big, &act))?;
    ensure!(p.model.num_facets() == 2 && p.model.num_vertices() == 4, "product shape {:?}", p.model.f_vector());
    let source = ok(big.resolve_facet(f4))?;
    let c1 = act.vertex_by_id("c1'").ok_or("c1' missing")?;
    let z = (0..p.model.num_facets())
        .find(|&z| p.origin[z].0 == source && act.facet(p.origin[z].1).contains(&c1))
        .ok_or("no product facet over {a1,b1,c1} and c1'")?;
    let after = ok(parse("~(K[b] p_c | K[b] ~p_c) & K[b] (K[c] p_b | K[c] ~p_b)"))?;
    ensure!(ok(eval_facet(&p.model, z, &after, None))?, "{after}");
    ensure!(ok(eval_facet(&p.model, z, &ok(parse("p_c"))?, None))?, "p_c after the update");
    expect(&big, Facet, f4, "~(K[c] p_b | K[c] ~p_b)", true, None)?;
    Ok(())
}

fn bisimulation() -> Outcome {
    for (l, r) in [("ex4.1-left-big", "ex4.1-left-small"), ("ex4.1-right-big", "ex4.1-right-small")] {
        ensure!(ok(total_bisimilar(&ok(paper_model(l))?, &ok(paper_model(r))?))?, "{l} ~ {r}");
    }

    let big = ok(paper_model("ex4.2-C"))?;
    let small = ok(paper_model("ex4.2-Cprime"))?;
    ensure!(ok(max_bisimulation(&big, &small))?.is_empty(), "ex4.2 facets are related");
    let unmatched: Vec<String> = (0..big.num_facets())
        .filter(|&x| (0..small.num_facets()).all(|y| big.facet_atoms(x) != small.facet_atoms(y)))
        .map(|x| big.display_simplex(&big.facet_simplex(x)))
        .collect();
    ensure!(unmatched == ["{a1,b1,c1}"], "witness {unmatched:?}");

    let c4 = ok(paper_model("ex4.3-C"))?;
    let c6 = ok(paper_model("ex4.3-Cprime"))?;
    let rel = ok(max_bisimulation(&c4, &c6))?;
    ensure!(rel.len() == c4.num_facets() * c6.num_facets(), "{} pairs", rel.len());
    let q = ok(simplicial_quotient(&c4))?;
    ensure!(q.num_facets() == 1 && q.num_vertices() == 2, "quotient {:?}", q.f_vector());
    ensure!(ok(total_bisimilar(&c4, &ok(paper_model("ex4.3-Cdprime"))?))?, "cycle ~ edge");

    let path = (ok(paper_model("sec4-path"))?, ok(paper_model("sec4-path-subdiv"))?);
    ensure!(!ok(total_bisimilar(&path.0, &path.1))?, "subdivided path is bisimilar");
    let edge = (ok(paper_model("sec4-edge"))?, ok(paper_model("sec4-edge-subdiv"))?);
    ensure!(ok(total_bisimilar(&edge.0, &edge.1))?, "subdivided edge is not bisimilar");

    let square = ok(paper_kripke("ex7.2-square"))?;
    let cross = ok(paper_kripke("ex7.2-x"))?;
    ensure!(ok(kripke_total_bisimilar(&square, &cross))?, "ex7.2 not standard-bisimilar");
    let g = ok(group_max_bisimulation(&square, &cross))?;
    ensure!(!g.is_total(square.num_states(), cross.num_states()), "ex7.2 group-bisimilar");
    ensure!(g.pairs.len() < ok(kripke_max_bisimulation(&square, &cross))?.pairs.len(), "group relation not finer");
    Ok(())
}

fn face_pair(m: &SimplicialModel, x: usize, small: u64, extra: u64) -> (Simplex, Simplex) {
    let full = (1u64 << m.agents().len()) - 1;
    let small = match small & full {
        0 => 1,
        k => k,
    };
    let pick = |k: u64| {
        let row = m.facet(x);
        Simplex::new((0..row.len()).filter(|&i| k >> i & 1 == 1).map(|i| row[i]).collect())
    };
    (pick(small), pick(small | (extra & full)))
}

fn restricted_shape(m: &SimplicialModel, s: &Simplex, depth: usize, group: bool) -> FormulaShape {
    let agents = m.agents().names_of_mask(m.colours(s));
    let atoms = m
        .atoms()
        .into_iter()
        .filter(|p| m.agents().owner_of(p).is_some_and(|a| agents.iter().any(|n| n == m.agents().name(a))))
        .collect();
    FormulaShape {
        agents,
        atoms,
        depth,
        group,
        belief: false,
    }
}

fn properties() -> Outcome {
    for seed in 0..300u64 {
        let m = random_simplicial(seed, 1..=4, 1..=10);
        let phi = formula(seed, &knowledge_shape(&m, 2));
        let a = m.agents().name(seed as usize % m.agents().len()).to_string();
        let k = Formula::k(a.clone(), phi.clone());
        for s in [
            Formula::implies(k.clone(), phi.clone()),
            Formula::implies(k.clone(), Formula::k(a.clone(), k.clone())),
            Formula::implies(Formula::not(k.clone()), Formula::k(a.clone(), Formula::not(k.clone()))),
        ] {
            for x in 0..m.num_facets() {
                ensure!(ok(eval_facet(&m, x, &s, None))?, "S5, seed {seed}: {s}");
            }
        }
    }

    for seed in 0..300u64 {
        let m = random_simplicial(seed ^ 0xbe1, 1..=4, 1..=10);
        let bf = ok(random::belief(&mut rng(seed), &m))?;
        ensure!(derive_kd45(&m, &bf).is_kd45(), "derived frame, seed {seed}");
        let mut shape = knowledge_shape(&m, 2);
        shape.belief = true;
        let phi = formula(seed ^ 7, &shape);
        let a = m.agents().name(seed as usize % m.agents().len()).to_string();
        let b = Formula::b(a.clone(), phi.clone());
        for s in [
            Formula::implies(b.clone(), Formula::BHat(a.clone(), Box::new(phi.clone()))),
            Formula::implies(b.clone(), Formula::b(a.clone(), b.clone())),
            Formula::implies(Formula::not(b.clone()), Formula::b(a.clone(), Formula::not(b.clone()))),
        ] {
            for x in 0..m.num_facets() {
                ensure!(ok(eval_facet(&m, x, &s, Some(&bf)))?, "KD45, seed {seed}: {s}");
            }
        }
    }

    for seed in 0..500u64 {
        let mut r = rng(seed ^ 0xb15);
        let n = r.gen_range(1..=3);
        let c = simplicial(r.gen(), n, r.gen_range(1..=8));
        let d = simplicial(r.gen(), n, r.gen_range(1..=8));
        let f = formula(seed, &knowledge_shape(&c, 3));
        for &(x, y) in &ok(max_bisimulation(&c, &d))?.pairs {
            ensure!(
                ok(eval_facet(&c, x, &f, None))? == ok(eval_facet(&d, y, &f, None))?,
                "bisimilar F{x}, F{y} disagree on {f}, seed {seed}"
            );
        }
    }

    for seed in 0..100u64 {
        let c = random_simplicial(seed ^ 0xe9, 1..=3, 1..=10);
        let k = kappa(&c);
        let table = ok(delta_global(&k.model))?;
        let classes = facet_classes(&c);
        for x in 0..c.num_facets() {
            let truth = table.denotation(k.points[x], table.depth());
            for y in 0..c.num_facets() {
                ensure!(truth[k.points[y]] == (classes[x] == classes[y]), "F{x}, F{y}, seed {seed}");
            }
        }
    }

    for seed in 0..300u64 {
        let m = random_simplicial(seed ^ 0x19, 1..=4, 1..=10);
        let mut r = rng(seed);
        let (s, _) = face_pair(&m, r.gen_range(0..m.num_facets()), r.gen_range(1..16), 0);
        let f = formula(seed, &restricted_shape(&m, &s, 3, false));
        ensure!(
            ok(eval_restricted(&m, &s, &f, None))? == ok(eval_multipoint(&m, &s, &f, None))?,
            "lr/mp on {}: {f}",
            m.display_simplex(&s)
        );
    }

    for seed in 0..300u64 {
        let m = random_simplicial(seed ^ 0x57a, 1..=4, 1..=10);
        let mut r = rng(seed);
        let (s, t) = face_pair(&m, r.gen_range(0..m.num_facets()), r.gen_range(1..16), r.gen_range(0..16));
        let f = negation_free(&formula(seed, &restricted_shape(&m, &s, 2, true)));
        if ok(eval_simplex(&m, &s, &f, None))? {
            ensure!(ok(eval_simplex(&m, &t, &f, None))?, "{f} on {} but not on {}", m.display_simplex(&s), m.display_simplex(&t));
        }
    }

    for seed in 0..200u64 {
        let m = random_simplicial(seed ^ 0xcd0, 1..=4, 1..=10);
        let phi = formula(seed, &knowledge_shape(&m, 2));
        let cd = Formula::CDDim(0, Box::new(phi.clone()));
        let c = Formula::C(m.agents().names().to_vec(), Box::new(phi));
        for x in 0..m.num_facets() {
            ensure!(ok(eval_facet(&m, x, &cd, None))? == ok(eval_facet(&m, x, &c, None))?, "{cd}, seed {seed}");
        }
    }
    Ok(())
}

fn distinguishing() -> Outcome {
    for seed in 0..100u64 {
        let mut r = rng(seed);
        let agents = r.gen_range(1..=3);
        let m = ok(random::kripke(&mut r, agents, 12, 2))?;
        let t = ok(delta_global(&m))?;
        ensure!(t.is_monotone() && t.stable_from() <= m.num_states(), "seed {seed} does not stabilise");
        let classes = chromatic::bisim::state_classes(&m);
        for s in 0..m.num_states() {
            let den = t.denotation(s, t.depth());
            for u in 0..m.num_states() {
                ensure!(den[u] == (classes[s] == classes[u]), "seed {seed}: delta of {s} at {u}");
            }
        }
    }

    let local = ok(delta_local(&ok(paper_kripke("sec6-chain"))?))?;
    for (s, k, text, alt) in [
        (0, 1, "top_a & p_b", "p_b"),
        (1, 2, "top_a & top_b", "Khat[a] p_b & Khat[b] p_a"),
        (2, 1, "p_a & top_b", "p_a"),
    ] {
        let den = local.table.denotation(s, k);
        ensure!(den == ok(denotation(&local.model, &ok(parse(text))?))?, "delta^{k} of state {s} vs {text}");
        let exact: Vec<bool> = (0..local.model.num_states()).map(|u| u == s).collect();
        ensure!(ok(denotation(&local.model, &ok(parse(alt))?))? == exact, "{alt} does not single out state {s}");
        ensure!(local.table.denotation(s, local.table.depth()) == exact.as_slice(), "state {s} not distinguished");
    }
    Ok(())
}

fn counting() -> Outcome {
    let b = ok(binary_inputs(3))?;
    ensure!(b.f_vector() == [6, 12, 8], "binary_inputs(3) f-vector {:?}", b.f_vector());
    ensure!(b.euler_characteristic() == 2, "Euler characteristic {}", b.euler_characteristic());
    ensure!(b.is_manifold().is_yes(), "not a manifold");
    ensure!(b.boundary().is_empty(), "boundary {:?}", b.boundary());

    let mut tri = RawSimplicialModel::new(["a", "b", "c"]);
    tri.vertex("a0", "a", &[]).vertex("b0", "b", &[]).vertex("c0", "c", &[]).facet(&["a0", "b0", "c0"]);
    let n = ok(chromatic_subdivision(&ok(tri.build())?))?.num_facets();
    ensure!(n == 13, "triangle subdivision has {n} facets");
    let mut edge = RawSimplicialModel::new(["a", "b"]);
    edge.vertex("a0", "a", &[]).vertex("b0", "b", &[]).facet(&["a0", "b0"]);
    let n = ok(chromatic_subdivision(&ok(edge.build())?))?.num_facets();
    ensure!(n == 3, "edge subdivision has {n} facets");

    let act = ok(binary_consensus_action(2, ConsensusPolicy::default()))?;
    ensure!(act.vertices().len() == 8 && act.num_facets() == 16, "{} vertices, {} facets", act.vertices().len(), act.num_facets());
    Ok(())
}

fn consensus() -> Outcome {
    let c = ok(binary_inputs(2))?;
    let act = ok(binary_consensus_action(2, ConsensusPolicy::default()))?;
    let p = ok(product(&c, &act))?;
    ensure!(p.model.num_facets() > 0, "empty product");
    let agreed = ok(parse("C[a,b] (1_a & 1_b) | C[a,b] (~1_a & ~1_b)"))?;
    for (z, &(x, _)) in p.origin.iter().enumerate() {
        if ok(eval_facet(&p.model, z, &agreed, None))? {
            ensure!(ok(eval_facet(&c, x, &agreed, None))?, "consensus appears at product facet {z}");
        }
    }
    Ok(())
}

fn covering() -> Outcome {
    let c4 = ok(paper_model("ex4.3-C"))?;
    let edge = ok(paper_model("ex4.3-Cdprime"))?;
    let ids = |pairs: &[(&str, &str)]| -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    };
    let fold = ok(VertexMap::from_ids(&c4, &edge, &ids(&[("a0", "a"), ("a1", "a"), ("b0", "b"), ("b1", "b")])))?;
    let rep = ok(is_covering(&c4, &fold, &edge))?;
    ensure!(rep.is_covering && rep.total_bisimulation, "fold: {rep:?}");

    let mut wedge = RawSimplicialModel::new(["a", "b"]);
    wedge
        .vertex("a0", "a", &["p_a"])
        .vertex("a1", "a", &["p_a"])
        .vertex("b0", "b", &[])
        .facet(&["a0", "b0"])
        .facet(&["a1", "b0"]);
    let wedge = ok(wedge.build())?;
    let squash = ok(VertexMap::from_ids(&wedge, &edge, &ids(&[("a0", "a"), ("a1", "a"), ("b0", "b")])))?;
    let rep = ok(is_covering(&wedge, &squash, &edge))?;
    ensure!(!rep.is_covering && rep.witness.is_some(), "wedge: {rep:?}");
    Ok(())
}

fn big_model(seed: u64) -> Result<SimplicialModel, String> {
    use rand::seq::SliceRandom;
    let names = ["a", "b", "c", "d"];
    let per = 12;
    let mut r = rng(seed);
    let mut raw = RawSimplicialModel::new(names);
    for name in names {
        for v in 0..per {
            let atoms: Vec<String> = ["p", "q"].iter().filter(|_| r.gen_bool(0.5)).map(|p| format!("{p}_{name}")).collect();
            let refs: Vec<&str> = atoms.iter().map(String::as_str).collect();
            raw.vertex(&format!("{name}{v}"), name, &refs);
        }
    }
    let mut tuples: Vec<[usize; 4]> = (0..per * per * per * per)
        .map(|i| [i % per, i / per % per, i / (per * per) % per, i / (per * per * per)])
        .collect();
    tuples.shuffle(&mut r);
    for t in &tuples[..10_000] {
        let ids: Vec<String> = t.iter().zip(names).map(|(v, n)| format!("{n}{v}")).collect();
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        raw.facet(&refs);
    }
    ok(raw.build())
}

fn performance() -> Outcome {
    let start = Instant::now();
    let m = big_model(10)?;
    ensure!(m.num_facets() == 10_000 && m.agents().len() == 4, "model shape");
    let first = facet_classes(&m);
    let second = facet_classes(&big_model(10)?);
    let elapsed = start.elapsed();
    ensure!(first == second, "refinement is not deterministic");
    let blocks = first.iter().collect::<BTreeSet<_>>().len();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("    10000 facets, {blocks} classes, {elapsed:.2?}");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("duality round trip", roundtrip),
        ("semantics transfer", transfer),
        ("golden truths", goldens),
        ("bisimulation goldens", bisimulation),
        ("property suites", properties),
        ("distinguishing formulas", distinguishing),
        ("counting checks", counting),
        ("consensus impossibility", consensus),
        ("covering", covering),
        ("performance smoke", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
