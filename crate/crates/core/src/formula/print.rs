use std::fmt;

use super::Formula;

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn plain_atom(p: &str) -> bool {
    !p.is_empty()
        && p != "true"
        && p != "false"
        && p.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '^' | '.'))
}

fn write_atom(f: &mut fmt::Formatter<'_>, p: &str) -> fmt::Result {
    if plain_atom(p) {
        return f.write_str(p);
    }
    f.write_str("\"")?;
    for c in p.chars() {
        if c == '"' || c == '\\' {
            f.write_str("\\")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str("\"")
}

fn child(f: &mut fmt::Formatter<'_>, c: &Formula, min: u8) -> fmt::Result {
    if prec(c) < min {
        write!(f, "({c})")
    } else {
        write!(f, "{c}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let modal = |f: &mut fmt::Formatter<'_>, head: String, body: &Formula| {
            write!(f, "{head} ")?;
            child(f, body, UNARY)
        };
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(p) => write_atom(f, p),
            Not(g) => {
                f.write_str("~")?;
                child(f, g, UNARY)
            }
            And(a, b) => {
                child(f, a, AND)?;
                f.write_str(" & ")?;
                child(f, b, AND + 1)
            }
            Or(a, b) => {
                child(f, a, OR)?;
                f.write_str(" | ")?;
                child(f, b, OR + 1)
            }
            Implies(a, b) => {
                child(f, a, IMPLIES + 1)?;
                f.write_str(" -> ")?;
                child(f, b, IMPLIES)
            }
            K(a, g) => modal(f, format!("K[{a}]"), g),
            KHat(a, g) => modal(f, format!("Khat[{a}]"), g),
            B(a, g) => modal(f, format!("B[{a}]"), g),
            BHat(a, g) => modal(f, format!("Bhat[{a}]"), g),
            E(ags, g) => modal(f, format!("E[{}]", ags.join(",")), g),
            C(ags, g) => modal(f, format!("C[{}]", ags.join(",")), g),
            D(ags, g) => modal(f, format!("D[{}]", ags.join(",")), g),
            CDFam(fam, g) => {
                let sets: Vec<String> = fam.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
                modal(f, format!("CD[{}]", sets.join(",")), g)
            }
            CDDim(m, g) => modal(f, format!("CDdim[{m}]"), g),
        }
    }
}
