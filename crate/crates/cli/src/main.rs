use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chromatic::belief::BeliefAssignment;
use chromatic::bisim::{self, RawRelation, Relation, RelationKind};
use chromatic::complex::{validate, RawSimplicialModel};
use chromatic::distinguish::{self, SameInformation};
use chromatic::dynamics::{self, ActionModel, ConsensusPolicy};
use chromatic::export::{self, AnyModel};
use chromatic::maps::VertexMap;
use chromatic::scenarios::{self, PaperModel};
use chromatic::{duality, random, semantics, KripkeModel, Mode, SimplicialModel};

#[derive(Parser)]
#[command(name = "chromatic", version, about = "Epistemic logic on chromatic simplicial complexes")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main result to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a model file against its format's invariants.
    Validate { model: String },
    /// Structural facts: locality and properness, or f-vector and manifold checks.
    Analyze { model: String },
    /// Translate between Kripke and simplicial form.
    Convert {
        model: String,
        #[arg(long)]
        to: Target,
        /// Where to write the state/facet correspondence.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Evaluate a formula at a point.
    Check {
        model: String,
        /// Facet index (F0 or 0), vertex id, or comma-separated vertex ids; a state id for Kripke models.
        #[arg(long)]
        at: String,
        #[arg(long, default_value = "facet")]
        mode: Mode,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        belief: Option<String>,
    },
    /// Compare two models up to bisimulation.
    Bisim {
        left: String,
        right: String,
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
        pointed: Option<Vec<String>>,
        /// Require forth and back for every coalition.
        #[arg(long)]
        group: bool,
        /// Also report the sizes of both quotients.
        #[arg(long)]
        quotient: bool,
        #[arg(long = "check-relation")]
        check_relation: Option<PathBuf>,
        #[arg(long)]
        covering: Option<PathBuf>,
    },
    /// Bisimulation quotient.
    Quotient { model: String },
    /// Restricted product of a model with an action model.
    Product { model: String, action: String },
    /// Distinguishing formulas.
    Distinguish {
        model: String,
        #[arg(long)]
        state: Option<String>,
        /// Use one local variable per agent and class.
        #[arg(long)]
        local: bool,
    },
    /// Replace global variables by local ones.
    Localize {
        model: String,
        #[arg(long, default_value = "delta")]
        method: LocalizeMethod,
    },
    /// Do two models over the same states have the same information content?
    SameInfo { left: String, right: String },
    /// Generate a model.
    Gen {
        /// muddy-children, binary-inputs, subdivision, consensus-action, random, random-kripke, or a registry name.
        name: String,
        #[arg(long, default_value_t = 3)]
        agents: usize,
        /// Input for `subdivision`.
        #[arg(long)]
        from: Option<String>,
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value = "random")]
        policy: Policy,
    },
    /// Graphviz or canonical JSON.
    Export {
        model: String,
        #[arg(long, default_value = "dot")]
        format: Format,
    },
    /// Check that a vertex map makes the first model a covering of the second.
    Covering {
        left: String,
        right: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// List registry names.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Simplicial,
    Kripke,
}

#[derive(Clone, Copy, ValueEnum)]
enum LocalizeMethod {
    Ledent,
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    DotVertices,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Random,
    Majority,
}

enum Failure {
    Model(chromatic::Error),
    Io(String),
    Usage(String),
}

impl Failure {
    fn kind(&self) -> &str {
        match self {
            Failure::Model(e) => e.kind(),
            Failure::Io(_) => "Io",
            Failure::Usage(_) => "Usage",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Model(e) => e.to_string(),
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
        }
    }
}

impl From<chromatic::Error> for Failure {
    fn from(e: chromatic::Error) -> Self {
        Failure::Model(e)
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    json: bool,
    output: Option<PathBuf>,
}

impl Ctx {
    /// The main result: to `-o` when given, else stdout.
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.output {
            Some(p) => write_file(p, text),
            None => {
                let mut out = std::io::stdout().lock();
                match writeln!(out, "{}", text.trim_end()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io(format!("stdout: {e}"))),
                    _ => Ok(()),
                }
            }
        }
    }

    /// A verdict line, or a JSON object under `--json`.
    fn verdict(&self, text: &str, value: Value) {
        if self.json {
            println!("{value}");
        } else {
            println!("{text}");
        }
    }
}

fn write_file(p: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
}

fn read_source(arg: &str) -> Result<Option<String>, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(Some(s));
    }
    let p = Path::new(arg);
    if p.exists() {
        return std::fs::read_to_string(p)
            .map(Some)
            .map_err(|e| Failure::Io(format!("{arg}: {e}")));
    }
    Ok(None)
}

/// A model from a file, stdin, or the registry, with a registry belief assignment if any.
fn load(arg: &str) -> Result<(AnyModel, Option<BeliefAssignment>), Failure> {
    if let Some(text) = read_source(arg)? {
        return Ok((export::load_json(&text)?, None));
    }
    match scenarios::lookup(arg) {
        Ok(PaperModel::Simplicial(m)) => Ok((AnyModel::Simplicial(m), None)),
        Ok(PaperModel::Kripke(m)) => Ok((AnyModel::Kripke(m), None)),
        Ok(PaperModel::Action(a)) => Ok((AnyModel::Action(a), None)),
        Ok(PaperModel::Belief(m, f)) => Ok((AnyModel::Simplicial(m), Some(f))),
        Err(chromatic::Error::UnknownScenario(_)) => Err(Failure::Io(format!("{arg}: no such file or registry name"))),
        Err(e) => Err(e.into()),
    }
}

fn load_simplicial(arg: &str) -> Result<SimplicialModel, Failure> {
    match load(arg)?.0 {
        AnyModel::Simplicial(m) => Ok(m),
        other => Err(Failure::Usage(format!("{arg}: expected a simplicial model, got {}", other.kind()))),
    }
}

fn load_kripke(arg: &str) -> Result<KripkeModel, Failure> {
    match load(arg)?.0 {
        AnyModel::Kripke(m) => Ok(m),
        AnyModel::Simplicial(c) => Ok(duality::kappa(&c).model),
        other => Err(Failure::Usage(format!("{arg}: expected a Kripke model, got {}", other.kind()))),
    }
}

fn load_action(arg: &str) -> Result<ActionModel, Failure> {
    match load(arg)?.0 {
        AnyModel::Action(a) => Ok(a),
        other => Err(Failure::Usage(format!("{arg}: expected an action model, got {}", other.kind()))),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(p: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Model(chromatic::Error::Json(e.to_string())))
}

fn validate_cmd(ctx: &Ctx, arg: &str) -> Outcome {
    let text = match read_source(arg)? {
        Some(t) => t,
        None => {
            load(arg)?;
            ctx.verdict("valid", json!({"valid": true}));
            return Ok(true);
        }
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| chromatic::Error::Json(e.to_string()))?;
    let simplicial_raw = v.get("facets").is_some()
        && !v["vertices"]
            .as_array()
            .is_some_and(|vs| vs.iter().any(|x| x.get("pre").is_some() || x.get("post").is_some()));
    let problems: Vec<String> = if simplicial_raw {
        let raw: RawSimplicialModel = serde_json::from_value(v).map_err(|e| chromatic::Error::Json(e.to_string()))?;
        validate(&raw).violations.iter().map(|x| x.to_string()).collect()
    } else {
        match export::load_json(&text) {
            Ok(_) => vec![],
            Err(e @ chromatic::Error::Json(_)) => return Err(e.into()),
            Err(e) => vec![e.to_string()],
        }
    };
    if problems.is_empty() {
        ctx.verdict("valid", json!({"valid": true}));
        Ok(true)
    } else {
        let text = std::iter::once("invalid".to_string())
            .chain(problems.iter().map(|p| format!("  {p}")))
            .collect::<Vec<_>>()
            .join("\n");
        ctx.verdict(&text, json!({"valid": false, "violations": problems}));
        Ok(false)
    }
}

fn analyze(ctx: &Ctx, arg: &str) -> Outcome {
    let value = match load(arg)?.0 {
        AnyModel::Kripke(m) => {
            let r = m.analyze();
            json!({
                "kind": "kripke",
                "states": m.num_states(),
                "local": r.is_local,
                "proper": r.is_proper,
                "factual": r.is_factual,
                "local_for": r.local_for,
            })
        }
        AnyModel::Simplicial(c) => {
            let manifold = c.is_manifold();
            json!({
                "kind": "simplicial",
                "dimension": c.dim(),
                "f_vector": c.f_vector(),
                "euler_characteristic": c.euler_characteristic(),
                "manifold": manifold.is_yes(),
                "manifold_detail": format!("{manifold:?}"),
                "boundary_faces": c.boundary().len(),
                "connected": c.is_connected(),
            })
        }
        AnyModel::Action(a) => json!({
            "kind": "action",
            "vertices": a.vertices().len(),
            "facets": a.num_facets(),
            "preconditions": dynamics::check_local_preconditions(&a, None)?,
        }),
    };
    if ctx.json {
        println!("{value}");
    } else {
        for (k, v) in value.as_object().expect("object") {
            println!("{k}: {v}");
        }
    }
    Ok(true)
}

fn convert(ctx: &Ctx, arg: &str, to: Target, map: Option<&Path>) -> Outcome {
    let (text, pairs) = match (load(arg)?.0, to) {
        (AnyModel::Kripke(m), Target::Simplicial) => {
            let t = duality::sigma(&m)?;
            let pairs = duality::state_facet_pairs(&m, &t.model, &t.points);
            (export::json_simplicial(&t.model), pairs)
        }
        (AnyModel::Simplicial(c), Target::Kripke) => {
            let t = duality::kappa(&c);
            let pairs = (0..c.num_facets())
                .map(|f| (c.facet_name(f), t.model.state(t.points[f]).id.clone()))
                .collect();
            (export::json_kripke(&t.model), pairs)
        }
        (AnyModel::Kripke(m), Target::Kripke) => (export::json_kripke(&m), vec![]),
        (AnyModel::Simplicial(c), Target::Simplicial) => (export::json_simplicial(&c), vec![]),
        (AnyModel::Action(_), _) => return Err(Failure::Usage("action models have no translation".into())),
    };
    ctx.emit(&text)?;
    let sidecar = map
        .map(Path::to_path_buf)
        .or_else(|| ctx.output.as_ref().map(|o| o.with_extension("map.json")));
    if let Some(p) = sidecar {
        let m: BTreeMap<String, String> = pairs.into_iter().collect();
        write_file(&p, &serde_json::to_string_pretty(&m).expect("serializable"))?;
    }
    Ok(true)
}

fn check(ctx: &Ctx, arg: &str, at: &str, mode: Mode, formula: &str, belief: Option<&str>) -> Outcome {
    let f = chromatic::parse(formula)?;
    let (model, registry_belief) = load(arg)?;
    let value = match model {
        AnyModel::Simplicial(c) => {
            let bf = match belief {
                Some(b) => {
                    let text = read_source(b)?.ok_or_else(|| Failure::Io(format!("{b}: no such file")))?;
                    Some(BeliefAssignment::from_raw(&c, &export::load_belief(&text)?)?)
                }
                None => registry_belief,
            };
            let s = c.resolve(at)?;
            semantics::eval_simplicial(&c, mode, &s, &f, bf.as_ref())?
        }
        AnyModel::Kripke(m) => {
            if mode != Mode::Facet {
                return Err(Failure::Usage("Kripke models are evaluated at states only".into()));
            }
            let s = m.require_state(at)?;
            semantics::eval_kripke(&m, s, &f)?
        }
        AnyModel::Action(_) => return Err(Failure::Usage("cannot evaluate formulas in an action model".into())),
    };
    ctx.verdict(if value { "true" } else { "false" }, json!({"result": value}));
    Ok(value)
}

/// A point on either side without a partner in `rel`, preferring one whose
/// valuation occurs nowhere on the other side.
fn unmatched(rel: &Relation, left: &[BTreeSet<String>], right: &[BTreeSet<String>]) -> Option<(usize, usize)> {
    let lonely = |side: usize, p: usize| {
        if side == 0 {
            !rel.pairs.iter().any(|&(a, _)| a == p)
        } else {
            !rel.pairs.iter().any(|&(_, b)| b == p)
        }
    };
    let candidates: Vec<(usize, usize)> = (0..left.len())
        .map(|x| (0, x))
        .chain((0..right.len()).map(|y| (1, y)))
        .filter(|&(side, p)| lonely(side, p))
        .collect();
    let novel = |&(side, p): &(usize, usize)| {
        let (mine, other) = if side == 0 { (left, right) } else { (right, left) };
        !other.contains(&mine[p])
    };
    candidates.iter().copied().find(novel).or(candidates.first().copied())
}

fn kind_text(kind: &RelationKind) -> (&'static str, bool) {
    match kind {
        RelationKind::Bisimulation => ("bisimulation", true),
        RelationKind::Simulation(_) => ("simulation", false),
        RelationKind::Neither(_) => ("neither", false),
    }
}

#[allow(clippy::too_many_arguments)]
fn bisim_cmd(
    ctx: &Ctx,
    left: &str,
    right: &str,
    pointed: Option<&[String]>,
    group: bool,
    quotient: bool,
    relation: Option<&Path>,
    covering: Option<&Path>,
) -> Outcome {
    if let Some(map) = covering {
        return covering_cmd(ctx, left, right, map);
    }
    let (l, r) = (load(left)?.0, load(right)?.0);
    let (l, r) = match (l, r) {
        (AnyModel::Simplicial(a), AnyModel::Simplicial(b)) => (Either::S(a), Either::S(b)),
        (AnyModel::Action(_), _) | (_, AnyModel::Action(_)) => {
            return Err(Failure::Usage("bisimulation needs two models, not action models".into()))
        }
        (a, b) => (Either::K(to_kripke(a)), Either::K(to_kripke(b))),
    };
    if let Some(p) = relation {
        let raw: RawRelation = read_json(p)?;
        let kind = match (&l, &r) {
            (Either::S(a), Either::S(b)) => bisim::check_relation(a, b, &Relation::from_raw(&raw, a, b)?)?,
            (Either::K(a), Either::K(b)) => bisim::check_kripke_relation(a, b, &kripke_relation(&raw, a, b)?)?,
            _ => unreachable!(),
        };
        let (text, ok) = kind_text(&kind);
        let detail = match &kind {
            RelationKind::Bisimulation => String::new(),
            RelationKind::Simulation(f) | RelationKind::Neither(f) => format!(" ({f:?})"),
        };
        ctx.verdict(&format!("{text}{detail}"), json!({"relation": text, "detail": kind}));
        return Ok(ok);
    }
    type Namer = Box<dyn Fn(usize) -> String>;
    let (rel, vl, vr, name_l, name_r): (Relation, Vec<BTreeSet<String>>, Vec<BTreeSet<String>>, Namer, Namer) =
        match (&l, &r) {
            (Either::S(a), Either::S(b)) => {
                let rel = if group {
                    bisim::group_max_bisimulation_simplicial(a, b)?
                } else {
                    bisim::max_bisimulation(a, b)?
                };
                let (a2, b2) = (a.clone(), b.clone());
                (
                    rel,
                    (0..a.num_facets()).map(|f| a.facet_atoms(f)).collect(),
                    (0..b.num_facets()).map(|f| b.facet_atoms(f)).collect(),
                    Box::new(move |x| format!("{} {}", a2.facet_name(x), a2.display_simplex(&a2.facet_simplex(x)))),
                    Box::new(move |y| format!("{} {}", b2.facet_name(y), b2.display_simplex(&b2.facet_simplex(y)))),
                )
            }
            (Either::K(a), Either::K(b)) => {
                let rel = if group {
                    bisim::group_max_bisimulation(a, b)?
                } else {
                    bisim::kripke_max_bisimulation(a, b)?
                };
                let (a2, b2) = (a.clone(), b.clone());
                (
                    rel,
                    a.states().iter().map(|s| s.atoms.clone()).collect(),
                    b.states().iter().map(|s| s.atoms.clone()).collect(),
                    Box::new(move |x| a2.state(x).id.clone()),
                    Box::new(move |y| b2.state(y).id.clone()),
                )
            }
            _ => unreachable!(),
        };
    if quotient {
        let (ql, qr) = (quotient_size(&l)?, quotient_size(&r)?);
        if !ctx.json {
            println!("quotient sizes: {ql} {qr}");
        }
    }
    if let Some(pts) = pointed {
        let (x, y) = match (&l, &r) {
            (Either::S(a), Either::S(b)) => (a.resolve_facet(&pts[0])?, b.resolve_facet(&pts[1])?),
            (Either::K(a), Either::K(b)) => (a.require_state(&pts[0])?, b.require_state(&pts[1])?),
            _ => unreachable!(),
        };
        let ok = rel.contains(x, y);
        let text = if ok { "bisimilar" } else { "not-bisimilar" };
        ctx.verdict(text, json!({"bisimilar": ok}));
        return Ok(ok);
    }
    match unmatched(&rel, &vl, &vr) {
        None => {
            ctx.verdict("bisimilar", json!({"bisimilar": true, "pairs": rel.len()}));
            Ok(true)
        }
        Some((side, p)) => {
            let (side_name, w) = if side == 0 { ("left", name_l(p)) } else { ("right", name_r(p)) };
            ctx.verdict(
                &format!("not-bisimilar\nwitness ({side_name}): {w}"),
                json!({"bisimilar": false, "witness": w, "side": side_name}),
            );
            Ok(false)
        }
    }
}

enum Either {
    S(SimplicialModel),
    K(KripkeModel),
}

fn to_kripke(m: AnyModel) -> KripkeModel {
    match m {
        AnyModel::Kripke(k) => k,
        AnyModel::Simplicial(c) => duality::kappa(&c).model,
        AnyModel::Action(_) => unreachable!("rejected by the caller"),
    }
}

fn quotient_size(m: &Either) -> Result<usize, Failure> {
    Ok(match m {
        Either::S(c) => bisim::facet_classes(c).into_iter().max().map_or(0, |k| k + 1),
        Either::K(k) => bisim::quotient(k).model.num_states(),
    })
}

fn kripke_relation(raw: &RawRelation, a: &KripkeModel, b: &KripkeModel) -> Result<Relation, Failure> {
    let pairs = raw
        .pairs
        .iter()
        .map(|(x, y)| Ok((a.require_state(x)?, b.require_state(y)?)))
        .collect::<Result<Vec<_>, chromatic::Error>>()?;
    Ok(Relation::new(pairs))
}

fn quotient_cmd(ctx: &Ctx, arg: &str) -> Outcome {
    match load(arg)?.0 {
        AnyModel::Simplicial(c) => ctx.emit(&export::json_simplicial(&bisim::simplicial_quotient(&c)?))?,
        AnyModel::Kripke(m) => ctx.emit(&export::json_kripke(&bisim::quotient(&m).model))?,
        AnyModel::Action(_) => return Err(Failure::Usage("action models have no quotient".into())),
    }
    Ok(true)
}

fn product_cmd(ctx: &Ctx, model: &str, action: &str) -> Outcome {
    let c = load_simplicial(model)?;
    let a = load_action(action)?;
    let p = dynamics::product(&c, &a)?;
    ctx.emit(&export::json_simplicial(&p.model))?;
    if ctx.output.is_some() {
        let origin: Vec<String> = p
            .origin
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| format!("F{i} = ({}, F{y}')", c.facet_name(x)))
            .collect();
        if ctx.json {
            println!("{}", json!({"facets": p.model.num_facets(), "origin": p.origin}));
        } else {
            println!("{} facets", p.model.num_facets());
            for line in origin {
                println!("  {line}");
            }
        }
    }
    Ok(true)
}

fn distinguish_cmd(ctx: &Ctx, arg: &str, state: Option<&str>, local: bool) -> Outcome {
    let m = load_kripke(arg)?;
    let (table, model, conjecture) = if local {
        let d = distinguish::delta_local(&m)?;
        (d.table, d.model, Some(d.conjecture_holds))
    } else {
        (distinguish::delta_global(&m)?, m.clone(), None)
    };
    let states: Vec<usize> = match state {
        Some(s) => vec![m.require_state(s)?],
        None => (0..m.num_states()).collect(),
    };
    let k = table.stable_from();
    let mut rows = Vec::new();
    for &s in &states {
        let members: Vec<&str> = (0..m.num_states())
            .filter(|&t| table.denotation(s, table.depth())[t])
            .map(|t| m.state(t).id.as_str())
            .collect();
        rows.push(json!({
            "state": m.state(s).id,
            "stable_from": k,
            "formula": table.formula(s, k).to_string(),
            "tree_size": table.tree_size(s, table.depth()),
            "denotation": members,
        }));
    }
    let mut out = json!({"states": rows});
    if let Some(c) = conjecture {
        out["conjecture_holds"] = json!(c);
        out["local_atoms"] = json!(model.atoms());
    }
    if ctx.json {
        println!("{out}");
    } else {
        if let Some(c) = conjecture {
            println!("local atoms: {}", model.atoms().iter().cloned().collect::<Vec<_>>().join(" "));
            println!("delta relation is a bisimulation of the input: {c}");
        }
        println!("stable from k = {k}");
        for r in out["states"].as_array().expect("array") {
            println!("{}: {}", r["state"].as_str().unwrap(), r["formula"].as_str().unwrap());
            println!("    true at: {}", r["denotation"]);
        }
    }
    Ok(conjecture.unwrap_or(true))
}

fn localize_cmd(ctx: &Ctx, arg: &str, method: LocalizeMethod) -> Outcome {
    let m = load_kripke(arg)?;
    let out = match method {
        LocalizeMethod::Ledent => distinguish::localize_ledent(&m),
        LocalizeMethod::Delta => distinguish::delta_local(&m)?.model,
    };
    ctx.emit(&export::json_kripke(&out))?;
    Ok(true)
}

fn same_info_cmd(ctx: &Ctx, left: &str, right: &str) -> Outcome {
    let (m, n) = (load_kripke(left)?, load_kripke(right)?);
    match distinguish::same_information(&m, &n)? {
        SameInformation::Equal => {
            ctx.verdict("same-information", json!({"same": true}));
            Ok(true)
        }
        SameInformation::Differs { merged_in, pair } => {
            let side = if merged_in == 0 { "left" } else { "right" };
            ctx.verdict(
                &format!("different-information\n{} and {} are bisimilar only in the {side} model", pair.0, pair.1),
                json!({"same": false, "merged_in": side, "pair": [pair.0, pair.1]}),
            );
            Ok(false)
        }
    }
}

fn gen_cmd(ctx: &Ctx, name: &str, agents: usize, seed: u64, from: Option<&str>, size: usize, policy: Policy) -> Outcome {
    let text = match name {
        "muddy-children" => export::json_simplicial(&scenarios::muddy_children(agents)?),
        "binary-inputs" => export::json_simplicial(&scenarios::binary_inputs(agents)?),
        "subdivision" => {
            let src = from.ok_or_else(|| Failure::Usage("subdivision needs --from <model>".into()))?;
            export::json_simplicial(&scenarios::chromatic_subdivision(&load_simplicial(src)?)?)
        }
        "consensus-action" => {
            let p = match policy {
                Policy::Random => ConsensusPolicy::Random,
                Policy::Majority => ConsensusPolicy::Majority,
            };
            export::json_action(&dynamics::binary_consensus_action(agents, p)?)
        }
        "random" => {
            let shape = random::SimplicialShape {
                agents,
                facets: size,
                vertices_per_agent: (size / 2).max(2),
                atoms_per_agent: 1,
            };
            export::json_simplicial(&random::simplicial(&mut random::rng(seed), &shape)?)
        }
        "random-kripke" => export::json_kripke(&random::local_proper_kripke(&mut random::rng(seed), agents, size, 1)?),
        other => load(other)?.0.to_json(),
    };
    ctx.emit(&text)?;
    Ok(true)
}

fn export_cmd(ctx: &Ctx, arg: &str, format: Format) -> Outcome {
    let text = match (load(arg)?.0, format) {
        (m, Format::Json) => m.to_json(),
        (AnyModel::Simplicial(c), Format::Dot) => export::dot_facets(&c),
        (AnyModel::Simplicial(c), Format::DotVertices) => export::dot_vertices(&c),
        (AnyModel::Kripke(m), _) => export::dot_kripke(&m),
        (AnyModel::Action(a), Format::Dot | Format::DotVertices) => {
            let skeleton = action_skeleton(&a)?;
            if matches!(format, Format::Dot) {
                export::dot_facets(&skeleton)
            } else {
                export::dot_vertices(&skeleton)
            }
        }
    };
    ctx.emit(&text)?;
    Ok(true)
}

/// The complex of an action model, with no atoms.
fn action_skeleton(a: &ActionModel) -> Result<SimplicialModel, Failure> {
    let raw = a.to_raw();
    let mut s = RawSimplicialModel::new(raw.agents.iter().cloned());
    for v in &raw.vertices {
        s.vertex(&v.id, &v.agent, &[]);
    }
    s.facets = raw.facets;
    Ok(s.build()?)
}

#[derive(serde::Deserialize)]
struct RawMap {
    map: BTreeMap<String, String>,
}

fn covering_cmd(ctx: &Ctx, left: &str, right: &str, map: &Path) -> Outcome {
    let (c, d) = (load_simplicial(left)?, load_simplicial(right)?);
    let raw: RawMap = read_json(map)?;
    let f = VertexMap::from_ids(&c, &d, &raw.map)?;
    let report = bisim::is_covering(&c, &f, &d)?;
    let text = if report.is_covering {
        format!("covering\ntotal bisimulation: {}", report.total_bisimulation)
    } else {
        match &report.witness {
            Some(w) => format!("not-covering\nwitness: {w}"),
            None => format!("not-covering\nconnected: {}", report.connected),
        }
    };
    ctx.verdict(&text, serde_json::to_value(&report).expect("serializable"));
    Ok(report.is_covering)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        json: cli.json,
        output: cli.output,
    };
    match cli.cmd {
        Cmd::Validate { model } => validate_cmd(&ctx, &model),
        Cmd::Analyze { model } => analyze(&ctx, &model),
        Cmd::Convert { model, to, map } => convert(&ctx, &model, to, map.as_deref()),
        Cmd::Check {
            model,
            at,
            mode,
            formula,
            belief,
        } => check(&ctx, &model, &at, mode, &formula, belief.as_deref()),
        Cmd::Bisim {
            left,
            right,
            pointed,
            group,
            quotient,
            check_relation,
            covering,
        } => bisim_cmd(
            &ctx,
            &left,
            &right,
            pointed.as_deref(),
            group,
            quotient,
            check_relation.as_deref(),
            covering.as_deref(),
        ),
        Cmd::Quotient { model } => quotient_cmd(&ctx, &model),
        Cmd::Product { model, action } => product_cmd(&ctx, &model, &action),
        Cmd::Distinguish { model, state, local } => distinguish_cmd(&ctx, &model, state.as_deref(), local),
        Cmd::Localize { model, method } => localize_cmd(&ctx, &model, method),
        Cmd::SameInfo { left, right } => same_info_cmd(&ctx, &left, &right),
        Cmd::Gen {
            name,
            agents,
            from,
            size,
            policy,
        } => gen_cmd(&ctx, &name, agents, cli.seed, from.as_deref(), size, policy),
        Cmd::Export { model, format } => export_cmd(&ctx, &model, format),
        Cmd::Covering { left, right, map } => covering_cmd(&ctx, &left, &right, &map),
        Cmd::List => {
            for (name, about) in scenarios::NAMES {
                println!("{name:<20} {about}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            println!("error:{}", e.kind());
            if json {
                eprintln!("{}", json!({"error": e.kind(), "message": e.message()}));
            } else {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(2)
        }
    }
}
