//! The `homres` command line: `validate`, `compute`, `construct`, `report`
//! and `fixtures`, over a JSON workspace.

pub mod render;
pub mod workspace;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::approx::{
    ext_dims, is_hom_from_exact, is_hom_into_exact, is_in_add, reduced_left_approx, reduced_right_approx, Subcategory,
};
use crate::dimension::{
    c_dim_report, codim_report, gdim_report, gorenstein_sequences, mixed_resolution, rebuild_four_term, swap_syzygy,
    GenCogenPair, Upper, Via,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::gorenstein::{
    collapse_gorenstein_window, g_membership, self_orthogonality, summand_resolution, verify_complete_resolution,
    CompleteResolution, OuterWindow, Verdict,
};
use crate::modcat::{hom_basis, Module, Morphism, Sequence, ShortExactSeq};
use crate::resolve::{
    build_coproper_coresolution, build_proper_resolution, coresolve_first_term, coresolve_last_term,
    coresolve_middle_term, iterate_construct, resolve_first_term, resolve_last_term, resolve_middle_term,
    AugmentedResolution, ConstructOptions, Construction, Direction, IterateMode,
};
pub use workspace::Workspace;

#[derive(Parser, Debug)]
#[command(
    name = "homres",
    version,
    about = "Exact homological algebra over finite-dimensional algebras"
)]
pub struct Cli {
    /// Workspace JSON file; the built-in fixtures when omitted.
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write a DOT graph of the sequences involved.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Exit 1 unless the outcome matches.
    #[arg(long, global = true, value_enum)]
    pub expect: Option<Expect>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate every entity of the given workspace files.
    Validate {
        files: Vec<PathBuf>,
    },
    #[command(subcommand)]
    Compute(Compute),
    Construct(ConstructCmd),
    /// Dimension, codimension and Gorenstein dimension bounds.
    Report {
        module: String,
        subcategory: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Print the built-in fixture workspace.
    Fixtures,
}

#[derive(Subcommand, Debug)]
pub enum Compute {
    Hom {
        source: String,
        target: String,
    },
    Ext {
        source: String,
        target: String,
        #[arg(long, default_value_t = 3)]
        upto: usize,
    },
    Approx {
        subcategory: String,
        module: String,
        #[arg(long, value_enum, default_value = "right")]
        side: ApproxSide,
    },
    /// Exactness of a sequence, and its Hom-exactness against a subcategory.
    Exactness {
        sequence: String,
        #[arg(long)]
        against: Option<String>,
    },
    /// Membership in add(T), or in G(T) with `--gorenstein DEPTH`.
    Membership {
        subcategory: String,
        module: String,
        #[arg(long)]
        gorenstein: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ApproxSide {
    Right,
    Left,
}

#[derive(Args, Debug)]
pub struct ConstructCmd {
    /// Re-verify the output from scratch and fail if any certificate is
    /// missing.
    #[arg(long, global = true)]
    pub verify: bool,
    #[command(subcommand)]
    pub what: Construct,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub sub: String,
    /// A sequence of two maps.
    #[arg(long)]
    pub ses: String,
    /// (Co)resolution of the first listed term; built when omitted.
    #[arg(long)]
    pub res0: Option<String>,
    /// (Co)resolution of the second listed term; built when omitted.
    #[arg(long)]
    pub res1: Option<String>,
    /// Length of the built (co)resolutions.
    #[arg(long, default_value_t = 3)]
    pub len: usize,
    /// Assert closure under kernels of epimorphisms (cokernels of
    /// monomorphisms).
    #[arg(long)]
    pub closure: bool,
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    #[arg(long)]
    pub sub: String,
    #[arg(long)]
    pub window: String,
    #[arg(long)]
    pub center: usize,
    #[arg(long)]
    pub pivot: String,
}

#[derive(Args, Debug, Clone)]
pub struct PairSubcategories {
    #[arg(long)]
    pub sub: String,
    #[arg(long)]
    pub gen: String,
    #[arg(long)]
    pub cogen: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ViaArg {
    Generator,
    Cogenerator,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Resolve X from 0 -> X -> X^0 -> X^1 -> 0.
    ResolveFirst(PairArgs),
    /// Resolve X from 0 -> X_1 -> X_0 -> X -> 0.
    ResolveLast(PairArgs),
    /// Coresolve Y from 0 -> Y_1 -> Y_0 -> Y -> 0.
    CoresolveLast(PairArgs),
    /// Coresolve Y from 0 -> Y -> Y^0 -> Y^1 -> 0.
    CoresolveFirst(PairArgs),
    /// Resolve the middle term from resolutions of both ends.
    ResolveMiddle(PairArgs),
    /// Coresolve the middle term from coresolutions of both ends.
    CoresolveMiddle(PairArgs),
    /// Apply a single-sequence construction along a long exact sequence.
    Iterate {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 3)]
        len: usize,
        #[arg(long)]
        closure: bool,
    },
    /// Turn a window of Gorenstein terms into a complete resolution.
    Collapse {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Complete resolution of the image of an idempotent on the pivot.
    Summand {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        idempotent: String,
    },
    /// Replace a middle term of 0 -> A -> C_1 -> C_0 -> M -> 0.
    Rebuild {
        #[command(flatten)]
        pair: PairSubcategories,
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum)]
        via: ViaArg,
    },
    /// Replace all middle terms of 0 -> A -> C_{n-1} -> ... -> C_0 -> M -> 0.
    Swap {
        #[command(flatten)]
        pair: PairSubcategories,
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum)]
        via: ViaArg,
    },
    /// A finite resolution with one term in C and the rest in the
    /// generator-cogenerator.
    Mixed {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        gen: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        position: usize,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// The Gorenstein precover and embedding sequences of a module.
    GorensteinSequences {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    ResolveFirst,
    ResolveLast,
    CoresolveLast,
    CoresolveFirst,
}

/// What a command produced: the report text, an optional DOT graph and the
/// process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub dot: Option<String>,
    pub code: u8,
}

/// Exit code for an error: 2 for malformed input and unknown names,
/// 1 otherwise.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Malformed(_) | Error::UnknownName(_) => 2,
        _ => 1,
    }
}

/// The built-in workspace: the fixture algebras, modules and maps.
pub fn fixture_workspace() -> Workspace {
    use fixtures::*;
    let mut ws = Workspace::default();
    for a in [lambda1(), lambda2(), a2()] {
        ws.insert_algebra(&a);
    }
    let k1k1 = crate::modcat::direct_sum(&[k1(), k1()]).object;
    for (name, m) in [
        ("K1", k1()),
        ("REG1", reg1()),
        ("K1K1", k1k1.clone()),
        ("REG1REG1", crate::modcat::direct_sum(&[reg1(), reg1()]).object),
        ("K2", k2()),
        ("U2", u2()),
        ("REG2", reg2()),
        ("SA", sa()),
        ("SB", sb()),
        ("PA", pa()),
        ("DA2", dual_regular(&a2())),
    ] {
        ws.insert_module(name, &m);
    }
    ws.insert_morphism("socle", &socle_inclusion());
    ws.insert_morphism("quotient", &quotient_map());
    ws.insert_morphism("x", &x_mult());
    let ses = a2_ses();
    ws.insert_morphism("sb_to_pa", ses.mono());
    ws.insert_morphism("pa_to_sa", ses.epi());
    let split = ShortExactSeq::split(&k1(), &k1());
    ws.insert_morphism("k1_first", &split.mono().retype(&k1(), &k1k1));
    ws.insert_morphism("k1_second", &split.epi().retype(&k1k1, &k1()));
    for (name, gens) in [
        ("add(REG1)", &["REG1"][..]),
        ("add(K1)", &["K1"]),
        ("all1", &["REG1", "K1"]),
        ("add(REG2)", &["REG2"]),
        ("add(A2)", &["PA", "SB"]),
        ("inj(A2)", &["DA2"]),
    ] {
        ws.insert_subcategory(name, gens).expect("fixture subcategory");
    }
    let seq = |names: &[&str], ws: &Workspace| {
        Sequence::new(names.iter().map(|n| ws.morphism(n).expect("fixture").clone()).collect()).expect("fixture")
    };
    for (name, maps) in [
        ("lambda1_ses", &["socle", "quotient"][..]),
        ("a2_ses", &["sb_to_pa", "pa_to_sa"]),
        ("split_k1", &["k1_first", "k1_second"]),
        ("periodic", &["x", "x", "x", "x"]),
        ("x_chain", &["socle", "x", "quotient"]),
    ] {
        let s = seq(maps, &ws);
        ws.insert_sequence(name, &s);
    }
    // K1's periodic window plus REG1's contractible one, pivot K1 ⊕ REG1.
    let c = ws.subcategory("add(REG1)").expect("fixture");
    let periodic = verify_complete_resolution(&c, &periodic_window(5), 2, &k1()).expect("periodic window");
    let contractible = CompleteResolution::from_halves(
        &c,
        &AugmentedResolution::identity(Direction::Resolution, &reg1()),
        &AugmentedResolution::identity(Direction::Coresolution, &reg1()),
    )
    .expect("contractible window");
    let w = CompleteResolution::direct_sum(&c, &[periodic, contractible]).expect("sum window");
    let pivot = w.pivot().clone();
    ws.insert_module("K1REG1", &pivot);
    ws.insert_sequence("window_k1_reg1", w.window());
    let e = Morphism::diag(&[Morphism::identity(&k1()), Morphism::zero(&reg1(), &reg1())]).retype(&pivot, &pivot);
    ws.insert_morphism("project_k1", &e);
    ws
}

pub fn fixture_json() -> String {
    fixture_workspace().to_json()
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                report: e.to_string(),
                dot: None,
                code,
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(Done { report, dot, passed }) => {
            let expected = cli.expect.map(|e| e == Expect::Pass);
            let code = match (expected, passed) {
                (Some(want), Some(got)) if want != got => 1,
                (Some(false), None) => 1,
                (None, Some(false)) if !matches!(cli.command, Command::Compute(_)) => 1,
                _ => 0,
            };
            Outcome { report, dot, code }
        }
        Err(e) => {
            let mut report = serde_json::to_string_pretty(&json!({ "error": e.to_string() })).expect("json");
            report.push('\n');
            let code = match cli.expect {
                Some(Expect::Fail) if exit_code(&e) == 1 => 0,
                _ => exit_code(&e),
            };
            Outcome {
                report,
                dot: None,
                code,
            }
        }
    }
}

struct Done {
    report: String,
    dot: Option<String>,
    /// `None` for commands without a pass/fail outcome.
    passed: Option<bool>,
}

fn json_done(v: Value, passed: Option<bool>, dot: Option<String>) -> Done {
    let mut report = serde_json::to_string_pretty(&v).expect("json");
    report.push('\n');
    Done { report, dot, passed }
}

fn load(cli: &Cli) -> Result<Workspace> {
    match &cli.workspace {
        None => Ok(fixture_workspace()),
        Some(path) => Workspace::parse(&read(path)?),
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn dispatch(cli: &Cli) -> Result<Done> {
    match &cli.command {
        Command::Validate { files } => validate(cli, files),
        Command::Fixtures => Ok(Done {
            report: fixture_json(),
            dot: None,
            passed: None,
        }),
        Command::Compute(c) => compute(&load(cli)?, c, cli.dot.is_some()),
        Command::Construct(c) => construct(&load(cli)?, c, cli.dot.is_some()),
        Command::Report {
            module,
            subcategory,
            bound,
        } => report(&load(cli)?, module, subcategory, *bound),
    }
}

fn validate(cli: &Cli, files: &[PathBuf]) -> Result<Done> {
    let mut texts = Vec::new();
    if files.is_empty() {
        match &cli.workspace {
            Some(p) => texts.push((p.display().to_string(), read(p)?)),
            None => texts.push(("fixtures".to_string(), fixture_json())),
        }
    } else {
        for p in files {
            texts.push((p.display().to_string(), read(p)?));
        }
    }
    let mut results = serde_json::Map::new();
    let mut all = true;
    for (name, text) in texts {
        let (ws, failures) = Workspace::parse_lenient(&text)?;
        all &= failures.is_empty();
        let failures: Vec<Value> = failures
            .iter()
            .map(|f| json!({"kind": f.kind, "name": f.name, "violation": f.violation.to_string()}))
            .collect();
        results.insert(
            name,
            json!({
                "entities": ws.algebras.len() + ws.modules.len() + ws.morphisms.len() + ws.subcategories.len() + ws.sequences.len(),
                "failures": failures,
            }),
        );
    }
    Ok(json_done(
        json!({"command": "validate", "files": results, "valid": all}),
        Some(all),
        None,
    ))
}

fn compute(ws: &Workspace, c: &Compute, want_dot: bool) -> Result<Done> {
    match c {
        Compute::Hom { source, target } => {
            let (m, n) = (ws.module_expr(source)?, ws.module_expr(target)?);
            same_algebra(&m, &n)?;
            let basis = hom_basis(&m, &n);
            let v = json!({
                "command": "compute hom",
                "source": source,
                "target": target,
                "dim": basis.len(),
                "basis": basis.iter().map(|f| render::matrix(f.matrix())).collect::<Vec<_>>(),
            });
            Ok(json_done(v, None, None))
        }
        Compute::Ext { source, target, upto } => {
            let (m, n) = (ws.module_expr(source)?, ws.module_expr(target)?);
            same_algebra(&m, &n)?;
            let t = ext_dims(&m, &n, *upto);
            let v = json!({
                "command": "compute ext",
                "source": source,
                "target": target,
                "upto": upto,
                "dims": t.dims,
                "first_nonzero_above_zero": (1..t.dims.len()).find(|&i| t.dims[i] != 0),
            });
            Ok(json_done(v, Some(t.vanishes_above_zero()), None))
        }
        Compute::Approx {
            subcategory,
            module,
            side,
        } => {
            let c = ws.subcategory(subcategory)?;
            let m = ws.module_expr(module)?;
            same_algebra(c.sum(), &m)?;
            let (ap, ok, what) = match side {
                ApproxSide::Right => {
                    let ap = reduced_right_approx(&c, &m);
                    let ok = ap.is_epic();
                    (ap, ok, "epic")
                }
                ApproxSide::Left => {
                    let ap = reduced_left_approx(&c, &m);
                    let ok = ap.is_monic();
                    (ap, ok, "monic")
                }
            };
            let v = json!({
                "command": "compute approx",
                "subcategory": subcategory,
                "module": module,
                "side": if *side == ApproxSide::Right { "right" } else { "left" },
                "multiplicities": ap.multiplicities,
                "map": render::morphism(&ap.map),
                what: ok,
            });
            Ok(json_done(v, Some(ok), None))
        }
        Compute::Exactness { sequence, against } => {
            let s = ws.sequence(sequence)?;
            let exact = s.is_exact();
            let mut v = json!({
                "command": "compute exactness",
                "sequence": sequence,
                "dims": s.objects().iter().map(Module::dim).collect::<Vec<_>>(),
                "exact": render::status(exact.clone().map(|_| ())),
            });
            let mut passed = exact.is_ok();
            if let Some(name) = against {
                let c = ws.subcategory(name)?;
                let from = is_hom_from_exact(&c, s);
                let into = is_hom_into_exact(&c, s);
                passed &= from.is_ok() && into.is_ok();
                v["against"] = json!(name);
                v["hom_from"] = render::status(from);
                v["hom_into"] = render::status(into);
            }
            let dot = want_dot.then(|| render::dot(sequence, &[(sequence.clone(), s.clone())]));
            Ok(json_done(v, Some(passed), dot))
        }
        Compute::Membership {
            subcategory,
            module,
            gorenstein,
        } => {
            let c = ws.subcategory(subcategory)?;
            let m = ws.module_expr(module)?;
            same_algebra(c.sum(), &m)?;
            match gorenstein {
                None => {
                    let w = is_in_add(&c, &m);
                    let v = json!({
                        "command": "compute membership",
                        "subcategory": subcategory,
                        "module": module,
                        "member": if w.is_some() { "yes" } else { "no" },
                        "multiplicities": w.as_ref().map(|w| w.multiplicities.clone()),
                    });
                    Ok(json_done(v, Some(w.is_some()), None))
                }
                Some(depth) => {
                    let g = g_membership(&c, &m, *depth);
                    let (verdict, detail) = match &g.verdict {
                        Verdict::Verified(w) => ("yes", render::complete(w)),
                        Verdict::Refuted(r) => ("no", json!(format!("{r:?}"))),
                        Verdict::Inconclusive(s) => ("unknown", json!(s)),
                    };
                    let v = json!({
                        "command": "compute membership",
                        "subcategory": subcategory,
                        "module": module,
                        "gorenstein_depth": g.depth,
                        "self_orthogonal": g.orthogonality.is_certified(),
                        "member": verdict,
                        "detail": detail,
                    });
                    let passed = match g.verdict {
                        Verdict::Verified(_) => Some(true),
                        Verdict::Refuted(_) => Some(false),
                        Verdict::Inconclusive(_) => None,
                    };
                    Ok(json_done(v, passed, None))
                }
            }
        }
    }
}

fn same_algebra(a: &Module, b: &Module) -> Result<()> {
    if a.algebra() != b.algebra() {
        return Err(crate::Violation::AlgebraMismatch.into());
    }
    Ok(())
}

fn two_map_ses(ws: &Workspace, name: &str) -> Result<ShortExactSeq> {
    let s = ws.sequence(name)?;
    if s.maps().len() != 2 {
        return Err(Error::Malformed(format!("sequence {name} must have exactly two maps")));
    }
    ShortExactSeq::new(s.maps()[0].clone(), s.maps()[1].clone())
        .map_err(|e| Error::Hypothesis(format!("{name} is not a short exact sequence: {e}")))
}

/// A named sequence read as a (co)resolution of `target`, listed left to
/// right. It counts as complete when its far end is a zero module.
fn resolution_arg(ws: &Workspace, name: &str, direction: Direction, target: &Module) -> Result<AugmentedResolution> {
    let s = ws.sequence(name)?;
    let mut maps: Vec<Morphism> = s.maps().to_vec();
    if direction == Direction::Resolution {
        maps.reverse();
    }
    let complete = maps.len() > 1
        && match direction {
            Direction::Resolution => maps.last().is_some_and(|f| f.source().is_zero()),
            Direction::Coresolution => maps.last().is_some_and(|f| f.target().is_zero()),
        };
    if complete {
        maps.pop();
    }
    let r = AugmentedResolution::new(direction, target, maps, !complete)
        .map_err(|e| Error::Hypothesis(format!("{name} is not a (co)resolution of the expected term: {e}")))?;
    if r.target() != target {
        return Err(Error::Hypothesis(format!("{name} does not end at the expected term")));
    }
    Ok(r)
}

fn built(c: &Subcategory, m: &Module, direction: Direction, len: usize) -> Result<AugmentedResolution> {
    match direction {
        Direction::Resolution => build_proper_resolution(c, m, len),
        Direction::Coresolution => build_coproper_coresolution(c, m, len),
    }
}

fn options(closure: bool) -> ConstructOptions {
    ConstructOptions {
        closure_asserted: closure,
        ..Default::default()
    }
}

fn check_construction(out: &Construction, c: &Subcategory, verify: bool) -> Result<Value> {
    if !verify {
        return Ok(json!(null));
    }
    let fresh = out.output.clone().verified(c);
    let flags = fresh.flags();
    out.check_shapes()?;
    if !flags.exact.is_yes() {
        return Err(Error::Certificate("output is not exact".into()));
    }
    let unmet = out.predicted.unmet_by(&flags);
    if !unmet.is_empty() {
        return Err(Error::Certificate(format!(
            "predicted but not verified: {}",
            unmet.join(", ")
        )));
    }
    Ok(json!(flags))
}

fn construct(ws: &Workspace, cmd: &ConstructCmd, want_dot: bool) -> Result<Done> {
    let verify = cmd.verify;
    match &cmd.what {
        Construct::ResolveFirst(a)
        | Construct::ResolveLast(a)
        | Construct::CoresolveLast(a)
        | Construct::CoresolveFirst(a)
        | Construct::ResolveMiddle(a)
        | Construct::CoresolveMiddle(a) => {
            let c = ws.subcategory(&a.sub)?;
            let ses = two_map_ses(ws, &a.ses)?;
            same_algebra(c.sum(), ses.middle())?;
            // Which terms the two inputs (co)resolve, and the construction.
            type Run = fn(
                &Subcategory,
                &ShortExactSeq,
                &AugmentedResolution,
                &AugmentedResolution,
                ConstructOptions,
            ) -> Result<Construction>;
            let (name, dir, terms, run): (&str, Direction, [Module; 2], Run) = match &cmd.what {
                Construct::ResolveFirst(_) => (
                    "resolve-first",
                    Direction::Resolution,
                    [ses.middle().clone(), ses.right().clone()],
                    resolve_first_term,
                ),
                Construct::ResolveLast(_) => (
                    "resolve-last",
                    Direction::Resolution,
                    [ses.middle().clone(), ses.left().clone()],
                    resolve_last_term,
                ),
                Construct::CoresolveLast(_) => (
                    "coresolve-last",
                    Direction::Coresolution,
                    [ses.middle().clone(), ses.left().clone()],
                    coresolve_last_term,
                ),
                Construct::CoresolveFirst(_) => (
                    "coresolve-first",
                    Direction::Coresolution,
                    [ses.middle().clone(), ses.right().clone()],
                    coresolve_first_term,
                ),
                Construct::ResolveMiddle(_) => (
                    "resolve-middle",
                    Direction::Resolution,
                    [ses.left().clone(), ses.right().clone()],
                    resolve_middle_term,
                ),
                _ => (
                    "coresolve-middle",
                    Direction::Coresolution,
                    [ses.left().clone(), ses.right().clone()],
                    coresolve_middle_term,
                ),
            };
            let inputs = [&a.res0, &a.res1]
                .iter()
                .zip(terms.iter())
                .map(|(arg, t)| match arg {
                    Some(n) => resolution_arg(ws, n, dir, t),
                    None => built(&c, t, dir, a.len),
                })
                .collect::<Result<Vec<_>>>()?;
            let out = run(&c, &ses, &inputs[0], &inputs[1], options(a.closure))?;
            let verified = check_construction(&out, &c, verify)?;
            let v = json!({
                "command": format!("construct {name}"),
                "subcategory": a.sub,
                "ses": a.ses,
                "inputs": inputs.iter().map(render::resolution).collect::<Vec<_>>(),
                "result": render::construction(&out),
                "verified": verified,
            });
            let dot = want_dot.then(|| {
                let mut rows = vec![("input".to_string(), ses.as_sequence())];
                rows.extend(
                    inputs
                        .iter()
                        .enumerate()
                        .map(|(i, r)| (format!("input {i}"), r.as_sequence())),
                );
                rows.push(("output".to_string(), out.output.as_sequence()));
                render::dot(name, &rows)
            });
            Ok(json_done(v, Some(true), dot))
        }
        Construct::Iterate {
            mode,
            sub,
            seq,
            len,
            closure,
        } => {
            let c = ws.subcategory(sub)?;
            let s = ws.sequence(seq)?;
            let (mode, dir, first) = match mode {
                ModeArg::ResolveFirst => (IterateMode::ResolveFirst, Direction::Resolution, true),
                ModeArg::ResolveLast => (IterateMode::ResolveLast, Direction::Resolution, false),
                ModeArg::CoresolveLast => (IterateMode::CoresolveLast, Direction::Coresolution, false),
                ModeArg::CoresolveFirst => (IterateMode::CoresolveFirst, Direction::Coresolution, true),
            };
            let mut maps = s.maps().to_vec();
            if !first {
                maps.reverse();
            }
            let res = maps
                .iter()
                .map(|f| built(&c, if first { f.target() } else { f.source() }, dir, *len))
                .collect::<Result<Vec<_>>>()?;
            let out = iterate_construct(mode, &c, &maps, &res, options(*closure))?;
            let verified = check_construction(&out, &c, verify)?;
            let v = json!({
                "command": "construct iterate",
                "mode": format!("{mode:?}"),
                "result": render::construction(&out),
                "auxiliary": out.auxiliary.as_ref().map(render::sequence),
                "verified": verified,
            });
            let dot = want_dot.then(|| {
                render::dot(
                    "iterate",
                    &[("input".into(), s.clone()), ("output".into(), out.output.as_sequence())],
                )
            });
            Ok(json_done(v, Some(true), dot))
        }
        Construct::Collapse { window, depth } => {
            let c = ws.subcategory(&window.sub)?;
            let s = ws.sequence(&window.window)?;
            let pivot = ws.module_expr(&window.pivot)?;
            let inner = s
                .objects()
                .iter()
                .map(|t| match g_membership(&c, t, *depth).verdict {
                    Verdict::Verified(w) => Some(w),
                    _ => None,
                })
                .collect();
            let outer = OuterWindow {
                window: s.clone(),
                center: window.center,
                pivot,
                inner,
            };
            let out = collapse_gorenstein_window(&c, &outer, Default::default())?;
            if verify {
                verify_complete_resolution(
                    &c,
                    out.resolution.window(),
                    out.resolution.center(),
                    out.resolution.pivot(),
                )?;
            }
            let v = json!({
                "command": "construct collapse",
                "resolution": render::complete(&out.resolution),
                "left": render::construction(&out.left),
                "right": render::construction(&out.right),
            });
            let dot = want_dot.then(|| {
                render::dot(
                    "collapse",
                    &[
                        ("outer".into(), s.clone()),
                        ("complete".into(), out.resolution.window().clone()),
                    ],
                )
            });
            Ok(json_done(v, Some(true), dot))
        }
        Construct::Summand { window, idempotent } => {
            let c = ws.subcategory(&window.sub)?;
            let s = ws.sequence(&window.window)?;
            let pivot = ws.module_expr(&window.pivot)?;
            let e = ws.morphism(idempotent)?;
            let w = verify_complete_resolution(&c, s, window.center, &pivot)
                .map_err(|e| Error::Hypothesis(format!("input window: {e}")))?;
            let out = summand_resolution(&c, &w, e, Default::default())?;
            if verify {
                verify_complete_resolution(&c, out.window(), out.center(), out.pivot())?;
            }
            let v = json!({
                "command": "construct summand",
                "resolution": render::complete(&out),
                "left_terms": out.left_half().terms().iter().map(Module::dim).collect::<Vec<_>>(),
                "right_terms": out.right_half().terms().iter().map(Module::dim).collect::<Vec<_>>(),
            });
            let dot = want_dot.then(|| {
                render::dot(
                    "summand",
                    &[("input".into(), s.clone()), ("output".into(), out.window().clone())],
                )
            });
            Ok(json_done(v, Some(true), dot))
        }
        Construct::Rebuild { pair, seq, via } | Construct::Swap { pair, seq, via } => {
            let p = GenCogenPair::new(
                &ws.subcategory(&pair.sub)?,
                &ws.subcategory(&pair.gen)?,
                &ws.subcategory(&pair.cogen)?,
            );
            let s = ws.sequence(seq)?;
            let via = match via {
                ViaArg::Generator => Via::Generator,
                ViaArg::Cogenerator => Via::Cogenerator,
            };
            let (name, out, connecting, preservation) = if matches!(cmd.what, Construct::Rebuild { .. }) {
                let r = rebuild_four_term(&p, s, via)?;
                ("rebuild", r.sequence, None, r.preservation)
            } else {
                let r = swap_syzygy(&p, s, via)?;
                ("swap", r.sequence, Some(r.connecting), r.preservation)
            };
            if verify && !preservation.holds() {
                return Err(Error::Certificate(format!(
                    "{} exactness was not preserved",
                    preservation.functor
                )));
            }
            let v = json!({
                "command": format!("construct {name}"),
                "pair_certified": p.is_certified(),
                "sequence": render::sequence(&out),
                "connecting": connecting.as_ref().map(render::ses),
                "preservation": {
                    "functor": preservation.functor,
                    "before": preservation.before,
                    "witnesses": preservation.witnesses,
                    "after": preservation.after,
                },
            });
            let dot = want_dot.then(|| {
                let mut rows = vec![("input".to_string(), s.clone()), ("output".to_string(), out.clone())];
                if let Some(c) = &connecting {
                    rows.push(("connecting".into(), c.as_sequence()));
                }
                render::dot(name, &rows)
            });
            Ok(json_done(v, Some(true), dot))
        }
        Construct::Mixed {
            sub,
            gen,
            module,
            position,
            bound,
        } => {
            let c = ws.subcategory(sub)?;
            let x = ws.subcategory(gen)?;
            let m = ws.module_expr(module)?;
            let report = c_dim_report(&c, &m, *bound);
            let Upper::Finite { witness, .. } = &report.upper else {
                return Err(Error::Hypothesis(format!(
                    "no finite resolution of {module} within {bound}"
                )));
            };
            let p = GenCogenPair::new(&c, &x, &x);
            let out = mixed_resolution(&p, witness, *position)?;
            let v = json!({
                "command": "construct mixed",
                "input": render::resolution(witness),
                "output": render::resolution(&out),
                "position": position,
            });
            let dot = want_dot.then(|| {
                render::dot(
                    "mixed",
                    &[
                        ("input".into(), witness.as_sequence()),
                        ("output".into(), out.as_sequence()),
                    ],
                )
            });
            Ok(json_done(v, Some(true), dot))
        }
        Construct::GorensteinSequences { sub, module, bound } => {
            let x = ws.subcategory(sub)?;
            let m = ws.module_expr(module)?;
            let r = gdim_report(&x, &m, *bound, true);
            let s = gorenstein_sequences(&x, &r)?;
            let objects: Vec<Module> = ws
                .modules
                .values()
                .filter(|g| g.algebra() == x.algebra() && g_membership(&x, g, *bound).is_verified())
                .cloned()
                .collect();
            let failures = s.precover_failures(&objects);
            let v = json!({
                "command": "construct gorenstein-sequences",
                "gdim": r.gdim,
                "approx_ses": render::ses(&s.approx_ses),
                "embed_ses": render::ses(&s.embed_ses),
                "precover_checked_against": objects.len(),
                "precover_failures": failures,
            });
            let dot = want_dot.then(|| {
                render::dot(
                    "gorenstein-sequences",
                    &[
                        ("precover".into(), s.approx_ses.as_sequence()),
                        ("embedding".into(), s.embed_ses.as_sequence()),
                    ],
                )
            });
            Ok(json_done(v, Some(failures.is_empty()), dot))
        }
    }
}

fn report(ws: &Workspace, module: &str, subcategory: &str, bound: usize) -> Result<Done> {
    let c = ws.subcategory(subcategory)?;
    let m = ws.module_expr(module)?;
    same_algebra(c.sum(), &m)?;
    let dim = c_dim_report(&c, &m, bound);
    let codim = codim_report(&c, &m, bound);
    let g = self_orthogonality(&c, bound.max(1))
        .is_certified()
        .then(|| gdim_report(&c, &m, bound, true));
    Ok(Done {
        report: render::report_text(module, subcategory, &dim, &codim, g.as_ref()),
        dot: None,
        passed: None,
    })
}
