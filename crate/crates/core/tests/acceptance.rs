//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homres::approx::{ext1, ext_dims, is_in_add, is_strongly_exact, Side, Subcategory};
use homres::cli::{self, Workspace};
use homres::dimension::{c_dim_report, gdim_report, gorenstein_sequences, swap_syzygy, GenCogenPair, Via};
use homres::fixtures::*;
use homres::gorenstein::{
    collapse_gorenstein_window, g_membership, summand_resolution, verify_complete_resolution, CompleteResolution,
    OuterWindow, Verdict,
};
use homres::linalg::Matrix;
use homres::modcat::{
    cokernel, direct_sum, find_isomorphism, hom_basis, image, kernel, lift, Algebra, Module, Morphism, Sequence,
    ShortExactSeq,
};
use homres::resolve::{
    build_coproper_coresolution, build_proper_resolution, coresolve_first_term, coresolve_last_term,
    resolve_first_term, resolve_last_term, AugmentedResolution, ConstructOptions, Construction, Direction,
};
use homres::Error;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn add(name: &str, gens: &[Module]) -> Subcategory {
    Subcategory::new(name, gens.to_vec()).expect("subcategory")
}

fn sum(ms: &[Module]) -> Module {
    direct_sum(ms).object
}

fn dims(r: &AugmentedResolution) -> Vec<usize> {
    r.terms().iter().map(Module::dim).collect()
}

fn iso(a: &Module, b: &Module) -> bool {
    find_isomorphism(a, b).is_some()
}

// ---------------------------------------------------------------------------
// Brute-force module and extension enumeration.

/// Every matrix tuple `(d x d)^k` over GF(p), in a fixed order.
fn all_tuples(p: u32, k: usize, rows: usize, cols: usize) -> impl Iterator<Item = Vec<Matrix>> {
    let cells = (k * rows * cols) as u32;
    let total = (p as u64).pow(cells);
    (0..total).map(move |code| {
        let mut c = code;
        (0..k)
            .map(|_| {
                let data = (0..rows * cols)
                    .map(|_| {
                        let v = (c % p as u64) as u32;
                        c /= p as u64;
                        v
                    })
                    .collect();
                Matrix::from_vec(p, rows, cols, data)
            })
            .collect()
    })
}

fn basis_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn combine(p: u32, d: usize, coeffs: &[u32], mats: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(p, d, d);
    for (c, m) in coeffs.iter().zip(mats) {
        if *c != 0 {
            out = out.add(&m.scale(*c));
        }
    }
    out
}

/// The module axioms checked directly against products of basis elements.
fn satisfies_axioms(alg: &Algebra, d: usize, mats: &[Matrix]) -> bool {
    let (p, k) = (alg.modulus(), alg.dim());
    if !combine(p, d, alg.unit(), mats).is_identity() {
        return false;
    }
    for i in 0..k {
        for j in 0..k {
            let prod = alg.product(&basis_vector(k, i), &basis_vector(k, j));
            if mats[i].mul(&mats[j]) != combine(p, d, &prod, mats) {
                return false;
            }
        }
    }
    true
}

/// All modules of dimension `d` as raw action tuples; the library's own
/// validation must agree with the direct axiom check on every tuple.
fn all_modules(alg: &Arc<Algebra>, d: usize) -> Result<Vec<Module>, String> {
    let mut out = Vec::new();
    for mats in all_tuples(alg.modulus(), alg.dim(), d, d) {
        let direct = satisfies_axioms(alg, d, &mats);
        let lib = Module::new(alg, d, mats);
        ensure!(
            direct == lib.is_ok(),
            "{} dim {d}: validation disagrees with the axioms",
            alg.name()
        );
        if let Ok(m) = lib {
            out.push(m);
        }
    }
    Ok(out)
}

/// Number of extensions `0 -> n -> E -> m -> 0` up to equivalence: action
/// tuples on `n ⊕ m` of block form `[[ρ_n, δ], [0, ρ_m]]` that are modules,
/// modulo the coboundaries `ρ_n h - h ρ_m`.
fn extension_classes(m: &Module, n: &Module) -> u64 {
    let alg = m.algebra();
    let (p, k) = (alg.modulus(), alg.dim());
    let (dm, dn) = (m.dim(), n.dim());
    let d = dm + dn;
    let mut cocycles = 0u64;
    for deltas in all_tuples(p, k, dn, dm) {
        let mats: Vec<Matrix> = (0..k)
            .map(|i| {
                let mut e = Matrix::zeros(p, d, d);
                e.set_block(0, 0, n.act(i));
                e.set_block(0, dn, &deltas[i]);
                e.set_block(dn, dn, m.act(i));
                e
            })
            .collect();
        if satisfies_axioms(alg, d, &mats) {
            cocycles += 1;
        }
    }
    let mut boundaries = BTreeSet::new();
    for h in all_tuples(p, 1, dn, dm) {
        let h = &h[0];
        let b: Vec<Vec<u32>> = (0..k)
            .map(|i| n.act(i).mul(h).sub(&h.mul(m.act(i))).data().to_vec())
            .collect();
        boundaries.insert(b);
    }
    cocycles / boundaries.len() as u64
}

fn ext_oracle() -> Check {
    let mut pairs = 0;
    for alg in [lambda1(), a2()] {
        let mut mods = Vec::new();
        for d in 0..=2 {
            mods.extend(all_modules(&alg, d)?);
        }
        for m in &mods {
            for n in &mods {
                let classes = extension_classes(m, n);
                let e = ext_dims(m, n, 1).dims[1];
                let want = (alg.modulus() as u64).pow(e as u32);
                ensure!(
                    classes == want,
                    "{}: dim {} by dim {}: {classes} extension classes but Ext^1 has dim {e}",
                    alg.name(),
                    m.dim(),
                    n.dim()
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs match"))
}

// ---------------------------------------------------------------------------

fn split_not_strong() -> Check {
    let c = add("add(K1)", &[k1()]);
    let split = ShortExactSeq::split(&k1(), &k1());
    let res = AugmentedResolution::new(
        Direction::Resolution,
        &k1(),
        vec![split.epi().clone(), split.mono().clone()],
        false,
    )
    .map_err(|e| e.to_string())?
    .verified(&c);
    let cores = AugmentedResolution::new(
        Direction::Coresolution,
        &k1(),
        vec![split.mono().clone(), split.epi().clone()],
        false,
    )
    .map_err(|e| e.to_string())?
    .verified(&c);
    ensure!(
        res.flags().proper(Direction::Resolution).is_yes(),
        "not certified proper: {:?}",
        res.flags()
    );
    ensure!(
        cores.flags().proper(Direction::Coresolution).is_yes(),
        "not certified coproper: {:?}",
        cores.flags()
    );
    ensure!(
        !res.flags().strong.is_yes() && !cores.flags().strong.is_yes(),
        "strong flag set"
    );
    let e = ext1(&k1(), &k1());
    ensure!(e == 1, "Ext^1(K1, K1) has dim {e}");
    for (r, side) in [(&res, Side::FromC), (&cores, Side::IntoC)] {
        match is_strongly_exact(&c, r, side) {
            Err(Error::ExtNonzero { degree: 1, dim: 1, .. }) => {}
            other => return Err(format!("{side:?}: expected an Ext^1 witness, got {other:?}")),
        }
    }
    Ok("proper and coproper, both strong variants refuted by Ext^1(K1,K1) = 1".into())
}

// ---------------------------------------------------------------------------
// Randomized constructions.

struct Setting {
    name: &'static str,
    pool: Vec<Module>,
    /// Subcategories for resolutions and coresolutions, with whether they
    /// are closed under kernels of epimorphisms (cokernels of monomorphisms).
    resolving: Vec<(Subcategory, bool)>,
    coresolving: Vec<(Subcategory, bool)>,
}

fn settings() -> Vec<Setting> {
    let all1 = add("all1", &[reg1(), k1()]);
    let all2 = add("all2", &[reg2(), u2(), k2()]);
    let alla = add("allA2", &[sa(), sb(), pa()]);
    vec![
        Setting {
            name: "LAMBDA1",
            pool: vec![k1(), reg1()],
            resolving: vec![(add("add(REG1)", &[reg1()]), false), (all1.clone(), true)],
            coresolving: vec![(add("add(REG1)", &[reg1()]), false), (all1, true)],
        },
        Setting {
            name: "LAMBDA2",
            pool: vec![k2(), u2(), reg2()],
            resolving: vec![(add("add(REG2)", &[reg2()]), false), (all2.clone(), true)],
            coresolving: vec![(add("add(REG2)", &[reg2()]), false), (all2, true)],
        },
        Setting {
            name: "A2",
            pool: vec![sa(), sb(), pa()],
            // Hereditary: submodules of projectives are projective, quotients
            // of injectives are injective.
            resolving: vec![(add("proj", &[pa(), sb()]), true), (alla.clone(), true)],
            coresolving: vec![(add("inj", &[dual_regular(&a2())]), true), (alla, true)],
        },
    ]
}

fn random_module(rng: &mut ChaCha8Rng, pool: &[Module], max_parts: usize) -> Module {
    let parts: Vec<Module> = (0..rng.gen_range(1..=max_parts))
        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
        .collect();
    sum(&parts)
}

fn random_hom(rng: &mut ChaCha8Rng, m: &Module, n: &Module) -> Morphism {
    let p = m.modulus();
    let mut f = Morphism::zero(m, n);
    for b in hom_basis(m, n) {
        let c = rng.gen_range(0..p);
        if c != 0 {
            f = f.add(&b.scale(c));
        }
    }
    f
}

fn random_mono(rng: &mut ChaCha8Rng, pool: &[Module]) -> Morphism {
    let x = random_module(rng, pool, 2);
    for _ in 0..20 {
        let y = random_module(rng, pool, 3);
        let f = random_hom(rng, &x, &y);
        if f.is_mono() {
            return f;
        }
    }
    let z = random_module(rng, pool, 2);
    let h = random_hom(rng, &x, &z);
    Morphism::vcat(&[Morphism::identity(&x), h])
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    ResolveFirst,
    ResolveLast,
    CoresolveLast,
    CoresolveFirst,
}

struct Instance {
    kind: Kind,
    c: Subcategory,
    closure: bool,
    ses: ShortExactSeq,
    first: AugmentedResolution,
    second: AugmentedResolution,
}

impl Instance {
    fn direction(&self) -> Direction {
        match self.kind {
            Kind::ResolveFirst | Kind::ResolveLast => Direction::Resolution,
            _ => Direction::Coresolution,
        }
    }

    fn run(&self, opts: ConstructOptions) -> homres::Result<Construction> {
        let f = match self.kind {
            Kind::ResolveFirst => resolve_first_term,
            Kind::ResolveLast => resolve_last_term,
            Kind::CoresolveLast => coresolve_last_term,
            Kind::CoresolveFirst => coresolve_first_term,
        };
        f(&self.c, &self.ses, &self.first, &self.second, opts)
    }

    /// The displayed direct sum at degree `i`, read off the inputs.
    fn shape(&self, i: usize) -> Option<Module> {
        let (a, b) = (&self.first, &self.second);
        let pair = |x: Option<Module>, y: Option<Module>| Some(sum(&[x?, y?]));
        match (self.kind, i) {
            (Kind::ResolveFirst | Kind::CoresolveLast, 0) => None,
            (Kind::ResolveFirst | Kind::CoresolveLast, _) => pair(b.term_or_zero(i + 1), a.term_or_zero(i)),
            (Kind::ResolveLast | Kind::CoresolveFirst, 0) => a.term_or_zero(0),
            (Kind::ResolveLast | Kind::CoresolveFirst, _) => pair(a.term_or_zero(i), b.term_or_zero(i - 1)),
        }
    }
}

fn random_instance(rng: &mut ChaCha8Rng, settings: &[Setting]) -> homres::Result<Instance> {
    let s = &settings[rng.gen_range(0..settings.len())];
    let kind = [
        Kind::ResolveFirst,
        Kind::ResolveLast,
        Kind::CoresolveLast,
        Kind::CoresolveFirst,
    ][rng.gen_range(0..4)];
    let ses = ShortExactSeq::from_mono(&random_mono(rng, &s.pool));
    let options = match kind {
        Kind::ResolveFirst | Kind::ResolveLast => &s.resolving,
        _ => &s.coresolving,
    };
    let (c, closure) = options[rng.gen_range(0..options.len())].clone();
    let len0 = rng.gen_range(1..=4);
    let len1 = rng.gen_range(2..=4);
    let (first, second) = match kind {
        Kind::ResolveFirst => (
            build_proper_resolution(&c, ses.middle(), len0)?,
            build_proper_resolution(&c, ses.right(), len1)?,
        ),
        Kind::ResolveLast => (
            build_proper_resolution(&c, ses.middle(), len0)?,
            build_proper_resolution(&c, ses.left(), len1)?,
        ),
        Kind::CoresolveLast => (
            build_coproper_coresolution(&c, ses.middle(), len0)?,
            build_coproper_coresolution(&c, ses.left(), len1)?,
        ),
        Kind::CoresolveFirst => (
            build_coproper_coresolution(&c, ses.middle(), len0)?,
            build_coproper_coresolution(&c, ses.right(), len1)?,
        ),
    };
    let _ = s.name;
    Ok(Instance {
        kind,
        c,
        closure,
        ses,
        first,
        second,
    })
}

fn check_instance(inst: &Instance) -> Result<(bool, bool), String> {
    let base = ConstructOptions {
        closure_asserted: inst.closure,
        ..Default::default()
    };
    let out = inst.run(base).map_err(|e| format!("construction failed: {e}"))?;
    let r = &out.output;
    let dir = inst.direction();
    ensure!(r.direction() == dir, "wrong direction");
    ensure!(!r.is_empty(), "empty output");
    ensure!(
        r.as_sequence().is_exact().is_ok() && r.flags().exact.is_yes(),
        "output is not exact"
    );
    for i in 0..r.len() {
        if let Some(want) = inst.shape(i) {
            ensure!(
                iso(r.term(i), &want),
                "degree {i}: dim {} is not the expected sum (dim {})",
                r.term(i).dim(),
                want.dim()
            );
        }
    }
    if matches!(inst.kind, Kind::ResolveFirst | Kind::CoresolveLast) {
        let bridge = out.bridge.as_ref().ok_or("no bridge sequence")?;
        ensure!(bridge.as_sequence().is_exact().is_ok(), "bridge is not exact");
        let end = if dir == Direction::Resolution {
            bridge.left()
        } else {
            bridge.right()
        };
        ensure!(iso(r.term(0), end), "degree 0 is not the bridge kernel (cokernel)");
    }
    out.check_predictions().map_err(|e| e.to_string())?;

    let mut certified = (false, false);
    for strong in [false, true] {
        let opts = ConstructOptions {
            require_proper: !strong,
            require_strong: strong,
            ..base
        };
        let predicted = if strong {
            out.predicted.strong
        } else {
            out.predicted.proper(dir)
        };
        match inst.run(opts) {
            Ok(o) => {
                let f = o.output.flags();
                let got = if strong { f.strong } else { f.proper(dir) };
                ensure!(
                    got.is_yes(),
                    "certificates present but re-verification fails (strong: {strong})"
                );
                ensure!(
                    predicted.is_yes(),
                    "certificates accepted without a prediction (strong: {strong})"
                );
                if strong {
                    certified.1 = true;
                } else {
                    certified.0 = true;
                }
            }
            Err(Error::Hypothesis(_)) => ensure!(!predicted.is_yes(), "predicted but certificates refused"),
            Err(e) => return Err(format!("unexpected failure with required certificates: {e}")),
        }
    }
    Ok(certified)
}

fn construction_laws() -> Check {
    let settings = settings();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3248);
    let (mut proper, mut strong) = (0, 0);
    for n in 0..200 {
        let inst = random_instance(&mut rng, &settings).map_err(|e| format!("input {n}: {e}"))?;
        let (p, s) =
            check_instance(&inst).map_err(|e| format!("input {n} ({:?} over {}): {e}", inst.kind, inst.c.name()))?;
        proper += p as usize;
        strong += s as usize;
    }
    Ok(format!(
        "200 inputs, {proper} certified proper, {strong} certified strong"
    ))
}

// ---------------------------------------------------------------------------

fn inner_windows(c: &Subcategory, window: &Sequence) -> Vec<Option<CompleteResolution>> {
    window
        .objects()
        .iter()
        .map(|t| match g_membership(c, t, 2).verdict {
            Verdict::Verified(w) => Some(w),
            _ => None,
        })
        .collect()
}

fn collapse_once(
    c: &Subcategory,
    window: &Sequence,
    center: usize,
    pivot: &Module,
) -> Result<CompleteResolution, String> {
    let outer = OuterWindow {
        window: window.clone(),
        center,
        pivot: pivot.clone(),
        inner: inner_windows(c, window),
    };
    let out = collapse_gorenstein_window(c, &outer, Default::default()).map_err(|e| e.to_string())?;
    let w = &out.resolution;
    let again = verify_complete_resolution(c, w.window(), w.center(), w.pivot()).map_err(|e| e.to_string())?;
    ensure!(again.depth() >= 2, "depth {} below 2", again.depth());
    ensure!(iso(w.pivot(), pivot), "pivot is not isomorphic to the input pivot");
    Ok(out.resolution)
}

fn collapse() -> Check {
    let ws = cli::fixture_workspace();
    let c = ws.subcategory("add(REG1)").map_err(|e| e.to_string())?;
    let window = ws.sequence("window_k1_reg1").map_err(|e| e.to_string())?.clone();
    let pivot = ws.module("K1REG1").map_err(|e| e.to_string())?.clone();
    let first = collapse_once(&c, &window, 2, &pivot)?;
    let second = collapse_once(&c, first.window(), first.center(), first.pivot())?;

    // Terms that are Gorenstein but not in C: K1 ⊕ K1 with a shift.
    let kk = sum(&[k1(), k1()]);
    let shift = Morphism::new(&kk, &kk, Matrix::from_rows(2, &[[0i64, 0], [1, 0]])).map_err(|e| e.to_string())?;
    let g_window = Sequence::new(vec![shift.clone(); 5]).map_err(|e| e.to_string())?;
    let g = collapse_once(&c, &g_window, 2, &image(&shift).object)?;
    Ok(format!(
        "depths {}, {} (rerun), {} (Gorenstein terms)",
        first.depth(),
        second.depth(),
        g.depth()
    ))
}

fn summand_closure() -> Check {
    let ws = cli::fixture_workspace();
    let c = ws.subcategory("add(REG1)").map_err(|e| e.to_string())?;
    let window = ws.sequence("window_k1_reg1").map_err(|e| e.to_string())?;
    let pivot = ws.module("K1REG1").map_err(|e| e.to_string())?;
    let e = ws.morphism("project_k1").map_err(|e| e.to_string())?;
    ensure!(
        pivot.dim() == 3 && iso(pivot, &sum(&[k1(), reg1()])),
        "pivot is not K1 ⊕ REG1"
    );
    let w = verify_complete_resolution(&c, window, 2, pivot).map_err(|e| e.to_string())?;
    let mut shapes = Vec::new();
    for (idem, want) in [(e.clone(), k1()), (Morphism::identity(pivot).sub(e), reg1())] {
        let s = summand_resolution(&c, &w, &idem, Default::default()).map_err(|e| e.to_string())?;
        verify_complete_resolution(&c, s.window(), s.center(), s.pivot()).map_err(|e| e.to_string())?;
        ensure!(iso(s.pivot(), &want), "summand pivot is not the expected module");
        for (half, src) in [(s.left_half(), w.left_half()), (s.right_half(), w.right_half())] {
            let mut acc = 0;
            for k in 0..half.len() {
                acc += src.term_or_zero(k).map_or(0, |t| t.dim());
                ensure!(
                    half.term(k).dim() == acc,
                    "degree {k}: dim {} against {acc}",
                    half.term(k).dim()
                );
            }
        }
        shapes.push(format!("{:?}", dims(&s.left_half())));
    }
    Ok(format!("K1 left {}, REG1 left {}", shapes[0], shapes[1]))
}

// ---------------------------------------------------------------------------

/// `0 -> A -> C_{n-1} -> ... -> C_0 -> M -> 0` over LAMBDA1; every module
/// is a sum of K1 and REG1, so every term lies in the full subcategory.
fn random_syzygy_sequence(rng: &mut ChaCha8Rng, n: usize) -> Sequence {
    let pool = [k1(), reg1()];
    let c0 = random_module(rng, &pool, 2);
    let c1 = random_module(rng, &pool, 2);
    let d1 = random_hom(rng, &c1, &c0);
    let (_, e) = cokernel(&d1);
    let mut maps = vec![e.clone()];
    let mut last = e;
    if n >= 2 {
        maps.insert(0, d1.clone());
        last = d1;
        for _ in 2..n {
            let (k, inc) = kernel(&last);
            let extra = random_module(rng, &pool, 2);
            let h = random_hom(rng, &extra, &k);
            let d = Morphism::hcat(&[inc.clone(), inc.after(&h)]);
            maps.insert(0, d.clone());
            last = d;
        }
    }
    let (_, inc) = kernel(&last);
    maps.insert(0, inc);
    Sequence::new(maps).expect("composable")
}

fn syzygy_swap() -> Check {
    let all1 = add("all1", &[reg1(), k1()]);
    let reg = add("add(REG1)", &[reg1()]);
    let pair = GenCogenPair::new(&all1, &reg, &reg);
    ensure!(pair.is_certified(), "generator-cogenerator pair is not certified");
    let mut rng = ChaCha8Rng::seed_from_u64(0x53);
    let mut preserved = 0;
    for t in 0..100 {
        let n = rng.gen_range(1..=3);
        let seq = random_syzygy_sequence(&mut rng, n);
        let objs = seq.objects();
        let (a, m) = (objs[0].clone(), objs[objs.len() - 1].clone());
        ensure!(
            Sequence::bounded(seq.maps().to_vec())
                .map_err(|e| e.to_string())?
                .is_exact()
                .is_ok(),
            "input {t} not exact"
        );
        for via in [Via::Cogenerator, Via::Generator] {
            let s = swap_syzygy(&pair, &seq, via).map_err(|e| format!("input {t} {via:?}: {e}"))?;
            let out = s.sequence.objects();
            ensure!(out.len() == objs.len(), "input {t} {via:?}: length changed");
            let bounded = Sequence::bounded(s.sequence.maps().to_vec()).map_err(|e| e.to_string())?;
            ensure!(bounded.is_exact().is_ok(), "input {t} {via:?}: output not exact");
            for mid in &out[1..out.len() - 1] {
                ensure!(
                    is_in_add(&reg, mid).is_some(),
                    "input {t} {via:?}: middle term outside add(REG1)"
                );
                ensure!(
                    is_in_add(&all1, mid).is_some(),
                    "input {t} {via:?}: middle term outside C"
                );
            }
            ensure!(
                s.connecting.as_sequence().is_exact().is_ok(),
                "input {t} {via:?}: connecting sequence not exact"
            );
            ensure!(
                s.preservation.holds(),
                "input {t} {via:?}: {} exactness lost",
                s.preservation.functor
            );
            preserved += s.preservation.applies() as usize;
            match via {
                // Same syzygy A, now over the cogenerator; 0 -> M -> N -> X -> 0.
                Via::Cogenerator => {
                    ensure!(out[0] == a, "input {t}: syzygy changed");
                    ensure!(
                        s.connecting.left() == &m,
                        "input {t}: connecting sequence does not start at M"
                    );
                    ensure!(
                        is_in_add(&all1, s.connecting.right()).is_some(),
                        "input {t}: X outside C"
                    );
                }
                // Same M; 0 -> Y -> B -> A -> 0.
                Via::Generator => {
                    ensure!(out[out.len() - 1] == m, "input {t}: end term changed");
                    ensure!(
                        s.connecting.right() == &a,
                        "input {t}: connecting sequence does not end at A"
                    );
                    ensure!(
                        is_in_add(&all1, s.connecting.left()).is_some(),
                        "input {t}: Y outside C"
                    );
                }
            }
        }
    }
    Ok(format!(
        "100 sequences, both swaps certified, {preserved} preservation checks applied"
    ))
}

// ---------------------------------------------------------------------------

/// Every A2-module of dimension at most 3 up to isomorphism: sums of the
/// three indecomposables SA, SB, PA.
fn a2_modules_upto3() -> Vec<Module> {
    let mut out = vec![Module::zero(&a2())];
    for a in 0..=3usize {
        for b in 0..=3 - a {
            for c in 0..=(3 - a - b) / 2 {
                if a + b + c == 0 {
                    continue;
                }
                let mut parts = vec![sa(); a];
                parts.extend(vec![sb(); b]);
                parts.extend(vec![pa(); c]);
                out.push(sum(&parts));
            }
        }
    }
    out
}

fn epimorphisms(m: &Module, n: &Module) -> Vec<Morphism> {
    let basis = hom_basis(m, n);
    if basis.len() > 8 {
        return Vec::new();
    }
    (0u32..1 << basis.len())
        .map(|bits| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .fold(Morphism::zero(m, n), |f, (_, b)| f.add(b))
        })
        .filter(Morphism::is_epi)
        .collect()
}

fn gdim_agreement() -> Check {
    let x = add("add(A2)", &[pa(), sb()]);
    let mut mods = a2_modules_upto3();
    let listed = mods.len();
    // The enumeration is complete: every raw module of dim <= 2 is one of them.
    for d in 0..=2 {
        for m in all_modules(&a2(), d)? {
            ensure!(
                mods.iter().any(|n| iso(&m, n)),
                "raw module of dim {d} missing from the list"
            );
            mods.push(m);
        }
    }
    let mut gd = Vec::new();
    for m in &mods {
        let r = gdim_report(&x, m, 3, true);
        let upper = c_dim_report(&x, m, 3).upper.value();
        ensure!(
            r.gdim == Some(r.ext_sup),
            "dim {}: gdim {:?}, ext sup {}",
            m.dim(),
            r.gdim,
            r.ext_sup
        );
        ensure!(
            upper == Some(r.ext_sup),
            "dim {}: X-dim {upper:?}, ext sup {}",
            m.dim(),
            r.ext_sup
        );
        gd.push(r.gdim);
    }
    let gobjs: Vec<Module> = [sb(), pa(), sum(&[sb(), pa()])]
        .into_iter()
        .filter(|g| g_membership(&x, g, 2).is_verified())
        .collect();
    ensure!(gobjs.len() == 3, "projectives not verified Gorenstein");
    let mut sequences = 0;
    for (m2, g2) in mods[..listed].iter().zip(&gd) {
        for m1 in &gobjs {
            for f in epimorphisms(m2, m1) {
                let (m3, _) = kernel(&f);
                if m3.is_zero() {
                    continue;
                }
                let g3 = gdim_report(&x, &m3, 3, true).gdim;
                ensure!(
                    g3.is_some() && g3 == *g2,
                    "ses with end dim {}: gdim {g3:?} against {g2:?}",
                    m1.dim()
                );
                sequences += 1;
            }
        }
    }
    let reg = add("add(REG1)", &[reg1()]);
    let mut l1 = Vec::new();
    for a in 0..=3usize {
        for b in 0..=(3 - a) / 2 {
            if a + b > 0 {
                let mut parts = vec![k1(); a];
                parts.extend(vec![reg1(); b]);
                l1.push(sum(&parts));
            }
        }
    }
    for d in 0..=2 {
        l1.extend(all_modules(&lambda1(), d)?);
    }
    for m in &l1 {
        let g = gdim_report(&reg, m, 3, true).gdim;
        ensure!(g == Some(0), "LAMBDA1 module of dim {}: gdim {g:?}", m.dim());
    }
    Ok(format!(
        "{} A2 modules, {sequences} sequences, {} LAMBDA1 modules",
        mods.len(),
        l1.len()
    ))
}

fn precover() -> Check {
    let x = add("add(A2)", &[pa(), sb()]);
    let r = gdim_report(&x, &sa(), 3, true);
    ensure!(r.gdim == Some(1), "gdim of SA is {:?}", r.gdim);
    let s = gorenstein_sequences(&x, &r).map_err(|e| e.to_string())?;
    let epi = s.approx_ses.epi();
    ensure!(
        epi.is_epi() && epi.target() == &sa(),
        "end map is not an epimorphism onto SA"
    );
    ensure!(
        g_membership(&x, s.approx_ses.middle(), 2).is_verified(),
        "middle term is not Gorenstein"
    );
    let ws = cli::fixture_workspace();
    let mut objects = Vec::new();
    for name in ws.modules.keys() {
        let m = ws.module(name).map_err(|e| e.to_string())?;
        if m.algebra() == &a2() && g_membership(&x, m, 2).is_verified() {
            objects.push(m.clone());
        }
    }
    ensure!(!objects.is_empty(), "no Gorenstein objects in the fixtures");
    let failures = s.precover_failures(&objects);
    ensure!(failures.is_empty(), "Ext^1(G', N) nonzero: {failures:?}");
    for g in &objects {
        ensure!(ext_dims(g, s.approx_ses.left(), 1).dims[1] == 0, "Ext^1 nonzero");
        for b in hom_basis(g, &sa()) {
            ensure!(
                lift(epi, &b).is_some(),
                "a map into SA does not factor through the precover"
            );
        }
    }
    Ok(format!(
        "{} Gorenstein objects, N of dim {}",
        objects.len(),
        s.approx_ses.left().dim()
    ))
}

// ---------------------------------------------------------------------------

fn fixture_file() -> String {
    format!("{}/fixtures/fixtures.json", env!("CARGO_MANIFEST_DIR"))
}

/// Every command of the fixture suite, as argument lists.
fn suite() -> Vec<Vec<String>> {
    let w = fixture_file();
    let lines: &[&str] = &[
        "validate",
        "compute hom REG1 K1",
        "compute ext K1 K1 --upto 3",
        "compute ext SA SB --upto 2",
        "compute approx add(A2) SA --side right",
        "compute approx add(REG1) K1 --side left",
        "compute exactness lambda1_ses --against add(REG1)",
        "compute exactness x_chain",
        "compute membership add(REG1) K1",
        "compute membership add(REG1) K1 --gorenstein 3",
        "construct resolve-first --sub add(REG1) --ses lambda1_ses --len 3 --verify",
        "construct resolve-last --sub add(REG1) --ses lambda1_ses --len 3",
        "construct coresolve-last --sub add(REG1) --ses lambda1_ses --len 3",
        "construct coresolve-first --sub add(REG1) --ses lambda1_ses --len 3",
        "construct resolve-middle --sub add(REG1) --ses split_k1 --len 3",
        "construct collapse --sub add(REG1) --window window_k1_reg1 --center 2 --pivot K1REG1",
        "construct summand --sub add(REG1) --window window_k1_reg1 --center 2 --pivot K1REG1 --idempotent project_k1",
        "construct swap --sub all1 --gen add(REG1) --cogen add(REG1) --seq x_chain --via cogenerator",
        "construct rebuild --sub all1 --gen add(REG1) --cogen add(REG1) --seq x_chain --via generator",
        "construct gorenstein-sequences --sub add(A2) --module SA",
        "report SA add(A2)",
        "report K1 add(REG1) --bound 5",
        "report REG1 add(REG1)",
    ];
    lines
        .iter()
        .map(|l| {
            let mut args = vec!["homres".to_string(), "--workspace".to_string(), w.clone()];
            args.extend(l.split(' ').map(String::from));
            args
        })
        .collect()
}

fn determinism() -> Check {
    let runs: Vec<Vec<cli::Outcome>> = (0..2).map(|_| suite().into_iter().map(cli::run).collect()).collect();
    for (i, (a, b)) in runs[0].iter().zip(&runs[1]).enumerate() {
        ensure!(a == b, "command {i} differs between runs");
    }
    let text = std::fs::read_to_string(fixture_file()).map_err(|e| e.to_string())?;
    let ws = Workspace::parse(&text).map_err(|e| e.to_string())?;
    ensure!(ws.to_json() == text, "fixture file does not round-trip");
    ensure!(
        text == cli::fixture_json(),
        "fixture file differs from the built-in fixtures"
    );
    let again = Workspace::parse(&ws.to_json()).map_err(|e| e.to_string())?;
    ensure!(again.to_json() == text, "second round trip differs");
    Ok(format!(
        "{} commands identical across runs, fixtures round-trip",
        runs[0].len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("Ext^1 against brute-force extension counts", ext_oracle),
        ("split sequence proper but not strong", split_not_strong),
        ("construction shapes and certificates", construction_laws),
        ("collapse of Gorenstein windows", collapse),
        ("summand closure", summand_closure),
        ("syzygy swap", syzygy_swap),
        ("Gorenstein dimension agreement", gdim_agreement),
        ("Gorenstein precover", precover),
        ("determinism and round-trip", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: pass  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
