//! Swapping syzygies between a subcategory and its generator or
//! cogenerator, dimension bounds relative to `add(T)`, and Gorenstein
//! dimension reports for self-orthogonal subcategories.

use std::cell::RefCell;

use crate::approx::{
    ext1, ext_dims, is_hom_from_exact, is_hom_into_exact, is_in_add, reduced_left_approx, reduced_right_approx,
    Subcategory,
};
use crate::duality::Duality;
use crate::error::{Error, Result};
use crate::gorenstein::{g_membership, self_orthogonality, CompleteResolution, Orthogonality, Verdict};
use crate::modcat::{
    cokernel, factor_through_epi, factor_through_mono, image, kernel, pullback, pushout, Module, Morphism, Sequence,
    ShortExactSeq,
};
use crate::resolve::{AugmentedResolution, Direction};

/// Which end a rebuild or swap replaces terms with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Generator,
    Cogenerator,
}

/// A subcategory `C` with a generator and a cogenerator, able to produce
/// `0 -> C' -> P -> M -> 0` and `0 -> M -> I -> C' -> 0` for objects of `C`.
pub trait GenCogen {
    fn name(&self) -> String;
    fn in_c(&self, m: &Module) -> bool;
    fn in_gen(&self, m: &Module) -> bool;
    fn in_cogen(&self, m: &Module) -> bool;
    /// `0 -> C' -> P -> m -> 0` with `P` in the generator and `C'` in `C`.
    fn gen_witness(&self, m: &Module) -> Option<ShortExactSeq>;
    /// `0 -> m -> I -> C' -> 0` with `I` in the cogenerator and `C'` in `C`.
    fn cogen_witness(&self, m: &Module) -> Option<ShortExactSeq>;
    /// Subcategory whose Hom functors are checked for preservation.
    fn probe(&self) -> &Subcategory;
    /// Generator and cogenerator have the same objects.
    fn is_gen_cogen(&self) -> bool;
}

/// `C = add(T)` with generator `add(P)` and cogenerator `add(I)`; witnesses
/// come from approximations.
#[derive(Clone, Debug)]
pub struct GenCogenPair {
    c: Subcategory,
    gen: Subcategory,
    cogen: Subcategory,
    gen_witnesses: Vec<Option<ShortExactSeq>>,
    cogen_witnesses: Vec<Option<ShortExactSeq>>,
}

fn same_objects(a: &Subcategory, b: &Subcategory) -> bool {
    a.generators().iter().all(|g| is_in_add(b, g).is_some()) && b.generators().iter().all(|g| is_in_add(a, g).is_some())
}

/// `0 -> ker -> P -> m -> 0` from a right approximation, if it is epic with
/// kernel in `c`.
fn approx_gen_witness(c: &Subcategory, gen: &Subcategory, m: &Module) -> Option<ShortExactSeq> {
    let ap = reduced_right_approx(gen, m);
    if !ap.is_epic() {
        return None;
    }
    let ses = ShortExactSeq::from_epi(&ap.map);
    is_in_add(c, ses.left()).map(|_| ses)
}

fn approx_cogen_witness(c: &Subcategory, cogen: &Subcategory, m: &Module) -> Option<ShortExactSeq> {
    let ap = reduced_left_approx(cogen, m);
    if !ap.is_monic() {
        return None;
    }
    let ses = ShortExactSeq::from_mono(&ap.map);
    is_in_add(c, ses.right()).map(|_| ses)
}

impl GenCogenPair {
    /// Computes the witness sequences for every generator of `c`; a missing
    /// one is recorded, not an error.
    pub fn new(c: &Subcategory, gen: &Subcategory, cogen: &Subcategory) -> GenCogenPair {
        let gen_witnesses = c.generators().iter().map(|g| approx_gen_witness(c, gen, g)).collect();
        let cogen_witnesses = c
            .generators()
            .iter()
            .map(|g| approx_cogen_witness(c, cogen, g))
            .collect();
        GenCogenPair {
            c: c.clone(),
            gen: gen.clone(),
            cogen: cogen.clone(),
            gen_witnesses,
            cogen_witnesses,
        }
    }

    pub fn c(&self) -> &Subcategory {
        &self.c
    }

    pub fn generator(&self) -> &Subcategory {
        &self.gen
    }

    pub fn cogenerator(&self) -> &Subcategory {
        &self.cogen
    }

    pub fn gen_witnesses(&self) -> &[Option<ShortExactSeq>] {
        &self.gen_witnesses
    }

    pub fn cogen_witnesses(&self) -> &[Option<ShortExactSeq>] {
        &self.cogen_witnesses
    }

    /// Every generator of `C` has both witnesses, and the generator and
    /// cogenerator lie in `C`.
    pub fn is_certified(&self) -> bool {
        self.gen_witnesses.iter().all(Option::is_some)
            && self.cogen_witnesses.iter().all(Option::is_some)
            && self.gen.generators().iter().all(|g| is_in_add(&self.c, g).is_some())
            && self.cogen.generators().iter().all(|g| is_in_add(&self.c, g).is_some())
    }

    /// The pair over the opposite algebra; generator and cogenerator trade
    /// places.
    pub fn dual(&self, d: &Duality) -> GenCogenPair {
        GenCogenPair::new(
            &d.subcategory(&self.c),
            &d.subcategory(&self.cogen),
            &d.subcategory(&self.gen),
        )
    }
}

impl GenCogen for GenCogenPair {
    fn name(&self) -> String {
        self.c.name().to_string()
    }

    fn in_c(&self, m: &Module) -> bool {
        is_in_add(&self.c, m).is_some()
    }

    fn in_gen(&self, m: &Module) -> bool {
        is_in_add(&self.gen, m).is_some()
    }

    fn in_cogen(&self, m: &Module) -> bool {
        is_in_add(&self.cogen, m).is_some()
    }

    fn gen_witness(&self, m: &Module) -> Option<ShortExactSeq> {
        if let Some(i) = self.c.generators().iter().position(|g| g == m) {
            return self.gen_witnesses[i].clone();
        }
        approx_gen_witness(&self.c, &self.gen, m)
    }

    fn cogen_witness(&self, m: &Module) -> Option<ShortExactSeq> {
        if let Some(i) = self.c.generators().iter().position(|g| g == m) {
            return self.cogen_witnesses[i].clone();
        }
        approx_cogen_witness(&self.c, &self.cogen, m)
    }

    fn probe(&self) -> &Subcategory {
        &self.c
    }

    fn is_gen_cogen(&self) -> bool {
        same_objects(&self.gen, &self.cogen)
    }
}

/// `C = G(X)` for a self-orthogonal `X`, with `X` as generator and
/// cogenerator. Membership means a complete resolution verified to `depth`;
/// witnesses are the two halves of that window.
#[derive(Debug)]
pub struct GorensteinPair {
    x: Subcategory,
    depth: usize,
    windows: RefCell<Vec<(Module, Option<CompleteResolution>)>>,
}

impl GorensteinPair {
    pub fn new(x: &Subcategory, depth: usize) -> GorensteinPair {
        GorensteinPair {
            x: x.clone(),
            depth,
            windows: RefCell::new(Vec::new()),
        }
    }

    pub fn window(&self, m: &Module) -> Option<CompleteResolution> {
        if let Some((_, w)) = self.windows.borrow().iter().find(|(n, _)| n == m) {
            return w.clone();
        }
        let w = match g_membership(&self.x, m, self.depth).verdict {
            Verdict::Verified(w) => Some(w),
            _ => None,
        };
        self.windows.borrow_mut().push((m.clone(), w.clone()));
        w
    }
}

impl GenCogen for GorensteinPair {
    fn name(&self) -> String {
        format!("G({})", self.x.name())
    }

    fn in_c(&self, m: &Module) -> bool {
        self.window(m).is_some()
    }

    fn in_gen(&self, m: &Module) -> bool {
        is_in_add(&self.x, m).is_some()
    }

    fn in_cogen(&self, m: &Module) -> bool {
        self.in_gen(m)
    }

    fn gen_witness(&self, m: &Module) -> Option<ShortExactSeq> {
        self.window(m).map(|w| ShortExactSeq::from_epi(w.left_half().map(0)))
    }

    fn cogen_witness(&self, m: &Module) -> Option<ShortExactSeq> {
        self.window(m).map(|w| ShortExactSeq::from_mono(w.right_half().map(0)))
    }

    fn probe(&self) -> &Subcategory {
        &self.x
    }

    fn is_gen_cogen(&self) -> bool {
        true
    }
}

/// Whether a Hom functor kept a sequence exact through a rebuild. Pullbacks
/// along witness epis keep `Hom(D,-)`-exactness only when the witnesses are
/// `Hom(D,-)`-exact themselves, and dually for pushouts, so the claim is
/// conditional on `witnesses`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preservation {
    pub functor: &'static str,
    pub before: bool,
    /// Every witness sequence used was exact under the same functor.
    pub witnesses: bool,
    pub after: bool,
}

impl Preservation {
    pub fn holds(&self) -> bool {
        !self.before || !self.witnesses || self.after
    }

    /// Both hypotheses were met, so `holds` is a real check.
    pub fn applies(&self) -> bool {
        self.before && self.witnesses
    }

    fn measure(
        probe: &Subcategory,
        via: Via,
        before: &Sequence,
        after: &Sequence,
        used: &[ShortExactSeq],
    ) -> Preservation {
        // Exactness of the whole sequence, outer zeros included.
        let check = |s: &Sequence| {
            let s = Sequence::bounded(s.maps().to_vec()).expect("composable");
            match via {
                Via::Generator => is_hom_from_exact(probe, &s).is_ok(),
                Via::Cogenerator => is_hom_into_exact(probe, &s).is_ok(),
            }
        };
        Preservation {
            functor: match via {
                Via::Generator => "Hom(D,-)",
                Via::Cogenerator => "Hom(-,D)",
            },
            before: check(before),
            witnesses: used.iter().all(|w| check(&w.as_sequence())),
            after: check(after),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rebuilt {
    /// `0 -> A -> C_1' -> P_0 -> M -> 0` or `0 -> A -> I_1 -> C_0' -> M ->
    /// 0`, without the outer zeros.
    pub sequence: Sequence,
    pub preservation: Preservation,
}

fn hypothesis(s: impl Into<String>) -> Error {
    Error::Hypothesis(s.into())
}

fn certificate(s: impl Into<String>) -> Error {
    Error::Certificate(s.into())
}

fn check_bounded_exact(maps: &[Morphism], what: &str) -> Result<Sequence> {
    let seq = Sequence::new(maps.to_vec())?;
    Sequence::bounded(maps.to_vec())?
        .is_exact()
        .map_err(|e| certificate(format!("{what} is not exact: {e}")))?;
    Ok(seq)
}

/// Replaces `C_0` by a generator object (or `C_1` by a cogenerator object)
/// in `0 -> A -> C_1 -> C_0 -> M -> 0`, given as the three maps `A -> C_1`,
/// `C_1 -> C_0`, `C_0 -> M`.
pub fn rebuild_four_term(pair: &dyn GenCogen, seq: &Sequence, via: Via) -> Result<Rebuilt> {
    let maps = seq.maps();
    if maps.len() != 3 {
        return Err(hypothesis("expected the maps A -> C_1 -> C_0 -> M"));
    }
    Sequence::bounded(maps.to_vec())?
        .is_exact()
        .map_err(|e| hypothesis(format!("input is not exact: {e}")))?;
    for (name, t) in [("C_1", maps[1].source()), ("C_0", maps[1].target())] {
        if !pair.in_c(t) {
            return Err(hypothesis(format!("{name} is not in {}", pair.name())));
        }
    }
    let mut used = Vec::new();
    let out = match via {
        Via::Generator => rebuild_gen(pair, &maps[0], &maps[1], &maps[2], &mut used)?,
        Via::Cogenerator => rebuild_cogen(pair, &maps[0], &maps[1], &maps[2], &mut used)?,
    };
    let sequence = check_bounded_exact(&out, "rebuilt sequence")?;
    let preservation = Preservation::measure(pair.probe(), via, seq, &sequence, &used);
    Ok(Rebuilt { sequence, preservation })
}

/// Two pullbacks: `N = P_0 ×_{C_0} Im f`, then `C_1' = N ×_{Im f} C_1`.
fn rebuild_gen(
    pair: &dyn GenCogen,
    a: &Morphism,
    f: &Morphism,
    e: &Morphism,
    used: &mut Vec<ShortExactSeq>,
) -> Result<Vec<Morphism>> {
    let w = pair
        .gen_witness(f.target())
        .ok_or_else(|| hypothesis(format!("no generator witness for C_0 in {}", pair.name())))?;
    let q = w.epi();
    used.push(w.clone());
    let img = image(f);
    let pb1 = pullback(q, &img.mono);
    let pb2 = pullback(&pb1.p2, &img.epi);
    let c1 = &pb2.object;
    if !pair.in_c(c1) {
        return Err(certificate(format!("extension C_1' is not in {}", pair.name())));
    }
    let inc = Morphism::vcat(&[pb2.p1.clone(), pb2.p2.clone()]);
    let a2 = factor_through_mono(
        &inc,
        &Morphism::vcat(&[Morphism::zero(a.source(), &pb1.object), a.clone()]),
    )
    .expect("A lies in the pullback");
    Ok(vec![a2, pb1.p1.after(&pb2.p1), e.after(q)])
}

/// Two pushouts: `N = I_1 ⊔_{C_1} Im f`, then `C_0' = N ⊔_{Im f} C_0`.
fn rebuild_cogen(
    pair: &dyn GenCogen,
    a: &Morphism,
    f: &Morphism,
    e: &Morphism,
    used: &mut Vec<ShortExactSeq>,
) -> Result<Vec<Morphism>> {
    let w = pair
        .cogen_witness(f.source())
        .ok_or_else(|| hypothesis(format!("no cogenerator witness for C_1 in {}", pair.name())))?;
    let j = w.mono();
    used.push(w.clone());
    let img = image(f);
    let po1 = pushout(&img.epi, j);
    let po2 = pushout(&po1.q1, &img.mono);
    let c0 = &po2.object;
    if !pair.in_c(c0) {
        return Err(certificate(format!("extension C_0' is not in {}", pair.name())));
    }
    let proj = Morphism::hcat(&[po2.q1.clone(), po2.q2.clone()]);
    let e2 = factor_through_epi(
        &proj,
        &Morphism::hcat(&[Morphism::zero(&po1.object, e.target()), e.clone()]),
    )
    .expect("M is a quotient of the pushout");
    Ok(vec![j.after(a), po2.q1.after(&po1.q2), e2])
}

#[derive(Clone, Debug)]
pub struct Swap {
    /// `0 -> A -> I_{n-1} -> ... -> I_0 -> N -> 0` (cogenerator) or
    /// `0 -> B -> P_{n-1} -> ... -> P_0 -> M -> 0` (generator).
    pub sequence: Sequence,
    /// `0 -> M -> N -> X -> 0` or `0 -> Y -> B -> A -> 0`, with `X`, `Y` in
    /// `C`.
    pub connecting: ShortExactSeq,
    pub preservation: Preservation,
}

/// Replaces the middle terms of `0 -> A -> C_{n-1} -> ... -> C_0 -> M -> 0`
/// (the `n + 1` maps without outer zeros) by cogenerator terms, changing
/// `M`, or by generator terms, changing `A`.
pub fn swap_syzygy(pair: &dyn GenCogen, seq: &Sequence, via: Via) -> Result<Swap> {
    let maps = seq.maps();
    if maps.len() < 2 {
        return Err(hypothesis("need at least one middle term"));
    }
    Sequence::bounded(maps.to_vec())?
        .is_exact()
        .map_err(|e| hypothesis(format!("input is not exact: {e}")))?;
    for (i, f) in maps[1..].iter().enumerate() {
        if !pair.in_c(f.source()) {
            return Err(hypothesis(format!("middle term {i} is not in {}", pair.name())));
        }
    }
    let mut used = Vec::new();
    let (out, connecting) = match via {
        Via::Cogenerator => swap_cogen(pair, maps, &mut used)?,
        Via::Generator => swap_gen(pair, maps, &mut used)?,
    };
    let sequence = check_bounded_exact(&out, "swapped sequence")?;
    for f in &out[1..] {
        let ok = match via {
            Via::Cogenerator => pair.in_cogen(f.source()),
            Via::Generator => pair.in_gen(f.source()),
        };
        if !ok {
            return Err(certificate("a new middle term is outside the (co)generator"));
        }
    }
    let outer = match via {
        Via::Cogenerator => connecting.right(),
        Via::Generator => connecting.left(),
    };
    if !pair.in_c(outer) {
        return Err(certificate(format!("connecting term is not in {}", pair.name())));
    }
    let preservation = Preservation::measure(pair.probe(), via, seq, &sequence, &used);
    Ok(Swap {
        sequence,
        connecting,
        preservation,
    })
}

fn swap_cogen(
    pair: &dyn GenCogen,
    maps: &[Morphism],
    used: &mut Vec<ShortExactSeq>,
) -> Result<(Vec<Morphism>, ShortExactSeq)> {
    if maps.len() == 2 {
        let (a, e) = (&maps[0], &maps[1]);
        let w = pair
            .cogen_witness(e.source())
            .ok_or_else(|| hypothesis(format!("no cogenerator witness for C_0 in {}", pair.name())))?;
        used.push(w.clone());
        let po = pushout(e, w.mono());
        let (_, proj) = cokernel(&po.q1);
        let ses = ShortExactSeq::new(po.q1.clone(), proj)?;
        return Ok((vec![w.mono().after(a), po.q2.clone()], ses));
    }
    // 0 -> A -> C_{n-1} -> C_{n-2} -> K -> 0 rebuilt, then recurse on its
    // image A'.
    let (_, pk) = cokernel(&maps[1]);
    let rb = rebuild_cogen(pair, &maps[0], &maps[1], &pk, used)?;
    let img = image(&rb[1]);
    let kk = factor_through_epi(&pk, &maps[2]).expect("C_{n-2} -> C_{n-3} kills the image");
    let mut next = vec![img.mono.clone(), kk.after(&rb[2])];
    next.extend(maps[3..].iter().cloned());
    let (rest, ses) = swap_cogen(pair, &next, used)?;
    let mut out = vec![rb[0].clone(), rest[0].after(&img.epi)];
    out.extend(rest[1..].iter().cloned());
    Ok((out, ses))
}

fn swap_gen(
    pair: &dyn GenCogen,
    maps: &[Morphism],
    used: &mut Vec<ShortExactSeq>,
) -> Result<(Vec<Morphism>, ShortExactSeq)> {
    let n = maps.len() - 1;
    if n == 1 {
        let (a, e) = (&maps[0], &maps[1]);
        let w = pair
            .gen_witness(a.target())
            .ok_or_else(|| hypothesis(format!("no generator witness for C_0 in {}", pair.name())))?;
        used.push(w.clone());
        let pb = pullback(w.epi(), a);
        let (_, inc) = kernel(&pb.p2);
        let ses = ShortExactSeq::new(inc, pb.p2.clone())?;
        return Ok((vec![pb.p1.clone(), e.after(w.epi())], ses));
    }
    // 0 -> K -> C_1 -> C_0 -> M -> 0 rebuilt, then recurse on the image of
    // C_1' -> P_0.
    let (_, kinc) = kernel(&maps[n - 1]);
    let rb = rebuild_gen(pair, &kinc, &maps[n - 1], &maps[n], used)?;
    let img = image(&rb[1]);
    let k2 = factor_through_mono(&kinc, &maps[n - 2]).expect("C_2 -> C_1 lands in the kernel");
    let mut next: Vec<Morphism> = maps[..n - 2].to_vec();
    next.push(rb[0].after(&k2));
    next.push(img.epi.clone());
    let (rest, ses) = swap_gen(pair, &next, used)?;
    let last = rest.len() - 1;
    let mut out = rest[..last].to_vec();
    out.push(img.mono.after(&rest[last]));
    out.push(rb[2].clone());
    Ok((out, ses))
}

/// An exact `0 -> X_n -> ... -> X_0 -> M -> 0` with `X_t` in `C` and every
/// other term in the generator-cogenerator, from a finite `C`-resolution of
/// length `n` (complete, `n + 1` terms).
pub fn mixed_resolution(pair: &dyn GenCogen, res: &AugmentedResolution, t: usize) -> Result<AugmentedResolution> {
    if res.direction() != Direction::Resolution || res.is_truncated() || res.is_empty() {
        return Err(hypothesis("need a finite resolution"));
    }
    let n = res.len() - 1;
    if t > n {
        return Err(hypothesis(format!("position {t} is outside 0..={n}")));
    }
    if !pair.is_gen_cogen() {
        return Err(hypothesis("generator and cogenerator differ"));
    }
    res.as_sequence()
        .is_exact()
        .map_err(|e| hypothesis(format!("input is not exact: {e}")))?;
    for (i, c) in res.terms().iter().enumerate() {
        if !pair.in_c(c) {
            return Err(hypothesis(format!("term {i} is not in {}", pair.name())));
        }
    }
    let maps = mixed(pair, res.maps().to_vec(), t)?;
    let out = AugmentedResolution::new(Direction::Resolution, res.target(), maps, false)?;
    out.as_sequence()
        .is_exact()
        .map_err(|e| certificate(format!("output is not exact: {e}")))?;
    for (i, x) in out.terms().iter().enumerate() {
        let ok = if i == t { pair.in_c(x) } else { pair.in_gen(x) };
        if !ok {
            return Err(certificate(format!("term {i} has the wrong membership")));
        }
    }
    Ok(out)
}

/// `maps[0]: C_0 -> M`, `maps[i]: C_i -> C_{i-1}`.
fn mixed(pair: &dyn GenCogen, maps: Vec<Morphism>, t: usize) -> Result<Vec<Morphism>> {
    let n = maps.len() - 1;
    if n == 0 {
        return Ok(maps);
    }
    if n == 1 {
        let zero = Morphism::zero(&Module::zero(maps[1].source().algebra()), maps[1].source());
        let rb = if t == 1 {
            rebuild_gen(pair, &zero, &maps[1], &maps[0], &mut Vec::new())?
        } else {
            rebuild_cogen(pair, &zero, &maps[1], &maps[0], &mut Vec::new())?
        };
        return Ok(vec![rb[2].clone(), rb[1].clone()]);
    }
    if t >= 1 {
        // 0 -> A -> C_1 -> C_0 -> M -> 0 with A = Im(C_2 -> C_1); X_0 from
        // the generator, then resolve N = Im(C_1' -> X_0) one shorter.
        let img = image(&maps[2]);
        let rb = rebuild_gen(pair, &img.mono, &maps[1], &maps[0], &mut Vec::new())?;
        let gi = image(&rb[1]);
        let mut next = vec![gi.epi.clone(), rb[0].after(&img.epi)];
        next.extend(maps[3..].iter().cloned());
        let rec = mixed(pair, next, t - 1)?;
        let mut out = vec![rb[2].clone(), gi.mono.after(&rec[0])];
        out.extend(rec[1..].iter().cloned());
        Ok(out)
    } else {
        // Resolve B = Im(C_1 -> C_0) with its `C`-term at degree 0, then
        // rebuild 0 -> K -> C_1' -> C_0 -> M -> 0 from the cogenerator.
        let bi = image(&maps[1]);
        let mut bres = vec![bi.epi.clone()];
        bres.extend(maps[2..].iter().cloned());
        let rec = mixed(pair, bres, 0)?;
        let ki = image(&rec[1]);
        let rb = rebuild_cogen(pair, &ki.mono, &bi.mono.after(&rec[0]), &maps[0], &mut Vec::new())?;
        let mut out = vec![rb[2].clone(), rb[1].clone(), rb[0].after(&ki.epi)];
        out.extend(rec[2..].iter().cloned());
        Ok(out)
    }
}

/// The dual of [`mixed_resolution`] for a finite coresolution
/// `0 -> M -> X^0 -> ... -> X^n -> 0`.
pub fn mixed_coresolution(pair: &GenCogenPair, cores: &AugmentedResolution, t: usize) -> Result<AugmentedResolution> {
    if cores.direction() != Direction::Coresolution {
        return Err(hypothesis("need a coresolution"));
    }
    let d = Duality::new(pair.c().algebra());
    let out = mixed_resolution(&pair.dual(&d), &cores.dual(&d), t)?;
    Ok(out.dual(&d.flip()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Dimension,
    Codimension,
}

#[derive(Clone, Debug)]
pub enum Upper {
    /// A resolution (coresolution) of this length with every term in `C`.
    Finite {
        value: usize,
        witness: AugmentedResolution,
    },
    /// No epimorphism from (monomorphism into) `add(T)`.
    Infinite,
    /// The approximation of the syzygy at `step` is not epic (monic).
    Obstructed {
        step: usize,
    },
    UnknownBeyond(usize),
}

impl Upper {
    pub fn value(&self) -> Option<usize> {
        match self {
            Upper::Finite { value, .. } => Some(*value),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lower {
    pub value: usize,
    /// Degree and dimension of the nonvanishing `Ext` behind the bound.
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct DimensionReport {
    pub measure: Measure,
    pub module: Module,
    pub subcategory: String,
    pub bound: usize,
    /// Present only for a self-orthogonal subcategory.
    pub lower: Option<Lower>,
    pub upper: Upper,
}

impl DimensionReport {
    /// Lower and upper bounds differ or one of them is missing.
    pub fn has_gap(&self) -> bool {
        match (self.lower, self.upper.value()) {
            (Some(l), Some(u)) => l.value != u,
            _ => true,
        }
    }
}

/// Bounds on the `C`-dimension: the upper bound from the proper resolution
/// stopping at a syzygy in `add(T)`, the lower bound from the top nonzero
/// `Ext^i(M, T)` when `C` is self-orthogonal.
pub fn c_dim_report(c: &Subcategory, m: &Module, bound: usize) -> DimensionReport {
    let lower = self_orthogonality(c, bound.max(1))
        .is_certified()
        .then(|| ext_lower(m, c.sum(), bound));
    DimensionReport {
        measure: Measure::Dimension,
        module: m.clone(),
        subcategory: c.name().to_string(),
        bound,
        lower,
        upper: syzygy_upper(m, bound, |k| is_in_add(c, k).is_some(), |k| reduced_right_approx(c, k)),
    }
}

fn ext_lower(m: &Module, t: &Module, bound: usize) -> Lower {
    let dims = ext_dims(m, t, bound).dims;
    match (1..=bound).rev().find(|&i| dims[i] != 0) {
        Some(i) => Lower {
            value: i,
            witness: Some((i, dims[i])),
        },
        None => Lower {
            value: 0,
            witness: None,
        },
    }
}

/// Walks the syzygies of `m` under `approx` until one passes `done`.
fn syzygy_upper(
    m: &Module,
    bound: usize,
    done: impl Fn(&Module) -> bool,
    approx: impl Fn(&Module) -> crate::approx::Approximation,
) -> Upper {
    let mut maps: Vec<Morphism> = Vec::new();
    let mut k = m.clone();
    let mut inc: Option<Morphism> = None;
    for step in 0..=bound {
        if done(&k) {
            maps.push(inc.unwrap_or_else(|| Morphism::identity(&k)));
            let witness = AugmentedResolution::new(Direction::Resolution, m, maps, false).expect("composable");
            return Upper::Finite { value: step, witness };
        }
        if step == bound {
            break;
        }
        let ap = approx(&k);
        if !ap.is_epic() {
            return if step == 0 {
                Upper::Infinite
            } else {
                Upper::Obstructed { step }
            };
        }
        maps.push(match &inc {
            None => ap.map.clone(),
            Some(i) => i.after(&ap.map),
        });
        let (kk, kinc) = kernel(&ap.map);
        k = kk;
        inc = Some(kinc);
    }
    Upper::UnknownBeyond(bound)
}

/// The codimension report, computed on the dual side.
pub fn codim_report(c: &Subcategory, m: &Module, bound: usize) -> DimensionReport {
    let d = Duality::new(c.algebra());
    let dual = c_dim_report(&d.subcategory(c), &d.module(m), bound);
    let back = d.flip();
    DimensionReport {
        measure: Measure::Codimension,
        module: m.clone(),
        subcategory: c.name().to_string(),
        bound,
        lower: dual.lower,
        upper: match dual.upper {
            Upper::Finite { value, witness } => Upper::Finite {
                value,
                witness: witness.dual(&back),
            },
            other => other,
        },
    }
}

/// Gorenstein dimension of `m` relative to a self-orthogonal `x`.
#[derive(Clone, Debug)]
pub struct GDimReport {
    pub module: Module,
    pub bound: usize,
    pub orthogonality: Orthogonality,
    /// Finiteness of the dimension cannot be checked; the caller asserts it.
    pub finiteness_asserted: bool,
    /// Largest `n <= bound` with `Ext^n(M, T) != 0` (`Ext^0` is `Hom`).
    pub ext_sup: usize,
    /// `0 -> G_k -> X_{k-1} -> ... -> X_0 -> M -> 0` with `G_k` Gorenstein.
    pub left_witness: Option<AugmentedResolution>,
    /// `0 -> X_k -> ... -> X_1 -> G_0 -> M -> 0` with `G_0` Gorenstein.
    pub right_witness: Option<AugmentedResolution>,
    /// Set when all three values agree.
    pub gdim: Option<usize>,
    pub disagreement: Option<String>,
}

impl GDimReport {
    pub fn left_value(&self) -> Option<usize> {
        self.left_witness.as_ref().map(|w| w.len() - 1)
    }

    pub fn right_value(&self) -> Option<usize> {
        self.right_witness.as_ref().map(|w| w.len() - 1)
    }
}

/// Compares the `Ext` supremum with the lengths of the two witness shapes:
/// the first syzygy verified Gorenstein, and the same resolution rebuilt to
/// put the Gorenstein term at degree 0.
pub fn gdim_report(x: &Subcategory, m: &Module, bound: usize, finiteness_asserted: bool) -> GDimReport {
    let orthogonality = self_orthogonality(x, bound.max(1));
    let dims = ext_dims(m, x.sum(), bound).dims;
    let ext_sup = (0..=bound).rev().find(|&i| dims[i] != 0).unwrap_or(0);
    let pair = GorensteinPair::new(x, bound.max(2));
    let left_witness = match syzygy_upper(m, bound, |k| pair.in_c(k), |k| reduced_right_approx(x, k)) {
        Upper::Finite { witness, .. } => Some(witness),
        _ => None,
    };
    let right_witness = left_witness.as_ref().and_then(|w| mixed_resolution(&pair, w, 0).ok());
    let mut report = GDimReport {
        module: m.clone(),
        bound,
        orthogonality,
        finiteness_asserted,
        ext_sup,
        left_witness,
        right_witness,
        gdim: None,
        disagreement: None,
    };
    if !report.orthogonality.is_certified() {
        report.disagreement = Some("subcategory is not self-orthogonal".into());
        return report;
    }
    match (report.left_value(), report.right_value()) {
        (Some(l), Some(r)) if l == ext_sup && r == ext_sup => report.gdim = Some(ext_sup),
        (l, r) => {
            report.disagreement = Some(format!(
                "ext sup {ext_sup}, left witness {}, right witness {}",
                l.map_or("none".into(), |v| v.to_string()),
                r.map_or("none".into(), |v| v.to_string())
            ))
        }
    }
    report
}

/// `0 -> N -> G -> M -> 0` with `G` Gorenstein and `N` of smaller
/// `X`-dimension, and `0 -> M -> N' -> G' -> 0` with `G'` Gorenstein.
#[derive(Clone, Debug)]
pub struct GorensteinSequences {
    pub approx_ses: ShortExactSeq,
    pub embed_ses: ShortExactSeq,
    /// Resolution of `N` by `X`, from the right witness.
    pub n_resolution: AugmentedResolution,
}

impl GorensteinSequences {
    /// `(index, dim Ext^1(G', N))` for each object with nonzero `Ext^1`;
    /// empty means `G -> M` is a precover relative to those objects.
    pub fn precover_failures(&self, objects: &[Module]) -> Vec<(usize, usize)> {
        objects
            .iter()
            .enumerate()
            .map(|(i, g)| (i, ext1(g, self.approx_ses.left())))
            .filter(|&(_, d)| d != 0)
            .collect()
    }
}

pub fn gorenstein_sequences(x: &Subcategory, report: &GDimReport) -> Result<GorensteinSequences> {
    let (Some(_), Some(left), Some(right)) = (report.gdim, &report.left_witness, &report.right_witness) else {
        return Err(hypothesis("needs a report with an agreed finite dimension"));
    };
    let pair = GorensteinPair::new(x, report.bound.max(2));
    let approx_ses = ShortExactSeq::from_epi(right.map(0));
    let n_resolution = if right.len() == 1 {
        AugmentedResolution::identity(Direction::Resolution, approx_ses.left())
    } else {
        let inc = approx_ses.mono();
        let mut maps = vec![factor_through_mono(inc, right.map(1)).expect("X_1 lands in the kernel")];
        maps.extend(right.maps()[2..].iter().cloned());
        AugmentedResolution::new(Direction::Resolution, approx_ses.left(), maps, false)?
    };
    // 0 -> 0 -> G_k -> X_{k-1} -> ... -> X_0 -> M -> 0, swapped onto the
    // cogenerator.
    let mut chain: Vec<Morphism> = left.maps().iter().rev().cloned().collect();
    let far = chain[0].source().clone();
    chain.insert(0, Morphism::zero(&Module::zero(x.algebra()), &far));
    let swap = swap_syzygy(&pair, &Sequence::new(chain)?, Via::Cogenerator)?;
    Ok(GorensteinSequences {
        approx_ses,
        embed_ses: swap.connecting,
        n_resolution,
    })
}
