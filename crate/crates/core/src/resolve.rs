//! Augmented resolutions and coresolutions, their verification, the
//! horseshoe fill, and the four constructions that build a (co)resolution of
//! one end of a short exact sequence from (co)resolutions of the other two
//! terms, together with their iterated forms along long exact sequences.
//!
//! Lengths count terms. A resolution with `len` terms is a finite window
//! `C_{len-1} -> ... -> C_0 -> M -> 0`; when it is not marked truncated the
//! sequence is also exact at `C_{len-1}`, i.e. every later term is zero.

use serde::{Deserialize, Serialize};

use crate::approx::{
    ext1, is_hom_from_exact, is_hom_into_exact, is_in_add, is_strongly_exact, reduced_left_approx,
    reduced_right_approx, Side, Subcategory,
};
use crate::duality::Duality;
use crate::error::{Error, Result};
use crate::modcat::{
    cokernel, direct_sum, extend, factor_through_epi, factor_through_mono, find_isomorphism, image, kernel, lift,
    pullback, Module, Morphism, Sequence, ShortExactSeq,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `... -> C_1 -> C_0 -> M -> 0`
    Resolution,
    /// `0 -> M -> C^0 -> C^1 -> ...`
    Coresolution,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Resolution => Direction::Coresolution,
            Direction::Coresolution => Direction::Resolution,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tri {
    #[default]
    Unchecked,
    Yes,
    No,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unchecked,
        }
    }
}

/// Verification state of a (co)resolution relative to a subcategory.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub exact: Tri,
    /// Every term lies in the subcategory.
    pub in_c: Tri,
    pub hom_from_c: Tri,
    pub hom_into_c: Tri,
    /// Strongly proper (resolutions) or strongly coproper (coresolutions).
    pub strong: Tri,
}

impl Flags {
    /// Proper for resolutions, coproper for coresolutions.
    pub fn proper(&self, direction: Direction) -> Tri {
        let side = match direction {
            Direction::Resolution => self.hom_from_c,
            Direction::Coresolution => self.hom_into_c,
        };
        self.in_c.and(side)
    }

    fn swapped(self) -> Flags {
        Flags {
            hom_from_c: self.hom_into_c,
            hom_into_c: self.hom_from_c,
            ..self
        }
    }

    /// Flags that are `Yes` here but not in `actual`.
    pub fn unmet_by(&self, actual: &Flags) -> Vec<&'static str> {
        let pairs = [
            ("exact", self.exact, actual.exact),
            ("in-c", self.in_c, actual.in_c),
            ("hom-from-c", self.hom_from_c, actual.hom_from_c),
            ("hom-into-c", self.hom_into_c, actual.hom_into_c),
            ("strong", self.strong, actual.strong),
        ];
        pairs
            .iter()
            .filter(|(_, want, got)| want.is_yes() && !got.is_yes())
            .map(|(name, _, _)| *name)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct AugmentedResolution {
    direction: Direction,
    target: Module,
    maps: Vec<Morphism>,
    truncated: bool,
    flags: Flags,
}

impl AugmentedResolution {
    /// For a resolution `maps[0]: C_0 -> M` and `maps[i]: C_i -> C_{i-1}`;
    /// for a coresolution `maps[0]: M -> C^0` and `maps[i]: C^{i-1} -> C^i`.
    pub fn new(
        direction: Direction,
        target: &Module,
        maps: Vec<Morphism>,
        truncated: bool,
    ) -> Result<AugmentedResolution> {
        let mut prev = target.clone();
        for (i, f) in maps.iter().enumerate() {
            let (end, next) = match direction {
                Direction::Resolution => (f.target(), f.source()),
                Direction::Coresolution => (f.source(), f.target()),
            };
            if *end != prev {
                return Err(crate::Violation::NotComposable(i.saturating_sub(1), i).into());
            }
            prev = next.clone();
        }
        Ok(AugmentedResolution {
            direction,
            target: target.clone(),
            maps,
            truncated,
            flags: Flags::default(),
        })
    }

    /// `M` resolved by itself: `0 -> M -> M -> 0`.
    pub fn identity(direction: Direction, m: &Module) -> AugmentedResolution {
        AugmentedResolution::new(direction, m, vec![Morphism::identity(m)], false).expect("identity")
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn maps(&self) -> &[Morphism] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &Morphism {
        &self.maps[i]
    }

    pub fn terms(&self) -> Vec<Module> {
        (0..self.len()).map(|i| self.term(i).clone()).collect()
    }

    pub fn term(&self, i: usize) -> &Module {
        match self.direction {
            Direction::Resolution => self.maps[i].source(),
            Direction::Coresolution => self.maps[i].target(),
        }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    /// Term `i`, or the zero module past the end of a complete window.
    pub fn term_or_zero(&self, i: usize) -> Option<Module> {
        if i < self.len() {
            Some(self.term(i).clone())
        } else if self.truncated {
            None
        } else {
            Some(Module::zero(self.target.algebra()))
        }
    }

    /// Map `i`, or a zero map past the end of a complete window.
    pub fn map_or_zero(&self, i: usize) -> Option<Morphism> {
        if i < self.len() {
            return Some(self.maps[i].clone());
        }
        let z = self.term_or_zero(i)?;
        let prev = if i == 0 {
            self.target.clone()
        } else {
            self.term_or_zero(i - 1)?
        };
        Some(match self.direction {
            Direction::Resolution => Morphism::zero(&z, &prev),
            Direction::Coresolution => Morphism::zero(&prev, &z),
        })
    }

    /// The whole window as a sequence, left to right, with `0` at the
    /// target's end and at the far end when the window is complete.
    pub fn as_sequence(&self) -> Sequence {
        let z = Module::zero(self.target.algebra());
        let mut maps = Vec::with_capacity(self.len() + 2);
        match self.direction {
            Direction::Resolution => {
                let far = if self.is_empty() {
                    &self.target
                } else {
                    self.term(self.len() - 1)
                };
                if !self.truncated {
                    maps.push(Morphism::zero(&z, far));
                }
                maps.extend(self.maps.iter().rev().cloned());
                maps.push(Morphism::zero(&self.target, &z));
            }
            Direction::Coresolution => {
                maps.push(Morphism::zero(&z, &self.target));
                maps.extend(self.maps.iter().cloned());
                let far = if self.is_empty() {
                    &self.target
                } else {
                    self.term(self.len() - 1)
                };
                if !self.truncated {
                    maps.push(Morphism::zero(far, &z));
                }
            }
        }
        Sequence::new(maps).expect("composable by construction")
    }

    /// Checks every flag against `c` from scratch.
    pub fn verify(&mut self, c: &Subcategory) -> Flags {
        let seq = self.as_sequence();
        let exact = seq.is_exact().is_ok();
        let in_c = self.terms().iter().all(|t| is_in_add(c, t).is_some());
        let (hom_from, hom_into) = if exact {
            (is_hom_from_exact(c, &seq).is_ok(), is_hom_into_exact(c, &seq).is_ok())
        } else {
            (false, false)
        };
        let side = match self.direction {
            Direction::Resolution => Side::FromC,
            Direction::Coresolution => Side::IntoC,
        };
        let strong = exact && in_c && is_strongly_exact(c, self, side).is_ok();
        self.flags = Flags {
            exact: Tri::from_bool(exact),
            in_c: Tri::from_bool(in_c),
            hom_from_c: Tri::from_bool(hom_from),
            hom_into_c: Tri::from_bool(hom_into),
            strong: Tri::from_bool(strong),
        };
        self.flags
    }

    pub fn verified(mut self, c: &Subcategory) -> AugmentedResolution {
        self.verify(c);
        self
    }

    /// `D` applied termwise: a resolution of `M` becomes a coresolution of
    /// `DM` and vice versa. Flags carry over with the two Hom sides swapped,
    /// read against the dual subcategory.
    pub fn dual(&self, d: &Duality) -> AugmentedResolution {
        AugmentedResolution {
            direction: self.direction.flip(),
            target: d.module(&self.target),
            maps: self.maps.iter().map(|f| d.morphism(f)).collect(),
            truncated: self.truncated,
            flags: self.flags.swapped(),
        }
    }

    /// The first `len` terms; marked truncated unless nothing was dropped.
    pub fn window(&self, len: usize) -> AugmentedResolution {
        if len >= self.len() {
            return self.clone();
        }
        let dropped_zero = self.maps[len..].iter().all(|f| match self.direction {
            Direction::Resolution => f.source().is_zero(),
            Direction::Coresolution => f.target().is_zero(),
        });
        AugmentedResolution {
            direction: self.direction,
            target: self.target.clone(),
            maps: self.maps[..len].to_vec(),
            truncated: self.truncated || !dropped_zero,
            flags: Flags::default(),
        }
    }

    /// Alternating sum of dimensions including the target, with sign `+` on
    /// the target. Zero for every exact complete window.
    pub fn euler_characteristic(&self) -> i64 {
        let mut total = self.target.dim() as i64;
        for (i, t) in self.terms().iter().enumerate() {
            let s = if i % 2 == 0 { -1 } else { 1 };
            total += s * t.dim() as i64;
        }
        total
    }
}

/// Termwise direct sum. Complete windows are padded with zeros; the sum is
/// as long as the shortest truncated part, or the longest part if none is
/// truncated.
pub fn direct_sum_resolutions(parts: &[AugmentedResolution]) -> Result<AugmentedResolution> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Malformed("no resolutions to add".into()))?;
    let direction = first.direction();
    require(parts.iter().all(|r| r.direction() == direction), "mixed directions")?;
    let truncated = parts.iter().any(|r| r.is_truncated());
    let len = if truncated {
        parts
            .iter()
            .filter(|r| r.is_truncated())
            .map(|r| r.len())
            .min()
            .unwrap_or(0)
    } else {
        parts.iter().map(|r| r.len()).max().unwrap_or(0)
    };
    let target = sum_of(&parts.iter().map(|r| r.target().clone()).collect::<Vec<_>>());
    let maps = (0..len)
        .map(|i| {
            Morphism::diag(
                &parts
                    .iter()
                    .map(|r| r.map_or_zero(i).expect("within every window"))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    AugmentedResolution::new(direction, &target, maps, truncated)
}

fn zero_pad(res: &mut Vec<Morphism>, direction: Direction, prev: &Module) -> Module {
    let z = Module::zero(prev.algebra());
    res.push(match direction {
        Direction::Resolution => Morphism::zero(&z, prev),
        Direction::Coresolution => Morphism::zero(prev, &z),
    });
    z
}

/// `n` steps of right approximations on successive kernels. A kernel that
/// already lies in `add(T)` covers itself; a zero kernel is padded with
/// zero terms.
pub fn build_proper_resolution(c: &Subcategory, m: &Module, n: usize) -> Result<AugmentedResolution> {
    if m.algebra() != c.algebra() {
        return Err(crate::Violation::AlgebraMismatch.into());
    }
    let mut maps = Vec::with_capacity(n);
    let mut k = m.clone();
    let mut inc = Morphism::identity(m);
    let mut prev = m.clone();
    for step in 0..n {
        if k.is_zero() {
            prev = zero_pad(&mut maps, Direction::Resolution, &prev);
            continue;
        }
        let cover = if is_in_add(c, &k).is_some() {
            Morphism::identity(&k)
        } else {
            let a = reduced_right_approx(c, &k);
            if !a.is_epic() {
                return Err(Error::Obstruction { step, expected: "epic" });
            }
            a.map
        };
        maps.push(inc.after(&cover));
        prev = cover.source().clone();
        let (next, next_inc) = kernel(&cover);
        k = next;
        inc = next_inc;
    }
    AugmentedResolution::new(Direction::Resolution, m, maps, !k.is_zero())
}

/// Dual of [`build_proper_resolution`]: left approximations on successive
/// cokernels.
pub fn build_coproper_coresolution(c: &Subcategory, m: &Module, n: usize) -> Result<AugmentedResolution> {
    if m.algebra() != c.algebra() {
        return Err(crate::Violation::AlgebraMismatch.into());
    }
    let mut maps = Vec::with_capacity(n);
    let mut k = m.clone();
    let mut proj = Morphism::identity(m);
    let mut prev = m.clone();
    for step in 0..n {
        if k.is_zero() {
            prev = zero_pad(&mut maps, Direction::Coresolution, &prev);
            continue;
        }
        let env = if is_in_add(c, &k).is_some() {
            Morphism::identity(&k)
        } else {
            let a = reduced_left_approx(c, &k);
            if !a.is_monic() {
                return Err(Error::Obstruction {
                    step,
                    expected: "monic",
                });
            }
            a.map
        };
        maps.push(env.after(&proj));
        prev = env.target().clone();
        let (next, next_proj) = cokernel(&env);
        k = next;
        proj = next_proj;
    }
    AugmentedResolution::new(Direction::Coresolution, m, maps, !k.is_zero())
}

/// Which half of the horseshoe fill is requested.
#[derive(Clone, Debug)]
pub enum Horseshoe {
    /// `α: C -> A`, `α'': C'' -> A''` and optionally `h: C'' -> A'` with
    /// `g h = α''`.
    Cover {
        alpha: Morphism,
        alpha2: Morphism,
        lift: Option<Morphism>,
    },
    /// `β: A -> D`, `β'': A'' -> D''` and optionally `k: A' -> D` with
    /// `k f = β`.
    Envelope {
        beta: Morphism,
        beta2: Morphism,
        extension: Option<Morphism>,
    },
}

/// The filled middle map and the split row next to the given sequence.
#[derive(Clone, Debug)]
pub struct HorseshoeFill {
    /// `α' = (fα, h): C ⊕ C'' -> A'` or `β' = (k; β'' g): A' -> D ⊕ D''`.
    pub middle: Morphism,
    /// `h` or `k`.
    pub connecting: Morphism,
    pub split: ShortExactSeq,
}

pub fn horseshoe_fill(ses: &ShortExactSeq, data: Horseshoe) -> Result<HorseshoeFill> {
    let (f, g) = (ses.mono(), ses.epi());
    match data {
        Horseshoe::Cover { alpha, alpha2, lift: h } => {
            if alpha.target() != ses.left() || alpha2.target() != ses.right() {
                return Err(Error::Hypothesis("α and α'' must land on the end terms".into()));
            }
            let h = match h {
                Some(h) => {
                    if h.source() != alpha2.source()
                        || h.target() != ses.middle()
                        || g.after(&h).matrix() != alpha2.matrix()
                    {
                        return Err(Error::Hypothesis("g ∘ h differs from α''".into()));
                    }
                    h
                }
                None => lift(g, &alpha2).ok_or_else(|| Error::Hypothesis("α'' does not lift along g".into()))?,
            };
            let middle = Morphism::hcat(&[f.after(&alpha), h.clone()]);
            let split = ShortExactSeq::split(alpha.source(), alpha2.source());
            if middle.after(split.mono()) != f.after(&alpha) || g.after(&middle) != alpha2.after(split.epi()) {
                return Err(Error::Certificate("horseshoe squares do not commute".into()));
            }
            Ok(HorseshoeFill {
                middle,
                connecting: h,
                split,
            })
        }
        Horseshoe::Envelope {
            beta,
            beta2,
            extension: k,
        } => {
            if beta.source() != ses.left() || beta2.source() != ses.right() {
                return Err(Error::Hypothesis("β and β'' must start at the end terms".into()));
            }
            let k = match k {
                Some(k) => {
                    if k.source() != ses.middle() || k.target() != beta.target() || k.after(f).matrix() != beta.matrix()
                    {
                        return Err(Error::Hypothesis("k ∘ f differs from β".into()));
                    }
                    k
                }
                None => extend(f, &beta).ok_or_else(|| Error::Hypothesis("β does not extend along f".into()))?,
            };
            let middle = Morphism::vcat(&[k.clone(), beta2.after(g)]);
            let split = ShortExactSeq::split(beta.target(), beta2.target());
            if middle.after(f) != split.mono().after(&beta) || split.epi().after(&middle) != beta2.after(g) {
                return Err(Error::Certificate("horseshoe squares do not commute".into()));
            }
            Ok(HorseshoeFill {
                middle,
                connecting: k,
                split,
            })
        }
    }
}

/// One horseshoe step of a chase: fill the middle of `0 -> A -> A' -> A''
/// -> 0` over covers `α`, `α''` and pass to the kernels.
struct CoverStep {
    middle: Morphism,
    /// `W = ker α'` inside `C ⊕ C''`.
    w_inc: Morphism,
    /// `ker α` inside `C`.
    k_inc: Morphism,
    /// `ker α''` inside `C''`.
    k2_inc: Morphism,
    /// `0 -> ker α -> W -> ker α'' -> 0`.
    next: ShortExactSeq,
}

fn hypothesis(step: usize, what: &str) -> Error {
    Error::Hypothesis(format!("step {step}: {what}"))
}

fn cover_step(ses: &ShortExactSeq, alpha: Morphism, alpha2: Morphism, step: usize) -> Result<CoverStep> {
    let fill = horseshoe_fill(
        ses,
        Horseshoe::Cover {
            alpha: alpha.clone(),
            alpha2: alpha2.clone(),
            lift: None,
        },
    )
    .map_err(|e| hypothesis(step, &e.to_string()))?;
    let (_, w_inc) = kernel(&fill.middle);
    let (_, k_inc) = kernel(&alpha);
    let (_, k2_inc) = kernel(&alpha2);
    let f = factor_through_mono(&w_inc, &fill.split.mono().after(&k_inc))
        .ok_or_else(|| hypothesis(step, "ker α does not map into ker α'"))?;
    let g = factor_through_mono(&k2_inc, &fill.split.epi().after(&w_inc))
        .ok_or_else(|| hypothesis(step, "ker α' does not map into ker α''"))?;
    let next =
        ShortExactSeq::new(f, g).map_err(|_| hypothesis(step, "kernel row is not exact (a cover is not epic)"))?;
    Ok(CoverStep {
        middle: fill.middle,
        w_inc,
        k_inc,
        k2_inc,
        next,
    })
}

/// Options shared by the constructions.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConstructOptions {
    /// Verify the input hypotheses before chasing.
    pub check_hypotheses: bool,
    /// Caller asserts the subcategory is closed under kernels of epimorphisms
    /// (resolving the first term) or cokernels of monomorphisms
    /// (coresolving the last term). Only used for predictions.
    pub closure_asserted: bool,
    /// Fail unless the certificates guaranteeing a proper output are present.
    pub require_proper: bool,
    /// Fail unless the certificates guaranteeing a strong output are present.
    pub require_strong: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            check_hypotheses: true,
            closure_asserted: false,
            require_proper: false,
            require_strong: false,
        }
    }
}

/// Output of a construction together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Construction {
    /// Verified against the subcategory.
    pub output: AugmentedResolution,
    /// `0 -> C -> C_1^1 ⊕ C_0^0 -> C_0^1 -> 0` and its dual, when the
    /// degree-zero term is a new object.
    pub bridge: Option<ShortExactSeq>,
    /// The second long exact sequence of the iterated forms, without its
    /// outer zeros.
    pub auxiliary: Option<Sequence>,
    /// The kernel (or cokernel) rows `0 -> K -> W_i -> K'' -> 0` of the chase.
    pub w_sequences: Vec<ShortExactSeq>,
    /// Degreewise direct sums the terms must be isomorphic to; `None` where
    /// the term is not determined by the inputs.
    pub expected: Vec<Option<Module>>,
    /// Flags the input certificates guarantee.
    pub predicted: Flags,
}

impl Construction {
    /// Each determined term is isomorphic to its expected direct sum.
    pub fn check_shapes(&self) -> Result<()> {
        for (i, e) in self.expected.iter().enumerate() {
            let Some(e) = e else { continue };
            let Some(t) = self.output.term_or_zero(i) else { continue };
            if find_isomorphism(&t, e).is_none() {
                return Err(Error::Certificate(format!(
                    "term {i} (dim {}) is not isomorphic to the expected sum (dim {})",
                    t.dim(),
                    e.dim()
                )));
            }
        }
        Ok(())
    }

    /// Every predicted flag was confirmed by verification.
    pub fn check_predictions(&self) -> Result<()> {
        let unmet = self.predicted.unmet_by(&self.output.flags());
        if unmet.is_empty() {
            Ok(())
        } else {
            Err(Error::Certificate(format!(
                "predicted but not verified: {}",
                unmet.join(", ")
            )))
        }
    }

    fn dual(self, d: &Duality) -> Result<Construction> {
        Ok(Construction {
            output: self.output.dual(d),
            bridge: self.bridge.map(|b| d.ses(&b)).transpose()?,
            auxiliary: self.auxiliary.map(|s| d.sequence(&s)),
            w_sequences: self.w_sequences.iter().map(|s| d.ses(s)).collect::<Result<_>>()?,
            expected: self.expected.iter().map(|e| e.as_ref().map(|m| d.module(m))).collect(),
            predicted: self.predicted.swapped(),
        })
    }
}

fn sum_of(ms: &[Module]) -> Module {
    direct_sum(ms).object
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Hypothesis(what.to_string()))
    }
}

/// Checks the certificates a requested output property depends on.
fn require_certificates(opts: &ConstructOptions, proper: &[(&str, bool)], strong: &[(&str, bool)]) -> Result<()> {
    for (wanted, what, certs) in [
        (opts.require_proper, "proper", proper),
        (opts.require_strong, "strong", strong),
    ] {
        if !wanted {
            continue;
        }
        let missing: Vec<&str> = certs.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
        if !missing.is_empty() {
            return Err(Error::Hypothesis(format!(
                "{what} output needs: {}",
                missing.join(", ")
            )));
        }
    }
    Ok(())
}

fn check_input(res: &AugmentedResolution, direction: Direction, target: &Module, name: &str) -> Result<()> {
    require(res.direction() == direction, &format!("{name} has the wrong direction"))?;
    require(
        res.target() == target,
        &format!("{name} does not resolve the matching term"),
    )?;
    require(!res.is_empty(), &format!("{name} is empty"))
}

/// Flags of a short exact sequence read as `X_1 -> X_0 -> X -> 0`.
fn ses_flags(c: &Subcategory, ses: &ShortExactSeq) -> Flags {
    let seq = ses.as_sequence();
    let from = is_hom_from_exact(c, &seq).is_ok();
    Flags {
        exact: Tri::Yes,
        in_c: Tri::Unchecked,
        hom_from_c: Tri::from_bool(from),
        hom_into_c: Tri::from_bool(is_hom_into_exact(c, &seq).is_ok()),
        strong: Tri::from_bool(ext1(c.sum(), ses.left()) == 0),
    }
}

fn finish(c: &Subcategory, target: &Module, maps: Vec<Morphism>, last_w: &Module) -> Result<AugmentedResolution> {
    Ok(AugmentedResolution::new(Direction::Resolution, target, maps, !last_w.is_zero())?.verified(c))
}

/// A resolution of `X` from a short exact sequence `0 -> X -> X^0 -> X^1 ->
/// 0`, a `C`-resolution `res0` of `X^0` and a `Hom(C,-)`-exact resolution
/// `res1` of `X^1`. Degree `i >= 1` is `C_{i+1}^1 ⊕ C_i^0`; degree `0` is
/// the kernel `C` of `C_1^1 ⊕ C_0^0 -> C_0^1` (the bridge). Produces
/// `min(len0, len1 - 1)` terms.
pub fn resolve_first_term(
    c: &Subcategory,
    ses: &ShortExactSeq,
    res0: &AugmentedResolution,
    res1: &AugmentedResolution,
    opts: ConstructOptions,
) -> Result<Construction> {
    check_input(res0, Direction::Resolution, ses.middle(), "res0")?;
    check_input(res1, Direction::Resolution, ses.right(), "res1")?;
    let r0 = res0.clone().verified(c);
    let r1 = res1.clone().verified(c);
    let (f0, f1) = (r0.flags(), r1.flags());
    if opts.check_hypotheses {
        require(f0.exact.is_yes() && f0.in_c.is_yes(), "res0 is not a C-resolution")?;
        require(f1.hom_from_c.is_yes(), "res1 is not Hom(C,-)-exact")?;
    }
    let closure = opts.closure_asserted;
    require_certificates(
        &opts,
        &[
            ("closure under kernels of epimorphisms", closure),
            ("res0 proper", f0.proper(Direction::Resolution).is_yes()),
            ("res1 proper", f1.proper(Direction::Resolution).is_yes()),
        ],
        &[
            ("closure under kernels of epimorphisms", closure),
            ("res0 strongly proper", f0.strong.is_yes()),
            ("res1 strongly proper", f1.strong.is_yes()),
        ],
    )?;
    let (iota, pi) = (ses.mono(), ses.epi());
    let e0 = res0.map(0).clone();
    let e1 = res1.map(0).clone();

    // M = X^0 ×_{X^1} C_0^1, sitting inside X^0 ⊕ C_0^1.
    let pb = pullback(pi, &e1);
    let emb = Morphism::vcat(&[pb.p1.clone(), pb.p2.clone()]);
    let (_, k11_inc) = kernel(&e1);
    let f = factor_through_mono(
        &emb,
        &Morphism::vcat(&[Morphism::zero(k11_inc.source(), ses.middle()), k11_inc.clone()]),
    )
    .expect("ker ε^1 lies in the pullback");
    let column = ShortExactSeq::new(f, pb.p1.clone()).map_err(|_| hypothesis(0, "ε^1 is not epic"))?;
    let c1 = res1
        .map_or_zero(1)
        .ok_or_else(|| hypothesis(0, "res1 needs two terms"))?;
    let a = factor_through_mono(&k11_inc, &c1).ok_or_else(|| hypothesis(0, "res1 is not exact at C_0^1"))?;
    let step0 = cover_step(&column, a, e0, 0)?;

    let bridge_map = pb.p2.after(&step0.middle);
    let (_, c_inc) = kernel(&bridge_map);
    let bridge = ShortExactSeq::new(c_inc.clone(), bridge_map).map_err(|_| hypothesis(0, "bridge is not exact"))?;
    let j = factor_through_mono(
        &emb,
        &Morphism::vcat(&[iota.clone(), Morphism::zero(ses.left(), e1.source())]),
    )
    .expect("X lies in the pullback");
    let aug = factor_through_mono(&j, &step0.middle.after(&c_inc))
        .ok_or_else(|| hypothesis(0, "degree-zero term does not map to X"))?;
    let mut into_prev = factor_through_mono(&c_inc, &step0.w_inc).expect("W_1 lies in C");

    let mut maps = vec![aug];
    let mut expected = vec![None];
    let mut w_sequences = vec![step0.next.clone()];
    let mut cur = step0;
    let mut i = 1;
    loop {
        if i >= res0.len() && i + 1 >= res1.len() {
            break;
        }
        let (Some(m1), Some(m0)) = (res1.map_or_zero(i + 1), res0.map_or_zero(i)) else {
            break;
        };
        let a1 = factor_through_mono(&cur.k_inc, &m1).ok_or_else(|| hypothesis(i, "res1 is not exact"))?;
        let a0 = factor_through_mono(&cur.k2_inc, &m0).ok_or_else(|| hypothesis(i, "res0 is not exact"))?;
        let step = cover_step(&cur.next, a1, a0, i)?;
        maps.push(into_prev.after(&step.middle));
        expected.push(Some(sum_of(&[m1.source().clone(), m0.source().clone()])));
        into_prev = step.w_inc.clone();
        w_sequences.push(step.next.clone());
        cur = step;
        i += 1;
    }
    let last_w = cur.w_inc.source().clone();
    let output = finish(c, ses.left(), maps, &last_w)?;
    let predicted = Flags {
        exact: Tri::Yes,
        in_c: Tri::from_bool(closure && f1.in_c.is_yes()),
        hom_from_c: Tri::from_bool(
            closure && f0.proper(Direction::Resolution).is_yes() && f1.proper(Direction::Resolution).is_yes(),
        ),
        hom_into_c: Tri::from_bool(f0.hom_into_c.is_yes() && f1.hom_into_c.is_yes()),
        strong: Tri::from_bool(closure && f0.strong.is_yes() && f1.strong.is_yes()),
    };
    Ok(Construction {
        output,
        bridge: Some(bridge),
        auxiliary: None,
        w_sequences,
        expected,
        predicted,
    })
}

/// A resolution of `X` from `0 -> X_1 -> X_0 -> X -> 0`, a
/// `Hom(C,-)`-exact resolution `res0` of `X_0` and a `C`-resolution `res1`
/// of `X_1`. Degree `0` is `C_0^0`, degree `i >= 1` is `C_0^i ⊕ C_1^{i-1}`.
/// Produces `min(len0, len1 + 1)` terms.
pub fn resolve_last_term(
    c: &Subcategory,
    ses: &ShortExactSeq,
    res0: &AugmentedResolution,
    res1: &AugmentedResolution,
    opts: ConstructOptions,
) -> Result<Construction> {
    check_input(res0, Direction::Resolution, ses.middle(), "res0")?;
    check_input(res1, Direction::Resolution, ses.left(), "res1")?;
    let r0 = res0.clone().verified(c);
    let r1 = res1.clone().verified(c);
    let (f0, f1) = (r0.flags(), r1.flags());
    let fs = ses_flags(c, ses);
    if opts.check_hypotheses {
        require(f0.hom_from_c.is_yes(), "res0 is not Hom(C,-)-exact")?;
        require(f1.exact.is_yes() && f1.in_c.is_yes(), "res1 is not a C-resolution")?;
    }
    require_certificates(
        &opts,
        &[
            ("ses Hom(C,-)-exact", fs.hom_from_c.is_yes()),
            ("res0 proper", f0.proper(Direction::Resolution).is_yes()),
            ("res1 proper", f1.proper(Direction::Resolution).is_yes()),
        ],
        &[
            (
                "ses strongly Hom(C,-)-exact",
                fs.hom_from_c.is_yes() && fs.strong.is_yes(),
            ),
            ("res0 strongly proper", f0.strong.is_yes()),
            ("res1 strongly proper", f1.strong.is_yes()),
        ],
    )?;
    let (iota, pi) = (ses.mono(), ses.epi());
    let e0 = res0.map(0).clone();
    let aug = pi.after(&e0);
    let (_, w1_inc) = kernel(&aug);
    let (_, k01_inc) = kernel(&e0);
    let f = factor_through_mono(&w1_inc, &k01_inc).expect("ker ε_0 lies in W_1");
    let g = factor_through_mono(iota, &e0.after(&w1_inc)).expect("W_1 maps into X_1");
    let first = ShortExactSeq::new(f, g).map_err(|_| hypothesis(0, "res0 augmentation is not epic"))?;

    let mut maps = vec![aug];
    let mut expected = vec![Some(e0.source().clone())];
    let mut w_sequences = vec![first.clone()];
    let mut into_prev = w1_inc;
    let mut cur_ses = first;
    let mut k_inc = k01_inc;
    let mut k2_inc = Morphism::identity(ses.left());
    let mut last_w = into_prev.source().clone();
    let mut i = 1;
    loop {
        if i >= res0.len() && i > res1.len() {
            break;
        }
        let (Some(m0), Some(m1)) = (res0.map_or_zero(i), res1.map_or_zero(i - 1)) else {
            break;
        };
        let a0 = factor_through_mono(&k_inc, &m0).ok_or_else(|| hypothesis(i, "res0 is not exact"))?;
        let a1 = factor_through_mono(&k2_inc, &m1).ok_or_else(|| hypothesis(i, "res1 is not exact"))?;
        let step = cover_step(&cur_ses, a0, a1, i)?;
        maps.push(into_prev.after(&step.middle));
        expected.push(Some(sum_of(&[m0.source().clone(), m1.source().clone()])));
        into_prev = step.w_inc.clone();
        last_w = into_prev.source().clone();
        w_sequences.push(step.next.clone());
        k_inc = step.k_inc;
        k2_inc = step.k2_inc;
        cur_ses = step.next;
        i += 1;
    }
    let output = finish(c, ses.right(), maps, &last_w)?;
    let predicted = Flags {
        exact: Tri::Yes,
        in_c: Tri::from_bool(f0.in_c.is_yes()),
        hom_from_c: Tri::from_bool(
            fs.hom_from_c.is_yes()
                && f0.proper(Direction::Resolution).is_yes()
                && f1.proper(Direction::Resolution).is_yes(),
        ),
        hom_into_c: Tri::from_bool(fs.hom_into_c.is_yes() && f0.hom_into_c.is_yes() && f1.hom_into_c.is_yes()),
        strong: Tri::from_bool(
            fs.hom_from_c.is_yes() && fs.strong.is_yes() && f0.strong.is_yes() && f1.strong.is_yes(),
        ),
    };
    Ok(Construction {
        output,
        bridge: None,
        auxiliary: None,
        w_sequences,
        expected,
        predicted,
    })
}

/// Runs a resolution construction on the dual side and transports the
/// result back.
fn through_dual(
    c: &Subcategory,
    ses: &ShortExactSeq,
    inputs: [&AugmentedResolution; 2],
    build: fn(
        &Subcategory,
        &ShortExactSeq,
        &AugmentedResolution,
        &AugmentedResolution,
        ConstructOptions,
    ) -> Result<Construction>,
    opts: ConstructOptions,
) -> Result<Construction> {
    for (k, r) in inputs.iter().enumerate() {
        require(
            r.direction() == Direction::Coresolution,
            &format!("cores{k} is not a coresolution"),
        )?;
    }
    let d = Duality::new(c.algebra());
    let dc = d.subcategory(c);
    let dses = d.ses(ses)?;
    let back = d.flip();
    let mut out = build(&dc, &dses, &inputs[0].dual(&d), &inputs[1].dual(&d), opts)?.dual(&back)?;
    out.output.verify(c);
    Ok(out)
}

/// A coresolution of `Y` from `0 -> Y_1 -> Y_0 -> Y -> 0`, a
/// `C`-coresolution `cores0` of `Y_0` and a `Hom(-,C)`-exact coresolution
/// `cores1` of `Y_1`. Degree `i >= 1` is `C_0^i ⊕ C_1^{i+1}`; degree `0` is
/// the cokernel `C` of `C_1^0 -> C_0^0 ⊕ C_1^1`.
pub fn coresolve_last_term(
    c: &Subcategory,
    ses: &ShortExactSeq,
    cores0: &AugmentedResolution,
    cores1: &AugmentedResolution,
    opts: ConstructOptions,
) -> Result<Construction> {
    // Dually the sequence reads 0 -> DY -> DY_0 -> DY_1 -> 0.
    through_dual(c, ses, [cores0, cores1], resolve_first_term, opts)
}

/// A coresolution of `Y` from `0 -> Y -> Y^0 -> Y^1 -> 0`, a
/// `Hom(-,C)`-exact coresolution `cores0` of `Y^0` and a `C`-coresolution
/// `cores1` of `Y^1`. Degree `0` is `C_0^0`, degree `i >= 1` is
/// `C_0^i ⊕ C_1^{i-1}`.
pub fn coresolve_first_term(
    c: &Subcategory,
    ses: &ShortExactSeq,
    cores0: &AugmentedResolution,
    cores1: &AugmentedResolution,
    opts: ConstructOptions,
) -> Result<Construction> {
    through_dual(c, ses, [cores0, cores1], resolve_last_term, opts)
}

/// The horseshoe resolution of the middle term of `0 -> A -> A' -> A'' ->
/// 0` from resolutions of both ends; degree `i` is `C_i ⊕ C_i''`. Lifting
/// the covers of `A''` along `A' -> A''` needs a `Hom(C,-)`-exact sequence.
pub fn resolve_middle_term(
    c: &Subcategory,
    ses: &ShortExactSeq,
    res_left: &AugmentedResolution,
    res_right: &AugmentedResolution,
    opts: ConstructOptions,
) -> Result<Construction> {
    check_input(res_left, Direction::Resolution, ses.left(), "res_left")?;
    check_input(res_right, Direction::Resolution, ses.right(), "res_right")?;
    let fl = res_left.clone().verified(c).flags();
    let fr = res_right.clone().verified(c).flags();
    let fs = ses_flags(c, ses);
    if opts.check_hypotheses {
        require(fs.hom_from_c.is_yes(), "ses is not Hom(C,-)-exact")?;
        require(fl.exact.is_yes() && fr.exact.is_yes(), "end resolutions are not exact")?;
    }
    require_certificates(
        &opts,
        &[
            ("res_left proper", fl.proper(Direction::Resolution).is_yes()),
            ("res_right proper", fr.proper(Direction::Resolution).is_yes()),
        ],
        &[
            ("res_left strongly proper", fl.strong.is_yes()),
            ("res_right strongly proper", fr.strong.is_yes()),
        ],
    )?;
    let step0 = cover_step(ses, res_left.map(0).clone(), res_right.map(0).clone(), 0)?;
    let mut maps = vec![step0.middle.clone()];
    let mut expected = vec![Some(step0.middle.source().clone())];
    let mut w_sequences = vec![step0.next.clone()];
    let mut cur = step0;
    let mut i = 1;
    loop {
        if i >= res_left.len() && i >= res_right.len() {
            break;
        }
        let (Some(ml), Some(mr)) = (res_left.map_or_zero(i), res_right.map_or_zero(i)) else {
            break;
        };
        let a = factor_through_mono(&cur.k_inc, &ml).ok_or_else(|| hypothesis(i, "res_left is not exact"))?;
        let a2 = factor_through_mono(&cur.k2_inc, &mr).ok_or_else(|| hypothesis(i, "res_right is not exact"))?;
        let step = cover_step(&cur.next, a, a2, i)?;
        maps.push(cur.w_inc.after(&step.middle));
        expected.push(Some(sum_of(&[ml.source().clone(), mr.source().clone()])));
        w_sequences.push(step.next.clone());
        cur = step;
        i += 1;
    }
    let last_w = cur.w_inc.source().clone();
    let output = finish(c, ses.middle(), maps, &last_w)?;
    let predicted = Flags {
        exact: Tri::Yes,
        in_c: fl.in_c.and(fr.in_c),
        hom_from_c: fl.hom_from_c.and(fr.hom_from_c),
        hom_into_c: fs.hom_into_c.and(fl.hom_into_c).and(fr.hom_into_c),
        strong: fl.strong.and(fr.strong),
    };
    Ok(Construction {
        output,
        bridge: None,
        auxiliary: None,
        w_sequences,
        expected,
        predicted: yes_only(predicted),
    })
}

/// Keeps `Yes` predictions and forgets the rest.
fn yes_only(f: Flags) -> Flags {
    let keep = |t: Tri| if t.is_yes() { Tri::Yes } else { Tri::No };
    Flags {
        exact: keep(f.exact),
        in_c: keep(f.in_c),
        hom_from_c: keep(f.hom_from_c),
        hom_into_c: keep(f.hom_into_c),
        strong: keep(f.strong),
    }
}

/// Dual of [`resolve_middle_term`]: degree `i` is `C^i ⊕ C''^i`.
pub fn coresolve_middle_term(
    c: &Subcategory,
    ses: &ShortExactSeq,
    cores_left: &AugmentedResolution,
    cores_right: &AugmentedResolution,
    opts: ConstructOptions,
) -> Result<Construction> {
    // Dually the ends trade places.
    let mut out = through_dual(c, ses, [cores_right, cores_left], resolve_middle_term, opts)?;
    out.expected = (0..out.output.len())
        .map(|i| Some(sum_of(&[cores_left.term_or_zero(i)?, cores_right.term_or_zero(i)?])))
        .collect();
    Ok(out)
}

/// Which end of a long exact sequence gets a (co)resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IterateMode {
    /// `0 -> X -> X^0 -> ... -> X^n -> 0` with resolutions of every `X^j`;
    /// resolves `X`.
    ResolveFirst,
    /// `0 -> Y_n -> ... -> Y_0 -> Y -> 0` with coresolutions of every `Y_j`;
    /// coresolves `Y`.
    CoresolveLast,
    /// `X_n -> ... -> X_0 -> X -> 0` with resolutions of every `X_j`;
    /// resolves `X`.
    ResolveLast,
    /// `0 -> Y -> Y^0 -> ... -> Y^n` with coresolutions of every `Y^j`;
    /// coresolves `Y`.
    CoresolveFirst,
}

/// Applies the single-sequence construction along a long exact sequence by
/// splitting it into short ones. `maps[0]` touches the end being resolved:
/// `X -> X^0` for the `*First` modes and `X_0 -> X` for the `*Last` modes;
/// `maps[j]` continues away from it. `res[j]` is the (co)resolution of the
/// `j`-th middle term.
pub fn iterate_construct(
    mode: IterateMode,
    c: &Subcategory,
    maps: &[Morphism],
    res: &[AugmentedResolution],
    opts: ConstructOptions,
) -> Result<Construction> {
    require(maps.len() >= 2, "need at least two maps")?;
    require(res.len() == maps.len(), "need one (co)resolution per middle term")?;
    match mode {
        IterateMode::ResolveFirst => iterate_resolve_first(c, maps, res, opts, 1),
        IterateMode::ResolveLast => iterate_resolve_last(c, maps, res, opts, 1),
        IterateMode::CoresolveLast | IterateMode::CoresolveFirst => {
            for r in res {
                require(r.direction() == Direction::Coresolution, "inputs must be coresolutions")?;
            }
            let d = Duality::new(c.algebra());
            let dc = d.subcategory(c);
            let dmaps: Vec<Morphism> = maps.iter().map(|f| d.morphism(f)).collect();
            let dres: Vec<AugmentedResolution> = res.iter().map(|r| r.dual(&d)).collect();
            let inner = if mode == IterateMode::CoresolveLast {
                iterate_resolve_first(&dc, &dmaps, &dres, opts, 1)?
            } else {
                iterate_resolve_last(&dc, &dmaps, &dres, opts, 1)?
            };
            let mut out = inner.dual(&d.flip())?;
            out.output.verify(c);
            Ok(out)
        }
    }
}

fn at_depth(depth: usize, e: Error) -> Error {
    match e {
        Error::Hypothesis(s) => Error::Hypothesis(format!("induction step {depth}: {s}")),
        other => other,
    }
}

/// `0 -> X -> X^0 -> ... -> X^n -> 0`; `maps[0]: X -> X^0`.
fn iterate_resolve_first(
    c: &Subcategory,
    maps: &[Morphism],
    res: &[AugmentedResolution],
    opts: ConstructOptions,
    depth: usize,
) -> Result<Construction> {
    if opts.check_hypotheses {
        Sequence::bounded(maps.to_vec())
            .and_then(|s| s.is_exact())
            .map_err(|_| Error::Hypothesis(format!("induction step {depth}: sequence is not exact")))?;
    }
    if maps.len() == 2 {
        let ses = ShortExactSeq::new(maps[0].clone(), maps[1].clone())
            .map_err(|_| Error::Hypothesis(format!("induction step {depth}: sequence is not exact")))?;
        let mut out = resolve_first_term(c, &ses, &res[0], &res[1], opts).map_err(|e| at_depth(depth, e))?;
        let bridge = out.bridge.clone().expect("bridge");
        out.auxiliary = Some(Sequence::new(vec![bridge.mono().clone(), bridge.epi().clone()])?);
        out.expected = shapes_resolve_first(&res[..2]);
        return Ok(out);
    }
    // 0 -> X -> X^0 -> K -> 0 and 0 -> K -> X^1 -> ... -> X^n -> 0.
    let (k, proj) = cokernel(&maps[0]);
    let k_into = factor_through_epi(&proj, &maps[1]).expect("X^0 -> X^1 kills X");
    let ses = ShortExactSeq::new(maps[0].clone(), proj)
        .map_err(|_| Error::Hypothesis(format!("induction step {depth}: X -> X^0 is not monic")))?;
    let mut rest = vec![k_into];
    rest.extend(maps[2..].iter().cloned());
    let inner = iterate_resolve_first(c, &rest, &res[1..], opts, depth + 1)?;
    debug_assert!(inner.output.target() == &k);
    let mut out = resolve_first_term(c, &ses, &res[0], &inner.output, opts).map_err(|e| at_depth(depth, e))?;
    let bridge = out.bridge.clone().expect("bridge");
    let inner_aux = inner.auxiliary.expect("auxiliary");
    let mut aux = vec![bridge.mono().clone(), inner_aux.maps()[0].after(bridge.epi())];
    aux.extend(inner_aux.maps()[1..].iter().cloned());
    out.auxiliary = Some(Sequence::new(aux)?);
    out.expected = shapes_resolve_first(res);
    Ok(out)
}

/// Degree `k >= 1` is `⊕_{i=n..0} C_{k+i}^i`.
fn shapes_resolve_first(res: &[AugmentedResolution]) -> Vec<Option<Module>> {
    let n = res.len() - 1;
    let len = (0..=n).map(|i| res[i].len().saturating_sub(i)).min().unwrap_or(0);
    let mut out = vec![None];
    for k in 1..len {
        let parts: Option<Vec<Module>> = (0..=n).rev().map(|i| res[i].term_or_zero(k + i)).collect();
        out.push(parts.map(|p| sum_of(&p)));
    }
    out
}

/// `X_n -> ... -> X_0 -> X -> 0`; `maps[0]: X_0 -> X`.
fn iterate_resolve_last(
    c: &Subcategory,
    maps: &[Morphism],
    res: &[AugmentedResolution],
    opts: ConstructOptions,
    depth: usize,
) -> Result<Construction> {
    let n = res.len() - 1;
    if opts.check_hypotheses {
        let mut chain: Vec<Morphism> = maps.iter().rev().cloned().collect();
        let z = Module::zero(c.algebra());
        chain.push(Morphism::zero(maps[0].target(), &z));
        Sequence::new(chain)
            .and_then(|s| s.is_exact())
            .map_err(|_| Error::Hypothesis(format!("induction step {depth}: sequence is not exact")))?;
    }
    // K = Im(X_1 -> X_0), resolved from X_n -> ... -> X_1 -> K -> 0.
    let img = image(&maps[1]);
    let ses = ShortExactSeq::new(img.mono.clone(), maps[0].clone())
        .map_err(|_| Error::Hypothesis(format!("induction step {depth}: X_0 -> X is not epic")))?;
    let k_res = if n == 1 {
        let r = res[1].window(1);
        AugmentedResolution::new(Direction::Resolution, &img.object, vec![img.epi.after(r.map(0))], true)?
    } else {
        let mut rest = vec![img.epi.clone()];
        rest.extend(maps[2..].iter().cloned());
        iterate_resolve_last(c, &rest, &res[1..], opts, depth + 1)?.output
    };
    let mut out = resolve_last_term(c, &ses, &res[0], &k_res, opts).map_err(|e| at_depth(depth, e))?;
    out.expected = shapes_resolve_last(res, out.output.len());
    Ok(out)
}

/// Degree `k` is `⊕_{i=0..min(k,n)} C_i^{k-i}`.
fn shapes_resolve_last(res: &[AugmentedResolution], len: usize) -> Vec<Option<Module>> {
    let n = res.len() - 1;
    (0..len)
        .map(|k| {
            let parts: Option<Vec<Module>> = (0..=k.min(n)).map(|i| res[i].term_or_zero(k - i)).collect();
            parts.map(|p| sum_of(&p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::modcat::hom_basis;

    fn add(gens: &[Module]) -> Subcategory {
        Subcategory::new("C", gens.to_vec()).unwrap()
    }

    fn dims(r: &AugmentedResolution) -> Vec<usize> {
        r.terms().iter().map(|t| t.dim()).collect()
    }

    fn k1_squared() -> Module {
        direct_sum(&[k1(), k1()]).object
    }

    #[test]
    fn periodic_resolution_of_k1() {
        let c = add(&[reg1()]);
        let r = build_proper_resolution(&c, &k1(), 4).unwrap().verified(&c);
        assert_eq!(dims(&r), vec![2, 2, 2, 2]);
        assert!(r.is_truncated());
        for i in 1..4 {
            assert_eq!(image(r.map(i)).object.dim(), 1);
        }
        let f = r.flags();
        assert!(f.exact.is_yes() && f.proper(Direction::Resolution).is_yes() && f.strong.is_yes());
    }

    #[test]
    fn generator_resolves_itself() {
        let c = add(&[k1(), reg1()]);
        let r = build_proper_resolution(&c, c.sum(), 2).unwrap().verified(&c);
        assert_eq!(dims(&r), vec![3, 0]);
        assert!(!r.is_truncated());
        assert!(r.map(0).matrix().is_identity());
        assert!(r.flags().exact.is_yes());
        let r = build_coproper_coresolution(&c, c.sum(), 2).unwrap().verified(&c);
        assert_eq!(dims(&r), vec![3, 0]);
        assert!(r.flags().proper(Direction::Coresolution).is_yes());
    }

    #[test]
    fn obstructions() {
        let c = add(&[k1()]);
        assert_eq!(
            build_proper_resolution(&c, &reg1(), 1).unwrap_err(),
            Error::Obstruction {
                step: 0,
                expected: "epic"
            }
        );
        assert_eq!(
            build_coproper_coresolution(&c, &reg1(), 1).unwrap_err(),
            Error::Obstruction {
                step: 0,
                expected: "monic"
            }
        );
    }

    #[test]
    fn periodic_coresolution_of_k1() {
        let c = add(&[reg1()]);
        let r = build_coproper_coresolution(&c, &k1(), 4).unwrap().verified(&c);
        assert_eq!(dims(&r), vec![2, 2, 2, 2]);
        assert!(r.flags().proper(Direction::Coresolution).is_yes());
        assert!(r.flags().strong.is_yes());
    }

    #[test]
    fn empty_and_zero_windows() {
        let c = add(&[reg1()]);
        let z = Module::zero(&lambda1());
        let r = build_proper_resolution(&c, &z, 3).unwrap().verified(&c);
        assert!(!r.is_truncated());
        assert!(r.flags().exact.is_yes());
        let r = build_proper_resolution(&c, &k1(), 0).unwrap();
        assert!(r.is_truncated() && r.is_empty());
        assert!(r.as_sequence().is_exact().is_ok());
    }

    #[test]
    fn horseshoe_on_split_sequence() {
        let ses = ShortExactSeq::split(&k1(), &reg1());
        let alpha = Morphism::identity(&k1());
        let alpha2 = Morphism::identity(&reg1());
        let section = ses.middle().clone();
        let h = direct_sum(&[k1(), reg1()]).injections[1].retype(&reg1(), &section);
        let fill = horseshoe_fill(
            &ses,
            Horseshoe::Cover {
                alpha,
                alpha2,
                lift: Some(h),
            },
        )
        .unwrap();
        assert!(fill.middle.is_iso());
    }

    #[test]
    fn horseshoe_rejects_missing_lift() {
        let ses = lambda1_ses();
        let data = Horseshoe::Cover {
            alpha: Morphism::identity(&k1()),
            alpha2: Morphism::identity(&k1()),
            lift: None,
        };
        assert!(matches!(horseshoe_fill(&ses, data), Err(Error::Hypothesis(_))));
        // Exhaustively: no h: K1 -> REG1 has g h = id.
        let g = ses.epi();
        assert!(hom_basis(&k1(), &reg1())
            .iter()
            .all(|h| !g.after(h).matrix().is_identity()));
    }

    #[test]
    fn horseshoe_with_identity_lift() {
        let ses = lambda1_ses();
        let fill = horseshoe_fill(
            &ses,
            Horseshoe::Cover {
                alpha: Morphism::identity(&k1()),
                alpha2: quotient_map(),
                lift: Some(Morphism::identity(&reg1())),
            },
        )
        .unwrap();
        assert_eq!(fill.middle.matrix().shape(), (2, 3));
        assert!(fill.middle.is_epi());
        let bad = Horseshoe::Cover {
            alpha: Morphism::identity(&k1()),
            alpha2: quotient_map(),
            lift: Some(x_mult()),
        };
        assert!(horseshoe_fill(&ses, bad).is_err());
    }

    #[test]
    fn horseshoe_envelope() {
        let ses = lambda1_ses();
        let fill = horseshoe_fill(
            &ses,
            Horseshoe::Envelope {
                beta: socle_inclusion(),
                beta2: Morphism::identity(&k1()),
                extension: None,
            },
        )
        .unwrap();
        assert!(fill.middle.is_mono());
        assert_eq!(fill.connecting.after(ses.mono()), socle_inclusion());
    }

    #[test]
    fn resolve_first_term_on_lambda1() {
        let c = add(&[reg1()]);
        let res0 = AugmentedResolution::identity(Direction::Resolution, &reg1());
        let res1 = build_proper_resolution(&c, &k1(), 4).unwrap();
        let out = resolve_first_term(&c, &lambda1_ses(), &res0, &res1, ConstructOptions::default()).unwrap();
        let r = &out.output;
        assert_eq!(r.term(0).dim(), 2);
        assert!(find_isomorphism(r.term(0), &reg1()).is_some());
        assert_eq!(dims(r), vec![2, 2, 2]);
        out.check_shapes().unwrap();
        let bridge = out.bridge.as_ref().unwrap();
        assert_eq!(bridge.middle().dim(), 4);
        assert!(r.flags().exact.is_yes());
        assert!(r.flags().proper(Direction::Resolution).is_yes());
        assert_eq!(out.w_sequences.len(), r.len());
    }

    #[test]
    fn resolve_first_term_degenerate_ends() {
        let c = add(&[reg1()]);
        // X^1 = 0, X = X^0.
        let z = Module::zero(&lambda1());
        let ses = ShortExactSeq::new(Morphism::identity(&reg1()), Morphism::zero(&reg1(), &z)).unwrap();
        let res0 = build_proper_resolution(&c, &reg1(), 3).unwrap();
        let res1 = build_proper_resolution(&c, &z, 3).unwrap();
        let out = resolve_first_term(&c, &ses, &res0, &res1, ConstructOptions::default()).unwrap();
        assert_eq!(dims(&out.output), dims(&res0));
        assert!(find_isomorphism(out.output.term(0), res0.term(0)).is_some());
        // X = 0.
        let ses = ShortExactSeq::new(Morphism::zero(&z, &k1()), Morphism::identity(&k1())).unwrap();
        let r = build_proper_resolution(&c, &k1(), 4).unwrap();
        let out = resolve_first_term(&c, &ses, &r, &r, ConstructOptions::default()).unwrap();
        assert!(out.output.target().is_zero());
        assert!(out.output.flags().exact.is_yes());
    }

    #[test]
    fn resolve_first_term_requires_closure_for_proper() {
        let c = add(&[reg1()]);
        let res0 = AugmentedResolution::identity(Direction::Resolution, &reg1());
        let res1 = build_proper_resolution(&c, &k1(), 3).unwrap();
        let opts = ConstructOptions {
            require_proper: true,
            ..Default::default()
        };
        let err = resolve_first_term(&c, &lambda1_ses(), &res0, &res1, opts).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(s) if s.contains("closure")));
        let opts = ConstructOptions {
            require_proper: true,
            closure_asserted: true,
            ..Default::default()
        };
        let out = resolve_first_term(&c, &lambda1_ses(), &res0, &res1, opts).unwrap();
        out.check_predictions().unwrap();
    }

    #[test]
    fn coresolve_last_term_on_lambda1() {
        let c = add(&[reg1()]);
        let cores0 = build_coproper_coresolution(&c, &reg1(), 4).unwrap();
        let cores1 = build_coproper_coresolution(&c, &k1(), 4).unwrap();
        let out = coresolve_last_term(&c, &lambda1_ses(), &cores0, &cores1, ConstructOptions::default()).unwrap();
        let r = &out.output;
        assert_eq!(r.direction(), Direction::Coresolution);
        assert_eq!(r.target(), &k1());
        assert!(find_isomorphism(r.term(0), &reg1()).is_some());
        assert!(r.flags().exact.is_yes());
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
        let bridge = out.bridge.unwrap();
        assert_eq!(bridge.right(), r.term(0));
    }

    #[test]
    fn resolve_last_term_split_sequence() {
        let c = add(&[reg1()]);
        let ses = ShortExactSeq::split(&k1(), &k1());
        let res0 = build_proper_resolution(&c, &k1_squared(), 3).unwrap();
        let res1 = build_proper_resolution(&c, &k1(), 3).unwrap();
        let out = resolve_last_term(&c, &ses, &res0, &res1, ConstructOptions::default()).unwrap();
        assert_eq!(dims(&out.output), vec![4, 6, 6]);
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
        assert!(out.output.flags().proper(Direction::Resolution).is_yes());
    }

    #[test]
    fn resolve_last_term_with_zero_kernel_is_res0() {
        let c = add(&[reg1()]);
        let z = Module::zero(&lambda1());
        let ses = ShortExactSeq::new(Morphism::zero(&z, &k1()), Morphism::identity(&k1())).unwrap();
        let res0 = build_proper_resolution(&c, &k1(), 3).unwrap();
        let res1 = build_proper_resolution(&c, &z, 2).unwrap();
        let out = resolve_last_term(&c, &ses, &res0, &res1, ConstructOptions::default()).unwrap();
        assert_eq!(dims(&out.output), dims(&res0));
        for i in 0..res0.len() {
            assert_eq!(out.output.map(i).matrix(), res0.map(i).matrix());
        }
    }

    #[test]
    fn resolve_last_term_requires_hom_exact_sequence() {
        let c = add(&[k1(), reg1()]);
        let res0 = AugmentedResolution::identity(Direction::Resolution, &reg1());
        let res1 = AugmentedResolution::identity(Direction::Resolution, &k1());
        let opts = ConstructOptions {
            require_proper: true,
            ..Default::default()
        };
        let err = resolve_last_term(&c, &lambda1_ses(), &res0, &res1, opts).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(s) if s.contains("ses Hom(C,-)-exact")));
    }

    #[test]
    fn coresolve_first_term_on_lambda1() {
        let c = add(&[reg1()]);
        let cores0 = build_coproper_coresolution(&c, &reg1(), 4).unwrap();
        let cores1 = build_coproper_coresolution(&c, &k1(), 4).unwrap();
        let out = coresolve_first_term(&c, &lambda1_ses(), &cores0, &cores1, ConstructOptions::default()).unwrap();
        assert_eq!(out.output.target(), &k1());
        // REG1 coresolves itself, so only C_1^{i-1} contributes after degree 0.
        assert_eq!(dims(&out.output), vec![2, 2, 2, 2, 2]);
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
        // With both coresolutions periodic.
        let cores0 = build_coproper_coresolution(&c, &k1_squared(), 3).unwrap();
        let ses = ShortExactSeq::split(&k1(), &k1());
        let out = coresolve_first_term(&c, &ses, &cores0, &cores1, ConstructOptions::default()).unwrap();
        assert_eq!(dims(&out.output), vec![4, 6, 6]);
        out.check_shapes().unwrap();
    }

    #[test]
    fn dual_of_dual_resolution() {
        let c = add(&[reg1()]);
        let r = build_proper_resolution(&c, &k1(), 3).unwrap();
        let d = Duality::new(&lambda1());
        let back = r.dual(&d).dual(&d.flip());
        assert_eq!(back.maps(), r.maps());
        assert_eq!(back.direction(), Direction::Resolution);
    }

    fn periodic_chain() -> Vec<Morphism> {
        // REG1 -x-> REG1 -x-> REG1 -> K1 -> 0
        vec![quotient_map(), x_mult(), x_mult()]
    }

    #[test]
    fn iterate_resolve_last_single_step_matches() {
        let c = add(&[reg1()]);
        let res0 = build_proper_resolution(&c, &k1_squared(), 2).unwrap();
        let res1 = build_proper_resolution(&c, &k1(), 1).unwrap();
        let ses = ShortExactSeq::split(&k1(), &k1());
        let single = resolve_last_term(&c, &ses, &res0, &res1, ConstructOptions::default()).unwrap();
        let it = iterate_construct(
            IterateMode::ResolveLast,
            &c,
            &[ses.epi().clone(), ses.mono().clone()],
            &[res0, res1],
            ConstructOptions::default(),
        )
        .unwrap();
        assert_eq!(dims(&it.output), dims(&single.output));
        it.check_shapes().unwrap();
    }

    #[test]
    fn iterate_resolve_last_sum_pattern() {
        let c = add(&[reg1()]);
        let maps = periodic_chain();
        let res: Vec<_> = (0..3)
            .map(|j| build_proper_resolution(&c, &reg1(), 3 - j).unwrap())
            .collect();
        let out = iterate_construct(IterateMode::ResolveLast, &c, &maps, &res, ConstructOptions::default()).unwrap();
        out.check_shapes().unwrap();
        assert!(out.output.flags().exact.is_yes());
        assert!(out.output.flags().proper(Direction::Resolution).is_yes());
        // K1 -id-> K1 -0-> K1 -id-> K1 -> 0 with periodic resolutions:
        // degree k has min(k, 2) + 1 summands REG1.
        let id = Morphism::identity(&k1());
        let maps = vec![id.clone(), Morphism::zero(&k1(), &k1()), id];
        let res: Vec<_> = (0..3)
            .map(|j| build_proper_resolution(&c, &k1(), 4 - j).unwrap())
            .collect();
        let out = iterate_construct(IterateMode::ResolveLast, &c, &maps, &res, ConstructOptions::default()).unwrap();
        assert_eq!(&dims(&out.output)[..3], &[2, 4, 6]);
        out.check_shapes().unwrap();
        assert!(out.output.flags().exact.is_yes());
    }

    #[test]
    fn iterate_resolve_first_two_steps() {
        let c = add(&[reg1()]);
        // 0 -> K1 -> REG1 -> REG1 -> K1 -> 0
        let maps = vec![socle_inclusion(), x_mult(), quotient_map()];
        let res = vec![
            AugmentedResolution::identity(Direction::Resolution, &reg1()),
            AugmentedResolution::identity(Direction::Resolution, &reg1()),
            build_proper_resolution(&c, &k1(), 4).unwrap(),
        ];
        let opts = ConstructOptions {
            closure_asserted: true,
            ..Default::default()
        };
        let out = iterate_construct(IterateMode::ResolveFirst, &c, &maps, &res, opts).unwrap();
        assert!(out.output.flags().exact.is_yes());
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
        let aux = out.auxiliary.as_ref().unwrap();
        Sequence::bounded(aux.maps().to_vec()).unwrap().is_exact().unwrap();
        assert_eq!(aux.objects()[0], *out.output.term(0));
    }

    #[test]
    fn iterate_dual_modes() {
        let c = add(&[reg1()]);
        // 0 -> K1 -> REG1 -> REG1 -> K1 read as 0 -> Y -> Y^0 -> Y^1 -> Y^2.
        let maps = vec![socle_inclusion(), x_mult(), quotient_map()];
        let cores: Vec<_> = [reg1(), reg1(), k1()]
            .iter()
            .enumerate()
            .map(|(j, m)| build_coproper_coresolution(&c, m, 3 - j).unwrap())
            .collect();
        let out = iterate_construct(
            IterateMode::CoresolveFirst,
            &c,
            &maps,
            &cores,
            ConstructOptions::default(),
        )
        .unwrap();
        assert_eq!(out.output.target(), &k1());
        assert!(out.output.flags().exact.is_yes());
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
        // 0 -> K1 -> REG1 -> REG1 -> K1 -> 0 read as 0 -> Y_2 -> Y_1 -> Y_0 -> Y -> 0.
        let maps = vec![quotient_map(), x_mult(), socle_inclusion()];
        let cores: Vec<_> = [reg1(), reg1(), k1()]
            .iter()
            .map(|m| build_coproper_coresolution(&c, m, 4).unwrap())
            .collect();
        let opts = ConstructOptions {
            closure_asserted: true,
            ..Default::default()
        };
        let out = iterate_construct(IterateMode::CoresolveLast, &c, &maps, &cores, opts).unwrap();
        assert_eq!(out.output.target(), &k1());
        assert!(out.output.flags().exact.is_yes());
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
    }

    #[test]
    fn horseshoe_resolution_of_middle_term() {
        let c = add(&[reg1()]);
        let r = build_proper_resolution(&c, &k1(), 3).unwrap();
        let out = resolve_middle_term(&c, &lambda1_ses(), &r, &r, ConstructOptions::default()).unwrap();
        assert_eq!(dims(&out.output), vec![4, 4, 4]);
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
        assert!(out.output.flags().strong.is_yes());
        let r = build_coproper_coresolution(&c, &k1(), 3).unwrap();
        let out = coresolve_middle_term(&c, &lambda1_ses(), &r, &r, ConstructOptions::default()).unwrap();
        assert_eq!(out.output.target(), &reg1());
        assert_eq!(dims(&out.output), vec![4, 4, 4]);
        out.check_shapes().unwrap();
        out.check_predictions().unwrap();
    }

    #[test]
    fn horseshoe_resolution_needs_hom_exactness() {
        let c = add(&[k1(), reg1()]);
        let r = AugmentedResolution::identity(Direction::Resolution, &k1());
        let err = resolve_middle_term(&c, &lambda1_ses(), &r, &r, ConstructOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn euler_characteristic_vanishes() {
        let c = add(&[reg1()]);
        let r = build_proper_resolution(&c, &direct_sum(&[k1(), reg1()]).object, 3).unwrap();
        assert!(r.is_truncated());
        let complete = build_proper_resolution(&c, &reg1(), 2).unwrap();
        assert_eq!(complete.euler_characteristic(), 0);
    }
}
