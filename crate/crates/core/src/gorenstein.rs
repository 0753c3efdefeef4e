//! Complete resolutions `C_n -> ... -> C_0 -> C^0 -> ... -> C^n` that stay
//! exact under `Hom(C,-)` and `Hom(-,C)`, and what can be built from them.
//! Membership in the Gorenstein subcategory is only ever claimed up to the
//! depth that was checked.

use crate::approx::{ext_dims, is_hom_from_exact, is_hom_into_exact, is_in_add, Subcategory};
use crate::error::{Error, Result};
use crate::modcat::{
    find_isomorphism, image, split_summand, Image, Isomorphism, Module, Morphism, Sequence, ShortExactSeq,
};
use crate::resolve::{
    build_coproper_coresolution, build_proper_resolution, coresolve_first_term, coresolve_last_term,
    coresolve_middle_term, iterate_construct, resolve_first_term, resolve_last_term, resolve_middle_term,
    AugmentedResolution, ConstructOptions, Construction, Direction, IterateMode,
};

/// A verified window together with the factorization of its central map
/// through the pivot.
#[derive(Clone, Debug)]
pub struct CompleteResolution {
    window: Sequence,
    center: usize,
    pivot: Module,
    image: Image,
    to_pivot: Isomorphism,
}

impl CompleteResolution {
    /// The window, left to right.
    pub fn window(&self) -> &Sequence {
        &self.window
    }

    /// Index of the map `C_0 -> C^0` in the window.
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn pivot(&self) -> &Module {
        &self.pivot
    }

    /// `C_0 -> pivot`.
    pub fn epi(&self) -> Morphism {
        self.to_pivot.forward.after(&self.image.epi)
    }

    /// `pivot -> C^0`.
    pub fn mono(&self) -> Morphism {
        self.image.mono.after(&self.to_pivot.backward)
    }

    /// Terms checked on the shorter side of the pivot.
    pub fn depth(&self) -> usize {
        (self.center + 1).min(self.window.len() - self.center)
    }

    /// Both ends of the window are zero, so it is exact everywhere.
    pub fn is_bounded(&self) -> bool {
        let objs = self.window.objects();
        objs[0].is_zero() && objs[objs.len() - 1].is_zero()
    }

    /// `... -> C_1 -> C_0 -> pivot -> 0`.
    pub fn left_half(&self) -> AugmentedResolution {
        let mut maps = vec![self.epi()];
        maps.extend((0..self.center).rev().map(|i| self.window.maps()[i].clone()));
        trim(Direction::Resolution, &self.pivot, maps)
    }

    /// `0 -> pivot -> C^0 -> C^1 -> ...`.
    pub fn right_half(&self) -> AugmentedResolution {
        let mut maps = vec![self.mono()];
        maps.extend(self.window.maps()[self.center + 1..].iter().cloned());
        trim(Direction::Coresolution, &self.pivot, maps)
    }

    /// Splices a resolution and a coresolution of the same module and
    /// verifies the result.
    pub fn from_halves(
        c: &Subcategory,
        left: &AugmentedResolution,
        right: &AugmentedResolution,
    ) -> Result<CompleteResolution> {
        if left.direction() != Direction::Resolution || right.direction() != Direction::Coresolution {
            return Err(Error::Hypothesis("halves have the wrong directions".into()));
        }
        if left.target() != right.target() {
            return Err(Error::Hypothesis("halves resolve different modules".into()));
        }
        if left.is_empty() || right.is_empty() {
            return Err(Error::Hypothesis("empty half".into()));
        }
        let z = Module::zero(left.target().algebra());
        let mut maps = Vec::new();
        if !left.is_truncated() {
            maps.push(Morphism::zero(&z, left.term(left.len() - 1)));
        }
        let center = maps.len() + left.len() - 1;
        maps.extend((1..left.len()).rev().map(|i| left.map(i).clone()));
        maps.push(right.map(0).after(left.map(0)));
        maps.extend(right.maps()[1..].iter().cloned());
        if !right.is_truncated() {
            maps.push(Morphism::zero(right.term(right.len() - 1), &z));
        }
        verify_complete_resolution(c, &Sequence::new(maps)?, center, left.target())
    }

    /// `0 -> 0 -> 0 -> 0`.
    pub fn zero(c: &Subcategory) -> CompleteResolution {
        let z = Module::zero(c.algebra());
        let l = AugmentedResolution::identity(Direction::Resolution, &z);
        let r = AugmentedResolution::identity(Direction::Coresolution, &z);
        CompleteResolution::from_halves(c, &l, &r).expect("zero window")
    }

    /// Termwise direct sum of windows aligned at their pivots.
    pub fn direct_sum(c: &Subcategory, parts: &[CompleteResolution]) -> Result<CompleteResolution> {
        let lefts: Vec<_> = parts.iter().map(|w| w.left_half()).collect();
        let rights: Vec<_> = parts.iter().map(|w| w.right_half()).collect();
        CompleteResolution::from_halves(
            c,
            &crate::resolve::direct_sum_resolutions(&lefts)?,
            &crate::resolve::direct_sum_resolutions(&rights)?,
        )
    }

    /// The same window with the pivot moved `steps` maps to the right (or
    /// left, if negative); the new pivot is the image there.
    pub fn shifted(&self, c: &Subcategory, steps: isize) -> Result<CompleteResolution> {
        let center = self.center as isize + steps;
        if center < 0 || center >= self.window.len() as isize {
            return Err(Error::Hypothesis(format!("shift by {steps} leaves the window")));
        }
        let center = center as usize;
        let pivot = image(&self.window.maps()[center]).object;
        verify_complete_resolution(c, &self.window, center, &pivot)
    }
}

/// Drops trailing maps out of zero terms, which makes the half complete.
fn trim(direction: Direction, target: &Module, mut maps: Vec<Morphism>) -> AugmentedResolution {
    let far = |f: &Morphism| match direction {
        Direction::Resolution => f.source().is_zero(),
        Direction::Coresolution => f.target().is_zero(),
    };
    let mut truncated = true;
    while maps.len() > 1 && far(maps.last().unwrap()) {
        maps.pop();
        truncated = false;
    }
    if maps.len() == 1 && far(&maps[0]) {
        truncated = false;
    }
    AugmentedResolution::new(direction, target, maps, truncated).expect("halves of a composable window")
}

/// Checks, in order: exactness at every interior position, `Hom(C,-)`- and
/// `Hom(-,C)`-exactness, that every term lies in `add(T)`, and that the image
/// of the map at `center` is isomorphic to `pivot`.
pub fn verify_complete_resolution(
    c: &Subcategory,
    window: &Sequence,
    center: usize,
    pivot: &Module,
) -> Result<CompleteResolution> {
    if center >= window.len() {
        return Err(Error::Hypothesis(format!(
            "center {center} is outside a window of {} maps",
            window.len()
        )));
    }
    window.is_exact()?;
    is_hom_from_exact(c, window)?;
    is_hom_into_exact(c, window)?;
    for (j, t) in window.objects().iter().enumerate() {
        if is_in_add(c, t).is_none() {
            return Err(Error::Certificate(format!(
                "term at position {j} is not in add({})",
                c.name()
            )));
        }
    }
    let img = image(&window.maps()[center]);
    let Some(to_pivot) = find_isomorphism(&img.object, pivot) else {
        return Err(Error::Certificate(format!(
            "pivot (dim {}) is not isomorphic to the central image (dim {})",
            pivot.dim(),
            img.object.dim()
        )));
    };
    Ok(CompleteResolution {
        window: window.clone(),
        center,
        pivot: pivot.clone(),
        image: img,
        to_pivot,
    })
}

/// Result of checking `Ext^i(G, G') = 0` for generators `G, G'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orthogonality {
    Certified {
        upto: usize,
    },
    /// `Ext^degree(generators[first], generators[second])` has dimension `dim`.
    Counterexample {
        first: usize,
        second: usize,
        degree: usize,
        dim: usize,
    },
}

impl Orthogonality {
    pub fn is_certified(&self) -> bool {
        matches!(self, Orthogonality::Certified { .. })
    }
}

/// `Ext^i(G, G')` for all generator pairs and `1 <= i <= upto`.
pub fn self_orthogonality(c: &Subcategory, upto: usize) -> Orthogonality {
    let gens = c.generators();
    for (first, g) in gens.iter().enumerate() {
        for (second, h) in gens.iter().enumerate() {
            let dims = ext_dims(g, h, upto).dims;
            if let Some(degree) = (1..=upto).find(|&i| dims[i] != 0) {
                return Orthogonality::Counterexample {
                    first,
                    second,
                    degree,
                    dim: dims[degree],
                };
            }
        }
    }
    Orthogonality::Certified { upto }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    Left,
    Right,
}

/// Why a module cannot be Gorenstein.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// `Ext^degree(M, T)` (`from_module`) or `Ext^degree(T, M)` is nonzero
    /// while the subcategory is self-orthogonal.
    ExtNonzero {
        from_module: bool,
        degree: usize,
        dim: usize,
    },
    /// The approximation at `step` of one half is not epic (monic), so no
    /// proper (co)resolution exists.
    Obstruction { half: Half, step: usize },
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Verified(CompleteResolution),
    Refuted(Refutation),
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct GMembership {
    pub module: Module,
    pub depth: usize,
    pub orthogonality: Orthogonality,
    pub verdict: Verdict,
}

impl GMembership {
    pub fn is_verified(&self) -> bool {
        matches!(self.verdict, Verdict::Verified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, Verdict::Refuted(_))
    }
}

/// Tries to refute membership from `Ext` when the subcategory is
/// self-orthogonal, then tries to build a complete resolution of the given
/// depth from the proper resolution and the coproper coresolution.
pub fn g_membership(c: &Subcategory, m: &Module, depth: usize) -> GMembership {
    let depth = depth.max(1);
    let orthogonality = self_orthogonality(c, depth);
    let verdict = membership_verdict(c, m, depth, orthogonality.is_certified());
    GMembership {
        module: m.clone(),
        depth,
        orthogonality,
        verdict,
    }
}

fn membership_verdict(c: &Subcategory, m: &Module, depth: usize, orthogonal: bool) -> Verdict {
    if orthogonal {
        for from_module in [true, false] {
            let dims = if from_module {
                ext_dims(m, c.sum(), depth).dims
            } else {
                ext_dims(c.sum(), m, depth).dims
            };
            if let Some(degree) = (1..=depth).find(|&i| dims[i] != 0) {
                return Verdict::Refuted(Refutation::ExtNonzero {
                    from_module,
                    degree,
                    dim: dims[degree],
                });
            }
        }
    }
    let left = match build_proper_resolution(c, m, depth) {
        Ok(r) => r,
        Err(Error::Obstruction { step, .. }) => {
            return Verdict::Refuted(Refutation::Obstruction { half: Half::Left, step })
        }
        Err(e) => return Verdict::Inconclusive(e.to_string()),
    };
    let right = match build_coproper_coresolution(c, m, depth) {
        Ok(r) => r,
        Err(Error::Obstruction { step, .. }) => {
            return Verdict::Refuted(Refutation::Obstruction {
                half: Half::Right,
                step,
            })
        }
        Err(e) => return Verdict::Inconclusive(e.to_string()),
    };
    match CompleteResolution::from_halves(c, &left, &right) {
        Ok(w) => Verdict::Verified(w),
        Err(e) => Verdict::Inconclusive(format!("spliced window fails: {e}")),
    }
}

fn located(place: &str, e: Error) -> Error {
    match e {
        Error::Hypothesis(s) => Error::Hypothesis(format!("{place}: {s}")),
        Error::Certificate(s) => Error::Certificate(format!("{place}: {s}")),
        other => other,
    }
}

/// A window of Gorenstein terms with a complete resolution for each term.
#[derive(Clone, Debug)]
pub struct OuterWindow {
    pub window: Sequence,
    pub center: usize,
    pub pivot: Module,
    /// One per object of `window`, left to right.
    pub inner: Vec<Option<CompleteResolution>>,
}

#[derive(Clone, Debug)]
pub struct Collapse {
    pub resolution: CompleteResolution,
    pub left: Construction,
    pub right: Construction,
    /// Output pivot to input pivot.
    pub pivot_iso: Isomorphism,
}

/// Turns a complete resolution by Gorenstein terms into one by terms of
/// `add(T)`. The outer window is checked against its own terms together
/// with `T`; the halves come from the iterated last-term resolution and
/// first-term coresolution, and the splice is verified from scratch.
pub fn collapse_gorenstein_window(c: &Subcategory, outer: &OuterWindow, opts: ConstructOptions) -> Result<Collapse> {
    let objs = outer.window.objects();
    if outer.inner.len() != objs.len() {
        return Err(Error::Malformed(format!(
            "{} terms but {} inner windows",
            objs.len(),
            outer.inner.len()
        )));
    }
    let mut inner = Vec::with_capacity(objs.len());
    for (j, (w, t)) in outer.inner.iter().zip(&objs).enumerate() {
        let w = w
            .as_ref()
            .ok_or_else(|| Error::Hypothesis(format!("term {j} has no complete resolution")))?;
        if w.pivot() != t {
            return Err(Error::Hypothesis(format!(
                "inner window {j} resolves a different module"
            )));
        }
        inner.push(w);
    }
    let center = outer.center;
    if center == 0 || outer.window.len() < center + 2 {
        return Err(Error::Hypothesis(
            "outer window needs two terms on each side of the pivot".into(),
        ));
    }
    let mut gens: Vec<Module> = objs.iter().filter(|t| !t.is_zero()).cloned().collect();
    gens.extend(c.generators().iter().cloned());
    let g = Subcategory::new(format!("G({})", c.name()), gens)?;
    let outer_w =
        verify_complete_resolution(&g, &outer.window, center, &outer.pivot).map_err(|e| located("outer window", e))?;
    let wm = outer.window.maps();

    let mut lmaps = vec![outer_w.epi()];
    lmaps.extend((1..=center).map(|j| wm[center - j].clone()));
    let lres: Vec<_> = (0..=center).map(|j| inner[center - j].left_half()).collect();
    let left =
        iterate_construct(IterateMode::ResolveLast, c, &lmaps, &lres, opts).map_err(|e| located("left half", e))?;

    let mut rmaps = vec![outer_w.mono()];
    rmaps.extend(wm[center + 1..].iter().cloned());
    let rres: Vec<_> = (center + 1..objs.len()).map(|j| inner[j].right_half()).collect();
    let right =
        iterate_construct(IterateMode::CoresolveFirst, c, &rmaps, &rres, opts).map_err(|e| located("right half", e))?;

    let resolution =
        CompleteResolution::from_halves(c, &left.output, &right.output).map_err(|e| located("spliced window", e))?;
    let pivot_iso = find_isomorphism(resolution.pivot(), &outer.pivot)
        .ok_or_else(|| Error::Certificate("output pivot differs from the input pivot".into()))?;
    Ok(Collapse {
        resolution,
        left,
        right,
        pivot_iso,
    })
}

/// A complete resolution of the summand `X = Im(e)` of the pivot `M` of
/// `w`. With `Y = Im(1 - e)`, the resolutions of `X` and `Y` are grown in
/// turn from the split sequences `0 -> Y -> M -> X -> 0` and
/// `0 -> X -> M -> Y -> 0`; degree `k` of each half is `⊕_{i<=k} C_i`.
pub fn summand_resolution(
    c: &Subcategory,
    w: &CompleteResolution,
    e: &Morphism,
    opts: ConstructOptions,
) -> Result<CompleteResolution> {
    let m = w.pivot();
    if e.source() != m || e.target() != m {
        return Err(Error::Hypothesis(
            "idempotent is not an endomorphism of the pivot".into(),
        ));
    }
    let x = split_summand(m, e)?;
    let y = split_summand(m, &Morphism::identity(m).sub(e))?;
    if x.object.is_zero() {
        return Ok(CompleteResolution::zero(c));
    }
    if y.object.is_zero() {
        return verify_complete_resolution(c, w.window(), w.center(), &x.object);
    }
    let ses_x = ShortExactSeq::new(y.section.clone(), x.retraction.clone())?;
    let ses_y = ShortExactSeq::new(x.section.clone(), y.retraction.clone())?;
    let (left, right) = (w.left_half(), w.right_half());

    let one_term = |dir, t: &Module, f: Morphism| AugmentedResolution::new(dir, t, vec![f], true);
    let mut rx = one_term(Direction::Resolution, &x.object, x.retraction.after(left.map(0)))?;
    let mut ry = one_term(Direction::Resolution, &y.object, y.retraction.after(left.map(0)))?;
    while rx.len() < left.len() {
        let nx = resolve_last_term(c, &ses_x, &left, &ry, opts)
            .map_err(|e| located("left half", e))?
            .output;
        let ny = resolve_last_term(c, &ses_y, &left, &rx, opts)
            .map_err(|e| located("left half", e))?
            .output;
        if nx.len() <= rx.len() {
            break;
        }
        (rx, ry) = (nx, ny);
    }
    let mut cx = one_term(Direction::Coresolution, &x.object, right.map(0).after(&x.section))?;
    let mut cy = one_term(Direction::Coresolution, &y.object, right.map(0).after(&y.section))?;
    while cx.len() < right.len() {
        let nx = coresolve_first_term(c, &ses_y, &right, &cy, opts)
            .map_err(|e| located("right half", e))?
            .output;
        let ny = coresolve_first_term(c, &ses_x, &right, &cx, opts)
            .map_err(|e| located("right half", e))?
            .output;
        if nx.len() <= cx.len() {
            break;
        }
        (cx, cy) = (nx, ny);
    }
    for (name, half, src) in [("left", &rx, &left), ("right", &cx, &right)] {
        let mut want = 0;
        for k in 0..half.len() {
            want += src.term_or_zero(k).map_or(0, |t| t.dim());
            if half.term(k).dim() != want {
                return Err(Error::Certificate(format!(
                    "{name} half degree {k} has dim {}, expected {want}",
                    half.term(k).dim()
                )));
            }
        }
    }
    CompleteResolution::from_halves(c, &rx, &cx).map_err(|e| located("spliced window", e))
}

/// A term of `0 -> X -> Y -> Z -> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Left,
    Middle,
    Right,
}

/// What is known about two terms of a short exact sequence.
#[derive(Clone, Debug)]
pub enum Known {
    /// Resolutions of `Y` and `Z`; resolves `X`. Meant for a subcategory
    /// closed under kernels of epimorphisms.
    KernelFromResolutions {
        middle: AugmentedResolution,
        right: AugmentedResolution,
    },
    /// Coresolutions of `X` and `Y`; coresolves `Z`. Meant for a
    /// subcategory closed under cokernels of monomorphisms.
    CokernelFromCoresolutions {
        left: AugmentedResolution,
        middle: AugmentedResolution,
    },
    /// Resolutions of `X` and `Y` and a `Hom(C,-)`-exact sequence; resolves
    /// `Z`.
    CokernelFromResolutions {
        left: AugmentedResolution,
        middle: AugmentedResolution,
    },
    /// Coresolutions of `Y` and `Z` and a `Hom(-,C)`-exact sequence;
    /// coresolves `X`.
    KernelFromCoresolutions {
        middle: AugmentedResolution,
        right: AugmentedResolution,
    },
    /// Complete resolutions of exactly two terms and a sequence exact under
    /// both Hom functors.
    Gorenstein {
        left: Option<CompleteResolution>,
        middle: Option<CompleteResolution>,
        right: Option<CompleteResolution>,
    },
}

/// The data built for the third term and whether it verified.
#[derive(Clone, Debug)]
pub struct ThirdTerm {
    pub position: Position,
    pub resolution: Option<Construction>,
    pub coresolution: Option<Construction>,
    pub complete: Option<CompleteResolution>,
    /// Why verification failed.
    pub failure: Option<String>,
}

impl ThirdTerm {
    pub fn is_verified(&self) -> bool {
        self.failure.is_none()
    }

    fn from_half(position: Position, out: Construction) -> ThirdTerm {
        let f = out.output.flags();
        let dir = out.output.direction();
        let failure = (!(f.exact.is_yes() && f.proper(dir).is_yes())).then(|| {
            format!(
                "output is not a proper {}",
                if dir == Direction::Resolution {
                    "resolution"
                } else {
                    "coresolution"
                }
            )
        });
        let (resolution, coresolution) = match dir {
            Direction::Resolution => (Some(out), None),
            Direction::Coresolution => (None, Some(out)),
        };
        ThirdTerm {
            position,
            resolution,
            coresolution,
            complete: None,
            failure,
        }
    }
}

/// Runs the construction matching `known` to get (co)resolution data for
/// the remaining term of `ses`, then verifies it.
pub fn two_of_three(c: &Subcategory, ses: &ShortExactSeq, known: &Known, opts: ConstructOptions) -> Result<ThirdTerm> {
    let seq = ses.as_sequence();
    let from_c = || is_hom_from_exact(c, &seq).is_ok();
    let into_c = || is_hom_into_exact(c, &seq).is_ok();
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!("ses is not {what}-exact")))
        }
    };
    match known {
        Known::KernelFromResolutions { middle, right } => Ok(ThirdTerm::from_half(
            Position::Left,
            resolve_first_term(c, ses, middle, right, opts)?,
        )),
        Known::CokernelFromCoresolutions { left, middle } => Ok(ThirdTerm::from_half(
            Position::Right,
            coresolve_last_term(c, ses, middle, left, opts)?,
        )),
        Known::CokernelFromResolutions { left, middle } => {
            need(from_c(), "Hom(C,-)")?;
            Ok(ThirdTerm::from_half(
                Position::Right,
                resolve_last_term(c, ses, middle, left, opts)?,
            ))
        }
        Known::KernelFromCoresolutions { middle, right } => {
            need(into_c(), "Hom(-,C)")?;
            Ok(ThirdTerm::from_half(
                Position::Left,
                coresolve_first_term(c, ses, middle, right, opts)?,
            ))
        }
        Known::Gorenstein { left, middle, right } => {
            need(from_c(), "Hom(C,-)")?;
            need(into_c(), "Hom(-,C)")?;
            let (position, l, r) = match (left, middle, right) {
                (Some(x), None, Some(z)) => (
                    Position::Middle,
                    resolve_middle_term(c, ses, &x.left_half(), &z.left_half(), opts)?,
                    coresolve_middle_term(c, ses, &x.right_half(), &z.right_half(), opts)?,
                ),
                (Some(x), Some(y), None) => (
                    Position::Right,
                    resolve_last_term(c, ses, &y.left_half(), &x.left_half(), opts)?,
                    coresolve_last_term(c, ses, &y.right_half(), &x.right_half(), opts)?,
                ),
                (None, Some(y), Some(z)) => (
                    Position::Left,
                    resolve_first_term(c, ses, &y.left_half(), &z.left_half(), opts)?,
                    coresolve_first_term(c, ses, &y.right_half(), &z.right_half(), opts)?,
                ),
                _ => return Err(Error::Hypothesis("exactly two complete resolutions are needed".into())),
            };
            let (complete, failure) = match CompleteResolution::from_halves(c, &l.output, &r.output) {
                Ok(w) => (Some(w), None),
                Err(e) => (None, Some(e.to_string())),
            };
            Ok(ThirdTerm {
                position,
                resolution: Some(l),
                coresolution: Some(r),
                complete,
                failure,
            })
        }
    }
}
