//! Subcategories `add(T)`, precovers and preenvelopes, Hom-exactness, Ext,
//! and strong exactness.
//!
//! Hom-exactness against `add(T)` is tested against `T` alone. This is
//! enough: `Hom(T^r, -) = Hom(T, -)^r`, and a direct summand of an exact
//! sequence of vector spaces is exact, so exactness for `T` gives exactness
//! for every object of `add(T)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modcat::{
    compact_free_cover, direct_sum, hom_basis, image, kernel, lift, Algebra, Module, Morphism, Sequence,
};
use crate::resolve::{AugmentedResolution, Direction};

/// `add(T)` for a finite list of generators; `T` is their direct sum.
#[derive(Clone, Debug)]
pub struct Subcategory {
    name: String,
    generators: Vec<Module>,
    sum: Module,
}

impl Subcategory {
    pub fn new(name: impl Into<String>, generators: Vec<Module>) -> Result<Subcategory> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Malformed("subcategory needs a generator".into()))?;
        if generators.iter().any(|g| g.algebra() != first.algebra()) {
            return Err(crate::Violation::AlgebraMismatch.into());
        }
        let sum = direct_sum(&generators).object;
        Ok(Subcategory {
            name: name.into(),
            generators,
            sum,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Module] {
        &self.generators
    }

    /// `T`, the direct sum of the generators.
    pub fn sum(&self) -> &Module {
        &self.sum
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.sum.algebra()
    }

    pub fn contains(&self, m: &Module) -> bool {
        is_in_add(self, m).is_some()
    }
}

/// An approximation map together with how many copies of each generator its
/// source (or target) uses.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub map: Morphism,
    pub multiplicities: Vec<usize>,
}

impl Approximation {
    pub fn is_epic(&self) -> bool {
        self.map.is_epi()
    }

    pub fn is_monic(&self) -> bool {
        self.map.is_mono()
    }
}

/// The evaluation map `T^r -> m` over a basis of `Hom(T, m)`.
pub fn right_approx(c: &Subcategory, m: &Module) -> Approximation {
    let basis = hom_basis(c.sum(), m);
    let map = if basis.is_empty() {
        Morphism::zero(&Module::zero(m.algebra()), m)
    } else {
        Morphism::hcat(&basis)
    };
    Approximation {
        multiplicities: vec![basis.len()],
        map,
    }
}

/// The coevaluation map `m -> T^s` over a basis of `Hom(m, T)`.
pub fn left_approx(c: &Subcategory, m: &Module) -> Approximation {
    let basis = hom_basis(m, c.sum());
    let map = if basis.is_empty() {
        Morphism::zero(m, &Module::zero(m.algebra()))
    } else {
        Morphism::vcat(&basis)
    };
    Approximation {
        multiplicities: vec![basis.len()],
        map,
    }
}

fn flatten(f: &Morphism) -> Vec<u32> {
    f.matrix().data().to_vec()
}

fn span_rank(vectors: &[Vec<u32>], len: usize, p: u32) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_columns(p, len, vectors).rank()
    }
}

/// Chosen maps `g: G_j -> m` (right) or `g: m -> G_j` (left), each tagged
/// with its generator index.
type Chosen = Vec<(usize, Morphism)>;

struct Reducer<'a> {
    c: &'a Subcategory,
    m: &'a Module,
    right: bool,
    /// `between[k][j]` is a basis of `Hom(G_k, G_j)` (right) or
    /// `Hom(G_j, G_k)` (left).
    between: Vec<Vec<Vec<Morphism>>>,
    homs: Vec<Vec<Morphism>>,
}

impl<'a> Reducer<'a> {
    fn new(c: &'a Subcategory, m: &'a Module, right: bool) -> Self {
        let gens = c.generators();
        let between = gens
            .iter()
            .map(|gk| {
                gens.iter()
                    .map(|gj| if right { hom_basis(gk, gj) } else { hom_basis(gj, gk) })
                    .collect()
            })
            .collect();
        let homs = gens
            .iter()
            .map(|g| if right { hom_basis(g, m) } else { hom_basis(m, g) })
            .collect();
        Reducer {
            c,
            m,
            right,
            between,
            homs,
        }
    }

    /// Vectors spanning the part of `Hom(G_k, m)` reachable from `chosen`.
    fn reachable(&self, k: usize, chosen: &Chosen) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for (j, g) in chosen {
            for e in &self.between[k][*j] {
                let f = if self.right { g.after(e) } else { e.after(g) };
                out.push(flatten(&f));
            }
        }
        out
    }

    fn complete(&self, chosen: &Chosen) -> bool {
        let p = self.m.modulus();
        (0..self.homs.len()).all(|k| {
            let len = self.m.dim() * self.c.generators()[k].dim();
            let reach = self.reachable(k, chosen);
            span_rank(&reach, len, p) == self.homs[k].len()
        })
    }

    fn run(&self) -> Chosen {
        let p = self.m.modulus();
        let mut chosen: Chosen = Vec::new();
        for (k, homs) in self.homs.iter().enumerate() {
            let len = self.m.dim() * self.c.generators()[k].dim();
            for h in homs {
                let mut reach = self.reachable(k, &chosen);
                let before = span_rank(&reach, len, p);
                reach.push(flatten(h));
                if span_rank(&reach, len, p) > before {
                    chosen.push((k, h.clone()));
                }
            }
        }
        let mut i = chosen.len();
        while i > 0 {
            i -= 1;
            let mut trial = chosen.clone();
            trial.remove(i);
            if self.complete(&trial) {
                chosen = trial;
            }
        }
        chosen.sort_by_key(|(k, _)| *k);
        chosen
    }
}

fn multiplicities(c: &Subcategory, chosen: &Chosen) -> Vec<usize> {
    (0..c.generators().len())
        .map(|k| chosen.iter().filter(|(j, _)| *j == k).count())
        .collect()
}

/// A right `add(T)`-approximation from a direct sum of generators, using a
/// generating set of `Hom(G_k, m)` over the maps between generators instead
/// of a whole basis. Every map from `add(T)` to `m` still factors through it.
pub fn reduced_right_approx(c: &Subcategory, m: &Module) -> Approximation {
    let chosen = Reducer::new(c, m, true).run();
    let maps: Vec<Morphism> = chosen.iter().map(|(_, g)| g.clone()).collect();
    let map = if maps.is_empty() {
        Morphism::zero(&Module::zero(m.algebra()), m)
    } else {
        Morphism::hcat(&maps)
    };
    Approximation {
        multiplicities: multiplicities(c, &chosen),
        map,
    }
}

/// Dual of [`reduced_right_approx`].
pub fn reduced_left_approx(c: &Subcategory, m: &Module) -> Approximation {
    let chosen = Reducer::new(c, m, false).run();
    let maps: Vec<Morphism> = chosen.iter().map(|(_, g)| g.clone()).collect();
    let map = if maps.is_empty() {
        Morphism::zero(m, &Module::zero(m.algebra()))
    } else {
        Morphism::vcat(&maps)
    };
    Approximation {
        multiplicities: multiplicities(c, &chosen),
        map,
    }
}

/// `m` is a summand of `carrier`, a direct sum of generators:
/// `retraction ∘ section = id_m`.
#[derive(Clone, Debug)]
pub struct AddWitness {
    pub multiplicities: Vec<usize>,
    pub section: Morphism,
    pub retraction: Morphism,
}

impl AddWitness {
    pub fn carrier(&self) -> &Module {
        self.section.target()
    }

    pub fn verify(&self) -> bool {
        self.retraction.after(&self.section).matrix().is_identity()
    }
}

/// Membership in `add(T)`: `m` is in the closure exactly when a right
/// approximation splits. The reduced approximation is tried; it splits iff
/// the full evaluation map does, since each factors through the other.
pub fn is_in_add(c: &Subcategory, m: &Module) -> Option<AddWitness> {
    let approx = reduced_right_approx(c, m);
    if !approx.is_epic() {
        return None;
    }
    let section = lift(&approx.map, &Morphism::identity(m))?;
    Some(AddWitness {
        multiplicities: approx.multiplicities,
        section,
        retraction: approx.map,
    })
}

/// Hom-exactness failure: the position is an object index of the sequence.
fn hom_inexact(side: &'static str, position: usize, image_dim: usize, kernel_dim: usize) -> Error {
    Error::HomInexact {
        side,
        position,
        image_dim,
        kernel_dim,
    }
}

/// `Hom(T, -)` applied to an exact sequence stays exact at every interior
/// position. Exactness of the sequence itself is checked first.
pub fn is_hom_from_exact(c: &Subcategory, seq: &Sequence) -> Result<()> {
    seq.is_exact()?;
    let t = c.sum();
    let p = t.modulus();
    let objs = seq.objects();
    let homs: Vec<Vec<Morphism>> = objs.iter().map(|x| hom_basis(t, x)).collect();
    let ranks: Vec<usize> = seq
        .maps()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let imgs: Vec<Vec<u32>> = homs[i].iter().map(|h| flatten(&f.after(h))).collect();
            span_rank(&imgs, f.target().dim() * t.dim(), p)
        })
        .collect();
    for i in 1..seq.len() {
        let kernel_dim = homs[i].len() - ranks[i];
        if kernel_dim != ranks[i - 1] {
            return Err(hom_inexact("Hom(C,-)", i, ranks[i - 1], kernel_dim));
        }
    }
    Ok(())
}

/// `Hom(-, T)` applied to an exact sequence stays exact at every interior
/// position.
pub fn is_hom_into_exact(c: &Subcategory, seq: &Sequence) -> Result<()> {
    seq.is_exact()?;
    let t = c.sum();
    let p = t.modulus();
    let objs = seq.objects();
    let homs: Vec<Vec<Morphism>> = objs.iter().map(|x| hom_basis(x, t)).collect();
    // ranks[i]: rank of φ -> φ ∘ f_i on Hom(X_{i+1}, T).
    let ranks: Vec<usize> = seq
        .maps()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let imgs: Vec<Vec<u32>> = homs[i + 1].iter().map(|h| flatten(&h.after(f))).collect();
            span_rank(&imgs, f.source().dim() * t.dim(), p)
        })
        .collect();
    for i in 1..seq.len() {
        let kernel_dim = homs[i].len() - ranks[i - 1];
        if kernel_dim != ranks[i] {
            return Err(hom_inexact("Hom(-,C)", i, ranks[i], kernel_dim));
        }
    }
    Ok(())
}

/// A free resolution `⋯ -> F_1 -> F_0 -> m` built from greedy generating
/// sets, so `F_i = Λ^{ranks[i]}`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: Module,
    /// `maps[0]: F_0 -> m`, `maps[i]: F_i -> F_{i-1}`.
    pub maps: Vec<Morphism>,
    pub ranks: Vec<usize>,
}

impl FreeResolution {
    /// Terms `F_0..=F_len`.
    pub fn new(m: &Module, len: usize) -> FreeResolution {
        let mut maps = Vec::with_capacity(len + 1);
        let mut ranks = Vec::with_capacity(len + 1);
        let d = m.algebra().dim();
        let cover = compact_free_cover(m);
        ranks.push(cover.source().dim() / d);
        maps.push(cover);
        for _ in 0..len {
            let prev = maps.last().unwrap();
            let (k, inc) = kernel(prev);
            let cover = compact_free_cover(&k);
            ranks.push(cover.source().dim() / d);
            maps.push(inc.after(&cover));
        }
        FreeResolution {
            module: m.clone(),
            maps,
            ranks,
        }
    }

    /// Matrix of `Hom(F_i, n) -> Hom(F_{i+1}, n)` on `n^{g_i} -> n^{g_{i+1}}`.
    fn coboundary(&self, i: usize, n: &Module) -> Matrix {
        let alg = n.algebra();
        let d = alg.dim();
        let p = n.modulus();
        let (gi, gj) = (self.ranks[i], self.ranks[i + 1]);
        let dmat = self.maps[i + 1].matrix();
        let mut out = Matrix::zeros(p, gj * n.dim(), gi * n.dim());
        for j in 0..gj {
            // Image of the j-th free generator (the unit in copy j).
            let mut unit = vec![0u32; gj * d];
            unit[j * d..(j + 1) * d].copy_from_slice(alg.unit());
            let image = dmat.mul_vec(&unit);
            for k in 0..gi {
                let block = n.act_element(&image[k * d..(k + 1) * d]);
                out.set_block(j * n.dim(), k * n.dim(), &block);
            }
        }
        out
    }

    /// `dim Ext^i(m, n)` for `i = 0..=upto`; needs `upto + 1` syzygy steps.
    pub fn ext_dims(&self, n: &Module, upto: usize) -> Vec<usize> {
        assert!(self.maps.len() > upto + 1, "resolution too short");
        let mut prev_rank = 0;
        let mut dims = Vec::with_capacity(upto + 1);
        for i in 0..=upto {
            let delta = self.coboundary(i, n);
            let r = delta.rank();
            dims.push(self.ranks[i] * n.dim() - r - prev_rank);
            prev_rank = r;
        }
        dims
    }
}

/// `dim Ext^i(source, target)` for `i = 0..=upto`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub dims: Vec<usize>,
}

impl ExtTable {
    /// Largest degree `>= 1` with a nonzero entry.
    pub fn last_nonzero(&self) -> Option<usize> {
        (1..self.dims.len()).rev().find(|&i| self.dims[i] != 0)
    }

    pub fn vanishes_above_zero(&self) -> bool {
        self.last_nonzero().is_none()
    }
}

pub fn ext_dims(m: &Module, n: &Module, upto: usize) -> ExtTable {
    let res = FreeResolution::new(m, upto + 1);
    ExtTable {
        dims: res.ext_dims(n, upto),
    }
}

pub fn ext1(m: &Module, n: &Module) -> usize {
    ext_dims(m, n, 1).dims[1]
}

/// Which functor a strong-exactness check is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `Ext^1(T, K_i) = 0` on a resolution.
    FromC,
    /// `Ext^1(K^i, T) = 0` on a coresolution.
    IntoC,
}

/// Strong exactness: exactness plus `Ext^1(T, K_i) = 0` for every
/// `K_i = Im(X_i -> X_{i-1})`, `i >= 1` (dually for coresolutions).
pub fn is_strongly_exact(c: &Subcategory, res: &AugmentedResolution, side: Side) -> Result<()> {
    match (side, res.direction()) {
        (Side::FromC, Direction::Resolution) | (Side::IntoC, Direction::Coresolution) => {}
        _ => {
            return Err(Error::Hypothesis(
                "strong exactness side does not match the resolution direction".into(),
            ))
        }
    }
    res.as_sequence().is_exact()?;
    for (i, f) in res.maps().iter().enumerate().skip(1) {
        let k = image(f).object;
        let e = match side {
            Side::FromC => ext1(c.sum(), &k),
            Side::IntoC => ext1(&k, c.sum()),
        };
        if e != 0 {
            return Err(Error::ExtNonzero {
                index: i,
                degree: 1,
                dim: e,
            });
        }
    }
    Ok(())
}
