//! Finite-dimensional algebras given by structure constants, their left
//! modules, and the abelian-category operations on them.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, Violation};
use crate::linalg::{is_prime, Matrix, MatrixEquation, MAX_MODULUS};

/// A symbolic description an algebra's multiplication table can be checked
/// against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `k[x]/(x^degree)` on the basis `1, x, ..., x^(degree-1)`.
    TruncatedPolynomial { degree: usize },
    /// Path algebra of an acyclic quiver. Basis: vertex idempotents, then
    /// paths by increasing length. Arrows are `(tail, head)`; products
    /// compose right to left, so `b * a` is "a then b".
    PathAlgebra {
        vertices: usize,
        arrows: Vec<(usize, usize)>,
    },
}

/// The basis, unit vector and flattened structure constants of a presentation.
pub struct Table {
    pub basis: Vec<String>,
    pub unit: Vec<u32>,
    pub mult: Vec<u32>,
}

impl Presentation {
    pub fn table(&self, p: u32) -> Result<Table, Violation> {
        match self {
            Presentation::TruncatedPolynomial { degree } => {
                let d = *degree;
                if d == 0 {
                    return Err(Violation::BadPresentation("degree must be positive".into()));
                }
                let mut mult = vec![0; d * d * d];
                for i in 0..d {
                    for j in 0..d {
                        if i + j < d {
                            mult[(i * d + j) * d + i + j] = 1 % p;
                        }
                    }
                }
                let mut unit = vec![0; d];
                unit[0] = 1 % p;
                let basis = (0..d)
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "x".to_string(),
                        _ => format!("x^{i}"),
                    })
                    .collect();
                Ok(Table { basis, unit, mult })
            }
            Presentation::PathAlgebra { vertices, arrows } => path_table(*vertices, arrows, p),
        }
    }
}

#[derive(Clone)]
struct Path {
    tail: usize,
    head: usize,
    arrows: Vec<usize>,
}

fn path_table(vertices: usize, arrows: &[(usize, usize)], p: u32) -> Result<Table, Violation> {
    if arrows.iter().any(|&(t, h)| t >= vertices || h >= vertices) {
        return Err(Violation::BadPresentation("arrow endpoint out of range".into()));
    }
    let mut paths: Vec<Path> = (0..vertices)
        .map(|v| Path {
            tail: v,
            head: v,
            arrows: vec![],
        })
        .collect();
    let mut frontier: Vec<Path> = arrows
        .iter()
        .enumerate()
        .map(|(a, &(t, h))| Path {
            tail: t,
            head: h,
            arrows: vec![a],
        })
        .collect();
    let mut length = 1;
    while !frontier.is_empty() {
        if length > vertices {
            return Err(Violation::BadPresentation("quiver has an oriented cycle".into()));
        }
        let mut next = Vec::new();
        for path in &frontier {
            for (a, &(t, h)) in arrows.iter().enumerate() {
                if t == path.head {
                    let mut arr = path.arrows.clone();
                    arr.push(a);
                    next.push(Path {
                        tail: path.tail,
                        head: h,
                        arrows: arr,
                    });
                }
            }
        }
        paths.extend(frontier);
        frontier = next;
        length += 1;
    }
    let d = paths.len();
    let index = |tail: usize, head: usize, arr: &[usize]| {
        paths
            .iter()
            .position(|q| q.tail == tail && q.head == head && q.arrows == arr)
    };
    let mut mult = vec![0; d * d * d];
    for (i, q) in paths.iter().enumerate() {
        for (j, r) in paths.iter().enumerate() {
            // q * r means r first, then q.
            if r.head != q.tail {
                continue;
            }
            let mut arr = r.arrows.clone();
            arr.extend_from_slice(&q.arrows);
            let k = index(r.tail, q.head, &arr).expect("path closure");
            mult[(i * d + j) * d + k] = 1 % p;
        }
    }
    let mut unit = vec![0; d];
    unit[..vertices].iter_mut().for_each(|u| *u = 1 % p);
    let basis = paths
        .iter()
        .map(|q| {
            if q.arrows.is_empty() {
                format!("e{}", q.tail)
            } else {
                q.arrows
                    .iter()
                    .rev()
                    .map(|a| format!("a{a}"))
                    .collect::<Vec<_>>()
                    .join("*")
            }
        })
        .collect();
    Ok(Table { basis, unit, mult })
}

/// A finite-dimensional associative unital algebra over GF(p).
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    p: u32,
    dim: usize,
    basis: Vec<String>,
    unit: Vec<u32>,
    mult: Vec<u32>,
    presentation: Option<Presentation>,
    generators: Vec<usize>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dim == other.dim && self.unit == other.unit && self.mult == other.mult
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Assembles an algebra, checking only shapes and the modulus. Call
    /// [`Algebra::validate`] for the ring axioms.
    pub fn from_parts(
        name: impl Into<String>,
        p: u64,
        unit: Vec<u32>,
        mult: Vec<u32>,
        basis: Option<Vec<String>>,
        presentation: Option<Presentation>,
    ) -> Result<Algebra, Violation> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Violation::NotPrime(p));
        }
        let p = p as u32;
        let dim = unit.len();
        if mult.len() != dim * dim * dim {
            return Err(Violation::Shape {
                what: "structure constants".into(),
                expected: dim * dim * dim,
                found: mult.len(),
            });
        }
        let basis = basis.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if basis.len() != dim {
            return Err(Violation::Shape {
                what: "basis names".into(),
                expected: dim,
                found: basis.len(),
            });
        }
        let mut alg = Algebra {
            name: name.into(),
            p,
            dim,
            basis,
            unit: unit.into_iter().map(|v| v % p).collect(),
            mult: mult.into_iter().map(|v| v % p).collect(),
            presentation,
            generators: Vec::new(),
        };
        alg.generators = (0..dim).collect();
        Ok(alg)
    }

    /// Validated algebra from explicit structure constants.
    pub fn new(
        name: impl Into<String>,
        p: u64,
        unit: Vec<u32>,
        mult: Vec<u32>,
        basis: Option<Vec<String>>,
        presentation: Option<Presentation>,
    ) -> Result<Arc<Algebra>, Violation> {
        let mut alg = Algebra::from_parts(name, p, unit, mult, basis, presentation)?;
        alg.validate()?;
        alg.generators = alg.compute_generators();
        Ok(Arc::new(alg))
    }

    /// Validated algebra whose table is generated from `presentation`.
    pub fn from_presentation(
        name: impl Into<String>,
        p: u64,
        presentation: Presentation,
    ) -> Result<Arc<Algebra>, Violation> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Violation::NotPrime(p));
        }
        let t = presentation.table(p as u32)?;
        Algebra::new(name, p, t.unit, t.mult, Some(t.basis), Some(presentation))
    }

    /// Checks associativity on every basis triple, the unit on every basis
    /// element, and agreement with the declared presentation.
    pub fn validate(&self) -> Result<(), Violation> {
        let d = self.dim;
        let e = |i: usize| {
            let mut v = vec![0; d];
            v[i] = 1 % self.p;
            v
        };
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(&e(i), &e(j));
                for k in 0..d {
                    let left = self.product(&ij, &e(k));
                    let right = self.product(&e(i), &self.product(&e(j), &e(k)));
                    if left != right {
                        return Err(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            if self.product(&self.unit, &e(i)) != e(i) || self.product(&e(i), &self.unit) != e(i) {
                return Err(Violation::Unit(i));
            }
        }
        if let Some(pres) = &self.presentation {
            let t = pres.table(self.p)?;
            if t.unit.len() != d {
                return Err(Violation::Shape {
                    what: "presentation dimension".into(),
                    expected: t.unit.len(),
                    found: d,
                });
            }
            for i in 0..d {
                for j in 0..d {
                    let a = &self.mult[(i * d + j) * d..(i * d + j + 1) * d];
                    let b = &t.mult[(i * d + j) * d..(i * d + j + 1) * d];
                    if a != b {
                        return Err(Violation::Presentation { i, j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy set of basis elements generating the algebra with the unit.
    /// Module maps need only commute with these.
    fn compute_generators(&self) -> Vec<usize> {
        let d = self.dim;
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.closure(&gens);
        for i in 0..d {
            if span.rank() == d {
                break;
            }
            let mut e = vec![0; d];
            e[i] = 1;
            let cand = span.hstack(&Matrix::from_columns(self.p, d, &[e]));
            if cand.rank() > span.rank() {
                gens.push(i);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Matrix {
        let d = self.dim;
        let mut cols = vec![self.unit.clone()];
        for &g in gens {
            let mut e = vec![0; d];
            e[g] = 1;
            cols.push(e);
        }
        let mut span = Matrix::from_columns(self.p, d, &cols).column_space();
        loop {
            let mut more = Vec::new();
            for c in 0..span.cols() {
                let v = span.column(c);
                for &g in gens {
                    more.push(self.left_mult(g).mul_vec(&v));
                }
            }
            let next = span.hstack(&Matrix::from_columns(self.p, d, &more)).column_space();
            if next.cols() == span.cols() {
                return span;
            }
            span = next;
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Coefficient of `e_k` in `e_i * e_j`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.mult[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[u32] {
        &self.mult
    }

    pub fn product(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let p = self.p as u64;
        let mut out = vec![0u64; d];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                if b[j] == 0 {
                    continue;
                }
                let s = a[i] as u64 * b[j] as u64 % p;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.mult[(i * d + j) * d + k] as u64;
                    if c != 0 {
                        *o = (*o + s * c) % p;
                    }
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    /// Matrix of `v -> e_i * v` on the basis.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(self.p, d, d);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.constant(i, j, k));
            }
        }
        m
    }

    /// Matrix of `v -> v * e_i` on the basis.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(self.p, d, d);
        for j in 0..d {
            for k in 0..d {
                m.set(k, j, self.constant(j, i, k));
            }
        }
        m
    }

    /// The opposite algebra, with `e_i *op e_j = e_j * e_i`.
    pub fn opposite(&self) -> Arc<Algebra> {
        let d = self.dim;
        let mut mult = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    mult[(i * d + j) * d + k] = self.constant(j, i, k);
                }
            }
        }
        let mut op = Algebra {
            name: format!("{}^op", self.name),
            p: self.p,
            dim: d,
            basis: self.basis.clone(),
            unit: self.unit.clone(),
            mult,
            presentation: None,
            generators: Vec::new(),
        };
        op.generators = op.compute_generators();
        Arc::new(op)
    }
}

struct ModuleData {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

/// A finite-dimensional left module: one `dim x dim` action matrix per
/// algebra basis element. Cheap to clone.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dim == other.0.dim
                && self.0.action == other.0.action
                && (Arc::ptr_eq(&self.0.algebra, &other.0.algebra) || self.0.algebra == other.0.algebra))
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module[{} dim {}]", self.0.algebra.name, self.0.dim)
    }
}

impl Module {
    /// Assembles a module, checking only matrix shapes.
    pub fn from_parts(algebra: &Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module, Violation> {
        if action.len() != algebra.dim {
            return Err(Violation::Shape {
                what: "action matrices".into(),
                expected: algebra.dim,
                found: action.len(),
            });
        }
        for a in &action {
            if a.shape() != (dim, dim) {
                return Err(Violation::Shape {
                    what: "action matrix entries".into(),
                    expected: dim * dim,
                    found: a.rows() * a.cols(),
                });
            }
        }
        Ok(Module::unchecked(algebra, dim, action))
    }

    pub fn new(algebra: &Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module, Violation> {
        let m = Module::from_parts(algebra, dim, action)?;
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn unchecked(algebra: &Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Module {
        Module(Arc::new(ModuleData {
            algebra: algebra.clone(),
            dim,
            action,
        }))
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let p = algebra.p;
        Module::unchecked(algebra, 0, vec![Matrix::zeros(p, 0, 0); algebra.dim])
    }

    /// The algebra as a left module over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let action = (0..algebra.dim).map(|i| algebra.left_mult(i)).collect();
        Module::unchecked(algebra, algebra.dim, action)
    }

    /// `Λ^n`.
    pub fn free(algebra: &Arc<Algebra>, n: usize) -> Module {
        if n == 0 {
            return Module::zero(algebra);
        }
        let reg = Module::regular(algebra);
        direct_sum(&vec![reg; n]).object
    }

    /// Checks the structure-constant relations and the unit.
    pub fn validate(&self) -> Result<(), Violation> {
        let alg = &self.0.algebra;
        let d = alg.dim;
        for i in 0..d {
            for j in 0..d {
                let lhs = self.0.action[i].mul(&self.0.action[j]);
                let coeffs: Vec<u32> = (0..d).map(|k| alg.constant(i, j, k)).collect();
                if lhs != self.act_element(&coeffs) {
                    return Err(Violation::ModuleRelation { i, j });
                }
            }
        }
        if !self.act_element(&alg.unit).is_identity() {
            return Err(Violation::ModuleUnit);
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn modulus(&self) -> u32 {
        self.0.algebra.p
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn act(&self, i: usize) -> &Matrix {
        &self.0.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    /// Action of `sum_l coeffs[l] e_l`.
    pub fn act_element(&self, coeffs: &[u32]) -> Matrix {
        let p = self.modulus();
        let mut out = Matrix::zeros(p, self.0.dim, self.0.dim);
        for (l, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.0.action[l].scale(c));
            }
        }
        out
    }

    fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0.algebra, &other.0.algebra) || self.0.algebra == other.0.algebra
    }

    /// Matrices `A` with `A * x` in the submodule generated by the columns of
    /// `vectors`; returns a basis of that submodule as columns.
    pub fn submodule_span(&self, vectors: &Matrix) -> Matrix {
        let p = self.modulus();
        let mut span = vectors.column_space();
        loop {
            let mut cols = Vec::new();
            for c in 0..span.cols() {
                let v = span.column(c);
                for &g in self.0.algebra.generators() {
                    cols.push(self.0.action[g].mul_vec(&v));
                }
            }
            let next = span.hstack(&Matrix::from_columns(p, self.0.dim, &cols)).column_space();
            if next.cols() == span.cols() {
                return span;
            }
            span = next;
        }
    }

    /// Greedy generating set: standard basis vectors added in order whenever
    /// they leave the submodule generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let p = self.modulus();
        let n = self.0.dim;
        let mut chosen: Vec<usize> = Vec::new();
        let mut span = Matrix::zeros(p, n, 0);
        for k in 0..n {
            if span.cols() == n {
                break;
            }
            let mut e = vec![0; n];
            e[k] = 1;
            let test = span.hstack(&Matrix::from_columns(p, n, &[e]));
            if test.rank() > span.cols() {
                chosen.push(k);
                let gens: Vec<Vec<u32>> = chosen
                    .iter()
                    .map(|&c| {
                        let mut v = vec![0; n];
                        v[c] = 1;
                        v
                    })
                    .collect();
                span = self.submodule_span(&Matrix::from_columns(p, n, &gens));
            }
        }
        chosen
    }
}

/// A module homomorphism, stored as a `target.dim x source.dim` matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism[{} -> {}] {:?}",
            self.source.dim(),
            self.target.dim(),
            self.matrix
        )
    }
}

impl Morphism {
    /// Checks shape and the intertwining identity on every basis element.
    pub fn new(source: &Module, target: &Module, matrix: Matrix) -> Result<Morphism, Violation> {
        let m = Morphism::from_parts(source, target, matrix)?;
        m.validate()?;
        Ok(m)
    }

    pub fn from_parts(source: &Module, target: &Module, matrix: Matrix) -> Result<Morphism, Violation> {
        if !source.same_algebra(target) {
            return Err(Violation::AlgebraMismatch);
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Violation::Shape {
                what: "morphism matrix entries".into(),
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        Ok(Morphism::unchecked(source, target, matrix))
    }

    pub fn validate(&self) -> Result<(), Violation> {
        for i in 0..self.source.algebra().dim() {
            if self.matrix.mul(self.source.act(i)) != self.target.act(i).mul(&self.matrix) {
                return Err(Violation::NotIntertwining(i));
            }
        }
        Ok(())
    }

    pub(crate) fn unchecked(source: &Module, target: &Module, matrix: Matrix) -> Morphism {
        debug_assert_eq!(matrix.shape(), (target.dim(), source.dim()));
        Morphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        Morphism::unchecked(
            source,
            target,
            Matrix::zeros(source.modulus(), target.dim(), source.dim()),
        )
    }

    pub fn identity(m: &Module) -> Morphism {
        Morphism::unchecked(m, m, Matrix::identity(m.modulus(), m.dim()))
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_mono()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        assert!(first.target == self.source, "composition of non-composable morphisms");
        Morphism::unchecked(&first.source, &self.target, self.matrix.mul(&first.matrix))
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert!(self.source == other.source && self.target == other.target);
        Morphism::unchecked(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        assert!(self.source == other.source && self.target == other.target);
        Morphism::unchecked(&self.source, &self.target, self.matrix.sub(&other.matrix))
    }

    pub fn neg(&self) -> Morphism {
        Morphism::unchecked(&self.source, &self.target, self.matrix.neg())
    }

    pub fn scale(&self, s: u32) -> Morphism {
        Morphism::unchecked(&self.source, &self.target, self.matrix.scale(s))
    }

    /// Same matrix, reinterpreted between equal modules.
    pub fn retype(&self, source: &Module, target: &Module) -> Morphism {
        assert!(*source == self.source && *target == self.target);
        Morphism::unchecked(source, target, self.matrix.clone())
    }

    /// `(f_1, ..., f_k): ⊕ sources -> common target`.
    pub fn hcat(parts: &[Morphism]) -> Morphism {
        let target = parts[0].target.clone();
        let sources: Vec<Module> = parts.iter().map(|f| f.source.clone()).collect();
        let mut mat = Matrix::zeros(target.modulus(), target.dim(), 0);
        for f in parts {
            assert!(f.target == target);
            mat = mat.hstack(&f.matrix);
        }
        Morphism::unchecked(&direct_sum(&sources).object, &target, mat)
    }

    /// `(f_1, ..., f_k)^T: common source -> ⊕ targets`.
    pub fn vcat(parts: &[Morphism]) -> Morphism {
        let source = parts[0].source.clone();
        let targets: Vec<Module> = parts.iter().map(|f| f.target.clone()).collect();
        let mut mat = Matrix::zeros(source.modulus(), 0, source.dim());
        for f in parts {
            assert!(f.source == source);
            mat = mat.vstack(&f.matrix);
        }
        Morphism::unchecked(&source, &direct_sum(&targets).object, mat)
    }

    /// `f_1 ⊕ ... ⊕ f_k`.
    pub fn diag(parts: &[Morphism]) -> Morphism {
        let sources: Vec<Module> = parts.iter().map(|f| f.source.clone()).collect();
        let targets: Vec<Module> = parts.iter().map(|f| f.target.clone()).collect();
        let p = parts[0].source.modulus();
        let blocks: Vec<&Matrix> = parts.iter().map(|f| &f.matrix).collect();
        Morphism::unchecked(
            &direct_sum(&sources).object,
            &direct_sum(&targets).object,
            Matrix::block_diag(p, &blocks),
        )
    }
}

/// Basis of `Hom(m, n)`, solved from the intertwining system on the algebra
/// generators.
pub fn hom_basis(m: &Module, n: &Module) -> Vec<Morphism> {
    assert!(m.same_algebra(n), "hom between modules over different algebras");
    if m.dim() == 0 || n.dim() == 0 {
        return Vec::new();
    }
    let mut eq = MatrixEquation::new(m.modulus(), n.dim(), m.dim());
    for &g in m.algebra().generators() {
        eq.push_commutes(n.act(g), m.act(g));
    }
    eq.solve()
        .homogeneous
        .into_iter()
        .map(|x| Morphism::unchecked(m, n, x))
        .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    hom_basis(m, n).len()
}

/// Submodule spanned by the columns of `basis` (independent, invariant).
fn submodule(m: &Module, basis: Matrix) -> (Module, Morphism) {
    let k = basis.cols();
    let linv = basis.left_inverse().expect("independent columns");
    let action = m.actions().iter().map(|a| linv.mul(&a.mul(&basis))).collect();
    let sub = Module::unchecked(m.algebra(), k, action);
    let inc = Morphism::unchecked(&sub, m, basis);
    (sub, inc)
}

/// Quotient by the row space complement: `q` has independent rows and its
/// kernel is a submodule.
fn quotient(m: &Module, q: Matrix) -> (Module, Morphism) {
    let r = q.right_inverse().expect("independent rows");
    let action = m.actions().iter().map(|a| q.mul(&a.mul(&r))).collect();
    let quo = Module::unchecked(m.algebra(), q.rows(), action);
    let proj = Morphism::unchecked(m, &quo, q);
    (quo, proj)
}

pub fn kernel(f: &Morphism) -> (Module, Morphism) {
    submodule(&f.source, f.matrix.kernel_basis())
}

pub fn cokernel(f: &Morphism) -> (Module, Morphism) {
    let q = f.matrix.transpose().kernel_basis().transpose();
    quotient(&f.target, q)
}

/// Image factorization `f = mono ∘ epi`.
#[derive(Clone, Debug)]
pub struct Image {
    pub object: Module,
    pub epi: Morphism,
    pub mono: Morphism,
}

pub fn image(f: &Morphism) -> Image {
    let (object, mono) = submodule(&f.target, f.matrix.column_space());
    let linv = mono.matrix.left_inverse().expect("independent columns");
    let epi = Morphism::unchecked(&f.source, &object, linv.mul(&f.matrix));
    Image { object, epi, mono }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: Module,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// Block-diagonal direct sum. An empty list is not allowed since the algebra
/// would be unknown.
pub fn direct_sum(ms: &[Module]) -> DirectSum {
    assert!(!ms.is_empty(), "direct sum of an empty family");
    if ms.len() == 1 {
        let id = Morphism::identity(&ms[0]);
        return DirectSum {
            object: ms[0].clone(),
            injections: vec![id.clone()],
            projections: vec![id],
        };
    }
    let alg = ms[0].algebra().clone();
    let p = alg.p;
    let total: usize = ms.iter().map(|m| m.dim()).sum();
    let action = (0..alg.dim)
        .map(|i| {
            let blocks: Vec<&Matrix> = ms.iter().map(|m| m.act(i)).collect();
            Matrix::block_diag(p, &blocks)
        })
        .collect();
    let object = Module::unchecked(&alg, total, action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in ms {
        assert!(m.same_algebra(&object), "direct sum over different algebras");
        let mut inj = Matrix::zeros(p, total, m.dim());
        inj.set_block(off, 0, &Matrix::identity(p, m.dim()));
        projections.push(Morphism::unchecked(&object, m, inj.transpose()));
        injections.push(Morphism::unchecked(m, &object, inj));
        off += m.dim();
    }
    DirectSum {
        object,
        injections,
        projections,
    }
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Module,
    pub p1: Morphism,
    pub p2: Morphism,
}

/// Pullback of `f: X -> Y` and `g: N -> Y`, as the kernel of `(f, -g)`.
pub fn pullback(f: &Morphism, g: &Morphism) -> Pullback {
    assert!(f.target == g.target, "pullback needs a common target");
    let both = Morphism::hcat(&[f.clone(), g.neg()]);
    let (object, inc) = kernel(&both);
    let xd = f.source.dim();
    let nd = g.source.dim();
    let k = object.dim();
    let p1 = Morphism::unchecked(&object, &f.source, inc.matrix.block(0, 0, xd, k));
    let p2 = Morphism::unchecked(&object, &g.source, inc.matrix.block(xd, 0, nd, k));
    Pullback { object, p1, p2 }
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Module,
    pub q1: Morphism,
    pub q2: Morphism,
}

/// Pushout of `f1: M -> N` and `g1: M -> X`, as the cokernel of
/// `(f1, -g1)^T`.
pub fn pushout(f1: &Morphism, g1: &Morphism) -> Pushout {
    assert!(f1.source == g1.source, "pushout needs a common source");
    let both = Morphism::vcat(&[f1.clone(), g1.neg()]);
    let (object, proj) = cokernel(&both);
    let nd = f1.target.dim();
    let xd = g1.target.dim();
    let k = object.dim();
    let q1 = Morphism::unchecked(&f1.target, &object, proj.matrix.block(0, 0, k, nd));
    let q2 = Morphism::unchecked(&g1.target, &object, proj.matrix.block(0, nd, k, xd));
    Pushout { object, q1, q2 }
}

/// `g` with `mono ∘ g = f`, if the image of `f` lies in the image of `mono`.
pub fn factor_through_mono(mono: &Morphism, f: &Morphism) -> Option<Morphism> {
    assert!(mono.target == f.target);
    let g = mono.matrix.solve_matrix(&f.matrix)?;
    Some(Morphism::unchecked(&f.source, &mono.source, g))
}

/// `g` with `g ∘ epi = f`, if `f` kills the kernel of `epi`.
pub fn factor_through_epi(epi: &Morphism, f: &Morphism) -> Option<Morphism> {
    assert!(epi.source == f.source);
    let gt = epi.matrix.transpose().solve_matrix(&f.matrix.transpose())?;
    Some(Morphism::unchecked(&epi.target, &f.target, gt.transpose()))
}

/// A module map `h` with `g ∘ h = phi`. Among all solutions, the one with
/// every free variable of the row-reduced system set to zero.
pub fn lift(g: &Morphism, phi: &Morphism) -> Option<Morphism> {
    assert!(g.target == phi.target);
    let (a, b) = (&phi.source, &g.source);
    let p = a.modulus();
    let mut eq = MatrixEquation::new(p, b.dim(), a.dim());
    for &i in a.algebra().generators() {
        eq.push_commutes(b.act(i), a.act(i));
    }
    eq.push(&[(&g.matrix, &Matrix::identity(p, a.dim()))], &phi.matrix);
    let h = eq.solve().particular?;
    Some(Morphism::unchecked(a, b, h))
}

/// A module map `k` with `k ∘ f = phi`, chosen like [`lift`].
pub fn extend(f: &Morphism, phi: &Morphism) -> Option<Morphism> {
    assert!(f.source == phi.source);
    let (b, d) = (&f.target, &phi.target);
    let p = b.modulus();
    let mut eq = MatrixEquation::new(p, d.dim(), b.dim());
    for &i in b.algebra().generators() {
        eq.push_commutes(d.act(i), b.act(i));
    }
    eq.push(&[(&Matrix::identity(p, d.dim()), &f.matrix)], &phi.matrix);
    let k = eq.solve().particular?;
    Some(Morphism::unchecked(b, d, k))
}

/// `Λ^g -> m` sending the k-th free generator to `vectors[k]`.
pub fn free_map(m: &Module, vectors: &[Vec<u32>]) -> Morphism {
    let alg = m.algebra();
    let d = alg.dim();
    let free = Module::free(alg, vectors.len());
    let mut mat = Matrix::zeros(m.modulus(), m.dim(), d * vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        for l in 0..d {
            let col = m.act(l).mul_vec(v);
            for (r, &x) in col.iter().enumerate() {
                mat.set(r, k * d + l, x);
            }
        }
    }
    Morphism::unchecked(&free, m, mat)
}

/// `Λ^{dim m} -> m`, the i-th free generator going to the i-th basis vector.
pub fn free_cover(m: &Module) -> Morphism {
    let n = m.dim();
    let vectors: Vec<Vec<u32>> = (0..n)
        .map(|k| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        })
        .collect();
    free_map(m, &vectors)
}

/// Free cover on the greedy generating set of `m`.
pub fn compact_free_cover(m: &Module) -> Morphism {
    let n = m.dim();
    let vectors: Vec<Vec<u32>> = m
        .generating_set()
        .into_iter()
        .map(|k| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        })
        .collect();
    free_map(m, &vectors)
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub object: Module,
    pub section: Morphism,
    pub retraction: Morphism,
}

/// The summand cut out by an idempotent endomorphism.
pub fn split_summand(m: &Module, e: &Morphism) -> Result<Summand> {
    assert!(e.source == *m && e.target == *m);
    if e.after(e) != *e {
        return Err(Error::NotIdempotent);
    }
    let im = image(e);
    Ok(Summand {
        object: im.object,
        section: im.mono,
        retraction: im.epi,
    })
}

/// A pair of mutually inverse morphisms.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub forward: Morphism,
    pub backward: Morphism,
}

const EXHAUSTIVE_LIMIT: u64 = 4096;
const RANDOM_TRIALS: usize = 512;

/// Searches `Hom(a, b)` for an invertible map: exhaustively when the space
/// has at most 4096 elements, otherwise by seeded random combinations. A
/// `None` from the random branch is not a proof of non-isomorphism.
pub fn find_isomorphism(a: &Module, b: &Module) -> Option<Isomorphism> {
    if a.dim() != b.dim() || !a.same_algebra(b) {
        return None;
    }
    if a == b {
        let id = Matrix::identity(a.modulus(), a.dim());
        return Some(Isomorphism {
            forward: Morphism::unchecked(a, b, id.clone()),
            backward: Morphism::unchecked(b, a, id),
        });
    }
    let basis = hom_basis(a, b);
    if a.dim() == 0 {
        return Some(Isomorphism {
            forward: Morphism::zero(a, b),
            backward: Morphism::zero(b, a),
        });
    }
    if basis.is_empty() || hom_dim(b, a) != basis.len() {
        return None;
    }
    let p = a.modulus();
    let h = basis.len();
    let try_coeffs = |coeffs: &[u32]| -> Option<Isomorphism> {
        let mut mat = Matrix::zeros(p, b.dim(), a.dim());
        for (c, f) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                mat = mat.add(&f.matrix.scale(*c));
            }
        }
        let inv = mat.inverse()?;
        Some(Isomorphism {
            forward: Morphism::unchecked(a, b, mat),
            backward: Morphism::unchecked(b, a, inv),
        })
    };
    let space = (p as u64).checked_pow(h as u32);
    if matches!(space, Some(s) if s <= EXHAUSTIVE_LIMIT) {
        let mut coeffs = vec![0u32; h];
        loop {
            let mut i = 0;
            while i < h {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == h {
                return None;
            }
            if let Some(iso) = try_coeffs(&coeffs) {
                return Some(iso);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d150 ^ (a.dim() as u64) << 8 ^ h as u64);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        if let Some(iso) = try_coeffs(&coeffs) {
            return Some(iso);
        }
    }
    None
}

/// A composable chain of morphisms; object `i` is the source of map `i`, the
/// last object is the target of the last map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    maps: Vec<Morphism>,
}

/// Object positions at which exactness was verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCertificate {
    pub positions: Vec<usize>,
}

impl Sequence {
    pub fn new(maps: Vec<Morphism>) -> Result<Sequence> {
        if maps.is_empty() {
            return Err(Error::Malformed("empty sequence".into()));
        }
        for i in 1..maps.len() {
            if maps[i - 1].target != maps[i].source {
                return Err(Violation::NotComposable(i - 1, i).into());
            }
        }
        Ok(Sequence { maps })
    }

    /// `0 -> objects... -> 0` is represented by adding zero maps at both ends.
    pub fn bounded(maps: Vec<Morphism>) -> Result<Sequence> {
        let first = maps.first().ok_or_else(|| Error::Malformed("empty sequence".into()))?;
        let last = maps.last().unwrap();
        let z = Module::zero(first.source.algebra());
        let mut all = vec![Morphism::zero(&z, &first.source)];
        all.extend(maps.iter().cloned());
        all.push(Morphism::zero(&last.target, &z));
        Sequence::new(all)
    }

    pub fn maps(&self) -> &[Morphism] {
        &self.maps
    }

    pub fn objects(&self) -> Vec<Module> {
        let mut objs: Vec<Module> = self.maps.iter().map(|f| f.source.clone()).collect();
        objs.push(self.maps.last().unwrap().target.clone());
        objs
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Exactness at every interior object.
    pub fn is_exact(&self) -> Result<ExactCertificate> {
        let positions: Vec<usize> = (1..self.maps.len()).collect();
        self.is_exact_at(&positions)
    }

    pub fn is_exact_at(&self, positions: &[usize]) -> Result<ExactCertificate> {
        for &i in positions {
            assert!(i >= 1 && i < self.maps.len(), "position {i} is not interior");
            let (f, g) = (&self.maps[i - 1], &self.maps[i]);
            let image_dim = f.rank();
            let kernel_dim = g.source.dim() - g.rank();
            if image_dim != kernel_dim || !g.matrix.mul(&f.matrix).is_zero() {
                return Err(Error::Inexact {
                    position: i,
                    image_dim,
                    kernel_dim,
                });
            }
        }
        Ok(ExactCertificate {
            positions: positions.to_vec(),
        })
    }
}

/// `0 -> A -f-> B -g-> C -> 0`, exact by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSeq {
    f: Morphism,
    g: Morphism,
}

impl ShortExactSeq {
    pub fn new(f: Morphism, g: Morphism) -> Result<ShortExactSeq> {
        let seq = Sequence::bounded(vec![f.clone(), g.clone()])?;
        seq.is_exact()?;
        Ok(ShortExactSeq { f, g })
    }

    /// `0 -> A -> A ⊕ C -> C -> 0`.
    pub fn split(a: &Module, c: &Module) -> ShortExactSeq {
        let s = direct_sum(&[a.clone(), c.clone()]);
        ShortExactSeq {
            f: s.injections[0].clone(),
            g: s.projections[1].clone(),
        }
    }

    /// `0 -> ker f -> A -> Im f -> 0` style constructor from a mono alone.
    pub fn from_mono(f: &Morphism) -> ShortExactSeq {
        assert!(f.is_mono());
        let (_, g) = cokernel(f);
        ShortExactSeq { f: f.clone(), g }
    }

    pub fn from_epi(g: &Morphism) -> ShortExactSeq {
        assert!(g.is_epi());
        let (_, f) = kernel(g);
        ShortExactSeq { f, g: g.clone() }
    }

    pub fn mono(&self) -> &Morphism {
        &self.f
    }

    pub fn epi(&self) -> &Morphism {
        &self.g
    }

    pub fn left(&self) -> &Module {
        &self.f.source
    }

    pub fn middle(&self) -> &Module {
        &self.f.target
    }

    pub fn right(&self) -> &Module {
        &self.g.target
    }

    pub fn as_sequence(&self) -> Sequence {
        Sequence::bounded(vec![self.f.clone(), self.g.clone()]).expect("composable")
    }

    /// Whether the mono has a retraction.
    pub fn is_split(&self) -> bool {
        extend(&self.f, &Morphism::identity(self.left())).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn brute_force_homs(m: &Module, n: &Module) -> usize {
        // Count intertwiners by enumerating every matrix; only for tiny GF(2)
        // modules.
        let cells = m.dim() * n.dim();
        assert!(m.modulus() == 2 && cells <= 16);
        (0u32..1 << cells)
            .filter(|bits| {
                let data = (0..cells).map(|i| (bits >> i) & 1).collect();
                let mat = Matrix::from_vec(2, n.dim(), m.dim(), data);
                Morphism::new(m, n, mat).is_ok()
            })
            .count()
    }

    #[test]
    fn lambda1_validates() {
        assert!(lambda1().validate().is_ok());
        assert!(k1().validate().is_ok());
        assert!(reg1().validate().is_ok());
        assert!(lambda2().validate().is_ok());
        assert!(a2().validate().is_ok());
        for m in [sa(), sb(), pa()] {
            assert!(m.validate().is_ok());
        }
    }

    #[test]
    fn wrong_table_against_presentation() {
        // Basis (1, x) with x * x = 1: associative and unital, but not k[x]/(x^2).
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        let mut mult = vec![0; 8];
        for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
            mult[idx(i, j, k)] = 1;
        }
        assert!(Algebra::from_parts("plain", 2, vec![1, 0], mult.clone(), None, None)
            .unwrap()
            .validate()
            .is_ok());
        let alg = Algebra::from_parts(
            "bad",
            2,
            vec![1, 0],
            mult,
            None,
            Some(Presentation::TruncatedPolynomial { degree: 2 }),
        )
        .unwrap();
        assert_eq!(alg.validate(), Err(Violation::Presentation { i: 1, j: 1 }));
    }

    #[test]
    fn module_relation_violation_names_pair() {
        let alg = lambda1();
        let x = Matrix::from_rows(2, &[[1i64, 0], [0, 0]]);
        let m = Module::from_parts(&alg, 2, vec![Matrix::identity(2, 2), x]).unwrap();
        assert_eq!(m.validate(), Err(Violation::ModuleRelation { i: 1, j: 1 }));
    }

    #[test]
    fn hom_dimensions() {
        assert_eq!(hom_dim(&k1(), &k1()), 1);
        assert_eq!(hom_dim(&reg1(), &k1()), 1);
        assert_eq!(hom_dim(&reg1(), &Module::zero(&lambda1())), 0);
        for (m, n) in [(k1(), reg1()), (reg1(), reg1()), (reg1(), k1()), (k1(), k1())] {
            assert_eq!(2usize.pow(hom_dim(&m, &n) as u32), brute_force_homs(&m, &n));
        }
        for m in [sa(), sb(), pa()] {
            for n in [sa(), sb(), pa()] {
                assert_eq!(2usize.pow(hom_dim(&m, &n) as u32), brute_force_homs(&m, &n));
            }
        }
    }

    #[test]
    fn kernels() {
        let (k, _) = kernel(&Morphism::identity(&reg1()));
        assert_eq!(k.dim(), 0);
        let z = Morphism::zero(&reg1(), &k1());
        let (k, inc) = kernel(&z);
        assert!(find_isomorphism(&k, &reg1()).is_some());
        assert!(inc.is_iso());
        let (k, inc) = kernel(&quotient_map());
        assert!(find_isomorphism(&k, &k1()).is_some());
        assert!(quotient_map().after(&inc).is_zero());
    }

    #[test]
    fn cokernels() {
        let (q, _) = cokernel(&Morphism::identity(&reg1()));
        assert_eq!(q.dim(), 0);
        let (q, _) = cokernel(&Morphism::zero(&k1(), &reg1()));
        assert!(find_isomorphism(&q, &reg1()).is_some());
        let (q, proj) = cokernel(&socle_inclusion());
        assert!(find_isomorphism(&q, &k1()).is_some());
        assert!(proj.after(&socle_inclusion()).is_zero());
    }

    #[test]
    fn direct_sums() {
        let z = Module::zero(&lambda1());
        let s = direct_sum(&[reg1(), z]);
        assert_eq!(s.object, reg1());
        assert!(s.injections[0].matrix().is_identity());
        let kk = direct_sum(&[k1(), k1()]).object;
        assert_eq!(kk.dim(), 2);
        assert!(kk.act(1).is_zero());
        assert_eq!(direct_sum(&[reg1(), k1()]).object.dim(), 3);
        let s = direct_sum(&[reg1(), k1(), pa_over_lambda1_dummy()]);
        for (i, pr) in s.projections.iter().enumerate() {
            for (j, inj) in s.injections.iter().enumerate() {
                let c = pr.after(inj);
                if i == j {
                    assert!(c.matrix().is_identity());
                } else {
                    assert!(c.is_zero());
                }
            }
        }
    }

    fn pa_over_lambda1_dummy() -> Module {
        direct_sum(&[k1(), k1()]).object
    }

    #[test]
    fn direct_sum_is_associative() {
        let (a, b, c) = (reg1(), k1(), reg1());
        let left = direct_sum(&[direct_sum(&[a.clone(), b.clone()]).object, c.clone()]).object;
        let right = direct_sum(&[a, direct_sum(&[b, c]).object]).object;
        let iso = find_isomorphism(&left, &right).unwrap();
        assert!(iso.forward.after(&iso.backward).matrix().is_identity());
    }

    #[test]
    fn pullbacks() {
        let f = quotient_map();
        let pb = pullback(&f, &Morphism::identity(&k1()));
        assert_eq!(pb.object.dim(), 2);
        let pb = pullback(&Morphism::zero(&reg1(), &k1()), &Morphism::zero(&k1(), &k1()));
        assert_eq!(pb.object.dim(), 3);
        let pb = pullback(&f, &f);
        assert_eq!(pb.object.dim(), 3);
        assert_eq!(f.after(&pb.p1), f.after(&pb.p2));
        check_pullback_universal(&f, &f, &pb);
    }

    fn check_pullback_universal(f: &Morphism, g: &Morphism, pb: &Pullback) {
        let tests = [k1(), reg1(), direct_sum(&[k1(), reg1()]).object];
        for t in &tests {
            let hx = hom_basis(t, f.source());
            let hn = hom_basis(t, g.source());
            let p = t.modulus();
            // Every pair (a, b) with f a = g b factors uniquely through P.
            let combos = |basis: &[Morphism], src: &Module, tgt: &Module| -> Vec<Morphism> {
                let mut out = vec![Morphism::zero(src, tgt)];
                for b in basis {
                    out = out
                        .iter()
                        .flat_map(|m| (0..p).map(move |c| m.add(&b.scale(c))))
                        .collect();
                }
                out
            };
            for a in combos(&hx, t, f.source()) {
                for b in combos(&hn, t, g.source()) {
                    if f.after(&a) != g.after(&b) {
                        continue;
                    }
                    let both = Morphism::vcat(&[pb.p1.clone(), pb.p2.clone()]);
                    let target = Morphism::vcat(&[a.clone(), b.clone()]);
                    let u = factor_through_mono(&both, &target).expect("factorization");
                    assert!(u.validate().is_ok());
                    assert_eq!(pb.p1.after(&u), a);
                }
            }
        }
    }

    #[test]
    fn pushouts() {
        let s = socle_inclusion();
        let po = pushout(&Morphism::identity(&k1()), &s);
        assert_eq!(po.object.dim(), 2);
        let po = pushout(&Morphism::zero(&k1(), &reg1()), &Morphism::zero(&k1(), &k1()));
        assert_eq!(po.object.dim(), 3);
        let po = pushout(&s, &s);
        assert_eq!(po.object.dim(), 3);
        assert_eq!(po.q1.after(&s), po.q2.after(&s));
        // Dual universal property on small targets.
        for t in [k1(), reg1()] {
            for a in hom_basis(&reg1(), &t) {
                for b in hom_basis(&reg1(), &t) {
                    if a.after(&s) == b.after(&s) {
                        let both = Morphism::hcat(&[po.q1.clone(), po.q2.clone()]);
                        let u =
                            factor_through_epi(&both, &Morphism::hcat(&[a.clone(), b.clone()])).expect("factorization");
                        assert!(u.validate().is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn exactness() {
        let ses = Sequence::bounded(vec![socle_inclusion(), quotient_map()]).unwrap();
        assert!(ses.is_exact().is_ok());
        let split = ShortExactSeq::split(&reg1(), &reg1()).as_sequence();
        assert!(split.is_exact().is_ok());
        let bad = Sequence::new(vec![socle_inclusion(), Morphism::identity(&reg1())]).unwrap();
        assert_eq!(
            bad.is_exact(),
            Err(Error::Inexact {
                position: 1,
                image_dim: 1,
                kernel_dim: 0
            })
        );
    }

    #[test]
    fn free_covers() {
        let c = free_cover(&k1());
        assert_eq!(c.source(), &reg1());
        assert!(c.is_epi());
        let z = free_cover(&Module::zero(&lambda1()));
        assert_eq!(z.source().dim(), 0);
        let c = free_cover(&reg1());
        assert_eq!(c.source().dim(), 4);
        assert_eq!(kernel(&c).0.dim(), 2);
        assert!(c.validate().is_ok());
        assert_eq!(compact_free_cover(&reg1()).source().dim(), 2);
    }

    #[test]
    fn summands() {
        let m = reg1();
        let s = split_summand(&m, &Morphism::identity(&m)).unwrap();
        assert_eq!(s.object.dim(), 2);
        let s = split_summand(&m, &Morphism::zero(&m, &m)).unwrap();
        assert_eq!(s.object.dim(), 0);
        let sum = direct_sum(&[reg1(), k1()]);
        let e = sum.projections[1].clone();
        let e = sum.injections[1].after(&e);
        let s = split_summand(&sum.object, &e).unwrap();
        assert!(find_isomorphism(&s.object, &k1()).is_some());
        assert!(s.retraction.after(&s.section).matrix().is_identity());
        assert_eq!(s.section.after(&s.retraction), e);
        let not_idem = Morphism::identity(&reg1()).scale(0).add(&x_mult());
        assert_eq!(split_summand(&reg1(), &not_idem).unwrap_err(), Error::NotIdempotent);
    }

    #[test]
    fn lifts_prefer_free_variables_zero() {
        // A map K1 -> REG1 lands in the socle, which the quotient kills.
        assert!(lift(&quotient_map(), &Morphism::identity(&k1())).is_none());
        // Lifts of the quotient along itself are 1 + c x; the free coefficient
        // is set to zero.
        let h = lift(&quotient_map(), &quotient_map()).unwrap();
        assert_eq!(quotient_map().after(&h), quotient_map());
        assert!(h.matrix().is_identity());
    }

    #[test]
    fn isomorphism_search() {
        assert!(find_isomorphism(&k1(), &reg1()).is_none());
        assert!(find_isomorphism(&direct_sum(&[k1(), k1()]).object, &reg1()).is_none());
        let s1 = direct_sum(&[k1(), reg1()]).object;
        let s2 = direct_sum(&[reg1(), k1()]).object;
        let iso = find_isomorphism(&s1, &s2).unwrap();
        assert!(iso.backward.after(&iso.forward).matrix().is_identity());
        assert!(iso.forward.validate().is_ok());
    }

    #[test]
    fn path_algebra_table() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basis_names(), &["e0", "e1", "a0"]);
        // e_b * α = α and α * e_a = α.
        assert_eq!(a.constant(1, 2, 2), 1);
        assert_eq!(a.constant(2, 0, 2), 1);
        assert_eq!(a.constant(0, 2, 2), 0);
        let cyclic = Presentation::PathAlgebra {
            vertices: 1,
            arrows: vec![(0, 0)],
        };
        assert!(cyclic.table(2).is_err());
    }
}
