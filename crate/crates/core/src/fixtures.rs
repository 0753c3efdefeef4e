//! The shipped algebras and modules used throughout the tests and the CLI.
//!
//! - `LAMBDA1 = GF(2)[x]/(x^2)` with `K1` (trivial) and `REG1` (regular).
//! - `LAMBDA2 = GF(3)[x]/(x^3)`.
//! - `A2`: path algebra of `a -> b` over GF(2), basis `e_a, e_b, α`, with
//!   simples `SA` (not projective), `SB` (projective) and `PA = Λ e_a`.

use std::sync::{Arc, OnceLock};

use crate::linalg::Matrix;
use crate::modcat::{Algebra, Module, Morphism, Presentation, Sequence, ShortExactSeq};

fn cached(cell: &'static OnceLock<Arc<Algebra>>, make: fn() -> Arc<Algebra>) -> Arc<Algebra> {
    cell.get_or_init(make).clone()
}

pub fn lambda1() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    cached(&CELL, || {
        Algebra::from_presentation("LAMBDA1", 2, Presentation::TruncatedPolynomial { degree: 2 }).expect("LAMBDA1")
    })
}

pub fn lambda2() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    cached(&CELL, || {
        Algebra::from_presentation("LAMBDA2", 3, Presentation::TruncatedPolynomial { degree: 3 }).expect("LAMBDA2")
    })
}

pub fn a2() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    cached(&CELL, || {
        Algebra::from_presentation(
            "A2",
            2,
            Presentation::PathAlgebra {
                vertices: 2,
                arrows: vec![(0, 1)],
            },
        )
        .expect("A2")
    })
}

fn module(alg: &Arc<Algebra>, dim: usize, action: &[&[&[i64]]]) -> Module {
    let p = alg.modulus();
    let mats = action.iter().map(|rows| {
        if dim == 0 {
            Matrix::zeros(p, 0, 0)
        } else {
            Matrix::from_rows(p, rows)
        }
    });
    Module::new(alg, dim, mats.collect()).expect("fixture module")
}

/// Trivial module over `LAMBDA1`: `x` acts as zero.
pub fn k1() -> Module {
    module(&lambda1(), 1, &[&[&[1]], &[&[0]]])
}

pub fn reg1() -> Module {
    Module::regular(&lambda1())
}

/// `K1 -> REG1` onto the socle `span{x}`.
pub fn socle_inclusion() -> Morphism {
    Morphism::new(&k1(), &reg1(), Matrix::from_rows(2, &[[0i64], [1]])).expect("socle")
}

/// `REG1 -> K1`, killing `x`.
pub fn quotient_map() -> Morphism {
    Morphism::new(&reg1(), &k1(), Matrix::from_rows(2, &[[1i64, 0]])).expect("quotient")
}

/// Multiplication by `x` on `REG1`.
pub fn x_mult() -> Morphism {
    Morphism::new(&reg1(), &reg1(), lambda1().left_mult(1)).expect("x")
}

/// `0 -> K1 -> REG1 -> K1 -> 0`.
pub fn lambda1_ses() -> ShortExactSeq {
    ShortExactSeq::new(socle_inclusion(), quotient_map()).expect("ses")
}

/// `REG1 -x-> REG1 -x-> ...` with `maps` maps; exact at every interior term.
pub fn periodic_window(maps: usize) -> Sequence {
    Sequence::new(vec![x_mult(); maps]).expect("composable")
}

pub fn reg2() -> Module {
    Module::regular(&lambda2())
}

/// Simple module over `LAMBDA2`.
pub fn k2() -> Module {
    module(&lambda2(), 1, &[&[&[1]], &[&[0]], &[&[0]]])
}

/// `k[x]/(x^2)` as a `LAMBDA2`-module.
pub fn u2() -> Module {
    module(
        &lambda2(),
        2,
        &[&[&[1, 0], &[0, 1]], &[&[0, 0], &[1, 0]], &[&[0, 0], &[0, 0]]],
    )
}

/// Simple at the source vertex `a`.
pub fn sa() -> Module {
    module(&a2(), 1, &[&[&[1]], &[&[0]], &[&[0]]])
}

/// Simple at the sink vertex `b`, projective.
pub fn sb() -> Module {
    module(&a2(), 1, &[&[&[0]], &[&[1]], &[&[0]]])
}

/// `Λ e_a` on the basis `(e_a, α)`.
pub fn pa() -> Module {
    module(
        &a2(),
        2,
        &[&[&[1, 0], &[0, 0]], &[&[0, 0], &[0, 1]], &[&[0, 0], &[1, 0]]],
    )
}

/// `0 -> SB -> PA -> SA -> 0`, not split.
pub fn a2_ses() -> ShortExactSeq {
    let f = Morphism::new(&sb(), &pa(), Matrix::from_rows(2, &[[0i64], [1]])).expect("SB -> PA");
    let g = Morphism::new(&pa(), &sa(), Matrix::from_rows(2, &[[1i64, 0]])).expect("PA -> SA");
    ShortExactSeq::new(f, g).expect("A2 ses")
}

/// `D(Λ_Λ)`, the dual of the right regular module, as a left module. Its
/// summands are the indecomposable injectives.
pub fn dual_regular(alg: &Arc<Algebra>) -> Module {
    let action = (0..alg.dim()).map(|i| alg.right_mult(i).transpose()).collect();
    Module::new(alg, alg.dim(), action).expect("D(Λ)")
}
