use thiserror::Error;

/// A named identity that failed during validation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("{what}: expected {expected} entries, found {found}")]
    Shape {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("unit is not a two-sided identity on basis element {0}")]
    Unit(usize),
    #[error("multiplication table differs from the declared presentation at ({i}, {j})")]
    Presentation { i: usize, j: usize },
    #[error("invalid presentation: {0}")]
    BadPresentation(String),
    #[error("action does not respect the product of basis pair ({i}, {j})")]
    ModuleRelation { i: usize, j: usize },
    #[error("unit does not act as the identity")]
    ModuleUnit,
    #[error("matrix does not intertwine the action of basis element {0}")]
    NotIntertwining(usize),
    #[error("objects belong to different algebras")]
    AlgebraMismatch,
    #[error("morphisms {0} and {1} are not composable")]
    NotComposable(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid data: {0}")]
    Invalid(#[from] Violation),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("approximation at step {step} is not {expected}")]
    Obstruction { step: usize, expected: &'static str },
    #[error("sequence is not exact at position {position} (image dim {image_dim}, kernel dim {kernel_dim})")]
    Inexact {
        position: usize,
        image_dim: usize,
        kernel_dim: usize,
    },
    #[error("{side} is not exact at position {position} (image dim {image_dim}, kernel dim {kernel_dim})")]
    HomInexact {
        side: &'static str,
        position: usize,
        image_dim: usize,
        kernel_dim: usize,
    },
    #[error("Ext^{degree} is nonzero (dim {dim}) at index {index}")]
    ExtNonzero { index: usize, degree: usize, dim: usize },
    #[error("morphism is not idempotent")]
    NotIdempotent,
    #[error("no factorization exists: {0}")]
    NoFactorization(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
