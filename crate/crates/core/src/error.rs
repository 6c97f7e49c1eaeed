//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("matrix columns do not span the full integer lattice")]
    NotSpanning,

    #[error("matrix is not pointed: no rational h with h·a_i > 0 exists")]
    NotPointed,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("generator is neither a monomial nor a binomial: {0}")]
    NonBinomial(String),

    #[error("ideal is not graded by the given matrix: {0}")]
    NotGraded(String),

    #[error("operation requires a holonomic module")]
    NotHolonomic,

    #[error("divisorial part of the zero ideal is undefined (the variety is the whole space)")]
    ZeroIdeal,

    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),

    #[error("no facet yields a torus-meeting component: {0}")]
    WitnessNotFound(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
