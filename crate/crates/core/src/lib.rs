//! Weighted guarded commands: syntax, small-step semantics and weakest
//! (liberal) pre-weightings over pluggable weight algebras.

pub mod algebra;
pub mod operational;
pub mod syntax;
pub mod transformer;

use thiserror::Error;

pub use algebra::{AlgebraError, Instance, ModuleValue, Weight};
pub use syntax::{Program, State, WeightingExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("node budget of {0} exceeded")]
    Budget(usize),
    #[error("not a loop")]
    NotALoop,
    #[error("cannot certify Φ application: {0}")]
    Uncertified(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
