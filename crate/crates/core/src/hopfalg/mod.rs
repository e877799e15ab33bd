//! Presented Hopf *-algebras over ℚ(q): rewriting to normal form, the
//! structure maps Δ, ε, S, and the two concrete families used elsewhere
//! (quantum SU(2) and function algebras of finite groups).

mod algebra;
mod axioms;
mod confluence;
mod element;
mod finite;
mod presentation;
mod suq2;

pub use algebra::HopfAlgebra;
pub use axioms::{classical_limit_check, hopf_axiom_suite, AxiomSuiteReport, AxiomTally, ClassicalLimitReport, AXIOMS};
pub use confluence::{normal_form_confluence_check, ConfluenceReport, Divergence};
pub use element::{HopfElement, TensorElement};
pub use finite::{delta_name, finite_group_algebra, finite_group_presentation};
pub use presentation::{Combination, Gen, Generator, HopfPresentation, Rule, Strategy, Word, DEFAULT_STEP_LIMIT};
pub use suq2::{corrupted_su_q2_presentation, su_q2, su_q2_presentation, ALPHA, ALPHA_STAR, BETA, BETA_STAR};

use thiserror::Error;

use crate::group::GroupError;
use crate::scalar::ScalarError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("elements of `{left}` and `{right}` cannot be combined")]
    AlgebraMismatch { left: String, right: String },
    #[error("rewriting did not terminate within {steps} steps")]
    NonTerminating { steps: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected {expected} tensor legs, found {found}")]
    LegMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[cfg(test)]
mod tests;
