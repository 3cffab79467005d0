//! Extremal codewords of `C(d)`: closed-form weights, the remainder
//! classification that drives the next-to-minimal bound, and explicit
//! constructions of minimum and next-to-minimum weight words.
//!
//! Everything about a cubic-like `f` is computed in the *normalized chart*,
//! where variables are relabeled so that `lm(f) = t1*...*td`; see
//! [`Normalization`].

mod builders;
pub mod corpus;
mod formulas;
mod remainder;

use thiserror::Error;

use crate::code::CodeError;
use crate::groebner::GroebnerError;
use crate::poly::PolyError;

pub use builders::{build_min_weight, build_next_to_min, BinomialPair};
pub use formulas::{
    experimental_next_to_min, min_distance, n_formula, next_to_min, verify_inequalities, Experimental,
    InequalityReport, InequalityRow, MonomialType, EXPERIMENTAL_MARKER,
};
pub use remainder::{
    analyze, binomial_divisor, classify_pattern, classify_remainder, decompose, is_min_weight_form,
    m3_followup, pattern_monomial, remainder_for_j, substitution_vanishes, weight_lower_bound, Analysis, Classification,
    Decomposition, M3Followup, Normalization, PivotReport, RemainderClass,
};

#[derive(Debug, Error)]
pub enum ExtremalError {
    #[error("d = {d} must satisfy 3 <= d < s = {s}")]
    DegreeOutOfRange { s: u32, d: u32 },
    #[error("next-to-minimal weight is unresolved for (s, d) = ({s}, {d}): {note}")]
    UnsupportedRegime { s: u32, d: u32, note: String },
    #[error("operation requires {required}, got (s, d) = ({s}, {d})")]
    RegimeViolation { s: u32, d: u32, required: &'static str },
    #[error("v = {v:?} is out of range for {class}")]
    VOutOfRange { class: &'static str, v: Option<u32> },
    #[error("pivot j = {j} must lie in 1..={d}")]
    PivotOutOfRange { j: usize, d: usize },
    #[error("polynomial must be square-free homogeneous of degree {d}")]
    NotSquarefreeHomogeneous { d: usize },
    #[error("polynomial must be monic, leading coefficient is {0}")]
    NotMonic(String),
    #[error("malformed binomial pairs: {0}")]
    MalformedPairs(String),
    #[error("64-bit overflow evaluating a weight formula")]
    Overflow,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Code(#[from] CodeError),
}
