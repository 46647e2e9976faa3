//! Numeric shift relations, ladder strings and the finite-dimensional
//! phenomena of the `F_k` family.

mod finite;
mod ops;
mod pair;
mod string;

pub use finite::{check_prop54, finite_string_rank, rank_bareiss, FiniteRank, Prop54Report};
pub use ops::{apply_op, family_vals, n_var, sample_points, shift_pair, Dir, Shift};
pub use pair::{composed, measure_delta, measure_shift, verify_pair, DirectionCheck, Measured, PairCheck};
pub use string::{
    associated_type, check_annihilation, check_annihilation_with, family_operator, family_operator_variant, reflection_gap,
    verify_string, verify_string_with, Annihilation, DetCheck,
    StringDomain, StringRun, StringStep,
};

use crate::qism::QismError;
use crate::specfun::{FamilyId, SpecError};
use crate::symcore::SymError;

#[derive(Debug, thiserror::Error)]
pub enum LadderError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Qism(#[from] QismError),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no L-operator is associated with {0}")]
    NoOperator(FamilyId),
}
