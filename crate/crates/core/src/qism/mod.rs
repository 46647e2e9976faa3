//! Rank-1 L-operators and the identities they satisfy.
//!
//! Every check returns a [`RelationReport`]. Products of entries are formed
//! through a [`Backend`]: [`Symbolic`] works with differential operators and
//! is exact for entries without inverses; [`Basis`] works with exact actions
//! on a function basis and handles the rest.

mod backend;
mod det;
mod factor;
mod jacobi;
mod lemma;
mod miller;
mod relations;
mod report;
mod types;

pub use backend::{Backend, Basis, Symbolic};
pub use det::{check_quantum_det, det_formulas, quantum_det, DetPoly};
pub use factor::check_factorization;
pub use jacobi::{check_jacobi_rank1, random_mu};
pub use lemma::{
    check_lemma_c, check_lemma_c_for, check_mutations, derive_b0_c0, lemma_c_residuals, mutate, mutation_sites, rescale_qism1,
    rescale_qism2, swap_qism1, LemmaC,
};
pub use miller::{check_g_ab, check_lemma42, check_miller, g_ab_for, MillerTag};
pub use relations::{
    check_rmatrix, check_unitarity, clearing_factor, crosscheck_commutators, ext_list, rmatrix_residuals,
    ExtRelation,
};
pub use report::{clip, CheckRecord, RelationReport};
pub use types::{
    build_l, build_l_variant, derived_c0, gen_a_delta, CEntry, Declared, Entry, InverseKind, Kind, LOperator,
    TypeTag, Variant,
};

use crate::diffop::{BasisTag, DiffOpError};
use crate::symcore::SymError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QismError {
    #[error("type {0} has an inverse operator in C(u); use the basis backend")]
    NeedsBasis(TypeTag),
    #[error("type {0} is not defined on the {1:?} basis")]
    BasisMismatch(TypeTag, BasisTag),
    #[error(transparent)]
    Basis(#[from] DiffOpError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("parameter {0} violates the type's exclusion: {1}")]
    Excluded(String, String),
    #[error("the four determinant formulas disagree: {0}")]
    Inconsistent(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// Run a check with the backend the operator needs.
pub fn with_backend<R>(
    l: &LOperator,
    degree: u32,
    f_sym: impl FnOnce(&Symbolic) -> Result<R, QismError>,
    f_basis: impl FnOnce(&Basis) -> Result<R, QismError>,
) -> Result<R, QismError> {
    match l.c {
        CEntry::Diff(_) => f_sym(&Symbolic),
        CEntry::Inverse { .. } => f_basis(&Basis::for_operator(l, degree)),
    }
}
