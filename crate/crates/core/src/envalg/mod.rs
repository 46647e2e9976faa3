//! Arithmetic in the enveloping algebra of the Euclidean motion algebra
//! `e(3)`, and the map of the boundary quadratic algebra into it.

mod hom;
mod pbw;

pub use hom::{check_hom, check_x_operators, relation_residuals, x_operator, DeltaCandidate, Images};
pub use pbw::{
    anticommutator, bubble_normal_order, casimir, casimir_tilde, normal_order, pbw_commutator, Gen, Mono, PbwElement,
};
