//! Multiprecision special functions, each returned with its first two
//! `x`-derivatives.

mod bigfloat;
mod family;
mod funcs;
mod gamma;
mod hyper;
mod jet;
pub mod poly;

pub use bigfloat::BigFloat;
pub use family::{family_eval, special_eval, Family, FamilyId, Special};
pub use funcs::{
    bessel, bessel_i_jet, bessel_j_jet, bessel_k_jet, legendre_p_jet, parcyl_jet, tricomi_psi, tricomi_psi_jet,
    BesselKind,
};
pub use gamma::{bernoulli, gamma, pochhammer, pochhammer_q, rgamma};
pub use hyper::{hyp0f1_jet, hyp1f1, hyp1f1_jet, hyp2f1, hyp2f1_jet, pfq};
pub use jet::Jet;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("precision: {0}")]
    Convergence(String),
}
