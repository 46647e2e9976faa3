//! Operator algebras.
//!
//! - [`DiffOp`]: ordinary differential operators with rational coefficients
//! - [`ULOp`]: Laurent polynomials in the spectral parameter with `DiffOp`
//!   coefficients, the shape of every L-operator entry
//! - [`BiOp`]: the `(x, t)` algebra used for the `G(a,b)` realizations
//! - [`BandedBasisOp`]: exact actions on `x^k` or `x^k e^{-x}`, used for
//!   entries that involve an inverse operator

mod banded;
mod biop;
pub(crate) mod op;
mod ulop;

pub use banded::{BandedBasisOp, BasisTag, BasisVec};
pub use biop::BiOp;
pub use op::DiffOp;
pub use ulop::ULOp;

use crate::symcore::var::{U, V};
use crate::symcore::RatFunc;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiffOpError {
    #[error("basis index {0} is outside the domain of {1}")]
    BasisDomain(i64, String),
    #[error("coefficient {0} is not a Laurent polynomial in x")]
    NotLaurent(String),
    #[error("coefficient {0} keeps a spectral denominator after clearing")]
    UndeclaredDenominator(String),
}

/// One product of operator factors with a spectral coefficient.
#[derive(Clone, Debug)]
pub struct SpectralProduct {
    pub coef: RatFunc,
    pub factors: Vec<DiffOp>,
}

/// Multiply the sum of products by the declared denominators and return the
/// resulting operator. Coefficients must become polynomial in `u`, `v`.
pub fn uop_collect(terms: &[SpectralProduct], declared: &[RatFunc]) -> Result<DiffOp, DiffOpError> {
    let clear = declared.iter().fold(RatFunc::one(), |acc, d| &acc * d);
    let mut acc = DiffOp::zero();
    for t in terms {
        let c = &t.coef * &clear;
        if c.den_factors().any(|(f, _)| f.contains_var(U) || f.contains_var(V)) {
            return Err(DiffOpError::UndeclaredDenominator(c.to_string()));
        }
        let prod = t.factors.iter().fold(DiffOp::identity(), |a, f| a.compose(f));
        acc = &acc + &prod.scale(&c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collect_clears_declared_denominator() {
        let umv = &RatFunc::var(U) - &RatFunc::var(V);
        let t = SpectralProduct { coef: umv.recip(), factors: vec![DiffOp::d()] };
        assert_eq!(uop_collect(&[t.clone()], &[umv]).unwrap(), DiffOp::d());
        assert!(uop_collect(&[t], &[]).is_err());
    }
}
