//! Quantum determinants.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use super::backend::Backend;
use super::report::{CheckRecord, RelationReport};
use super::types::{Entry, Kind, LOperator};
use super::QismError;
use crate::symcore::var::U;
use crate::symcore::RatFunc;

/// A Laurent polynomial in `u` with coefficients in the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DetPoly {
    pub coeffs: BTreeMap<i64, RatFunc>,
    /// Which of the four defining formulas (1-based) produced it; 0 when
    /// built from declared constants.
    pub formula: usize,
}

impl DetPoly {
    pub fn from_ratfunc(r: &RatFunc, formula: usize) -> Result<Self, QismError> {
        let coeffs = r
            .laurent_in(U)
            .ok_or_else(|| QismError::Inconsistent(format!("determinant {r} is not Laurent in u")))?;
        Ok(DetPoly { coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(), formula })
    }

    pub fn coeff(&self, k: i64) -> RatFunc {
        self.coeffs.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_laurent(U, &self.coeffs)
    }

    /// Value at `u = at`.
    pub fn at(&self, at: &RatFunc) -> RatFunc {
        self.to_ratfunc().subst1(U, at)
    }

    /// `(alpha delta) u^2 + Q1 u + Q0`, or `Q2 u^2 + Q0 + delta^2 u^-2`.
    pub fn declared(l: &LOperator) -> DetPoly {
        let d = &l.declared;
        let mut coeffs = BTreeMap::new();
        match l.kind {
            Kind::QismI => {
                coeffs.insert(2, &(&l.alpha * &l.delta) - &(&l.beta * &l.gamma));
                coeffs.insert(1, d.q1.clone());
                coeffs.insert(0, d.q0.clone());
            }
            Kind::QismII => {
                coeffs.insert(2, d.q2.clone());
                coeffs.insert(0, d.q0.clone());
                coeffs.insert(-2, &l.delta * &l.delta);
            }
        }
        DetPoly { coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(), formula: 0 }
    }
}

impl fmt::Display for DetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().rev().map(|(k, c)| format!("({c})*u^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The four defining formulas as operators, before reduction to scalars.
pub fn det_formulas<Be: Backend>(be: &Be, l: &LOperator) -> Result<Vec<Be::Op>, QismError> {
    let u = RatFunc::var(U);
    let h = RatFunc::rat(1, 2);
    let (um, up) = (&u - &h, &u + &h);
    let nm = &(-&u) + &h;
    let e = |x: Entry, at: &RatFunc| be.entry(l, x, at);
    let prod = |x: Entry, ax: &RatFunc, y: Entry, ay: &RatFunc| -> Result<Be::Op, QismError> {
        Ok(be.compose(&e(x, ax)?, &e(y, ay)?))
    };
    use Entry::*;
    Ok(match l.kind {
        Kind::QismI => vec![
            be.sub(&prod(A, &um, D, &up)?, &prod(C, &um, B, &up)?),
            be.sub(&prod(D, &um, A, &up)?, &prod(B, &um, C, &up)?),
            be.sub(&prod(D, &up, A, &um)?, &prod(C, &up, B, &um)?),
            be.sub(&prod(A, &up, D, &um)?, &prod(B, &up, C, &um)?),
        ],
        Kind::QismII => {
            let neg = |o: Be::Op| be.sub(&be.zero(), &o);
            vec![
                be.sub(&neg(prod(D, &nm, D, &up)?), &prod(C, &um, B, &up)?),
                be.sub(&neg(prod(A, &nm, A, &up)?), &prod(B, &um, C, &up)?),
                be.sub(&neg(prod(D, &up, D, &nm)?), &prod(C, &up, B, &um)?),
                be.sub(&neg(prod(A, &up, A, &nm)?), &prod(B, &up, C, &um)?),
            ]
        }
    })
}

/// The quantum determinant. Fails loudly unless all four formulas give the
/// same multiple of the identity.
pub fn quantum_det<Be: Backend>(be: &Be, l: &LOperator) -> Result<DetPoly, QismError> {
    let mut vals: Vec<RatFunc> = Vec::new();
    for (i, op) in det_formulas(be, l)?.iter().enumerate() {
        match be.as_scalar(op)? {
            Some(s) => vals.push(s),
            None => {
                return Err(QismError::Inconsistent(format!(
                    "formula {} is not a scalar: {}",
                    i + 1,
                    be.residual(op)?.unwrap_or_default()
                )))
            }
        }
    }
    for (i, v) in vals.iter().enumerate().skip(1) {
        if *v != vals[0] {
            return Err(QismError::Inconsistent(format!("formula {} gives {v}, formula 1 gives {}", i + 1, vals[0])));
        }
    }
    DetPoly::from_ratfunc(&vals[0], 1)
}

/// Records for the determinant: agreement of the four formulas, match with
/// the declared constants, and the printed `Q1` where one is given.
pub fn check_quantum_det<Be: Backend>(be: &Be, l: &LOperator) -> Result<(RelationReport, Option<DetPoly>), QismError> {
    let eq = match l.kind {
        Kind::QismI => "2.2",
        Kind::QismII => "2.3",
    };
    let start = Instant::now();
    let name = l.name();
    let mut recs = Vec::new();
    let det = match quantum_det(be, l) {
        Ok(d) => {
            recs.push(CheckRecord::new(format!("{name}:det_formulas_agree"), eq, be.name()).zero().timed(start));
            d
        }
        Err(QismError::Inconsistent(msg)) => {
            recs.push(CheckRecord::new(format!("{name}:det_formulas_agree"), eq, be.name()).outcome(false, msg));
            return Ok((RelationReport::new(recs), None));
        }
        Err(e) => return Err(e),
    };
    let declared = DetPoly::declared(l);
    let deq = match l.kind {
        Kind::QismI => "5.8",
        Kind::QismII => "6.8",
    };
    let diff = &det.to_ratfunc() - &declared.to_ratfunc();
    let rec = CheckRecord::new(format!("{name}:det_declared"), deq, be.name());
    recs.push(if diff.is_zero() {
        rec.zero()
    } else {
        rec.outcome(false, format!("computed {det}, declared {declared}"))
    });
    if let Some(listed) = &l.listed_q1 {
        let got = det.coeff(1);
        let rec = CheckRecord::new(format!("{name}:q1_printed"), "4.28-4.32", be.name());
        recs.push(if got == *listed {
            rec.zero()
        } else {
            // the operator is consistent, the printed constant is not
            rec.outcome(false, format!("computed Q1 = {got}, printed Q1 = {listed}")).flag(true)
        });
    }
    Ok((RelationReport::new(recs), Some(det)))
}

#[cfg(test)]
mod tests {
    use super::super::backend::{Basis, Symbolic};
    use super::super::types::{build_l, TypeTag};
    use super::*;
    use crate::symcore::var::{A, C};

    #[test]
    fn type_b_determinant() {
        let l = build_l(TypeTag::B);
        let d = quantum_det(&Symbolic, &l).unwrap();
        assert_eq!(d.coeff(2), RatFunc::int(-1));
        assert_eq!(d.coeff(1), &RatFunc::var(C) - &RatFunc::var(A).scale(&crate::symcore::q(2)));
        assert_eq!(d, DetPoly { formula: 1, ..DetPoly::declared(&l) });
    }

    #[test]
    fn c_double_prime_on_weighted_basis() {
        let l = build_l(TypeTag::CDoublePrime);
        let d = quantum_det(&Basis::for_operator(&l, 6), &l).unwrap();
        assert_eq!(d.coeff(1), RatFunc::zero());
        assert_eq!(d.coeff(0), RatFunc::one());
    }

    #[test]
    fn gen_a_has_double_pole_term() {
        let l = build_l(TypeTag::GenA);
        let d = quantum_det(&Symbolic, &l).unwrap();
        assert_eq!(d.coeff(-2), &l.delta * &l.delta);
        assert_eq!(d.coeff(2), RatFunc::rat(1, 4));
    }
}
