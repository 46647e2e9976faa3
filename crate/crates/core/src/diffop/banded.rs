//! Exact operator actions on a basis of functions.
//!
//! An operator is a rule sending a basis index `k` to a finite combination
//! of basis elements. Compositions are evaluated by applying rules in
//! sequence, so nothing is ever truncated; some rules (the inverses) are
//! only defined on part of the index range and report a domain error
//! elsewhere.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::{DiffOp, DiffOpError};
use crate::symcore::var::X;
use crate::symcore::{q, RatFunc, Q};

/// `Monomial`: `x^k`. `ExpWeighted`: `x^k e^{-x}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum BasisTag {
    Monomial,
    ExpWeighted,
}

pub type BasisVec = BTreeMap<i64, RatFunc>;

type Rule = dyn Fn(i64) -> Result<BasisVec, DiffOpError> + Send + Sync;

#[derive(Clone)]
pub struct BandedBasisOp {
    pub tag: BasisTag,
    pub label: String,
    /// Largest index increase; `None` when unbounded.
    pub up: Option<u32>,
    /// Largest index decrease; `None` for lower-triangular rules.
    pub down: Option<u32>,
    rule: Arc<Rule>,
    cache: Arc<Mutex<HashMap<i64, Result<BasisVec, DiffOpError>>>>,
}

fn add_into(v: &mut BasisVec, k: i64, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(k).or_insert_with(RatFunc::zero);
    *e = &*e + &c;
    if e.is_zero() {
        v.remove(&k);
    }
}

fn falling(k: i64, n: u32) -> Q {
    (0..n as i64).fold(q(1), |acc, j| acc * q(k - j))
}

fn factorial_ratio(k: i64, j: i64) -> Q {
    // k!/j! for 0 <= j <= k
    ((j + 1)..=k).fold(q(1), |acc, m| acc * q(m))
}

fn add_bw(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    Some(a? + b?)
}

impl BandedBasisOp {
    pub fn from_rule(
        tag: BasisTag,
        label: impl Into<String>,
        up: Option<u32>,
        down: Option<u32>,
        rule: impl Fn(i64) -> Result<BasisVec, DiffOpError> + Send + Sync + 'static,
    ) -> Self {
        BandedBasisOp {
            tag,
            label: label.into(),
            up,
            down,
            rule: Arc::new(rule),
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// Exact action of a differential operator whose coefficients are
    /// Laurent polynomials in `x`.
    pub fn from_diffop(d: &DiffOp, tag: BasisTag) -> Result<Self, DiffOpError> {
        let mut parts: Vec<(u32, BTreeMap<i64, RatFunc>)> = Vec::new();
        let (mut up, mut down) = (0i64, 0i64);
        for (i, c) in d.terms() {
            let l = c.laurent_in(X).ok_or_else(|| DiffOpError::NotLaurent(c.to_string()))?;
            for &p in l.keys() {
                let (hi, lo) = match tag {
                    BasisTag::Monomial => (p - i as i64, p - i as i64),
                    BasisTag::ExpWeighted => (p, p - i as i64),
                };
                up = up.max(hi);
                down = down.max(-lo);
            }
            parts.push((i, l));
        }
        let rule = move |k: i64| -> Result<BasisVec, DiffOpError> {
            let mut out = BasisVec::new();
            for (i, l) in &parts {
                let i = *i;
                match tag {
                    BasisTag::Monomial => {
                        let ff = falling(k, i);
                        for (&p, c) in l {
                            add_into(&mut out, k - i as i64 + p, c.scale(&ff));
                        }
                    }
                    BasisTag::ExpWeighted => {
                        // d^i (x^k e^-x) = e^-x sum_j C(i,j) (-1)^(i-j) [k]_j x^(k-j)
                        for j in 0..=i {
                            let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                            let w = falling(k, j) * q(super::op::binom(i, j) * sign);
                            for (&p, c) in l {
                                add_into(&mut out, k - j as i64 + p, c.scale(&w));
                            }
                        }
                    }
                }
            }
            Ok(out)
        };
        Ok(BandedBasisOp::from_rule(tag, d.to_string(), Some(up as u32), Some(down as u32), rule))
    }

    /// `(x d + b)^{-1}` on monomials: `x^k -> x^k / (b + k)`, `k >= 0`.
    pub fn inverse_euler(b: &RatFunc) -> Self {
        let b = b.clone();
        let label = format!("(x d + {b})^-1");
        BandedBasisOp::from_rule(BasisTag::Monomial, label.clone(), Some(0), Some(0), move |k| {
            if k < 0 {
                return Err(DiffOpError::BasisDomain(k, label.clone()));
            }
            Ok(BasisVec::from([(k, (&b + &RatFunc::int(k)).recip())]))
        })
    }

    /// `(d - 1)^{-1}` on monomials: `x^k -> -sum_{j<=k} k!/j! x^j`, `k >= 0`.
    pub fn inverse_d_minus_one() -> Self {
        BandedBasisOp::from_rule(BasisTag::Monomial, "(d - 1)^-1", Some(0), None, move |k| {
            if k < 0 {
                return Err(DiffOpError::BasisDomain(k, "(d - 1)^-1".into()));
            }
            Ok((0..=k).map(|j| (j, RatFunc::constant(-factorial_ratio(k, j)))).collect())
        })
    }

    /// `d^{-1}` on `x^k e^{-x}` (the antiderivative vanishing at infinity):
    /// `-k! e^{-x} sum_{j<=k} x^j / j!`, `k >= 0`.
    pub fn inverse_d_weighted() -> Self {
        BandedBasisOp::from_rule(BasisTag::ExpWeighted, "d^-1", Some(0), None, move |k| {
            if k < 0 {
                return Err(DiffOpError::BasisDomain(k, "d^-1".into()));
            }
            Ok((0..=k).map(|j| (j, RatFunc::constant(-factorial_ratio(k, j)))).collect())
        })
    }

    pub fn scalar(tag: BasisTag, c: RatFunc) -> Self {
        let label = c.to_string();
        BandedBasisOp::from_rule(tag, label, Some(0), Some(0), move |k| {
            let mut v = BasisVec::new();
            add_into(&mut v, k, c.clone());
            Ok(v)
        })
    }

    pub fn zero(tag: BasisTag) -> Self {
        BandedBasisOp::from_rule(tag, "0", Some(0), Some(0), |_| Ok(BasisVec::new()))
    }

    pub fn apply(&self, k: i64) -> Result<BasisVec, DiffOpError> {
        if let Some(r) = self.cache.lock().unwrap().get(&k) {
            return r.clone();
        }
        let r = (self.rule)(k);
        self.cache.lock().unwrap().insert(k, r.clone());
        r
    }

    pub fn apply_vec(&self, v: &BasisVec) -> Result<BasisVec, DiffOpError> {
        let mut out = BasisVec::new();
        for (&k, c) in v {
            for (j, d) in self.apply(k)? {
                add_into(&mut out, j, c * &d);
            }
        }
        Ok(out)
    }

    /// `self o other`.
    pub fn compose(&self, other: &BandedBasisOp) -> BandedBasisOp {
        let (a, b) = (self.clone(), other.clone());
        BandedBasisOp::from_rule(
            self.tag,
            format!("({})({})", self.label, other.label),
            add_bw(self.up, other.up),
            add_bw(self.down, other.down),
            move |k| a.apply_vec(&b.apply(k)?),
        )
    }

    pub fn add(&self, other: &BandedBasisOp) -> BandedBasisOp {
        self.combine(other, RatFunc::one(), "+")
    }

    pub fn sub(&self, other: &BandedBasisOp) -> BandedBasisOp {
        self.combine(other, RatFunc::int(-1), "-")
    }

    fn combine(&self, other: &BandedBasisOp, sign: RatFunc, op: &str) -> BandedBasisOp {
        let (a, b) = (self.clone(), other.clone());
        BandedBasisOp::from_rule(
            self.tag,
            format!("{} {op} {}", self.label, other.label),
            self.up.zip(other.up).map(|(x, y)| x.max(y)),
            self.down.zip(other.down).map(|(x, y)| x.max(y)),
            move |k| {
                let mut out = a.apply(k)?;
                for (j, c) in b.apply(k)? {
                    add_into(&mut out, j, &c * &sign);
                }
                Ok(out)
            },
        )
    }

    pub fn scale(&self, c: &RatFunc) -> BandedBasisOp {
        let (a, c2) = (self.clone(), c.clone());
        BandedBasisOp::from_rule(self.tag, format!("{c}*({})", self.label), self.up, self.down, move |k| {
            Ok(a.apply(k)?.into_iter().map(|(j, d)| (j, &d * &c2)).filter(|(_, d)| !d.is_zero()).collect())
        })
    }

    /// First index in `range` with a nonzero image, if any.
    pub fn first_nonzero(
        &self,
        range: impl IntoIterator<Item = i64>,
    ) -> Result<Option<(i64, BasisVec)>, DiffOpError> {
        for k in range {
            let v = self.apply(k)?;
            if !v.is_empty() {
                return Ok(Some((k, v)));
            }
        }
        Ok(None)
    }
}

impl fmt::Debug for BandedBasisOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BandedBasisOp({:?}, {})", self.tag, self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::var::B;

    fn mono(k: i64) -> BasisVec {
        BasisVec::from([(k, RatFunc::one())])
    }

    #[test]
    fn euler_inverse_is_two_sided_on_monomials() {
        let b = RatFunc::var(B);
        let e = DiffOp::scalar(RatFunc::var(X)).compose(&DiffOp::d());
        let fwd = BandedBasisOp::from_diffop(&(&e + &DiffOp::scalar(b.clone())), BasisTag::Monomial).unwrap();
        let inv = BandedBasisOp::inverse_euler(&b);
        for k in 0..6 {
            assert_eq!(fwd.compose(&inv).apply(k).unwrap(), mono(k));
            assert_eq!(inv.compose(&fwd).apply(k).unwrap(), mono(k));
        }
        assert!(inv.apply(-1).is_err());
    }

    #[test]
    fn d_minus_one_inverse() {
        let fwd = BandedBasisOp::from_diffop(&(&DiffOp::d() - &DiffOp::identity()), BasisTag::Monomial).unwrap();
        let inv = BandedBasisOp::inverse_d_minus_one();
        for k in 0..6 {
            assert_eq!(fwd.compose(&inv).apply(k).unwrap(), mono(k));
        }
    }

    #[test]
    fn weighted_derivative_inverse() {
        let fwd = BandedBasisOp::from_diffop(&DiffOp::d(), BasisTag::ExpWeighted).unwrap();
        assert_eq!(fwd.apply(0).unwrap(), BasisVec::from([(0, RatFunc::int(-1))]));
        let inv = BandedBasisOp::inverse_d_weighted();
        for k in 0..6 {
            assert_eq!(fwd.compose(&inv).apply(k).unwrap(), mono(k));
        }
    }

    #[test]
    fn bandwidths_of_second_order_operator() {
        // x d^2 + (c - x) d - a lowers by one and keeps the degree
        let x = RatFunc::var(X);
        let op = DiffOp::from_terms(X, [(2, x.clone()), (1, &RatFunc::var(B) - &x), (0, RatFunc::int(-1))]);
        let b = BandedBasisOp::from_diffop(&op, BasisTag::Monomial).unwrap();
        assert_eq!((b.up, b.down), (Some(0), Some(1)));
    }
}
