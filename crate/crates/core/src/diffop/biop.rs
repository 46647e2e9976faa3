//! Operators in `x` and an auxiliary `t`: words `r(x) t^m d^i E^j` with
//! `E = t d/dt`, which satisfies `E t^m = t^m (E + m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::op::binom;
use super::DiffOp;
use crate::symcore::var::X;
use crate::symcore::{q, RatFunc};

#[derive(Clone, PartialEq)]
pub struct BiOp {
    terms: BTreeMap<(i32, u32, u32), RatFunc>,
}

impl BiOp {
    pub fn zero() -> Self {
        BiOp { terms: BTreeMap::new() }
    }

    pub fn term(m: i32, i: u32, j: u32, c: RatFunc) -> Self {
        let mut b = BiOp::zero();
        b.add_term((m, i, j), c);
        b
    }

    pub fn scalar(c: RatFunc) -> Self {
        BiOp::term(0, 0, 0, c)
    }

    pub fn t_pow(m: i32) -> Self {
        BiOp::term(m, 0, 0, RatFunc::one())
    }

    pub fn euler() -> Self {
        BiOp::term(0, 0, 1, RatFunc::one())
    }

    pub fn from_diffop(d: &DiffOp) -> Self {
        let mut b = BiOp::zero();
        for (k, c) in d.terms() {
            b.add_term((0, k, 0), c.clone());
        }
        b
    }

    fn add_term(&mut self, key: (i32, u32, u32), c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, u32, u32), &RatFunc)> {
        self.terms.iter()
    }

    /// Decompose as `p(E) + c` when the operator only involves `E` with
    /// `x`-free coefficients; returns coefficients by power of `E`.
    pub fn as_poly_in_euler(&self) -> Option<BTreeMap<u32, RatFunc>> {
        let mut out = BTreeMap::new();
        for (&(m, i, j), c) in &self.terms {
            if m != 0 || i != 0 || c.contains_var(X) {
                return None;
            }
            out.insert(j, c.clone());
        }
        Some(out)
    }

    pub fn compose(&self, o: &BiOp) -> BiOp {
        let mut out = BiOp::zero();
        for (&(m1, i1, j1), r1) in &self.terms {
            for (&(m2, i2, j2), r2) in &o.terms {
                // E^j1 t^m2 = t^m2 (E + m2)^j1 ; d^i1 r2 = sum C(i1,k) r2^(k) d^(i1-k)
                let mut r2k = r2.clone();
                for k in 0..=i1 {
                    if r2k.is_zero() {
                        break;
                    }
                    let base = (r1 * &r2k).scale(&q(binom(i1, k)));
                    for l in 0..=j1 {
                        let shift = q(binom(j1, l)) * q(m2 as i64).pow((j1 - l) as i32);
                        out.add_term((m1 + m2, i1 - k + i2, l + j2), base.scale(&shift));
                    }
                    r2k = r2k.derivative(X);
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &BiOp) -> BiOp {
        &self.compose(o) - &o.compose(self)
    }
}

impl Add for &BiOp {
    type Output = BiOp;
    fn add(self, o: &BiOp) -> BiOp {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Neg for &BiOp {
    type Output = BiOp;
    fn neg(self) -> BiOp {
        BiOp { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Sub for &BiOp {
    type Output = BiOp;
    fn sub(self, o: &BiOp) -> BiOp {
        self + &(-o)
    }
}

impl Mul for &BiOp {
    type Output = BiOp;
    fn mul(self, o: &BiOp) -> BiOp {
        self.compose(o)
    }
}

crate::symcore::owned_binop!(Add, add, BiOp);
crate::symcore::owned_binop!(Sub, sub, BiOp);
crate::symcore::owned_binop!(Mul, mul, BiOp);

impl fmt::Display for BiOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((m, i, j), c)| format!("[{c}] t^{m} d^{i} E^{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BiOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_shifts_powers_of_t() {
        let e = BiOp::euler();
        let t = BiOp::t_pow(1);
        assert_eq!(e.commutator(&t), t.clone());
        let tinv = BiOp::t_pow(-1);
        assert_eq!(e.commutator(&tinv), -&tinv);
    }

    #[test]
    fn x_part_is_weyl() {
        let d = BiOp::from_diffop(&DiffOp::d());
        let x = BiOp::scalar(RatFunc::var(X));
        assert_eq!(d.commutator(&x), BiOp::scalar(RatFunc::one()));
        assert!(d.commutator(&BiOp::euler()).is_zero());
    }
}
