use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::symcore::var::X;
use crate::symcore::{Expr, RatFunc, Var};

/// `sum_k c_k(x) d^k` with rational-function coefficients.
#[derive(Clone, PartialEq)]
pub struct DiffOp {
    var: Var,
    terms: BTreeMap<u32, RatFunc>,
}

pub(crate) fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

impl DiffOp {
    pub fn zero_in(var: Var) -> Self {
        DiffOp { var, terms: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        DiffOp::zero_in(X)
    }

    pub fn scalar_in(var: Var, c: RatFunc) -> Self {
        DiffOp::from_terms(var, [(0, c)])
    }

    pub fn scalar(c: impl Into<RatFunc>) -> Self {
        DiffOp::scalar_in(X, c.into())
    }

    pub fn identity() -> Self {
        DiffOp::scalar(RatFunc::one())
    }

    /// `d/dvar`.
    pub fn d_in(var: Var) -> Self {
        DiffOp::from_terms(var, [(1, RatFunc::one())])
    }

    pub fn d() -> Self {
        DiffOp::d_in(X)
    }

    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (u32, RatFunc)>) -> Self {
        let mut op = DiffOp::zero_in(var);
        for (k, c) in terms {
            op.add_term(k, c);
        }
        op
    }

    fn add_term(&mut self, k: u32, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RatFunc)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: u32) -> RatFunc {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if this is multiplication by a function free of the
    /// operator variable.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        match self.order() {
            None => Some(RatFunc::zero()),
            Some(0) => {
                let c = self.coeff(0);
                (!c.contains_var(self.var)).then_some(c)
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> DiffOp {
        DiffOp::from_terms(self.var, self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> DiffOp {
        DiffOp::from_terms(self.var, self.terms.iter().map(|(&k, v)| (k, f(v))))
    }

    pub fn subst(&self, map: &[(Var, RatFunc)]) -> DiffOp {
        self.map_coeffs(|c| c.subst(map))
    }

    pub fn compose(&self, o: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero_in(self.var);
        for (&i, a) in &self.terms {
            for (&j, b) in &o.terms {
                let mut bk = b.clone();
                for k in 0..=i {
                    if bk.is_zero() {
                        break;
                    }
                    out.add_term(i + j - k, (a * &bk).scale(&crate::symcore::q(binom(i, k))));
                    bk = bk.derivative(self.var);
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &DiffOp) -> DiffOp {
        &self.compose(o) - &o.compose(self)
    }

    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut df = f.clone();
        let top = self.order().unwrap_or(0);
        for k in 0..=top {
            if let Some(c) = self.terms.get(&k) {
                acc = &acc + &(c * &df);
            }
            if k < top {
                df = df.derivative(self.var);
            }
        }
        acc
    }

    pub fn apply_expr(&self, f: &Expr) -> Expr {
        let mut acc = Vec::new();
        let mut df = f.clone();
        let top = self.order().unwrap_or(0);
        for k in 0..=top {
            if let Some(c) = self.terms.get(&k) {
                acc.push(&Expr::Rat(c.clone()) * &df);
            }
            if k < top {
                df = df.diff(self.var);
            }
        }
        Expr::sum(acc)
    }

    /// Substitute `d -> d + g`, i.e. conjugate by `exp(integral g)`.
    pub fn gauge_conjugate(&self, g: &RatFunc) -> DiffOp {
        let step = &DiffOp::d_in(self.var) + &DiffOp::scalar_in(self.var, g.clone());
        let mut acc = DiffOp::zero_in(self.var);
        let mut pw = DiffOp::scalar_in(self.var, RatFunc::one());
        let top = self.order().unwrap_or(0);
        for k in 0..=top {
            if let Some(c) = self.terms.get(&k) {
                acc = &acc + &DiffOp::scalar_in(self.var, c.clone()).compose(&pw);
            }
            if k < top {
                pw = pw.compose(&step);
            }
        }
        acc
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, o: &DiffOp) -> DiffOp {
        self + &(-o)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp::from_terms(self.var, self.terms.iter().map(|(&k, c)| (k, -c)))
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, o: &DiffOp) -> DiffOp {
        self.compose(o)
    }
}

crate::symcore::owned_binop!(Add, add, DiffOp);
crate::symcore::owned_binop!(Sub, sub, DiffOp);
crate::symcore::owned_binop!(Mul, mul, DiffOp);

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&k, c)| match k {
                0 => format!("{c}"),
                1 => format!("[{c}] d"),
                _ => format!("[{c}] d^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::var::{A, X};

    fn x() -> RatFunc {
        RatFunc::var(X)
    }

    #[test]
    fn heisenberg_relation() {
        let d = DiffOp::d();
        let xm = DiffOp::scalar(x());
        assert_eq!(d.commutator(&xm), DiffOp::identity());
    }

    #[test]
    fn euler_operator_on_monomials() {
        let e = DiffOp::scalar(x()).compose(&DiffOp::d());
        let f = x().pow(5);
        assert_eq!(e.apply(&f), f.scale(&crate::symcore::q(5)));
    }

    #[test]
    fn gauge_conjugation_matches_exponential_twist() {
        // exp(-a x) d exp(a x) = d + a
        let g = RatFunc::var(A);
        let op = &DiffOp::d().compose(&DiffOp::d()) + &DiffOp::scalar(x());
        let conj = op.gauge_conjugate(&g);
        let f = &x().pow(3) + &RatFunc::var(A);
        let ef = (Expr::var(A) * Expr::var(X)).exp();
        let lhs = conj.apply_expr(&Expr::Rat(f.clone()));
        let rhs = &op.apply_expr(&(&ef * &Expr::Rat(f))) / &ef;
        let out = crate::symcore::prob_identity(&lhs, &rhs, &Default::default());
        assert!(out.pass);
    }
}
