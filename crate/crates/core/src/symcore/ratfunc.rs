//! Rational functions with a factored denominator.
//!
//! The denominator is a product of monic irreducible-ish factors with
//! multiplicities. No multivariate gcd is ever computed: cancellation is
//! trial division of the numerator by the known factors, which is enough
//! because every denominator in this crate is assembled from small known
//! pieces (`u - v`, `b + k`, powers of `x`, ...).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::{fmt_q, owned_binop, q, qf, Monomial, MultiPoly, Q};
use super::var::Var;
use super::{NumOps, SymError};

#[derive(Clone, Default)]
pub struct RatFunc {
    num: MultiPoly,
    den: BTreeMap<MultiPoly, u32>,
}

/// Split a nonzero polynomial into `scalar * prod(factor^mult)` with monic
/// factors; single variables become their own factors.
fn normalize(p: &MultiPoly) -> (Q, Vec<(MultiPoly, u32)>) {
    assert!(!p.is_zero(), "zero denominator");
    let mut factors = Vec::new();
    let content = p.monomial_content();
    for &(v, e) in content.factors() {
        factors.push((MultiPoly::var(v), e));
    }
    let rest = p.div_monomial(&content).expect("content divides");
    if let Some(c) = rest.as_constant() {
        return (c, factors);
    }
    let lc = rest.leading().unwrap().1.clone();
    factors.push((rest.scale(&lc.recip()), 1));
    (lc, factors)
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc::default()
    }

    pub fn one() -> Self {
        RatFunc::from_poly(MultiPoly::one())
    }

    pub fn int(n: i64) -> Self {
        RatFunc::from_poly(MultiPoly::int(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        RatFunc::from_poly(MultiPoly::constant(qf(n, d)))
    }

    pub fn constant(c: Q) -> Self {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: BTreeMap::new() }
    }

    pub fn new(num: MultiPoly, den: &MultiPoly) -> Self {
        let (s, fs) = normalize(den);
        let mut r = RatFunc { num: num.scale(&s.recip()), den: BTreeMap::new() };
        for (f, m) in fs {
            *r.den.entry(f).or_insert(0) += m;
        }
        r.reduce();
        r
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&MultiPoly, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn denom(&self) -> MultiPoly {
        self.den.iter().fold(MultiPoly::one(), |acc, (f, &m)| &acc * &f.pow(m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = self.num.vars();
        for f in self.den.keys() {
            s.extend(f.vars());
        }
        s
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.keys().any(|f| f.contains_var(v))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<MultiPoly> = self.den.keys().cloned().collect();
        for f in keys {
            let m = self.den.get_mut(&f).unwrap();
            while *m > 0 {
                match self.num.div_exact(&f) {
                    Some(qt) => {
                        self.num = qt;
                        *m -= 1;
                    }
                    None => break,
                }
            }
            if *m == 0 {
                self.den.remove(&f);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatFunc {
        let mut r = RatFunc { num: &self.num * p, den: self.den.clone() };
        r.reduce();
        r
    }

    pub fn recip(&self) -> RatFunc {
        RatFunc::new(self.denom(), &self.num)
    }

    pub fn pow(&self, n: i32) -> RatFunc {
        let base = if n < 0 { self.recip() } else { self.clone() };
        let e = n.unsigned_abs();
        RatFunc {
            num: base.num.pow(e),
            den: base.den.iter().map(|(f, &m)| (f.clone(), m * e)).collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        let dep: Vec<(&MultiPoly, u32)> =
            self.den.iter().filter(|(f, _)| f.contains_var(v)).map(|(f, &m)| (f, m)).collect();
        if dep.is_empty() {
            return RatFunc { num: self.num.derivative(v), den: self.den.clone() };
        }
        let prod_all = dep.iter().fold(MultiPoly::one(), |acc, (f, _)| &acc * *f);
        let mut num = &self.num.derivative(v) * &prod_all;
        for (f, m) in &dep {
            let others = dep
                .iter()
                .filter(|(g, _)| g != f)
                .fold(MultiPoly::one(), |acc, (g, _)| &acc * *g);
            let term = &(&self.num * &f.derivative(v)) * &others;
            num = &num - &term.scale(&q(*m as i64));
        }
        let mut den = self.den.clone();
        for (f, _) in &dep {
            *den.get_mut(*f).unwrap() += 1;
        }
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn subst(&self, map: &[(Var, RatFunc)]) -> RatFunc {
        if !map.iter().any(|(v, _)| self.contains_var(*v)) {
            return self.clone();
        }
        let mut cache: HashMap<(Var, u32), RatFunc> = HashMap::new();
        let num = subst_poly(&self.num, map, &mut cache);
        let mut den = RatFunc::one();
        for (f, &m) in &self.den {
            let fs = subst_poly(f, map, &mut cache);
            den = &den * &fs.pow(m as i32);
        }
        &num / &den
    }

    pub fn subst1(&self, v: Var, r: &RatFunc) -> RatFunc {
        self.subst(&[(v, r.clone())])
    }

    pub fn eval_partial(&self, vals: &[(Var, Q)]) -> RatFunc {
        let map: Vec<(Var, RatFunc)> =
            vals.iter().map(|(v, c)| (*v, RatFunc::constant(c.clone()))).collect();
        self.subst(&map)
    }

    /// Expansion as a finite Laurent polynomial in `v`, available when every
    /// denominator factor involving `v` is `v` itself.
    pub fn laurent_in(&self, v: Var) -> Option<BTreeMap<i64, RatFunc>> {
        let vp = MultiPoly::var(v);
        let mut shift = 0i64;
        let mut rest = BTreeMap::new();
        for (f, &m) in &self.den {
            if *f == vp {
                shift = m as i64;
            } else if f.contains_var(v) {
                return None;
            } else {
                rest.insert(f.clone(), m);
            }
        }
        let mut out = BTreeMap::new();
        for (k, c) in self.num.coeffs_in(v) {
            let mut r = RatFunc { num: c, den: rest.clone() };
            r.reduce();
            if !r.is_zero() {
                out.insert(k as i64 - shift, r);
            }
        }
        Some(out)
    }

    pub fn from_laurent(v: Var, coeffs: &BTreeMap<i64, RatFunc>) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (&k, c) in coeffs {
            acc = &acc + &(c * &RatFunc::var(v).pow(k as i32));
        }
        acc
    }

    /// Numeric value given a valuation for every variable present.
    pub fn eval_with<T, O: NumOps<T>>(
        &self,
        val: &impl Fn(Var) -> Result<T, SymError>,
        ops: &O,
    ) -> Result<T, SymError> {
        let n = eval_poly(&self.num, val, ops)?;
        let mut d = ops.from_q(&Q::one());
        for (f, &m) in &self.den {
            let fv = eval_poly(f, val, ops)?;
            if ops.is_negligible(&fv) {
                return Err(SymError::Pole(f.to_string()));
            }
            for _ in 0..m {
                d = ops.mul(&d, &fv);
            }
        }
        Ok(ops.div(&n, &d))
    }
}

fn subst_poly(
    p: &MultiPoly,
    map: &[(Var, RatFunc)],
    cache: &mut HashMap<(Var, u32), RatFunc>,
) -> RatFunc {
    let mut polys = MultiPoly::zero();
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut kept = Vec::new();
        let mut factor: Option<RatFunc> = None;
        for &(v, e) in m.factors() {
            match map.iter().find(|(w, _)| *w == v) {
                Some((_, r)) => {
                    let pw = cache.entry((v, e)).or_insert_with(|| r.pow(e as i32)).clone();
                    factor = Some(match factor {
                        Some(f) => &f * &pw,
                        None => pw,
                    });
                }
                None => kept.push((v, e)),
            }
        }
        let kept_m = kept.into_iter().fold(Monomial::one(), |a, (v, e)| a.mul(&Monomial::var(v, e)));
        match factor {
            None => polys.add_term(kept_m, c.clone()),
            Some(f) => {
                if f.is_poly() {
                    polys = &polys + &f.num.mul_monomial(&kept_m, c);
                } else {
                    acc = &acc + &f.mul_poly(&MultiPoly::monomial(kept_m, c.clone()));
                }
            }
        }
    }
    &acc + &RatFunc::from_poly(polys)
}

fn eval_poly<T, O: NumOps<T>>(
    p: &MultiPoly,
    val: &impl Fn(Var) -> Result<T, SymError>,
    ops: &O,
) -> Result<T, SymError> {
    let mut cache: HashMap<Var, T> = HashMap::new();
    let mut acc = ops.from_q(&Q::zero());
    for (m, c) in p.terms() {
        let mut t = ops.from_q(c);
        for &(v, e) in m.factors() {
            if !cache.contains_key(&v) {
                cache.insert(v, val(v)?);
            }
            let b = &cache[&v];
            for _ in 0..e {
                t = ops.mul(&t, b);
            }
        }
        acc = ops.add(&acc, &t);
    }
    Ok(acc)
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Q> for RatFunc {
    fn from(c: Q) -> Self {
        RatFunc::constant(c)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::int(n)
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> Self {
        RatFunc::var(v)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let mut r = RatFunc { num: &self.num + &o.num, den: self.den.clone() };
            r.reduce();
            return r;
        }
        let mut lcm = self.den.clone();
        for (f, &m) in &o.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let cofactor = |d: &BTreeMap<MultiPoly, u32>| {
            lcm.iter().fold(MultiPoly::one(), |acc, (f, &m)| {
                let have = d.get(f).copied().unwrap_or(0);
                if m > have {
                    &acc * &f.pow(m - have)
                } else {
                    acc
                }
            })
        };
        let num = &(&self.num * &cofactor(&self.den)) + &(&o.num * &cofactor(&o.den));
        let mut r = RatFunc { num, den: lcm };
        r.reduce();
        r
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        let mut den = self.den.clone();
        for (f, &m) in &o.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut r = RatFunc { num: &self.num * &o.num, den };
        if !self.den.is_empty() || !o.den.is_empty() {
            r.reduce();
        }
        r
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero rational function");
        self * &o.recip()
    }
}

owned_binop!(Add, add, RatFunc);
owned_binop!(Sub, sub, RatFunc);
owned_binop!(Mul, mul, RatFunc);
owned_binop!(Div, div, RatFunc);

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        (self - o).is_zero()
    }
}

impl Eq for RatFunc {}

fn wrap(p: &MultiPoly) -> String {
    if p.len() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(p, &m)| if m == 1 { wrap(p) } else { format!("{}^{}", wrap(p), m) })
            .collect();
        let num = match self.num.as_constant() {
            Some(c) if c.is_negative() => format!("-{}", fmt_q(&c.abs())),
            Some(c) => fmt_q(&c),
            None => wrap(&self.num),
        };
        write!(f, "{}/({})", num, parts.join("*"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::var::{A, B, U, V, X};

    fn r(v: Var) -> RatFunc {
        RatFunc::var(v)
    }

    #[test]
    fn cancels_known_factors() {
        let umv = &r(U) - &r(V);
        let p = &(&umv * &r(X)) / &umv;
        assert_eq!(p, r(X));
        assert!(p.is_poly());
        let vmu = &r(V) - &r(U);
        assert_eq!(&umv / &vmu, RatFunc::int(-1));
    }

    #[test]
    fn addition_over_common_denominator() {
        let one = RatFunc::one();
        let s = &(&one / &r(U)) + &(&one / &(&r(U) + &one));
        let expect = &(&(&r(U) * &RatFunc::int(2)) + &one) / &(&r(U) * &(&r(U) + &one));
        assert_eq!(s, expect);
    }

    #[test]
    fn derivative_quotient_rule() {
        let f = &r(X) / &(&r(X) + &r(A));
        let df = f.derivative(X);
        let expect = &r(A) / &(&(&r(X) + &r(A)) * &(&r(X) + &r(A)));
        assert_eq!(df, expect);
    }

    #[test]
    fn substitution_is_simultaneous() {
        let f = &r(U) / &(&r(U) - &r(V));
        let swapped = f.subst(&[(U, r(V)), (V, r(U))]);
        assert_eq!(swapped, &r(V) / &(&r(V) - &r(U)));
    }

    #[test]
    fn laurent_expansion() {
        let f = &(&r(U) + &r(B)) / &(&r(U) * &r(U));
        let l = f.laurent_in(U).unwrap();
        assert_eq!(l[&-1], RatFunc::one());
        assert_eq!(l[&-2], r(B));
        assert_eq!(RatFunc::from_laurent(U, &l), f);
        assert!((&RatFunc::one() / &(&r(U) + &r(B))).laurent_in(U).is_none());
    }
}
