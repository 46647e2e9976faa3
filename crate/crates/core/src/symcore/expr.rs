//! Transcendental expressions over rational-function leaves.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::complex::Complex;
use super::poly::{MultiPoly, Q};
use super::ratfunc::RatFunc;
use super::var::{Var, I};
use super::{ComplexOps, SymError};
use crate::specfun::BigFloat;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rat(RatFunc),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Powi(Box<Expr>, i64),
    /// `base^exponent` on the principal branch.
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

impl Expr {
    pub fn rat(r: impl Into<RatFunc>) -> Expr {
        Expr::Rat(r.into())
    }

    pub fn var(v: Var) -> Expr {
        Expr::Rat(RatFunc::var(v))
    }

    pub fn int(n: i64) -> Expr {
        Expr::Rat(RatFunc::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::Rat(RatFunc::rat(n, d))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn i() -> Expr {
        Expr::var(I)
    }

    pub fn as_rat(&self) -> Option<&RatFunc> {
        match self {
            Expr::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Rat(r) if r.is_zero())
    }

    pub fn sum(items: Vec<Expr>) -> Expr {
        let mut rat = RatFunc::zero();
        let mut rest = Vec::new();
        for e in items {
            match e {
                Expr::Rat(r) => rat = &rat + &r,
                Expr::Add(inner) => {
                    for f in inner {
                        match f {
                            Expr::Rat(r) => rat = &rat + &r,
                            other => rest.push(other),
                        }
                    }
                }
                other => rest.push(other),
            }
        }
        if !rat.is_zero() {
            rest.insert(0, Expr::Rat(rat));
        }
        match rest.len() {
            0 => Expr::zero(),
            1 => rest.pop().unwrap(),
            _ => Expr::Add(rest),
        }
    }

    pub fn product(items: Vec<Expr>) -> Expr {
        let mut rat = RatFunc::one();
        let mut rest = Vec::new();
        for e in items {
            match e {
                Expr::Rat(r) => rat = &rat * &r,
                Expr::Mul(inner) => {
                    for f in inner {
                        match f {
                            Expr::Rat(r) => rat = &rat * &r,
                            other => rest.push(other),
                        }
                    }
                }
                other => rest.push(other),
            }
        }
        if rat.is_zero() {
            return Expr::zero();
        }
        let rat = fold_imaginary(&rat);
        if rest.is_empty() {
            return Expr::Rat(rat);
        }
        if rat != RatFunc::one() {
            rest.insert(0, Expr::Rat(rat));
        }
        if rest.len() == 1 {
            rest.pop().unwrap()
        } else {
            Expr::Mul(rest)
        }
    }

    pub fn powi(&self, n: i64) -> Expr {
        match (self, n) {
            (_, 0) => Expr::int(1),
            (_, 1) => self.clone(),
            (Expr::Rat(r), _) => Expr::Rat(fold_imaginary(&r.pow(n as i32))),
            _ => Expr::Powi(Box::new(self.clone()), n),
        }
    }

    pub fn pow(&self, e: &Expr) -> Expr {
        match e.as_rat().and_then(|r| r.as_constant()) {
            Some(c) if c.is_integer() => {
                let n: i64 = c.numer().try_into().expect("small exponent");
                self.powi(n)
            }
            _ => Expr::Pow(Box::new(self.clone()), Box::new(e.clone())),
        }
    }

    pub fn sqrt(&self) -> Expr {
        self.pow(&Expr::frac(1, 2))
    }

    pub fn exp(&self) -> Expr {
        if self.is_zero() {
            return Expr::int(1);
        }
        Expr::Exp(Box::new(self.clone()))
    }

    pub fn ln(&self) -> Expr {
        Expr::Ln(Box::new(self.clone()))
    }

    pub fn sin(&self) -> Expr {
        Expr::Sin(Box::new(self.clone()))
    }

    pub fn cos(&self) -> Expr {
        Expr::Cos(Box::new(self.clone()))
    }

    pub fn cot(&self) -> Expr {
        &self.cos() / &self.sin()
    }

    pub fn diff(&self, v: Var) -> Expr {
        match self {
            Expr::Rat(r) => Expr::Rat(r.derivative(v)),
            Expr::Add(xs) => Expr::sum(xs.iter().map(|x| x.diff(v)).collect()),
            Expr::Mul(xs) => {
                let mut terms = Vec::new();
                for i in 0..xs.len() {
                    let d = xs[i].diff(v);
                    if d.is_zero() {
                        continue;
                    }
                    let mut fs: Vec<Expr> = xs.clone();
                    fs[i] = d;
                    terms.push(Expr::product(fs));
                }
                Expr::sum(terms)
            }
            Expr::Powi(b, n) => {
                Expr::product(vec![Expr::int(*n), b.powi(n - 1), b.diff(v)])
            }
            Expr::Pow(b, e) => {
                let de = e.diff(v);
                let db = b.diff(v);
                let inner = Expr::sum(vec![
                    Expr::product(vec![de, b.ln()]),
                    Expr::product(vec![(**e).clone(), db, b.powi(-1)]),
                ]);
                Expr::product(vec![self.clone(), inner])
            }
            Expr::Exp(a) => Expr::product(vec![self.clone(), a.diff(v)]),
            Expr::Ln(a) => Expr::product(vec![a.diff(v), a.powi(-1)]),
            Expr::Sin(a) => Expr::product(vec![a.cos(), a.diff(v)]),
            Expr::Cos(a) => Expr::product(vec![Expr::int(-1), a.sin(), a.diff(v)]),
        }
    }

    pub fn subst(&self, map: &[(Var, RatFunc)]) -> Expr {
        match self {
            Expr::Rat(r) => Expr::Rat(fold_imaginary(&r.subst(map))),
            Expr::Add(xs) => Expr::sum(xs.iter().map(|x| x.subst(map)).collect()),
            Expr::Mul(xs) => Expr::product(xs.iter().map(|x| x.subst(map)).collect()),
            Expr::Powi(b, n) => b.subst(map).powi(*n),
            Expr::Pow(b, e) => b.subst(map).pow(&e.subst(map)),
            Expr::Exp(a) => a.subst(map).exp(),
            Expr::Ln(a) => a.subst(map).ln(),
            Expr::Sin(a) => a.subst(map).sin(),
            Expr::Cos(a) => a.subst(map).cos(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out.remove(&I);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Rat(r) => out.extend(r.vars()),
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Expr::Powi(b, _) => b.collect_vars(out),
            Expr::Pow(b, e) => {
                b.collect_vars(out);
                e.collect_vars(out);
            }
            Expr::Exp(a) | Expr::Ln(a) | Expr::Sin(a) | Expr::Cos(a) => a.collect_vars(out),
        }
    }

    /// Complex evaluation; unbound symbols and poles are errors.
    pub fn eval(&self, env: &impl Fn(Var) -> Option<Complex>, prec: usize) -> Result<Complex, SymError> {
        let lookup = |v: Var| {
            if v == I {
                Ok(Complex::i(prec))
            } else {
                env(v).ok_or_else(|| SymError::Unbound(v.name()))
            }
        };
        self.eval_inner(&lookup, prec)
    }

    fn eval_inner(
        &self,
        env: &impl Fn(Var) -> Result<Complex, SymError>,
        prec: usize,
    ) -> Result<Complex, SymError> {
        let ops = ComplexOps { prec };
        Ok(match self {
            Expr::Rat(r) => r.eval_with(env, &ops)?,
            Expr::Add(xs) => {
                let mut acc = Complex::real(BigFloat::zero(prec));
                for x in xs {
                    acc = &acc + &x.eval_inner(env, prec)?;
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = Complex::real(BigFloat::one(prec));
                for x in xs {
                    acc = &acc * &x.eval_inner(env, prec)?;
                }
                acc
            }
            Expr::Powi(b, n) => {
                let bv = b.eval_inner(env, prec)?;
                if *n < 0 && super::NumOps::is_negligible(&ops, &bv) {
                    return Err(SymError::Pole(b.to_string()));
                }
                bv.powi(*n)
            }
            Expr::Pow(b, e) => {
                let bv = b.eval_inner(env, prec)?;
                if super::NumOps::is_negligible(&ops, &bv) {
                    return Err(SymError::Domain(format!("power of zero base {b}")));
                }
                bv.powc(&e.eval_inner(env, prec)?)
            }
            Expr::Exp(a) => a.eval_inner(env, prec)?.exp(),
            Expr::Ln(a) => {
                let av = a.eval_inner(env, prec)?;
                if super::NumOps::is_negligible(&ops, &av) {
                    return Err(SymError::Pole(format!("ln({a})")));
                }
                av.ln()
            }
            Expr::Sin(a) => a.eval_inner(env, prec)?.sin(),
            Expr::Cos(a) => a.eval_inner(env, prec)?.cos(),
        })
    }

    /// Real evaluation: complex evaluation with the imaginary part required
    /// to vanish to working precision.
    pub fn eval_real(&self, env: &impl Fn(Var) -> Option<BigFloat>, prec: usize) -> Result<BigFloat, SymError> {
        let z = self.eval(&|v| env(v).map(Complex::real), prec)?;
        let scale = z.re.abs().log2_magnitude().unwrap_or(0).max(0);
        if !z.im.below_pow2(scale - prec as i64 + 24) {
            return Err(SymError::Domain(format!("{self} is not real here")));
        }
        Ok(z.re)
    }
}

/// Replace `i^2` by `-1` in a rational function.
pub(crate) fn fold_imaginary(r: &RatFunc) -> RatFunc {
    if !r.contains_var(I) {
        return r.clone();
    }
    let fold = |p: &MultiPoly| -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in p.coeffs_in(I) {
            let sign: Q = if (e / 2) % 2 == 0 { super::q(1) } else { super::q(-1) };
            let im = if e % 2 == 1 { MultiPoly::var(I) } else { MultiPoly::one() };
            out = &out + &(&c * &im).scale(&sign);
        }
        out
    };
    let num = fold(r.numer());
    let den = fold(&r.denom());
    if den.contains_var(I) {
        // rationalize: multiply through by the conjugate
        let conj = |p: &MultiPoly| {
            let mut out = MultiPoly::zero();
            for (e, c) in p.coeffs_in(I) {
                let im = if e % 2 == 1 { -MultiPoly::var(I) } else { MultiPoly::one() };
                out = &out + &(&c * &im);
            }
            out
        };
        let dc = conj(&den);
        return RatFunc::new(fold(&(&num * &dc)), &fold(&(&den * &dc)));
    }
    RatFunc::new(num, &den)
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, o: &Expr) -> Expr {
        Expr::sum(vec![self.clone(), o.clone()])
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        Expr::sum(vec![self.clone(), -o])
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, o: &Expr) -> Expr {
        Expr::product(vec![self.clone(), o.clone()])
    }
}

impl Div for &Expr {
    type Output = Expr;
    fn div(self, o: &Expr) -> Expr {
        Expr::product(vec![self.clone(), o.powi(-1)])
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product(vec![Expr::int(-1), self.clone()])
    }
}

super::poly::owned_binop!(Add, add, Expr);
super::poly::owned_binop!(Sub, sub, Expr);
super::poly::owned_binop!(Mul, mul, Expr);
super::poly::owned_binop!(Div, div, Expr);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl From<RatFunc> for Expr {
    fn from(r: RatFunc) -> Expr {
        Expr::Rat(r)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rat(r) => write!(f, "({r})"),
            Expr::Add(xs) => {
                let s: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", s.join(" + "))
            }
            Expr::Mul(xs) => {
                let s: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", s.join("*"))
            }
            Expr::Powi(b, n) => write!(f, "{b}^{n}"),
            Expr::Pow(b, e) => write!(f, "{b}^{e}"),
            Expr::Exp(a) => write!(f, "exp{a}"),
            Expr::Ln(a) => write!(f, "ln{a}"),
            Expr::Sin(a) => write!(f, "sin{a}"),
            Expr::Cos(a) => write!(f, "cos{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::var::{A, X};
    use crate::symcore::qf;

    fn at(e: &Expr, vals: &[(Var, Q)], p: usize) -> BigFloat {
        e.eval_real(
            &|v| vals.iter().find(|(w, _)| *w == v).map(|(_, c)| BigFloat::from_q(c, p)),
            p,
        )
        .unwrap()
    }

    #[test]
    fn derivative_of_cot() {
        let ax = Expr::var(A) * Expr::var(X);
        let k = Expr::var(A) * ax.cot();
        // (a cot ax)' = -a^2 / sin^2(ax)
        let d = k.diff(X);
        let expect = -(Expr::var(A).powi(2) / ax.sin().powi(2));
        let vals = [(A, qf(3, 7)), (X, qf(5, 11))];
        let r = &at(&d, &vals, 128) - &at(&expect, &vals, 128);
        assert!(r.below_pow2(-110));
    }

    #[test]
    fn imaginary_unit_folds() {
        let e = Expr::i() * Expr::i();
        assert_eq!(e, Expr::int(-1));
        let r = fold_imaginary(&(&RatFunc::one() / &RatFunc::var(I)));
        assert_eq!(r, -RatFunc::var(I));
    }

    #[test]
    fn complex_exponential_is_unimodular() {
        let e = (Expr::i() * Expr::var(X)).exp();
        let p = 128;
        let z = e.eval(&|_| Some(Complex::real(BigFloat::from_q(&qf(2, 3), p))), p).unwrap();
        assert!((&z.norm_sqr() - &BigFloat::one(p)).below_pow2(-120));
    }

    #[test]
    fn pole_is_an_error() {
        let e = Expr::int(1) / Expr::var(X);
        let r = e.eval_real(&|_| Some(BigFloat::zero(64)), 64);
        assert!(matches!(r, Err(SymError::Pole(_))));
    }
}
