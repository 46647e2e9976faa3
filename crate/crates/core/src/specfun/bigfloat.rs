//! Arbitrary precision reals.
//!
//! A thin value type over `astro_float` that remembers its working precision
//! and keeps a per-thread constants cache, so arithmetic reads like `f64`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat as Raw, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as BigSign};
use num_traits::Zero;

use crate::symcore::Q;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct BigFloat {
    v: Raw,
    p: usize,
}

impl BigFloat {
    fn wrap(v: Raw, p: usize) -> Self {
        BigFloat { v, p }
    }

    pub fn prec(&self) -> usize {
        self.p
    }

    pub fn zero(p: usize) -> Self {
        BigFloat::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        BigFloat::from_i64(1, p)
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        BigFloat::wrap(Raw::from_i64(n, p), p)
    }

    pub fn from_f64(f: f64, p: usize) -> Self {
        BigFloat::wrap(Raw::from_f64(f, p), p)
    }

    pub fn from_bigint(n: &BigInt, p: usize) -> Self {
        let (sign, digits) = n.to_u64_digits();
        let bits = (digits.len() * 64).max(64) + 64;
        let base = Raw::from_u128(1u128 << 64, 128);
        let mut acc = Raw::from_u64(0, bits);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, bits, RM).add(&Raw::from_u64(*d, bits), bits, RM);
        }
        if sign == BigSign::Minus {
            acc.inv_sign();
        }
        let mut out = BigFloat::wrap(acc, bits);
        out.set_prec(p);
        out
    }

    pub fn from_q(c: &Q, p: usize) -> Self {
        let n = BigFloat::from_bigint(c.numer(), p + 64);
        let d = BigFloat::from_bigint(c.denom(), p + 64);
        let mut r = &n / &d;
        r.set_prec(p);
        r
    }

    pub fn set_prec(&mut self, p: usize) {
        if p != self.p {
            let _ = self.v.set_precision(p, RM);
            self.p = p;
        }
    }

    pub fn with_prec(&self, p: usize) -> Self {
        let mut r = self.clone();
        r.set_prec(p);
        r
    }

    /// `2^e` at precision `p`.
    pub fn pow2(e: i64, p: usize) -> Self {
        let two = Raw::from_i64(2, p);
        let v = two.powi(e.unsigned_abs() as usize, p, RM);
        let v = if e < 0 { v.reciprocal(p, RM) } else { v };
        BigFloat::wrap(v, p)
    }

    pub fn pi(p: usize) -> Self {
        BigFloat::wrap(with_cc(|cc| cc.pi(p, RM)), p)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.v.is_int()
    }

    pub fn abs(&self) -> Self {
        BigFloat::wrap(self.v.abs(), self.p)
    }

    pub fn floor(&self) -> Self {
        BigFloat::wrap(self.v.floor(), self.p)
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn log2_magnitude(&self) -> Option<i64> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(|e| e as i64)
        }
    }

    /// `|self| < 2^e`.
    pub fn below_pow2(&self, e: i64) -> bool {
        match self.log2_magnitude() {
            None => true,
            Some(m) => m <= e,
        }
    }

    pub fn sqrt(&self) -> Self {
        BigFloat::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn exp(&self) -> Self {
        BigFloat::wrap(with_cc(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn ln(&self) -> Self {
        BigFloat::wrap(with_cc(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn sin(&self) -> Self {
        BigFloat::wrap(with_cc(|cc| self.v.sin(self.p, RM, cc)), self.p)
    }

    pub fn cos(&self) -> Self {
        BigFloat::wrap(with_cc(|cc| self.v.cos(self.p, RM, cc)), self.p)
    }

    pub fn sinh(&self) -> Self {
        BigFloat::wrap(with_cc(|cc| self.v.sinh(self.p, RM, cc)), self.p)
    }

    pub fn cosh(&self) -> Self {
        BigFloat::wrap(with_cc(|cc| self.v.cosh(self.p, RM, cc)), self.p)
    }

    /// Real power of a positive base.
    ///
    /// Goes through `exp(e ln x)` with extra working bits: the library `pow`
    /// never returns when the power is exactly representable, as in `4^(1/2)`.
    pub fn powf(&self, e: &BigFloat) -> Self {
        let p = self.p.max(e.p);
        if e.is_integer() && e.below_pow2(31) {
            return self.with_prec(p).powi(e.to_f64() as i64);
        }
        if self.is_zero() {
            return BigFloat::zero(p);
        }
        let guess = self.with_prec(64).ln() * e.with_prec(64);
        let wp = p + 32 + guess.log2_magnitude().unwrap_or(0).max(0) as usize;
        let y = self.with_prec(wp).ln() * e.with_prec(wp);
        y.exp().with_prec(p)
    }

    pub fn powi(&self, n: i64) -> Self {
        let v = self.v.powi(n.unsigned_abs() as usize, self.p, RM);
        let v = if n < 0 { v.reciprocal(self.p, RM) } else { v };
        BigFloat::wrap(v, self.p)
    }

    pub fn recip(&self) -> Self {
        BigFloat::wrap(self.v.reciprocal(self.p, RM), self.p)
    }

    pub fn max_abs<'a>(a: &'a BigFloat, b: &'a BigFloat) -> &'a BigFloat {
        if a.abs() >= b.abs() {
            a
        } else {
            b
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.v.as_raw_parts() {
            Some((words, _, sign, e, _)) if !self.v.is_zero() => {
                let top = *words.last().unwrap() as f64 / 18446744073709551616.0;
                let mag = top * 2f64.powi(e.clamp(-1070, 1030));
                if sign == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
            _ => 0.0,
        }
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        let e = self.log2_magnitude().unwrap_or(0);
        if (-1000..1000).contains(&e) {
            return format!("{:.*e}", digits.saturating_sub(1), self.to_f64());
        }
        // outside f64 range: scale into it by a power of ten
        let k0 = (e as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let p = self.p.max(64);
        let ten = BigFloat::from_i64(10, p);
        let scaled = self.with_prec(p) / ten.powi(k0);
        let mut m = scaled.to_f64();
        let mut k = k0;
        while m.abs() < 1.0 {
            m *= 10.0;
            k -= 1;
        }
        while m.abs() >= 10.0 {
            m /= 10.0;
            k += 1;
        }
        format!("{:.*}e{}", digits.saturating_sub(1), m, k)
    }

    /// Exact decimal rendering from the underlying library.
    pub fn to_decimal(&self) -> String {
        with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    /// Round to a rational with a power-of-two denominator (exact copy of
    /// the binary value).
    pub fn to_q(&self) -> Q {
        match self.v.as_raw_parts() {
            Some((words, _, sign, e, _)) if !self.v.is_zero() => {
                let mut m = BigInt::zero();
                for w in words.iter().rev() {
                    m = (m << 64) + BigInt::from(*w);
                }
                let shift = e as i64 - 64 * words.len() as i64;
                let mut r = if shift >= 0 {
                    Q::from_integer(m << shift as usize)
                } else {
                    Q::new(m, BigInt::from(1) << (-shift) as usize)
                };
                if sign == Sign::Neg {
                    r = -r;
                }
                r
            }
            _ => Q::zero(),
        }
    }

    pub fn signum_i(&self) -> i32 {
        if self.v.is_zero() {
            0
        } else if self.v.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.v.cmp(&o.v) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.v.cmp(&o.v).map(|s| s.cmp(&0))
    }
}

macro_rules! arith {
    ($tr:ident, $f:ident) => {
        impl $tr for &BigFloat {
            type Output = BigFloat;
            fn $f(self, o: &BigFloat) -> BigFloat {
                let p = self.p.max(o.p);
                BigFloat::wrap(self.v.$f(&o.v, p, RM), p)
            }
        }
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $f(self, o: BigFloat) -> BigFloat {
                (&self).$f(&o)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $f(self, o: &BigFloat) -> BigFloat {
                (&self).$f(o)
            }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $f(self, o: BigFloat) -> BigFloat {
                self.$f(&o)
            }
        }
    };
}

arith!(Add, add);
arith!(Sub, sub);
arith!(Mul, mul);
arith!(Div, div);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(self.v.clone().neg(), self.p)
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

/// Helper used by error messages.

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::qf;

    #[test]
    fn rational_round_trip() {
        let c = qf(-355, 113);
        let f = BigFloat::from_q(&c, 256);
        assert!((f.to_f64() + 355.0 / 113.0).abs() < 1e-15);
        let back = f.to_q();
        let err = BigFloat::from_q(&(back - c), 256);
        assert!(err.below_pow2(-250));
    }

    #[test]
    fn big_integers_convert() {
        let n: BigInt = BigInt::from(3).pow(100u32);
        let f = BigFloat::from_bigint(&n, 256);
        assert_eq!(f.to_q(), Q::from_integer(n));
    }

    #[test]
    fn pi_and_trig() {
        let p = 192;
        let pi = BigFloat::pi(p);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let s = (&pi / &BigFloat::from_i64(6, p)).sin();
        let half = BigFloat::from_q(&qf(1, 2), p);
        assert!((&s - &half).below_pow2(-185));
    }

    #[test]
    fn exp_ln_inverse() {
        let p = 192;
        let x = BigFloat::from_q(&qf(7, 3), p);
        assert!((&x.exp().ln() - &x).below_pow2(-185));
    }

    #[test]
    fn formatting() {
        assert_eq!(BigFloat::from_i64(0, 64).to_sci(3), "0");
        assert_eq!(BigFloat::from_q(&qf(1, 8), 64).to_sci(3), "1.25e-1");
        let tiny = BigFloat::pow2(-1200, 128);
        assert!(tiny.to_sci(3).ends_with("e-362"), "{}", tiny.to_sci(3));
    }
}
