use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::specfun::BigFloat;

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn real(re: BigFloat) -> Self {
        let p = re.prec();
        Complex { re, im: BigFloat::zero(p) }
    }

    pub fn i(p: usize) -> Self {
        Complex { re: BigFloat::zero(p), im: BigFloat::one(p) }
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn exp(&self) -> Complex {
        let m = self.re.exp();
        if self.im.is_zero() {
            return Complex::real(m);
        }
        Complex { re: &m * &self.im.cos(), im: &m * &self.im.sin() }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Complex {
        if self.im.is_zero() && !self.re.is_negative() {
            return Complex::real(self.re.ln());
        }
        let p = self.prec();
        Complex { re: self.abs().ln(), im: atan2(&self.im, &self.re, p) }
    }

    pub fn sin(&self) -> Complex {
        if self.im.is_zero() {
            return Complex::real(self.re.sin());
        }
        Complex { re: &self.re.sin() * &self.im.cosh(), im: &self.re.cos() * &self.im.sinh() }
    }

    pub fn cos(&self) -> Complex {
        if self.im.is_zero() {
            return Complex::real(self.re.cos());
        }
        Complex { re: &self.re.cos() * &self.im.cosh(), im: -(&self.re.sin() * &self.im.sinh()) }
    }

    pub fn powi(&self, n: i64) -> Complex {
        let mut acc = Complex::real(BigFloat::one(self.prec()));
        let mut base = if n < 0 { &acc / self } else { self.clone() };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal power `exp(e * ln self)`.
    pub fn powc(&self, e: &Complex) -> Complex {
        if self.is_real() && e.is_real() && !self.re.is_negative() {
            return Complex::real(self.re.powf(&e.re));
        }
        (e * &self.ln()).exp()
    }
}

fn atan2(y: &BigFloat, x: &BigFloat, p: usize) -> BigFloat {
    let pi = BigFloat::pi(p);
    if x.is_zero() {
        let half = &pi / &BigFloat::from_i64(2, p);
        return if y.is_negative() { -half } else { half };
    }
    let r = (y / x).abs();
    // halve the angle four times, then the Taylor series
    let one = BigFloat::one(p);
    let mut z = r;
    let mut mult = 1i64;
    for _ in 0..4 {
        z = &z / &(&one + &(&one + &(&z * &z)).sqrt());
        mult *= 2;
    }
    let z2 = &z * &z;
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut k = 1i64;
    loop {
        term = -(&term * &z2);
        let t = &term / &BigFloat::from_i64(2 * k + 1, p);
        if t.below_pow2(-(p as i64) - 8) {
            break;
        }
        sum = &sum + &t;
        k += 1;
    }
    let a = &sum * &BigFloat::from_i64(mult, p);
    match (x.is_negative(), y.is_negative()) {
        (false, false) => a,
        (false, true) => -a,
        (true, false) => &pi - &a,
        (true, true) => &a - &pi,
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        if self.im.is_zero() && o.im.is_zero() {
            return Complex::real(&self.re * &o.re);
        }
        Complex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        if o.im.is_zero() {
            return Complex { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let d = o.norm_sqr();
        let n = self * &o.conj();
        Complex { re: &n.re / &d, im: &n.im / &d }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_identity() {
        let p = 128;
        let ipi = Complex::new(BigFloat::zero(p), BigFloat::pi(p));
        let e = ipi.exp();
        assert!((&e.re + &BigFloat::one(p)).below_pow2(-120));
        assert!(e.im.below_pow2(-120));
    }

    #[test]
    fn log_of_negative_one() {
        let p = 128;
        let l = Complex::real(BigFloat::from_i64(-1, p)).ln();
        assert!(l.re.below_pow2(-120));
        assert!((&l.im - &BigFloat::pi(p)).below_pow2(-118));
        let l2 = Complex::new(BigFloat::from_i64(1, p), BigFloat::from_i64(-1, p)).ln();
        let quarter = &BigFloat::pi(p) / &BigFloat::from_i64(-4, p);
        assert!((&l2.im - &quarter).below_pow2(-118));
    }
}
