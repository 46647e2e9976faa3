//! Values carried together with their first two derivatives.

use super::BigFloat;

/// `f`, `f'`, `f''` at one point, plus a crude absolute error bound on `f`.
#[derive(Clone, Debug)]
pub struct Jet {
    pub f: BigFloat,
    pub d1: BigFloat,
    pub d2: BigFloat,
    pub err: BigFloat,
}

impl Jet {
    pub fn new(f: BigFloat, d1: BigFloat, d2: BigFloat, err: BigFloat) -> Jet {
        Jet { f, d1, d2, err }
    }

    pub fn constant(c: BigFloat) -> Jet {
        let p = c.prec();
        Jet::new(c, BigFloat::zero(p), BigFloat::zero(p), BigFloat::zero(p))
    }

    /// The identity function at `x`.
    pub fn var(x: &BigFloat) -> Jet {
        let p = x.prec();
        Jet::new(x.clone(), BigFloat::one(p), BigFloat::zero(p), BigFloat::zero(p))
    }

    pub fn prec(&self) -> usize {
        self.f.prec()
    }

    pub fn with_prec(&self, p: usize) -> Jet {
        Jet::new(self.f.with_prec(p), self.d1.with_prec(p), self.d2.with_prec(p), self.err.with_prec(p))
    }

    pub fn add(&self, o: &Jet) -> Jet {
        Jet::new(&self.f + &o.f, &self.d1 + &o.d1, &self.d2 + &o.d2, &self.err + &o.err)
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        Jet::new(&self.f - &o.f, &self.d1 - &o.d1, &self.d2 - &o.d2, &self.err + &o.err)
    }

    pub fn neg(&self) -> Jet {
        Jet::new(-&self.f, -&self.d1, -&self.d2, self.err.clone())
    }

    pub fn scale(&self, c: &BigFloat) -> Jet {
        let a = c.abs();
        Jet::new(&self.f * c, &self.d1 * c, &self.d2 * c, &self.err * &a)
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let two = BigFloat::from_i64(2, self.prec());
        let f = &self.f * &o.f;
        let d1 = &(&self.d1 * &o.f) + &(&self.f * &o.d1);
        let d2 = &(&(&self.d2 * &o.f) + &(&two * &(&self.d1 * &o.d1))) + &(&self.f * &o.d2);
        let err = &(&(&self.f.abs() * &o.err) + &(&o.f.abs() * &self.err)) + &(&self.err * &o.err);
        Jet::new(f, d1, d2, err)
    }

    /// `h(self)` given `h, h', h''` evaluated at `self.f`.
    pub fn chain(&self, h: &BigFloat, dh: &BigFloat, d2h: &BigFloat) -> Jet {
        let d1 = dh * &self.d1;
        let d2 = &(d2h * &(&self.d1 * &self.d1)) + &(dh * &self.d2);
        Jet::new(h.clone(), d1, d2, &dh.abs() * &self.err)
    }

    /// Compose an outer jet (derivatives taken in its own variable, evaluated
    /// at `self.f`) with `self`. The outer error is added as is.
    pub fn then(&self, outer: &Jet) -> Jet {
        let mut j = self.chain(&outer.f, &outer.d1, &outer.d2);
        j.err = &j.err + &outer.err;
        j
    }

    pub fn exp(&self) -> Jet {
        let e = self.f.exp();
        self.chain(&e, &e, &e)
    }

    /// `self^e` for a positive value.
    pub fn powf(&self, e: &BigFloat) -> Jet {
        let p = self.prec();
        let one = BigFloat::one(p);
        let v = self.f.powf(e);
        let d = &(e * &v) / &self.f;
        let dd = &(&(e - &one) * &d) / &self.f;
        self.chain(&v, &d, &dd)
    }

    pub fn recip(&self) -> Jet {
        let r = self.f.recip();
        let r2 = &r * &r;
        let two = BigFloat::from_i64(2, self.prec());
        self.chain(&r, &(-&r2), &(&two * &(&r2 * &r)))
    }

    pub fn div(&self, o: &Jet) -> Jet {
        self.mul(&o.recip())
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(&BigFloat::from_f64(0.5, self.prec()))
    }

    /// Largest magnitude among the value and its derivatives.
    pub fn scale_of(&self) -> BigFloat {
        let m = BigFloat::max_abs(&self.f, &self.d1).clone();
        BigFloat::max_abs(&m, &self.d2).abs()
    }
}
