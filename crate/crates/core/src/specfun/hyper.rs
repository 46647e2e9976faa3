//! Generalized hypergeometric series `pFq` summed together with their first
//! two derivatives.

use super::{BigFloat, Jet, SpecError};

const GUARD: usize = 32;
const MAX_TERMS: usize = 200_000;

fn nonpositive_integer(z: &BigFloat) -> bool {
    z.is_integer() && z.signum_i() <= 0
}

struct Sum {
    jet: Jet,
    /// log2 of the largest term over the log2 of the sum.
    cancellation: i64,
}

fn sum_series(num: &[BigFloat], den: &[BigFloat], y: &BigFloat, p: usize, wp: usize) -> Result<Sum, SpecError> {
    let num: Vec<BigFloat> = num.iter().map(|a| a.with_prec(wp)).collect();
    let den: Vec<BigFloat> = den.iter().map(|b| b.with_prec(wp)).collect();
    let y = y.with_prec(wp);
    let one = BigFloat::one(wp);
    let y_zero = y.is_zero();
    let y_inv = if y_zero { BigFloat::zero(wp) } else { y.recip() };

    // c_k y^k, plus the k = 1, 2 coefficients for y = 0.
    let mut t = BigFloat::one(wp);
    let (mut s0, mut s1, mut s2) = (BigFloat::one(wp), BigFloat::zero(wp), BigFloat::zero(wp));
    let mut abs_sum = BigFloat::one(wp);
    let mut biggest = BigFloat::one(wp);
    let mut coef = BigFloat::one(wp);
    let mut quiet = 0;
    let tol = -((p + GUARD) as i64);
    let mut last = BigFloat::zero(wp);
    for k in 0..MAX_TERMS {
        let kf = BigFloat::from_i64(k as i64, wp);
        let mut ratio = BigFloat::one(wp);
        for a in &num {
            ratio = &ratio * &(a + &kf);
        }
        for b in &den {
            let bk = b + &kf;
            if bk.is_zero() {
                if ratio.is_zero() {
                    break;
                }
                return Err(SpecError::Pole(format!("lower parameter {} is a nonpositive integer", b.to_sci(12))));
            }
            ratio = &ratio / &bk;
        }
        ratio = &ratio / &(&kf + &one);
        coef = &coef * &ratio;
        let k1 = k + 1;
        let k1f = BigFloat::from_i64(k1 as i64, wp);
        if y_zero {
            if k1 == 1 {
                s1 = coef.clone();
            } else if k1 == 2 {
                s2 = &coef * &BigFloat::from_i64(2, wp);
            }
            if k1 >= 2 {
                last = BigFloat::zero(wp);
                break;
            }
            continue;
        }
        t = &(&t * &ratio) * &y;
        if t.is_zero() {
            last = BigFloat::zero(wp);
            break;
        }
        let t1 = &(&t * &k1f) * &y_inv;
        let t2 = &(&t1 * &(&k1f - &one)) * &y_inv;
        s0 = &s0 + &t;
        s1 = &s1 + &t1;
        s2 = &s2 + &t2;
        let at = t.abs();
        abs_sum = &abs_sum + &at;
        if at > biggest {
            biggest = at.clone();
        }
        let scale = BigFloat::max_abs(&BigFloat::max_abs(&s0, &s1).clone(), &s2).log2_magnitude().unwrap_or(0);
        let small = |v: &BigFloat| v.below_pow2(tol + scale);
        if small(&t) && small(&t1) && small(&t2) {
            quiet += 1;
            if quiet >= 3 {
                last = at;
                break;
            }
        } else {
            quiet = 0;
        }
        if k + 1 == MAX_TERMS {
            return Err(SpecError::Convergence(format!("no convergence after {MAX_TERMS} terms")));
        }
    }
    let sum_mag = s0.log2_magnitude().unwrap_or(-(wp as i64));
    let cancellation = biggest.log2_magnitude().unwrap_or(0) - sum_mag;
    let rounding = &abs_sum * &BigFloat::pow2(8 - wp as i64, wp);
    let err = &(&last * &BigFloat::from_i64(8, wp)) + &rounding;
    Ok(Sum { jet: Jet::new(s0, s1, s2, err), cancellation })
}

/// `pFq(num; den; y)` with derivatives in `y`, at precision `p`.
///
/// Terms are summed until three consecutive terms of the value and both
/// derivative series fall below `2^(-p-32)` relative to the partial sums.
/// When the terms grow past the guard, the sum is repeated at a precision
/// raised by the observed cancellation.
pub fn pfq(num: &[BigFloat], den: &[BigFloat], y: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    if den.iter().any(nonpositive_integer) && !num.iter().any(nonpositive_integer) {
        return Err(SpecError::Pole("lower parameter is a nonpositive integer".into()));
    }
    let terminating = num.iter().any(nonpositive_integer);
    if !terminating && num.len() > den.len() + 1 {
        return Err(SpecError::Domain("divergent series".into()));
    }
    if !terminating && num.len() == den.len() + 1 && !y.abs().below_pow2(0) {
        return Err(SpecError::Domain(format!("series needs |x| < 1, got {}", y.to_sci(12))));
    }
    let mut wp = p + GUARD + 16;
    for _ in 0..4 {
        let s = sum_series(num, den, y, p, wp)?;
        if s.cancellation <= (wp - p - GUARD) as i64 {
            return Ok(s.jet.with_prec(p));
        }
        wp = p + GUARD + 16 + s.cancellation as usize;
    }
    Err(SpecError::Convergence("cancellation did not settle".into()))
}

pub fn hyp2f1_jet(a: &BigFloat, b: &BigFloat, c: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    pfq(&[a.clone(), b.clone()], &[c.clone()], x, p)
}

pub fn hyp2f1(a: &BigFloat, b: &BigFloat, c: &BigFloat, x: &BigFloat, p: usize) -> Result<BigFloat, SpecError> {
    Ok(hyp2f1_jet(a, b, c, x, p)?.f)
}

pub fn hyp1f1_jet(a: &BigFloat, c: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    pfq(&[a.clone()], &[c.clone()], x, p)
}

pub fn hyp1f1(a: &BigFloat, c: &BigFloat, x: &BigFloat, p: usize) -> Result<BigFloat, SpecError> {
    Ok(hyp1f1_jet(a, c, x, p)?.f)
}

pub fn hyp0f1_jet(c: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    pfq(&[], &[c.clone()], x, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::qf;

    const P: usize = 192;

    fn bq(n: i64, d: i64) -> BigFloat {
        BigFloat::from_q(&qf(n, d), P)
    }

    fn rel(a: &BigFloat, b: &BigFloat) -> BigFloat {
        &(a - b).abs() / &b.abs()
    }

    #[test]
    fn value_at_zero() {
        let j = hyp2f1_jet(&bq(1, 3), &bq(2, 5), &bq(7, 4), &BigFloat::zero(P), P).unwrap();
        assert_eq!(j.f.to_f64(), 1.0);
        let want = &(&bq(1, 3) * &bq(2, 5)) / &bq(7, 4);
        assert!(rel(&j.d1, &want).below_pow2(-180));
        assert_eq!(hyp1f1(&bq(1, 3), &bq(1, 2), &BigFloat::zero(P), P).unwrap().to_f64(), 1.0);
    }

    #[test]
    fn terminating() {
        let (b, c, x) = (bq(1, 3), bq(5, 2), bq(2, 7));
        let got = hyp2f1(&BigFloat::from_i64(-2, P), &b, &c, &x, P).unwrap();
        let one = BigFloat::one(P);
        let want = &(&one - &(&(&bq(2, 1) * &b) * &x / &c))
            + &(&(&(&b * &(&b + &one)) * &(&x * &x)) / &(&c * &(&c + &one)));
        assert!(rel(&got, &want).below_pow2(-180));
        let got = hyp1f1(&BigFloat::from_i64(-1, P), &c, &x, P).unwrap();
        assert!(rel(&got, &(&one - &(&x / &c))).below_pow2(-180));
    }

    #[test]
    fn euler_transform() {
        let (a, b, c, x) = (bq(1, 3), bq(2, 3), bq(5, 4), bq(1, 5));
        let one = BigFloat::one(P);
        let lhs = hyp2f1(&a, &b, &c, &x, P).unwrap();
        let y = &x / &(&x - &one);
        let rhs = &(&one - &x).powf(&(-&a)) * &hyp2f1(&a, &(&c - &b), &c, &y, P).unwrap();
        assert!(rel(&lhs, &rhs).below_pow2(-(P as i64) + 16));
    }

    #[test]
    fn confluence_limit() {
        let (a, c, x) = (bq(1, 3), bq(3, 4), bq(3, 2));
        let b = BigFloat::pow2(20, P);
        let lim = hyp2f1(&a, &b, &c, &(&x / &b), P).unwrap();
        let m = hyp1f1(&a, &c, &x, P).unwrap();
        let gap = rel(&lim, &m).to_f64();
        assert!(gap > 0.0 && gap < 8.0 / 1048576.0, "gap {gap}");
    }

    #[test]
    fn ode_residuals() {
        let (a, b, c, x) = (bq(1, 3), bq(2, 3), bq(5, 4), bq(2, 5));
        let one = BigFloat::one(P);
        let j = hyp2f1_jet(&a, &b, &c, &x, P).unwrap();
        let r = &(&(&(&x * &(&one - &x)) * &j.d2) + &(&(&c - &(&(&(&a + &b) + &one) * &x)) * &j.d1)) - &(&(&a * &b) * &j.f);
        assert!(r.below_pow2(-(P as i64) / 2));
        let j = hyp1f1_jet(&a, &c, &bq(7, 2), P).unwrap();
        let x = bq(7, 2);
        let r = &(&(&x * &j.d2) + &(&(&c - &x) * &j.d1)) - &(&a * &j.f);
        assert!(r.below_pow2(-(P as i64) + 24));
    }

    #[test]
    fn alternating_sum_keeps_precision() {
        // 1F1(a; a; -x) = e^-x
        let a = bq(1, 3);
        let x = BigFloat::from_i64(30, P);
        let got = hyp1f1(&a, &a, &(-&x), P).unwrap();
        assert!(rel(&got, &(-&x).exp()).below_pow2(-(P as i64) + 16));
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1(&bq(1, 3), &bq(1, 2), &BigFloat::from_i64(-1, P), &bq(1, 2), P), Err(SpecError::Pole(_))));
        assert!(matches!(hyp2f1(&bq(1, 3), &bq(1, 2), &bq(1, 4), &bq(3, 2), P), Err(SpecError::Domain(_))));
    }

    #[test]
    fn error_estimate_shrinks_with_precision() {
        let (a, b, c, x) = (bq(1, 3), bq(2, 3), bq(5, 4), bq(1, 2));
        let e1 = hyp2f1_jet(&a, &b, &c, &x, 128).unwrap().err;
        let e2 = hyp2f1_jet(&a, &b, &c, &x, 256).unwrap().err;
        assert!(!e1.is_zero());
        assert!((&e2 * &BigFloat::pow2(64 - 8, 256)) <= e1);
    }
}
