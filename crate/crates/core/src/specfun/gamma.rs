//! The gamma function by argument raising and Stirling's series.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BigFloat, SpecError};
use crate::symcore::{q, Q};

static BERNOULLI: Mutex<Vec<Q>> = Mutex::new(Vec::new());

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `B_m`, with `B_1 = -1/2`.
pub fn bernoulli(m: usize) -> Q {
    let mut b = BERNOULLI.lock().expect("bernoulli cache");
    if b.is_empty() {
        b.push(q(1));
    }
    while b.len() <= m {
        let n = b.len();
        let row = binomial_row(n + 1);
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Q::from_integer(row[k].clone()) * bk;
        }
        b.push(-s / q(n as i64 + 1));
    }
    b[m].clone()
}

fn nonpositive_integer(z: &BigFloat) -> bool {
    z.is_integer() && !(z.signum_i() > 0)
}

/// `ln Gamma(w)` for large positive `w`. The remainder of Stirling's series
/// after the `k`-th term is below `(k / (pi e w))^(2k)`, so taking
/// `w >= wp/2 + 8` reaches `2^-wp` within about `wp/8` terms.
fn ln_gamma_stirling(w: &BigFloat, wp: usize) -> BigFloat {
    let half = BigFloat::from_f64(0.5, wp);
    let two_pi = &BigFloat::pi(wp) * &BigFloat::from_i64(2, wp);
    let mut s = &(&(&(w - &half) * &w.ln()) - w) + &(&half * &two_pi.ln());
    let w2 = w * w;
    let mut wpow = w.clone();
    let tol = -(wp as i64);
    for k in 1..400usize {
        let c = bernoulli(2 * k) / q((2 * k * (2 * k - 1)) as i64);
        let t = &BigFloat::from_q(&c, wp) / &wpow;
        s = &s + &t;
        if t.below_pow2(tol + s.log2_magnitude().unwrap_or(0)) {
            break;
        }
        wpow = &wpow * &w2;
    }
    s
}

/// `Gamma(z)` at precision `p`. Poles at `0, -1, -2, ...` are errors.
pub fn gamma(z: &BigFloat, p: usize) -> Result<BigFloat, SpecError> {
    if nonpositive_integer(z) {
        return Err(SpecError::Pole(format!("gamma at {}", z.to_sci(12))));
    }
    let mag = z.log2_magnitude().unwrap_or(0).max(0) as usize;
    let wp = p + 40 + 2 * mag;
    let z = z.with_prec(wp);
    let half = BigFloat::from_f64(0.5, wp);
    if z < half {
        let one = BigFloat::one(wp);
        let pi = BigFloat::pi(wp);
        let s = (&pi * &z).sin();
        let g = gamma(&(&one - &z), wp)?;
        let mut r = &pi / &(&s * &g);
        r.set_prec(p);
        return Ok(r);
    }
    let target = (wp / 2 + 8) as f64;
    let shift = (target - z.to_f64()).ceil().max(0.0) as i64;
    let mut prod = BigFloat::one(wp);
    let mut w = z.clone();
    for _ in 0..shift {
        prod = &prod * &w;
        w = &w + &BigFloat::one(wp);
    }
    let mut r = &ln_gamma_stirling(&w, wp).exp() / &prod;
    r.set_prec(p);
    Ok(r)
}

/// `1/Gamma(z)`, zero at the poles of `Gamma`.
pub fn rgamma(z: &BigFloat, p: usize) -> Result<BigFloat, SpecError> {
    if nonpositive_integer(z) {
        return Ok(BigFloat::zero(p));
    }
    Ok(gamma(z, p + 8)?.recip().with_prec(p))
}

/// Rising factorial `(a)_k`.
pub fn pochhammer(a: &BigFloat, k: u32) -> BigFloat {
    let p = a.prec();
    let mut r = BigFloat::one(p);
    let mut t = a.clone();
    for _ in 0..k {
        r = &r * &t;
        t = &t + &BigFloat::one(p);
    }
    r
}

/// Exact rising factorial over `Q`.
pub fn pochhammer_q(a: &Q, k: u32) -> Q {
    (0..k).fold(q(1), |acc, i| acc * (a + q(i as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::qf;

    const P: usize = 192;

    fn close(a: &BigFloat, b: &BigFloat, bits: i64) -> bool {
        let d = (a - b).abs();
        d.below_pow2(-bits + b.log2_magnitude().unwrap_or(0))
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), qf(-1, 2));
        assert_eq!(bernoulli(2), qf(1, 6));
        assert_eq!(bernoulli(12), qf(-691, 2730));
        assert_eq!(bernoulli(7), q(0));
    }

    #[test]
    fn integers_and_half() {
        assert_eq!(gamma(&BigFloat::one(P), P).unwrap().to_f64(), 1.0);
        let g6 = gamma(&BigFloat::from_i64(6, P), P).unwrap();
        assert!(close(&g6, &BigFloat::from_i64(120, P), P as i64 - 16));
        let h = gamma(&BigFloat::from_f64(0.5, P), P).unwrap();
        assert!(close(&h, &BigFloat::pi(P).sqrt(), P as i64 - 16));
    }

    #[test]
    fn functional_equation_at_seven_thirds() {
        let z = BigFloat::from_q(&qf(7, 3), P);
        let r = &gamma(&(&z + &BigFloat::one(P)), P).unwrap() / &gamma(&z, P).unwrap();
        assert!(close(&r, &z, P as i64 - 20));
    }

    #[test]
    fn reflection_side() {
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = gamma(&BigFloat::from_f64(-0.5, P), P).unwrap();
        let want = -(&BigFloat::pi(P).sqrt() * &BigFloat::from_i64(2, P));
        assert!(close(&g, &want, P as i64 - 16));
    }

    #[test]
    fn poles() {
        assert!(gamma(&BigFloat::from_i64(-3, P), P).is_err());
        assert!(gamma(&BigFloat::zero(P), P).is_err());
        assert!(rgamma(&BigFloat::from_i64(-2, P), P).unwrap().is_zero());
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        let a = BigFloat::from_q(&qf(1, 3), P);
        let r = &gamma(&(&a + &BigFloat::from_i64(5, P)), P).unwrap() / &gamma(&a, P).unwrap();
        assert!(close(&pochhammer(&a, 5), &r, P as i64 - 20));
        assert_eq!(pochhammer_q(&qf(1, 2), 3), qf(15, 8));
    }
}
