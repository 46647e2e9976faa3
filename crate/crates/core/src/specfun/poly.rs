//! Jacobi, Laguerre and Hermite polynomials with exact rational coefficients
//! (index `k` holds the coefficient of `x^k`), built from their
//! hypergeometric forms, plus three-term recurrences used as oracles.

use num_traits::Zero;

use super::gamma::pochhammer_q;
use super::{BigFloat, Jet};
use crate::symcore::{q, qf, Q};

pub type QPoly = Vec<Q>;

pub fn trim(mut v: QPoly) -> QPoly {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn add(a: &[Q], b: &[Q]) -> QPoly {
    let mut out = vec![q(0); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn mul(a: &[Q], b: &[Q]) -> QPoly {
    let mut out = vec![q(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[Q], c: &Q) -> QPoly {
    trim(a.iter().map(|x| x * c).collect())
}

fn factorial(n: u32) -> Q {
    pochhammer_q(&q(1), n)
}

/// Terminating `pFq` with polynomial argument `arg(x)`.
pub fn terminating(num: &[Q], den: &[Q], n: u32, arg: &[Q]) -> QPoly {
    let mut out = vec![q(0)];
    let mut pw = vec![q(1)];
    for k in 0..=n {
        let mut c = num.iter().fold(q(1), |acc, a| acc * pochhammer_q(a, k));
        for b in den {
            c /= pochhammer_q(b, k);
        }
        c /= factorial(k);
        out = add(&out, &scale(&pw, &c));
        pw = mul(&pw, arg);
    }
    out
}

/// `P_n^(alpha,beta)(x) = (alpha+1)_n/n! F(-n, n+alpha+beta+1; alpha+1; (1-x)/2)`.
pub fn jacobi_coeffs(n: u32, alpha: &Q, beta: &Q) -> QPoly {
    let a1 = alpha + q(1);
    let f = terminating(&[q(-(n as i64)), q(n as i64) + alpha + beta + q(1)], &[a1.clone()], n, &[qf(1, 2), qf(-1, 2)]);
    scale(&f, &(pochhammer_q(&a1, n) / factorial(n)))
}

/// `L_n^alpha(x) = (alpha+1)_n/n! Phi(-n, alpha+1; x)`.
pub fn laguerre_coeffs(n: u32, alpha: &Q) -> QPoly {
    let a1 = alpha + q(1);
    let f = terminating(&[q(-(n as i64))], &[a1.clone()], n, &[q(0), q(1)]);
    scale(&f, &(pochhammer_q(&a1, n) / factorial(n)))
}

/// `Psi(-m, c; z)` as a polynomial in `z`. The two forms of the Laguerre
/// polynomial give `Psi(-m, c; z) = (-1)^m (c)_m Phi(-m, c; z)`.
fn psi_terminating(m: u32, c: &Q) -> QPoly {
    let sign = if m % 2 == 0 { q(1) } else { q(-1) };
    scale(&terminating(&[q(-(m as i64))], &[c.clone()], m, &[q(0), q(1)]), &(sign * pochhammer_q(c, m)))
}

/// `H_n` from the parabolic cylinder function. Writing `n = 2m` or `2m+1`
/// and using `Psi(a, c; z) = z^(1-c) Psi(a-c+1, 2-c; z)` for the even case,
/// `H_2m(x) = 4^m Psi(-m, 1/2; x^2)` and `H_2m+1(x) = 2^(2m+1) x Psi(-m, 3/2; x^2)`.
pub fn hermite_coeffs(n: u32) -> QPoly {
    let m = n / 2;
    let c = if n % 2 == 0 { qf(1, 2) } else { qf(3, 2) };
    let in_z = psi_terminating(m, &c);
    let mut out = vec![q(0); 2 * in_z.len() + (n % 2) as usize];
    for (k, v) in in_z.iter().enumerate() {
        out[2 * k + (n % 2) as usize] = v.clone();
    }
    let two_n = (0..n).fold(q(1), |acc, _| acc * q(2));
    scale(&out, &two_n)
}

/// Jacobi recurrence; `None` when a recurrence denominator vanishes.
pub fn jacobi_recurrence(n: u32, alpha: &Q, beta: &Q) -> Option<QPoly> {
    let s = alpha + beta;
    let p1 = vec![alpha + q(1) - (&s + q(2)) / q(2), (&s + q(2)) / q(2)];
    let mut prev = vec![q(1)];
    if n == 0 {
        return Some(prev);
    }
    let mut cur = trim(p1);
    for k in 2..=n as i64 {
        let kq = q(k);
        let t = q(2) * &kq + &s;
        let den = q(2) * &kq * (&kq + &s) * (&t - q(2));
        if den.is_zero() {
            return None;
        }
        let lin = vec![alpha * alpha - beta * beta, &t * (&t - q(2))];
        let a = scale(&mul(&lin, &cur), &(&t - q(1)));
        let b = scale(&prev, &(q(-2) * (&kq + alpha - q(1)) * (&kq + beta - q(1)) * &t));
        let next = scale(&add(&a, &b), &den.recip());
        prev = cur;
        cur = next;
    }
    Some(cur)
}

pub fn laguerre_recurrence(n: u32, alpha: &Q) -> QPoly {
    let mut prev = vec![q(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![alpha + q(1), q(-1)];
    for k in 1..n as i64 {
        let lin = vec![q(2 * k + 1) + alpha, q(-1)];
        let next = add(&mul(&lin, &cur), &scale(&prev, &(-(q(k) + alpha))));
        prev = cur;
        cur = scale(&next, &qf(1, k + 1));
    }
    cur
}

pub fn hermite_recurrence(n: u32) -> QPoly {
    let mut prev = vec![q(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![q(0), q(2)];
    for k in 1..n as i64 {
        let next = add(&mul(&[q(0), q(2)], &cur), &scale(&prev, &q(-2 * k)));
        prev = cur;
        cur = next;
    }
    cur
}

/// Horner evaluation with two derivatives.
pub fn poly_jet(c: &[Q], x: &BigFloat) -> Jet {
    let p = x.prec();
    let (mut f, mut d1, mut d2) = (BigFloat::zero(p), BigFloat::zero(p), BigFloat::zero(p));
    let two = BigFloat::from_i64(2, p);
    for coef in c.iter().rev() {
        d2 = &(&d2 * x) + &(&two * &d1);
        d1 = &(&d1 * x) + &f;
        f = &(&f * x) + &BigFloat::from_q(coef, p);
    }
    Jet::new(f, d1, d2, BigFloat::zero(p))
}

pub fn eval_q(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(q(0), |acc, k| acc * x + k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        assert_eq!(hermite_coeffs(0), vec![q(1)]);
        assert_eq!(hermite_coeffs(1), vec![q(0), q(2)]);
        assert_eq!(hermite_coeffs(2), vec![q(-2), q(0), q(4)]);
        assert_eq!(jacobi_coeffs(0, &qf(1, 3), &qf(1, 2)), vec![q(1)]);
        assert_eq!(laguerre_coeffs(1, &q(0)), vec![q(1), q(-1)]);
    }

    #[test]
    fn definitions_match_recurrences() {
        let (a, b) = (qf(1, 3), qf(1, 2));
        for n in 0..=8 {
            assert_eq!(jacobi_coeffs(n, &a, &b), jacobi_recurrence(n, &a, &b).unwrap(), "jacobi {n}");
            assert_eq!(laguerre_coeffs(n, &a), laguerre_recurrence(n, &a), "laguerre {n}");
            assert_eq!(hermite_coeffs(n), hermite_recurrence(n), "hermite {n}");
        }
    }

    #[test]
    fn jacobi_reflection() {
        let (a, b) = (qf(1, 3), qf(1, 2));
        let x = qf(2, 5);
        let lhs = eval_q(&jacobi_coeffs(3, &a, &b), &x);
        let rhs = -eval_q(&jacobi_coeffs(3, &b, &a), &(-x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn jet_derivatives() {
        let c = hermite_coeffs(3);
        let x = BigFloat::from_i64(2, 128);
        let j = poly_jet(&c, &x);
        // H3 = 8x^3 - 12x
        assert_eq!(j.f.to_f64(), 40.0);
        assert_eq!(j.d1.to_f64(), 84.0);
        assert_eq!(j.d2.to_f64(), 96.0);
    }
}
