//! The functions `F(u)(x)` moved by each shift pair, with their weights.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::funcs::{bessel_j_jet, bessel_k_jet, legendre_p_jet, parcyl_jet, tricomi_psi_jet};
use super::hyper::{hyp1f1_jet, hyp2f1_jet};
use super::{BigFloat, Jet, SpecError};
use crate::symcore::{q, qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::P1,
        FamilyId::P2,
        FamilyId::P3,
        FamilyId::P4,
        FamilyId::P5,
        FamilyId::P6,
        FamilyId::P7,
        FamilyId::P8,
        FamilyId::P9,
        FamilyId::P10,
        FamilyId::P11,
    ];

    /// Equation tags of the pair, lowering first.
    pub fn eqs(self) -> (&'static str, &'static str) {
        use FamilyId::*;
        match self {
            P1 => ("3.8", "3.9"),
            P2 => ("3.10", "3.11"),
            P3 => ("3.12", "3.13"),
            P4 => ("3.15", "3.16"),
            P5 => ("3.19", "3.20"),
            P6 => ("3.25", "3.26"),
            P7 => ("3.27", "3.28"),
            P8 => ("3.29", "3.30"),
            P9 => ("3.34", "3.35"),
            P10 => ("3.40", "3.41"),
            P11 => ("3.42", "3.43"),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s}"))
    }
}

/// A shift-pair family with its fixed parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `F(a+u, b; c; x)`
    P1 { a: Q, b: Q, c: Q },
    /// `(1-x)^(a+u) F(a+u, b+u; c+u; x)`
    P2 { a: Q, b: Q, c: Q },
    /// `F(a+u, a-u; c; x)`
    P3 { a: Q, c: Q },
    /// `P_nu^u(x)`
    P4 { nu: Q },
    /// `F_k(x)` for integer `u = k`
    P5 { n: u32 },
    /// `Phi(a+u, c; x)`
    P6 { a: Q, c: Q },
    /// `Psi(u, c+u; x)`
    P7 { c: Q },
    /// `x^u e^(-x/2) Psi(2 delta + 1/2 + u, 2u+1; x)`
    P8 { delta: Q },
    /// `e^(x^2/4) D_-u(x)`
    P9,
    /// `x^-u K_u(x)`
    P10,
    /// `J_u(x)`
    P11,
}

impl Family {
    pub fn id(&self) -> FamilyId {
        match self {
            Family::P1 { .. } => FamilyId::P1,
            Family::P2 { .. } => FamilyId::P2,
            Family::P3 { .. } => FamilyId::P3,
            Family::P4 { .. } => FamilyId::P4,
            Family::P5 { .. } => FamilyId::P5,
            Family::P6 { .. } => FamilyId::P6,
            Family::P7 { .. } => FamilyId::P7,
            Family::P8 { .. } => FamilyId::P8,
            Family::P9 => FamilyId::P9,
            Family::P10 => FamilyId::P10,
            Family::P11 => FamilyId::P11,
        }
    }

    /// Generic parameters: no integer coincidences among the shifted
    /// arguments for non-integer `u`.
    pub fn standard(id: FamilyId) -> Family {
        match id {
            FamilyId::P1 => Family::P1 { a: qf(1, 3), b: qf(2, 5), c: qf(7, 4) },
            FamilyId::P2 => Family::P2 { a: qf(1, 3), b: qf(2, 5), c: qf(7, 4) },
            FamilyId::P3 => Family::P3 { a: qf(1, 3), c: qf(7, 4) },
            FamilyId::P4 => Family::P4 { nu: qf(1, 3) },
            FamilyId::P5 => Family::P5 { n: 3 },
            FamilyId::P6 => Family::P6 { a: qf(1, 3), c: qf(7, 4) },
            FamilyId::P7 => Family::P7 { c: qf(2, 7) },
            FamilyId::P8 => Family::P8 { delta: qf(1, 5) },
            FamilyId::P9 => Family::P9,
            FamilyId::P10 => Family::P10,
            FamilyId::P11 => Family::P11,
        }
    }

    /// Open real interval of `x` used for evaluation and sampling.
    pub fn domain(&self) -> (Q, Q) {
        match self.id() {
            FamilyId::P1 | FamilyId::P2 | FamilyId::P3 | FamilyId::P5 => (q(0), q(1)),
            FamilyId::P4 => (qf(6, 5), qf(5, 2)),
            _ => (qf(1, 2), q(8)),
        }
    }

    /// `F(u)` and its `x`-derivatives at `x`.
    pub fn eval(&self, u: &Q, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
        let (lo, hi) = self.domain();
        let xq = x.to_q();
        if xq <= lo || xq >= hi {
            return Err(SpecError::Domain(format!("{} needs {lo} < x < {hi}, got {}", self.id(), x.to_sci(12))));
        }
        let wp = p + 32;
        let bf = |c: &Q| BigFloat::from_q(c, wp);
        let x = x.with_prec(wp);
        let xj = Jet::var(&x);
        let one = Jet::constant(BigFloat::one(wp));
        let jet = match self {
            Family::P1 { a, b, c } => hyp2f1_jet(&bf(&(a + u)), &bf(b), &bf(c), &x, wp)?,
            Family::P2 { a, b, c } => {
                let f = hyp2f1_jet(&bf(&(a + u)), &bf(&(b + u)), &bf(&(c + u)), &x, wp)?;
                one.sub(&xj).powf(&bf(&(a + u))).mul(&f)
            }
            Family::P3 { a, c } => hyp2f1_jet(&bf(&(a + u)), &bf(&(a - u)), &bf(c), &x, wp)?,
            Family::P4 { nu } => legendre_p_jet(&bf(nu), &bf(u), &x, wp)?,
            Family::P5 { n } => {
                if !u.is_integer() {
                    return Err(SpecError::Domain(format!("P5 needs integer k, got {u}")));
                }
                let k = u.to_integer();
                let kabs: i64 = k.clone().try_into().map_err(|_| SpecError::Domain("k too large".into()))?;
                let f = p5_nonneg(*n as i64, kabs.abs(), &x, wp)?;
                if kabs >= 0 {
                    f
                } else {
                    // F_-k = (-1)^k x^k (1-x)^-k F_k
                    let m = kabs.abs();
                    let w = xj.div(&one.sub(&xj)).powf(&BigFloat::from_i64(m, wp));
                    let w = if m % 2 == 1 { w.neg() } else { w };
                    w.mul(&f)
                }
            }
            Family::P6 { a, c } => hyp1f1_jet(&bf(&(a + u)), &bf(c), &x, wp)?,
            Family::P7 { c } => tricomi_psi_jet(&bf(u), &bf(&(c + u)), &x, wp)?,
            Family::P8 { delta } => {
                let psi = tricomi_psi_jet(&bf(&(q(2) * delta + qf(1, 2) + u)), &bf(&(q(2) * u + q(1))), &x, wp)?;
                let w = xj.powf(&bf(u)).mul(&xj.scale(&bf(&qf(-1, 2))).exp());
                w.mul(&psi)
            }
            Family::P9 => {
                let d = parcyl_jet(&bf(&(-u)), &x, wp)?;
                xj.mul(&xj).scale(&bf(&qf(1, 4))).exp().mul(&d)
            }
            Family::P10 => xj.powf(&bf(&(-u))).mul(&bessel_k_jet(&bf(u), &x, wp)?),
            Family::P11 => bessel_j_jet(&bf(u), &x, wp)?,
        };
        Ok(jet.with_prec(p))
    }
}

/// `F_k(x) = (k+1)_n (1-x)^(k-n) F(k-n, n+k+1; k+1; x)` for `k >= 0`.
fn p5_nonneg(n: i64, k: i64, x: &BigFloat, wp: usize) -> Result<Jet, SpecError> {
    let bi = |v: i64| BigFloat::from_i64(v, wp);
    let f = hyp2f1_jet(&bi(k - n), &bi(n + k + 1), &bi(k + 1), x, wp)?;
    let poch = (k + 1..=k + n).fold(BigFloat::one(wp), |acc, j| &acc * &bi(j));
    let w = Jet::constant(BigFloat::one(wp)).sub(&Jet::var(x)).powf(&bi(k - n));
    Ok(w.mul(&f).scale(&poch))
}

pub fn family_eval(fam: &Family, u: &Q, x: &BigFloat, p: usize) -> Result<(BigFloat, BigFloat), SpecError> {
    let j = fam.eval(u, x, p)?;
    Ok((j.f, j.d1))
}

/// Which of the standalone special functions to evaluate.
#[derive(Clone, Debug, PartialEq)]
pub enum Special {
    ParCyl { nu: Q },
    LegendreP { nu: Q, mu: Q },
    Jacobi { n: u32, alpha: Q, beta: Q },
    Laguerre { n: u32, alpha: Q },
    Hermite { n: u32 },
}

pub fn special_eval(which: &Special, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    use super::poly::{hermite_coeffs, jacobi_coeffs, laguerre_coeffs, poly_jet};
    let bf = |c: &Q| BigFloat::from_q(c, p + 32);
    let x = x.with_prec(p + 32);
    let j = match which {
        Special::ParCyl { nu } => parcyl_jet(&bf(nu), &x, p + 32)?,
        Special::LegendreP { nu, mu } => legendre_p_jet(&bf(nu), &bf(mu), &x, p + 32)?,
        Special::Jacobi { n, alpha, beta } => {
            if is_negative_integer(alpha) || is_negative_integer(beta) {
                return Err(SpecError::Domain("Jacobi parameters must avoid -1, -2, ...".into()));
            }
            poly_jet(&jacobi_coeffs(*n, alpha, beta), &x)
        }
        Special::Laguerre { n, alpha } => poly_jet(&laguerre_coeffs(*n, alpha), &x),
        Special::Hermite { n } => poly_jet(&hermite_coeffs(*n), &x),
    };
    Ok(j.with_prec(p))
}

fn is_negative_integer(c: &Q) -> bool {
    c.is_integer() && *c < Q::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 192;

    #[test]
    fn p5_spot_value() {
        let fam = Family::P5 { n: 1 };
        let (v, _) = family_eval(&fam, &q(0), &BigFloat::from_q(&qf(1, 3), P), P).unwrap();
        assert!((&v - &BigFloat::from_f64(0.5, P)).abs().below_pow2(-(P as i64) + 8));
    }

    #[test]
    fn p1_near_zero_is_one() {
        let fam = Family::standard(FamilyId::P1);
        let (v, _) = family_eval(&fam, &qf(1, 7), &BigFloat::pow2(-200, P), P).unwrap();
        assert!((&v - &BigFloat::one(P)).abs().below_pow2(-180));
    }

    #[test]
    fn p11_order_zero() {
        let (v, _) = family_eval(&Family::P11, &q(0), &BigFloat::from_q(&qf(3, 5), P), P).unwrap();
        assert!((v.to_f64() - 0.912_004_863_497_211).abs() < 1e-14);
        let tiny = bessel_j_jet(&BigFloat::zero(P), &BigFloat::pow2(-40, P), P).unwrap().f;
        assert!((&tiny - &BigFloat::one(P)).abs().below_pow2(-78));
    }

    #[test]
    fn domain_is_enforced() {
        let fam = Family::standard(FamilyId::P4);
        assert!(fam.eval(&qf(1, 3), &BigFloat::from_f64(0.9, P), P).is_err());
        assert!(Family::P5 { n: 2 }.eval(&qf(1, 2), &BigFloat::from_f64(0.5, P), P).is_err());
    }

    #[test]
    fn hermite_via_parcyl() {
        // H_n(x) = 2^(n/2) e^(x^2/2) D_n(sqrt2 x) at n = 3
        let x = BigFloat::from_q(&qf(7, 5), P);
        let h = special_eval(&Special::Hermite { n: 3 }, &x, P).unwrap().f;
        let s2 = BigFloat::from_i64(2, P).sqrt();
        let d = special_eval(&Special::ParCyl { nu: q(3) }, &(&s2 * &x), P).unwrap().f;
        let via = &(&(&s2 * &BigFloat::from_i64(2, P)) * &(&(&x * &x) / &BigFloat::from_i64(2, P)).exp()) * &d;
        assert!((&(&h - &via) / &h).abs().below_pow2(-(P as i64) + 16));
    }
}
