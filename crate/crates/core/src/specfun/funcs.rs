//! Tricomi's Psi, Bessel J and K, parabolic cylinder and Legendre functions,
//! each as a jet in `x`.

use super::gamma::{gamma, rgamma};
use super::hyper::{hyp0f1_jet, hyp1f1_jet, hyp2f1_jet};
use super::{BigFloat, Jet, SpecError};

fn bits_for_exp(x: &BigFloat) -> usize {
    (x.abs().to_f64() * std::f64::consts::LOG2_E).ceil().max(0.0) as usize
}

/// `y = k x^2` as a jet in `x`.
fn quadratic(x: &BigFloat, k: &BigFloat) -> Jet {
    let two = BigFloat::from_i64(2, x.prec());
    Jet::new(&(k * x) * x, &(&two * k) * x, &two * k, BigFloat::zero(x.prec()))
}

/// `Psi(a, c; x)` for `x > 0` and non-integer `c`, from the two Kummer
/// solutions:
/// `Gamma(1-c)/Gamma(a-c+1) M(a,c,x) + Gamma(c-1)/Gamma(a) x^(1-c) M(a-c+1,2-c,x)`.
pub fn tricomi_psi_jet(a: &BigFloat, c: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    if c.is_integer() {
        return Err(SpecError::Unsupported(format!("Psi with integer c = {}", c.to_sci(6))));
    }
    if x.signum_i() <= 0 {
        return Err(SpecError::Domain(format!("Psi needs x > 0, got {}", x.to_sci(12))));
    }
    // Each Kummer term grows like e^x while Psi decays like x^-a.
    let wp = p + 64 + bits_for_exp(x) + 2 * a.abs().to_f64().log2().max(0.0) as usize;
    let (a, c, x) = (a.with_prec(wp), c.with_prec(wp), x.with_prec(wp));
    let one = BigFloat::one(wp);
    let two = BigFloat::from_i64(2, wp);
    let g1 = &gamma(&(&one - &c), wp)? * &rgamma(&(&(&a - &c) + &one), wp)?;
    let g2 = &gamma(&(&c - &one), wp)? * &rgamma(&a, wp)?;
    let mut out = hyp1f1_jet(&a, &c, &x, wp)?.scale(&g1);
    if !g2.is_zero() {
        let m2 = hyp1f1_jet(&(&(&a - &c) + &one), &(&two - &c), &x, wp)?;
        let w = Jet::var(&x).powf(&(&one - &c));
        out = out.add(&w.mul(&m2).scale(&g2));
    }
    Ok(out.with_prec(p))
}

pub fn tricomi_psi(a: &BigFloat, c: &BigFloat, x: &BigFloat, p: usize) -> Result<BigFloat, SpecError> {
    Ok(tricomi_psi_jet(a, c, x, p)?.f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    J,
    K,
}

/// `(x/2)^nu / Gamma(nu+1) 0F1(; nu+1; s x^2/4)` with `s = -1` for `J` and
/// `s = +1` for `I`.
fn bessel_series(nu: &BigFloat, x: &BigFloat, sign: i64, p: usize) -> Result<Jet, SpecError> {
    let wp = p + 16;
    let (nu, x) = (nu.with_prec(wp), x.with_prec(wp));
    let one = BigFloat::one(wp);
    let quarter = &BigFloat::from_i64(sign, wp) / &BigFloat::from_i64(4, wp);
    let y = quadratic(&x, &quarter);
    let g = hyp0f1_jet(&(&nu + &one), &y.f, wp)?;
    let inner = y.then(&g);
    let half_x = Jet::var(&x).scale(&BigFloat::from_f64(0.5, wp));
    let front = half_x.powf(&nu).scale(&rgamma(&(&nu + &one), wp)?);
    Ok(front.mul(&inner).with_prec(p))
}

/// `J_nu(x)` by its power series; negative integer orders go through
/// `J_nu = (-1)^nu J_-nu`.
pub fn bessel_j_jet(nu: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    if x.signum_i() <= 0 {
        return Err(SpecError::Domain(format!("Bessel needs x > 0, got {}", x.to_sci(12))));
    }
    if nu.is_integer() && nu.is_negative() {
        let j = bessel_series(&(-nu), x, -1, p)?;
        let odd = (nu.to_f64() as i64) % 2 != 0;
        return Ok(if odd { j.neg() } else { j });
    }
    bessel_series(nu, x, -1, p)
}

pub fn bessel_i_jet(nu: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    if x.signum_i() <= 0 {
        return Err(SpecError::Domain(format!("Bessel needs x > 0, got {}", x.to_sci(12))));
    }
    bessel_series(nu, x, 1, p)
}

/// `K_nu(x) = (pi/2)(I_-nu(x) - I_nu(x)) / sin(pi nu)` for non-integer `nu`.
pub fn bessel_k_jet(nu: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    if nu.is_integer() {
        return Err(SpecError::Unsupported(format!("K with integer order {}", nu.to_sci(6))));
    }
    if x.signum_i() <= 0 {
        return Err(SpecError::Domain(format!("Bessel needs x > 0, got {}", x.to_sci(12))));
    }
    // I grows like e^x and K decays like e^-x.
    let wp = p + 48 + 2 * bits_for_exp(x);
    let (nu, x) = (nu.with_prec(wp), x.with_prec(wp));
    let pi = BigFloat::pi(wp);
    let diff = bessel_i_jet(&(-&nu), &x, wp)?.sub(&bessel_i_jet(&nu, &x, wp)?);
    let k = &(&pi / &BigFloat::from_i64(2, wp)) / &(&pi * &nu).sin();
    Ok(diff.scale(&k).with_prec(p))
}

pub fn bessel(kind: BesselKind, nu: &BigFloat, x: &BigFloat, p: usize) -> Result<BigFloat, SpecError> {
    Ok(match kind {
        BesselKind::J => bessel_j_jet(nu, x, p)?.f,
        BesselKind::K => bessel_k_jet(nu, x, p)?.f,
    })
}

/// `D_nu(x) = 2^((nu-1)/2) e^(-x^2/4) x Psi((1-nu)/2, 3/2; x^2/2)` for `x > 0`.
pub fn parcyl_jet(nu: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    if x.signum_i() <= 0 {
        return Err(SpecError::Domain(format!("parabolic cylinder needs x > 0, got {}", x.to_sci(12))));
    }
    let wp = p + 32;
    let (nu, x) = (nu.with_prec(wp), x.with_prec(wp));
    let one = BigFloat::one(wp);
    let half = BigFloat::from_f64(0.5, wp);
    let y = quadratic(&x, &half);
    let psi = tricomi_psi_jet(&(&half * &(&one - &nu)), &BigFloat::from_f64(1.5, wp), &y.f, wp)?;
    let gauss = quadratic(&x, &BigFloat::from_f64(-0.25, wp)).exp();
    let front = BigFloat::from_i64(2, wp).powf(&(&half * &(&nu - &one)));
    Ok(gauss.mul(&Jet::var(&x)).mul(&y.then(&psi)).scale(&front).with_prec(p))
}

/// `P_nu^mu(x)` for `1 < x < 3` from the Gauss series; positive integer
/// `mu` is reduced to `-mu` through the gamma ratio.
pub fn legendre_p_jet(nu: &BigFloat, mu: &BigFloat, x: &BigFloat, p: usize) -> Result<Jet, SpecError> {
    let one_f = BigFloat::one(x.prec());
    if !(x > &one_f && x < &BigFloat::from_i64(3, x.prec())) {
        return Err(SpecError::Domain(format!("Legendre needs 1 < x < 3, got {}", x.to_sci(12))));
    }
    let wp = p + 32;
    let (nu, mu, x) = (nu.with_prec(wp), mu.with_prec(wp), x.with_prec(wp));
    let one = BigFloat::one(wp);
    if mu.is_integer() && mu.signum_i() > 0 {
        let ratio = &gamma(&(&(&nu + &mu) + &one), wp)? * &rgamma(&(&(&nu - &mu) + &one), wp)?;
        return Ok(legendre_p_jet(&nu, &(-&mu), &x, wp)?.scale(&ratio).with_prec(p));
    }
    let half = BigFloat::from_f64(0.5, wp);
    let xj = Jet::var(&x);
    let z = xj.scale(&(-&half)).add(&Jet::constant(half.clone()));
    let f = hyp2f1_jet(&(&(&one - &mu) + &nu), &(&(-&mu) - &nu), &(&one - &mu), &z.f, wp)?;
    let w = xj.mul(&xj).sub(&Jet::constant(one.clone())).powf(&(&(-&mu) * &half));
    let front = &BigFloat::from_i64(2, wp).powf(&mu) * &rgamma(&(&one - &mu), wp)?;
    Ok(w.mul(&z.then(&f)).scale(&front).with_prec(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::qf;

    const P: usize = 192;

    fn bq(n: i64, d: i64) -> BigFloat {
        BigFloat::from_q(&qf(n, d), P)
    }

    fn rel(a: &BigFloat, b: &BigFloat) -> f64 {
        (&(a - b).abs() / &b.abs()).to_f64()
    }

    #[test]
    fn psi_laguerre_case() {
        // Psi(-2, alpha+1; x) = 2 L_2^alpha(x), alpha = 1/3, x = 2
        let alpha = bq(1, 3);
        let x = bq(2, 1);
        let psi = tricomi_psi(&BigFloat::from_i64(-2, P), &(&alpha + &BigFloat::one(P)), &x, P).unwrap();
        // L_2^a(x) = (a+1)(a+2)/2 - (a+2) x + x^2/2
        let one = BigFloat::one(P);
        let two = BigFloat::from_i64(2, P);
        let l2 = &(&(&(&(&alpha + &one) * &(&alpha + &two)) / &two) - &(&(&alpha + &two) * &x)) + &(&(&x * &x) / &two);
        assert!(rel(&psi, &(&two * &l2)) < 1e-50);
    }

    #[test]
    fn psi_large_x_normalization() {
        let (a, c) = (bq(1, 3), bq(3, 4));
        let x = BigFloat::from_i64(64, P);
        let v = &tricomi_psi(&a, &c, &x, P).unwrap() * &x.powf(&a);
        assert!((v.to_f64() - 1.0).abs() < 0.02, "{}", v.to_f64());
    }

    #[test]
    fn psi_ode() {
        let (a, c, x) = (bq(1, 3), bq(3, 4), bq(2, 1));
        let j = tricomi_psi_jet(&a, &c, &x, P).unwrap();
        let r = &(&(&x * &j.d2) + &(&(&c - &x) * &j.d1)) - &(&a * &j.f);
        assert!(r.below_pow2(-(P as i64) / 2));
        assert!(matches!(tricomi_psi(&a, &BigFloat::from_i64(2, P), &x, P), Err(SpecError::Unsupported(_))));
    }

    #[test]
    fn j_small_x() {
        let nu = bq(1, 3);
        let x = BigFloat::pow2(-10, P);
        let j = bessel(BesselKind::J, &nu, &x, P).unwrap();
        let lead = &(&x / &BigFloat::from_i64(2, P)).powf(&nu) / &gamma(&(&nu + &BigFloat::one(P)), P).unwrap();
        assert!((&j / &lead).to_f64() - 1.0 < 1e-6);
    }

    #[test]
    fn j_ode_and_negative_order() {
        let (nu, x) = (bq(1, 3), bq(3, 2));
        let j = bessel_j_jet(&nu, &x, P).unwrap();
        // x^2 f'' + x f' + (x^2 - nu^2) f
        let r = &(&(&(&x * &x) * &j.d2) + &(&x * &j.d1)) + &(&(&(&x * &x) - &(&nu * &nu)) * &j.f);
        assert!(r.below_pow2(-(P as i64) / 2));
        let jm = bessel_j_jet(&BigFloat::from_i64(-3, P), &x, P).unwrap();
        let jp = bessel_j_jet(&BigFloat::from_i64(3, P), &x, P).unwrap();
        assert!(rel(&jm.f, &(-&jp.f)) < 1e-50);
    }

    #[test]
    fn k_normalization() {
        let nu = bq(1, 4);
        let x = BigFloat::from_i64(50, P);
        let k = bessel(BesselKind::K, &nu, &x, P).unwrap();
        let f = &k * &x.powf(&(-&nu));
        let two_over_pi = &BigFloat::from_i64(2, P) / &BigFloat::pi(P);
        let v = &(&(&f * &two_over_pi.sqrt()) * &x.powf(&(&nu + &bq(1, 2)))) * &x.exp();
        assert!((v.to_f64() - 1.0).abs() < 0.01, "{}", v.to_f64());
        assert!(bessel(BesselKind::K, &BigFloat::one(P), &x, P).is_err());
    }

    #[test]
    fn k_half_closed_form() {
        // K_1/2(x) = sqrt(pi/(2x)) e^-x
        let x = bq(7, 2);
        let k = bessel(BesselKind::K, &bq(1, 2), &x, P).unwrap();
        let want = &(&BigFloat::pi(P) / &(&BigFloat::from_i64(2, P) * &x)).sqrt() * &(-&x).exp();
        assert!(rel(&k, &want) < 1e-50);
    }

    #[test]
    fn parcyl_ode() {
        // f = e^(x^2/4) D_nu satisfies f'' - x f' + nu f = 0
        let (nu, x) = (bq(-2, 3), bq(3, 2));
        let d = parcyl_jet(&nu, &x, P).unwrap();
        let w = quadratic(&x, &bq(1, 4)).exp();
        let f = w.mul(&d);
        let r = &(&f.d2 - &(&x * &f.d1)) + &(&nu * &f.f);
        assert!(r.below_pow2(-(P as i64) / 2));
    }

    #[test]
    fn legendre_integer_order_matches_limit() {
        // P_nu^1 via the gamma ratio and P_nu^mu near mu = 1 agree closely
        let (nu, x) = (bq(1, 3), bq(3, 2));
        let exact = legendre_p_jet(&nu, &BigFloat::one(P), &x, P).unwrap().f;
        let near = legendre_p_jet(&nu, &(&BigFloat::one(P) - &BigFloat::pow2(-40, P)), &x, P).unwrap().f;
        assert!(rel(&near, &exact) < 1e-9);
    }

    #[test]
    fn legendre_ode() {
        // (1-x^2) f'' - 2x f' + (nu(nu+1) - mu^2/(1-x^2)) f = 0
        let (nu, mu, x) = (bq(1, 3), bq(-1, 4), bq(3, 2));
        let j = legendre_p_jet(&nu, &mu, &x, P).unwrap();
        let one = BigFloat::one(P);
        let s = &one - &(&x * &x);
        let r = &(&(&s * &j.d2) - &(&(&BigFloat::from_i64(2, P) * &x) * &j.d1))
            + &(&(&(&nu * &(&nu + &one)) - &(&(&mu * &mu) / &s)) * &j.f);
        assert!(r.below_pow2(-(P as i64) / 2));
    }
}
