//! Pointwise checks of the shift pairs and measurement of the factors
//! `Delta_-(u - 1/2)`, `Delta_+(u + 1/2)`.

use super::ops::{apply_op, family_vals, shift_pair, Dir, Shift};
use super::LadderError;
use crate::diffop::DiffOp;
use crate::specfun::{BigFloat, Family, FamilyId};
use crate::symcore::var::U;
use crate::symcore::{q, RatFunc, Q};

/// A proportionality constant read off as pointwise ratios.
#[derive(Clone, Debug)]
pub struct Measured {
    /// Ratio at the point where the target function is largest; exactly
    /// zero when the image vanishes at every point.
    pub value: BigFloat,
    pub zero: bool,
    /// Largest relative deviation of the other points' ratios.
    pub spread: f64,
}

/// Image of `F(u)` under one operator at each sample point, plus the target
/// `F(u -/+ 1)`.
struct Images {
    lhs: Vec<BigFloat>,
    scale: Vec<BigFloat>,
    target: Vec<BigFloat>,
}

fn images(fam: &Family, op: &DiffOp, sqrt_front: bool, u: &Q, dir: Dir, xs: &[Q], p: usize) -> Result<Images, LadderError> {
    let vals = family_vals(fam);
    let tu = u + q(dir.step());
    let mut out = Images { lhs: vec![], scale: vec![], target: vec![] };
    for xq in xs {
        let x = BigFloat::from_q(xq, p);
        let f = fam.eval(u, &x, p)?;
        let g = fam.eval(&tu, &x, p)?;
        let (l, s) = apply_op(op, sqrt_front, &vals, &f, &x, p)?;
        out.lhs.push(l);
        out.scale.push(BigFloat::max_abs(&s, &f.f).abs());
        out.target.push(g.f);
    }
    Ok(out)
}

fn measure(im: &Images, tol_bits: i64) -> Result<Measured, LadderError> {
    let p = im.lhs[0].prec();
    let zero = im.lhs.iter().zip(&im.scale).all(|(l, s)| l.below_pow2(s.log2_magnitude().unwrap_or(0) - tol_bits));
    if zero {
        return Ok(Measured { value: BigFloat::zero(p), zero: true, spread: 0.0 });
    }
    let (iref, gmax) = im
        .target
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite"))
        .map(|(i, g)| (i, g.abs()))
        .expect("at least one point");
    if gmax.is_zero() {
        return Err(LadderError::Inconclusive("target vanishes at every sample point".into()));
    }
    let value = &im.lhs[iref] / &im.target[iref];
    let floor = gmax.log2_magnitude().unwrap_or(0) - tol_bits;
    let mut spread: f64 = 0.0;
    for (l, g) in im.lhs.iter().zip(&im.target) {
        if g.below_pow2(floor) {
            continue;
        }
        let r = l / g;
        spread = spread.max((&(&r - &value) / &value).abs().to_f64());
    }
    Ok(Measured { value, zero: false, spread })
}

/// Measure how `op(u)` maps `F(u)` onto `F(u -/+ 1)`.
pub fn measure_shift(fam: &Family, op: &DiffOp, sqrt_front: bool, u: &Q, dir: Dir, xs: &[Q], p: usize) -> Result<Measured, LadderError> {
    measure(&images(fam, op, sqrt_front, u, dir, xs, p)?, (p / 4) as i64)
}

fn at_u(s: &Shift, u: &Q) -> DiffOp {
    let uu = RatFunc::constant(u.clone());
    s.op.map_coeffs(|c| c.subst1(U, &uu))
}

/// `(Delta_-(u - 1/2), Delta_+(u + 1/2))` for the family's own shift pair.
pub fn measure_delta(fam: &Family, u: &Q, xs: &[Q], p: usize) -> Result<(Measured, Measured), LadderError> {
    let (dn, up) = shift_pair(fam.id());
    Ok((
        measure_shift(fam, &at_u(&dn, u), dn.sqrt_front, u, Dir::Down, xs, p)?,
        measure_shift(fam, &at_u(&up, u), up.sqrt_front, u, Dir::Up, xs, p)?,
    ))
}

#[derive(Clone, Debug)]
pub struct DirectionCheck {
    pub eq: &'static str,
    pub dir: Dir,
    pub expected: Q,
    pub measured: Measured,
    /// `|LHS - RHS|` over the largest term, worst point.
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct PairCheck {
    pub family: FamilyId,
    pub params: String,
    pub u: Q,
    pub xs: Vec<Q>,
    pub down: DirectionCheck,
    pub up: DirectionCheck,
}

impl PairCheck {
    pub fn pass(&self) -> bool {
        self.down.pass && self.up.pass
    }

    pub fn max_residual(&self) -> f64 {
        self.down.max_residual.max(self.up.max_residual)
    }
}

fn direction(fam: &Family, s: &Shift, u: &Q, dir: Dir, xs: &[Q], p: usize) -> Result<DirectionCheck, LadderError> {
    let mut vals = family_vals(fam);
    vals.push((U, u.clone()));
    let expected = s.coef.eval_exact(&vals)?;
    let im = images(fam, &at_u(s, u), s.sqrt_front, u, dir, xs, p)?;
    let c = BigFloat::from_q(&expected, p);
    let tol = BigFloat::pow2(-((p / 4) as i64), 64).to_f64();
    let mut worst: f64 = 0.0;
    for ((l, sc), g) in im.lhs.iter().zip(&im.scale).zip(&im.target) {
        let rhs = &c * g;
        let denom = BigFloat::max_abs(sc, &rhs).abs();
        let r = if denom.is_zero() { 0.0 } else { (&(l - &rhs).abs() / &denom).to_f64() };
        worst = worst.max(r);
    }
    let measured = measure(&im, (p / 4) as i64)?;
    let agrees = if expected == q(0) {
        measured.zero
    } else {
        !measured.zero && (&(&measured.value - &c) / &c).abs().to_f64() < tol && measured.spread < tol
    };
    Ok(DirectionCheck { eq: s.eq, dir, expected, measured, max_residual: worst, pass: worst < tol && agrees })
}

/// Verify both directions of the family's pair at `u` on the sample points.
pub fn verify_pair(fam: &Family, u: &Q, xs: &[Q], p: usize) -> Result<PairCheck, LadderError> {
    if xs.len() < 3 {
        return Err(LadderError::Domain("need at least three sample points".into()));
    }
    let (dn, up) = shift_pair(fam.id());
    Ok(PairCheck {
        family: fam.id(),
        params: format!("{fam:?}"),
        u: u.clone(),
        xs: xs.to_vec(),
        down: direction(fam, &dn, u, Dir::Down, xs, p)?,
        up: direction(fam, &up, u, Dir::Up, xs, p)?,
    })
}

/// The composite `up(u - 1) . down(u)` as one differential operator.
pub fn composed(id: FamilyId, u: &Q) -> DiffOp {
    let (dn, up) = shift_pair(id);
    at_u(&up, &(u - q(1))).compose(&at_u(&dn, u))
}

#[cfg(test)]
mod tests {
    use super::super::ops::sample_points;
    use super::*;
    use crate::symcore::qf;

    const P: usize = 192;

    #[test]
    fn gauss_lowering_at_u_two() {
        let fam = Family::P1 { a: qf(1, 3), b: qf(2, 3), c: qf(5, 4) };
        let xs = vec![qf(1, 5), qf(1, 3), qf(1, 2)];
        let pc = verify_pair(&fam, &q(2), &xs, P).unwrap();
        assert!(pc.pass(), "{pc:?}");
        assert_eq!(pc.down.expected, qf(5, 4) - qf(1, 3) - q(2));
    }

    #[test]
    fn raising_annihilates_at_minus_a() {
        let fam = Family::P1 { a: qf(1, 3), b: qf(2, 3), c: qf(5, 4) };
        let xs = vec![qf(1, 5), qf(1, 3), qf(1, 2)];
        let pc = verify_pair(&fam, &qf(-1, 3), &xs, P).unwrap();
        assert!(pc.up.measured.zero && pc.up.pass);
    }

    #[test]
    fn every_family_standard() {
        for id in FamilyId::ALL {
            let fam = Family::standard(id);
            let u = if id == FamilyId::P5 { q(1) } else { qf(1, 3) };
            let xs = sample_points(&fam, 5, 11);
            let pc = verify_pair(&fam, &u, &xs, P).unwrap();
            assert!(pc.pass(), "{id}: {:?} {:?}", pc.down, pc.up);
        }
    }

    #[test]
    fn bessel_composite_is_the_ode() {
        // (-d + (u-1)/x)(d + u/x) J_u = J_u
        let u = qf(1, 3);
        let op = composed(FamilyId::P11, &u);
        let x = BigFloat::from_q(&qf(17, 10), P);
        let j = Family::P11.eval(&u, &x, P).unwrap();
        let (v, _) = apply_op(&op, false, &[], &j, &x, P).unwrap();
        assert!((&(&v - &j.f) / &j.f).abs().below_pow2(-(P as i64) / 2));
    }

    #[test]
    fn delta_product_for_bessel_k() {
        let fam = Family::P10;
        let xs = sample_points(&fam, 5, 3);
        let (dm, dp) = measure_delta(&fam, &qf(1, 3), &xs, P).unwrap();
        assert!((dm.value.to_f64() + 1.0).abs() < 1e-12 && (dp.value.to_f64() + 1.0).abs() < 1e-12);
        assert!(((&dm.value * &dp.value).to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn confluent_edge_vanishes() {
        let fam = Family::standard(FamilyId::P6);
        let (a, c) = (qf(1, 3), qf(7, 4));
        let u = c - a;
        let xs = sample_points(&fam, 5, 5);
        let (dm, _) = measure_delta(&fam, &u, &xs, P).unwrap();
        assert!(dm.zero);
    }
}
