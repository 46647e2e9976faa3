//! Ladder strings driven by the L-operator entries themselves: `A(u)` lowers,
//! `D(u)` (or `-A(-u)` for reflection algebras) raises, and the measured
//! factors must multiply to the quantum determinant.

use super::ops::{apply_op, family_vals, Dir};
use super::pair::{measure_shift, Measured};
use super::LadderError;
use crate::diffop::DiffOp;
use crate::qism::{build_l_variant, quantum_det, with_backend, CEntry, Kind, LOperator, TypeTag, Variant};
use crate::specfun::{BigFloat, Family, FamilyId};
use crate::symcore::{q, RatFunc, Q};

/// The L-operator type whose `C(u)` annihilates the family.
pub fn associated_type(id: FamilyId) -> Option<TypeTag> {
    match id {
        FamilyId::P1 => Some(TypeTag::A),
        FamilyId::P6 => Some(TypeTag::B),
        FamilyId::P7 => Some(TypeTag::CPrime),
        FamilyId::P9 => Some(TypeTag::DPrime),
        FamilyId::P10 => Some(TypeTag::CDoublePrime),
        FamilyId::P3 => Some(TypeTag::GenA),
        FamilyId::P8 => Some(TypeTag::GenCDoublePrime),
        _ => None,
    }
}

/// `{u0 + m : j_- < m < j_+}`, `None` for an infinite end.
#[derive(Clone, Debug, PartialEq)]
pub struct StringDomain {
    pub u0: Q,
    pub j_minus: Option<i64>,
    pub j_plus: Option<i64>,
}

impl StringDomain {
    pub fn contains(&self, u: &Q) -> bool {
        let m = u - &self.u0;
        if !m.is_integer() {
            return false;
        }
        let m = m.to_integer();
        self.j_minus.map_or(true, |j| m > j.into()) && self.j_plus.map_or(true, |j| m < j.into())
    }

    /// Where `A(u) F(u)` must vanish.
    pub fn lower_edge(&self) -> Option<Q> {
        self.j_minus.map(|j| &self.u0 + q(j + 1))
    }

    /// Where the raising operator must kill `F(u)`.
    pub fn upper_edge(&self) -> Option<Q> {
        self.j_plus.map(|j| &self.u0 + q(j - 1))
    }
}

#[derive(Clone, Debug)]
pub struct StringStep {
    pub u: Q,
    /// `Delta_-(u - 1/2)`
    pub down: Measured,
    /// `Delta_+(u + 1/2)`
    pub up: Measured,
    pub down_zero_expected: bool,
    pub up_zero_expected: bool,
}

#[derive(Clone, Debug)]
pub struct DetCheck {
    pub at: Q,
    pub product: BigFloat,
    pub det: Q,
    pub rel_err: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct StringRun {
    pub family: FamilyId,
    pub tag: TypeTag,
    pub domain: StringDomain,
    pub steps: Vec<StringStep>,
    pub dets: Vec<DetCheck>,
    /// Largest ratio spread over the sample points.
    pub max_spread: f64,
    pub termination_ok: bool,
}

impl StringRun {
    pub fn pass(&self, p: usize) -> bool {
        let tol = 2f64.powi(-((p / 4) as i32));
        self.termination_ok && self.dets.iter().all(|d| d.pass) && self.max_spread < tol
    }
}

/// The L-operator with the family's parameters substituted.
pub fn family_operator(fam: &Family) -> Result<LOperator, LadderError> {
    family_operator_variant(fam, Variant::Standard)
}

pub fn family_operator_variant(fam: &Family, variant: Variant) -> Result<LOperator, LadderError> {
    let tag = associated_type(fam.id()).ok_or_else(|| LadderError::NoOperator(fam.id()))?;
    Ok(build_l_variant(tag, variant).specialize(&family_vals(fam)))
}

fn lowering(l: &LOperator, u: &Q) -> DiffOp {
    l.a.at(&RatFunc::constant(u.clone()))
}

fn raising(l: &LOperator, u: &Q) -> DiffOp {
    match l.kind {
        Kind::QismI => l.d.at(&RatFunc::constant(u.clone())),
        Kind::QismII => {
            let a = l.a.at(&RatFunc::constant(-u.clone()));
            a.scale(&RatFunc::int(-1))
        }
    }
}

/// Walk `u = top, top-1, ..., bottom` measuring both shifts at each step,
/// compare termination with the domain's edges and every adjacent product
/// `Delta_+(w) Delta_-(w)` with the quantum determinant at `w`.
pub fn verify_string(fam: &Family, domain: &StringDomain, top: &Q, steps: usize, xs: &[Q], p: usize) -> Result<StringRun, LadderError> {
    verify_string_with(&family_operator(fam)?, fam, domain, top, steps, xs, p)
}

/// [`verify_string`] with an explicitly chosen, already specialized operator.
pub fn verify_string_with(
    l: &LOperator,
    fam: &Family,
    domain: &StringDomain,
    top: &Q,
    steps: usize,
    xs: &[Q],
    p: usize,
) -> Result<StringRun, LadderError> {
    let det = with_backend(l, 6, |be| quantum_det(be, l), |be| quantum_det(be, l))?;
    let mut out = Vec::new();
    for i in 0..=steps {
        let u = top - q(i as i64);
        let down = measure_shift(fam, &lowering(l, &u), false, &u, Dir::Down, xs, p)?;
        let up = measure_shift(fam, &raising(l, &u), false, &u, Dir::Up, xs, p)?;
        let inside = domain.contains(&u);
        out.push(StringStep {
            down_zero_expected: inside && domain.lower_edge().as_ref() == Some(&u),
            up_zero_expected: inside && domain.upper_edge().as_ref() == Some(&u),
            u,
            down,
            up,
        });
    }
    let tol = 2f64.powi(-((p / 4) as i32));
    let mut dets = Vec::new();
    for w in out.windows(2) {
        // w[0] at u, w[1] at u - 1: Delta(u - 1/2) = Delta_+(u - 1/2) Delta_-(u - 1/2)
        let (hi, lo) = (&w[0], &w[1]);
        let at = &hi.u - Q::new(1.into(), 2.into());
        let product = &lo.up.value * &hi.down.value;
        let dq = det.at(&RatFunc::constant(at.clone())).as_constant().ok_or_else(|| {
            LadderError::Inconclusive(format!("determinant is not numeric after substitution: {det}"))
        })?;
        let dv = BigFloat::from_q(&dq, p);
        let rel_err = if dq == q(0) {
            product.abs().to_f64()
        } else {
            (&(&product - &dv) / &dv).abs().to_f64()
        };
        dets.push(DetCheck { at, product, det: dq, rel_err, pass: rel_err < tol });
    }
    let termination_ok = out.iter().filter(|s| domain.contains(&s.u)).all(|s| {
        s.down.zero == s.down_zero_expected && s.up.zero == s.up_zero_expected
    });
    let max_spread = out.iter().flat_map(|s| [s.down.spread, s.up.spread]).fold(0.0, f64::max);
    Ok(StringRun { family: fam.id(), tag: l.tag, domain: domain.clone(), steps: out, dets, max_spread, termination_ok })
}

#[derive(Clone, Debug)]
pub struct Annihilation {
    pub family: FamilyId,
    pub u: Q,
    /// `true` when `C(u)` contains an inverse and its differential part was
    /// applied instead.
    pub via_ode: bool,
    pub residuals: Vec<f64>,
    pub pass: bool,
}

/// `C(u) F(u) = 0` at the sample points.
pub fn check_annihilation(fam: &Family, u: &Q, xs: &[Q], p: usize) -> Result<Annihilation, LadderError> {
    check_annihilation_with(&family_operator(fam)?, fam, u, xs, p)
}

pub fn check_annihilation_with(l: &LOperator, fam: &Family, u: &Q, xs: &[Q], p: usize) -> Result<Annihilation, LadderError> {
    let uu = RatFunc::constant(u.clone());
    let (op, via_ode) = match &l.c {
        CEntry::Diff(c) => (c.at(&uu), false),
        CEntry::Inverse { inner, .. } => (inner.at(&uu), true),
    };
    let tol = 2f64.powi(-((p / 4) as i32));
    let mut residuals = Vec::new();
    for xq in xs {
        let x = BigFloat::from_q(xq, p);
        let f = fam.eval(u, &x, p)?;
        let (v, s) = apply_op(&op, false, &[], &f, &x, p)?;
        residuals.push(if s.is_zero() { 0.0 } else { (&v.abs() / &s).to_f64() });
    }
    let pass = residuals.iter().all(|r| *r < tol);
    Ok(Annihilation { family: fam.id(), u: u.clone(), via_ode, residuals, pass })
}

/// Largest relative gap between `F(u)` and `F(-u)` over the sample points.
pub fn reflection_gap(fam: &Family, u: &Q, xs: &[Q], p: usize) -> Result<f64, LadderError> {
    let mut gap: f64 = 0.0;
    let mut ratio: Option<BigFloat> = None;
    for xq in xs {
        let x = BigFloat::from_q(xq, p);
        let a = fam.eval(u, &x, p)?.f;
        let b = fam.eval(&-u.clone(), &x, p)?.f;
        let r = &a / &b;
        match &ratio {
            None => ratio = Some(r),
            Some(r0) => gap = gap.max((&(&r - r0) / r0).abs().to_f64()),
        }
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::super::ops::sample_points;
    use super::*;
    use crate::symcore::qf;

    const P: usize = 192;

    #[test]
    fn jacobi_string() {
        let fam = Family::standard(FamilyId::P1);
        let a = qf(1, 3);
        let dom = StringDomain { u0: -a.clone(), j_minus: None, j_plus: Some(1) };
        let xs = sample_points(&fam, 5, 1);
        let run = verify_string(&fam, &dom, &-a, 3, &xs, P).unwrap();
        assert!(run.pass(P), "{run:#?}");
        assert!(run.steps[0].up.zero);
    }

    #[test]
    fn laguerre_and_hermite_strings() {
        let cases = [
            (Family::standard(FamilyId::P6), qf(-1, 3)),
            (Family::standard(FamilyId::P7), q(0)),
            (Family::P9, q(0)),
        ];
        for (fam, top) in cases {
            let dom = StringDomain { u0: top.clone(), j_minus: None, j_plus: Some(1) };
            let xs = sample_points(&fam, 5, 3);
            let run = verify_string(&fam, &dom, &top, 3, &xs, P).unwrap();
            assert!(run.pass(P), "{run:#?}");
            assert!(run.steps[0].up.zero);
        }
    }

    #[test]
    fn gen_a_finite_string() {
        let fam = Family::P3 { a: q(-2), c: qf(7, 4) };
        let dom = StringDomain { u0: q(-2), j_minus: Some(-1), j_plus: Some(5) };
        let xs = sample_points(&fam, 5, 2);
        let run = verify_string(&fam, &dom, &q(2), 4, &xs, P).unwrap();
        assert!(run.pass(P), "{run:#?}");
        assert!(run.steps[0].up.zero && run.steps[4].down.zero);
        assert!(reflection_gap(&fam, &q(1), &xs, P).unwrap() < 1e-40);
    }

    #[test]
    fn annihilation_b_dprime_cpp() {
        let xs = vec![qf(3, 2), qf(2, 1), qf(5, 2)];
        for fam in [Family::standard(FamilyId::P6), Family::P9, Family::P10, Family::standard(FamilyId::P3)] {
            let r = check_annihilation(&fam, &qf(1, 3), &[qf(1, 5), qf(1, 3), qf(3, 5)], P);
            let r = if fam.id() == FamilyId::P3 { r } else { check_annihilation(&fam, &qf(1, 3), &xs, P) };
            let r = r.unwrap();
            assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn gen_cpp_printed_c_misses_the_psi_family() {
        let fam = Family::P8 { delta: qf(1, 8) };
        let xs = vec![qf(2, 1), qf(3, 2), qf(5, 2)];
        let printed = check_annihilation(&fam, &qf(1, 3), &xs, P).unwrap();
        assert!(printed.residuals.iter().all(|r| *r > 0.1), "{printed:?}");
        let derived = family_operator_variant(&fam, Variant::DerivedC0(RatFunc::rat(-1, 4))).unwrap();
        let fixed = check_annihilation_with(&derived, &fam, &qf(1, 3), &xs, P).unwrap();
        assert!(fixed.pass, "{fixed:?}");
        let dom = StringDomain { u0: qf(1, 3), j_minus: None, j_plus: None };
        let run = verify_string_with(&derived, &fam, &dom, &qf(7, 3), 3, &xs, P).unwrap();
        assert!(run.pass(P), "{run:#?}");
    }
}
