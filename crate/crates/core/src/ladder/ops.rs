//! The shift operators of each family as exact differential operators, and
//! their numeric application to evaluated jets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LadderError;
use crate::diffop::DiffOp;
use crate::specfun::{BigFloat, Family, FamilyId, Jet};
use crate::symcore::var::{A, B, C, DELTA, NU, U, X};
use crate::symcore::{q, qf, RatFunc, Var, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    /// `u -> u - 1`
    Down,
    /// `u -> u + 1`
    Up,
}

impl Dir {
    pub fn step(self) -> i64 {
        match self {
            Dir::Down => -1,
            Dir::Up => 1,
        }
    }
}

/// `front * op` maps `F(u)` to `coef * F(u -/+ 1)`. `front` is
/// `(x^2 - 1)^(1/2)` for the Legendre pair and 1 otherwise.
#[derive(Clone, Debug)]
pub struct Shift {
    pub op: DiffOp,
    pub sqrt_front: bool,
    pub coef: RatFunc,
    pub eq: &'static str,
}

/// Symbol for the fixed degree `n` of the `F_k` family.
pub fn n_var() -> Var {
    Var::new("n")
}

/// Parameter values of a family as symbol bindings.
pub fn family_vals(f: &Family) -> Vec<(Var, Q)> {
    match f {
        Family::P1 { a, b, c } | Family::P2 { a, b, c } => vec![(A, a.clone()), (B, b.clone()), (C, c.clone())],
        Family::P3 { a, c } | Family::P6 { a, c } => vec![(A, a.clone()), (C, c.clone())],
        Family::P4 { nu } => vec![(NU, nu.clone())],
        Family::P5 { n } => vec![(n_var(), q(*n as i64))],
        Family::P7 { c } => vec![(C, c.clone())],
        Family::P8 { delta } => vec![(DELTA, delta.clone())],
        Family::P9 | Family::P10 | Family::P11 => vec![],
    }
}

fn v(x: Var) -> RatFunc {
    RatFunc::var(x)
}
fn k(n: i64) -> RatFunc {
    RatFunc::int(n)
}
fn fr(n: i64, d: i64) -> RatFunc {
    RatFunc::rat(n, d)
}
fn first(c0: RatFunc, c1: RatFunc) -> DiffOp {
    DiffOp::from_terms(X, [(0, c0), (1, c1)])
}

/// The pair `(down, up)` for a family.
pub fn shift_pair(id: FamilyId) -> (Shift, Shift) {
    let (x, u) = (v(X), v(U));
    let (a, b, c) = (v(A), v(B), v(C));
    let one = k(1);
    let half = fr(1, 2);
    let omx = &one - &x;
    let x1mx = &x * &omx;
    let (e_dn, e_up) = id.eqs();
    let sh = |op, coef| (op, false, coef);
    let ((dop, dsq, dcoef), (uop, usq, ucoef)) = match id {
        FamilyId::P1 => (
            sh(first(&(&(&(-&(&b * &x)) + &c) - &a) - &u, x1mx.clone()), &(&c - &a) - &u),
            sh(first(&a + &u, x.clone()), &a + &u),
        ),
        FamilyId::P2 => (
            sh(first(&(&(&(-&(&(&b - &c) / &omx)) + &b) - &one) + &u, x.clone()), &(&c + &u) - &one),
            sh(first(&a + &u, omx.clone()), &(&(&a + &u) * &(&b + &u)) / &(&c + &u)),
        ),
        FamilyId::P3 => {
            // delta = (a - c + 1/2)(a - 1/2)/2
            let delta = (&(&(&a - &c) + &half) * &(&a - &half)).scale(&qf(1, 2));
            let base = &(&(&half - &a) * &x) + &(&c.scale(&qf(1, 2)) - &half);
            let um = &u - &half;
            let up = &u + &half;
            let xm = &x - &half;
            let dn0 = &(&base + &(&um * &xm)) + &(&delta / &um);
            let up0 = &(&(-&base) + &(&up * &xm)) + &(&delta / &up);
            (
                sh(first(dn0, x1mx.clone()), &(&(&a - &u) * &(&(&a - &c) + &u)) / &um.scale(&q(2))),
                sh(first(up0, -&x1mx), &(&(&a + &u) * &(&(&a - &c) - &u)) / &up.scale(&q(2))),
            )
        }
        FamilyId::P4 => {
            let nu = v(NU);
            let t = &(&u * &x) / &(&(&x * &x) - &one);
            (
                (first(t.clone(), one.clone()), true, &(&nu + &u) * &(&(&nu - &u) + &one)),
                (first(-&t, one.clone()), true, one.clone()),
            )
        }
        FamilyId::P5 => {
            let n = v(n_var());
            (
                sh(first(&(&(-&(&n / &omx)) + &n) + &u, x.clone()), &n + &u),
                sh(first(&u - &n, omx.clone()), -&(&n - &u)),
            )
        }
        FamilyId::P6 => (
            sh(first(&(&(&(-&x) + &c) - &a) - &u, x.clone()), &(&c - &a) - &u),
            sh(first(&a + &u, x.clone()), &a + &u),
        ),
        FamilyId::P7 => (
            sh(first(&(&(&(-&x) + &c) + &u) - &one, x.clone()), k(-1)),
            sh(first(k(0), one.clone()), -&u),
        ),
        FamilyId::P8 => {
            let d = v(DELTA);
            let two_d = d.scale(&q(2));
            (
                sh(
                    first(&(&u / &x) + &(&d / &(&u - &half)), one.clone()),
                    &(&(&two_d + &half) - &u) / &(&u.scale(&q(2)) - &one),
                ),
                sh(
                    first(&(&u / &x) + &(&d / &(&u + &half)), k(-1)),
                    &(&(&two_d + &half) + &u) / &(&u.scale(&q(2)) + &one),
                ),
            )
        }
        FamilyId::P9 => (sh(first(-&x, one.clone()), k(-1)), sh(first(k(0), one.clone()), -&u)),
        FamilyId::P10 => (sh(first(u.scale(&q(2)), x.clone()), k(-1)), sh(first(k(0), x.recip()), k(-1))),
        FamilyId::P11 => (sh(first(&u / &x, one.clone()), one.clone()), sh(first(&u / &x, k(-1)), one.clone())),
    };
    (
        Shift { op: dop, sqrt_front: dsq, coef: dcoef, eq: e_dn },
        Shift { op: uop, sqrt_front: usq, coef: ucoef, eq: e_up },
    )
}

/// `(op F)(x)` and the largest single term, for an operator whose
/// coefficients depend only on `x` once `vals` are substituted.
pub fn apply_op(op: &DiffOp, sqrt_front: bool, vals: &[(Var, Q)], f: &Jet, x: &BigFloat, p: usize) -> Result<(BigFloat, BigFloat), LadderError> {
    let env = |w: Var| (w == X).then(|| x.clone());
    let mut total = BigFloat::zero(p);
    let mut scale = BigFloat::zero(p);
    for (ord, c) in op.terms() {
        let d = match ord {
            0 => &f.f,
            1 => &f.d1,
            2 => &f.d2,
            _ => return Err(LadderError::Unsupported(format!("operator of order {ord}"))),
        };
        let cv = c.eval_partial(vals).eval_real(&env, p)?;
        let t = &cv * d;
        if t.abs() > scale {
            scale = t.abs();
        }
        total = &total + &t;
    }
    if sqrt_front {
        let s = (&(x * x) - &BigFloat::one(p)).sqrt();
        total = &total * &s;
        scale = &scale * &s;
    }
    Ok((total, scale))
}

/// `n` deterministic rational points strictly inside the family domain.
pub fn sample_points(fam: &Family, n: usize, seed: u64) -> Vec<Q> {
    let (lo, hi) = fam.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Q> = Vec::new();
    while pts.len() < n {
        let t: i64 = rng.gen_range(16..1008);
        let x = &lo + (&hi - &lo) * qf(t, 1024);
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts
}
