//! First-order realizations in two variables `(x, t)`: the classification
//! of ladder pairs `J+ = t(d - kE + j)`, `J- = t^{-1}(-d - kE + j)`, and the
//! realizations built from the rank-1 operators.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::report::{clip, CheckRecord, RelationReport};
use super::types::{build_l, Kind, LOperator, TypeTag};
use super::QismError;
use crate::diffop::{BiOp, DiffOp};
use crate::symcore::var::{A, B, Q, X};
use crate::symcore::{prob_identity, qf, Domain, Expr, IdentityOptions, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MillerTag {
    A,
    B,
    CPrime,
    DPrime,
    CDoublePrime,
    DDoublePrime,
    /// `A(u) = x(1-x) d + (u - a)(x - 1/2)`
    Hyper,
    /// `A(u) = u/x + d`
    Bessel,
}

impl MillerTag {
    pub const SIX: [MillerTag; 6] = [
        MillerTag::A,
        MillerTag::B,
        MillerTag::CPrime,
        MillerTag::DPrime,
        MillerTag::CDoublePrime,
        MillerTag::DDoublePrime,
    ];

    pub fn eq(self) -> &'static str {
        match self {
            MillerTag::A => "4.16",
            MillerTag::B => "4.17",
            MillerTag::CPrime => "4.18",
            MillerTag::DPrime => "4.19",
            MillerTag::CDoublePrime => "4.20",
            MillerTag::DDoublePrime => "4.21",
            MillerTag::Hyper => "4.37",
            MillerTag::Bessel => "4.38",
        }
    }
}

impl fmt::Display for MillerTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MillerTag::A => "A",
            MillerTag::B => "B",
            MillerTag::CPrime => "C'",
            MillerTag::DPrime => "D'",
            MillerTag::CDoublePrime => "C''",
            MillerTag::DDoublePrime => "D''",
            MillerTag::Hyper => "A(4.37)",
            MillerTag::Bessel => "C''(4.38)",
        };
        write!(f, "{s}")
    }
}

impl FromStr for MillerTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "A" => MillerTag::A,
            "B" => MillerTag::B,
            "C'" | "Cp" => MillerTag::CPrime,
            "D'" | "Dp" => MillerTag::DPrime,
            "C''" | "Cpp" => MillerTag::CDoublePrime,
            "D''" | "Dpp" => MillerTag::DDoublePrime,
            "hyper" | "4.37" => MillerTag::Hyper,
            "bessel" | "4.38" => MillerTag::Bessel,
            _ => return Err(format!("unknown ladder type {s:?}")),
        })
    }
}

fn x() -> Expr {
    Expr::var(X)
}

/// `(k, j, Q2, Q1)` for the six ladder types.
fn kj(tag: MillerTag) -> Option<(Expr, Expr, Expr, Expr)> {
    let (a, b, q) = (Expr::var(A), Expr::var(B), Expr::var(Q));
    let i = Expr::i();
    let q2 = -(a.clone() * a.clone());
    Some(match tag {
        MillerTag::A => {
            let ax = a.clone() * x();
            let k = a.clone() * ax.cot();
            let j = b.clone() / (Expr::int(2) * a.clone()) * ax.cot() + q / ax.sin();
            (k, j, q2, b)
        }
        MillerTag::B => {
            let k = i.clone() * a.clone();
            let j = i.clone() * b.clone() / (Expr::int(2) * a.clone()) + q * (-(i * a * x())).exp();
            (k, j, q2, b)
        }
        MillerTag::CPrime => {
            (x().powi(-1), -(b.clone() * x()) / Expr::int(4) + q / x(), Expr::zero(), b)
        }
        MillerTag::DPrime => (Expr::zero(), -(b.clone() * x()) / Expr::int(2), Expr::zero(), b),
        MillerTag::CDoublePrime => (x().powi(-1), q / x(), Expr::zero(), Expr::zero()),
        MillerTag::DDoublePrime => (Expr::zero(), q, Expr::zero(), Expr::zero()),
        MillerTag::Hyper | MillerTag::Bessel => return None,
    })
}

fn sampled(lhs: &Expr, rhs: &Expr, imaginary_a: bool) -> (bool, String) {
    let mut opts = IdentityOptions::default();
    if imaginary_a {
        opts.domains.push((A, Domain::imaginary(qf(1, 10), qf(9, 10))));
    }
    let out = prob_identity(lhs, rhs, &opts);
    (out.pass, format!("{} points, max relative residual {}", out.points, out.max_residual))
}

fn record(id: String, eq: &str, backend: &str, start: Instant, res: Result<(), String>) -> CheckRecord {
    let rec = CheckRecord::new(id, eq, backend);
    match res {
        Ok(()) => rec.zero(),
        Err(r) => rec.outcome(false, clip(&r, 240)),
    }
    .timed(start)
}

/// Verify the conditions `k' + k^2 = Q2`, `j' + kj = -Q1/2` and, for
/// rational `k`, `j`, the commutator `[J-, J+] = 2 Q2 E + Q1` in the
/// `(x, t)` algebra. For `Hyper` and `Bessel` verify the single-operator
/// conditions `[A0, A1] + A1^2 = Q2` and `A01 A1' + A1^2 = Q2` instead.
pub fn check_miller(tag: MillerTag) -> Result<RelationReport, QismError> {
    if let Some((k, j, q2, q1)) = kj(tag) {
        return Ok(check_kj(tag, &k, &j, &q2, &q1));
    }
    Ok(check_single(tag))
}

fn check_kj(tag: MillerTag, k: &Expr, j: &Expr, q2: &Expr, q1: &Expr) -> RelationReport {
    let name = format!("miller_{tag}");
    let c14 = k.diff(X) + k.clone() * k.clone();
    let c15 = j.diff(X) + k.clone() * j.clone();
    let r15 = -(q1.clone()) / Expr::int(2);
    let mut recs = Vec::new();
    let rational = [k, j].iter().all(|e| e.as_rat().is_some());
    for (eq, lhs, rhs) in [("4.14", &c14, q2), ("4.15", &c15, &r15)] {
        let start = Instant::now();
        let id = format!("{name}:{eq}");
        let rec = match (lhs.as_rat(), rhs.as_rat()) {
            (Some(l), Some(r)) => {
                let d = l - r;
                record(id, eq, "symbolic", start, if d.is_zero() { Ok(()) } else { Err(d.to_string()) })
            }
            _ => {
                let (pass, summary) = sampled(lhs, rhs, tag == MillerTag::B);
                CheckRecord::new(id, eq, "sampled").outcome(pass, summary).timed(start)
            }
        };
        recs.push(rec);
    }
    if rational {
        let start = Instant::now();
        let (k, j) = (k.as_rat().unwrap(), j.as_rat().unwrap());
        let (q2, q1) = (q2.as_rat().unwrap(), q1.as_rat().unwrap());
        let e = BiOp::euler();
        let d = BiOp::from_diffop(&DiffOp::d());
        let kk = BiOp::scalar(k.clone());
        let jj = BiOp::scalar(j.clone());
        let jp = &BiOp::t_pow(1) * &(&(&d - &(&kk * &e)) + &jj);
        let jm = &BiOp::t_pow(-1) * &(&(&(-&d) - &(&kk * &e)) + &jj);
        let want = &(&e * &BiOp::scalar(q2.scale(&crate::symcore::q(2)))) + &BiOp::scalar(q1.clone());
        let got = jm.commutator(&jp);
        let diff = &got - &want;
        recs.push(record(
            format!("{name}:commutator"),
            "4.10",
            "symbolic",
            start,
            if diff.is_zero() { Ok(()) } else { Err(diff.to_string()) },
        ));
    }
    RelationReport::new(recs)
}

/// `(A01, A00, A1, Q2)` for the two single-operator types.
fn single(tag: MillerTag) -> (RatFunc, RatFunc, RatFunc, RatFunc) {
    let xr = RatFunc::var(X);
    let a = RatFunc::var(A);
    match tag {
        MillerTag::Hyper => {
            let a1 = &xr - &RatFunc::rat(1, 2);
            (&xr * &(&RatFunc::one() - &xr), -&(&a * &a1), a1, RatFunc::rat(1, 4))
        }
        _ => (RatFunc::one(), RatFunc::zero(), xr.recip(), RatFunc::zero()),
    }
}

fn check_single(tag: MillerTag) -> RelationReport {
    let name = format!("miller_{tag}");
    let (a01, a00, a1, q2) = single(tag);
    let a0 = &DiffOp::scalar(a01.clone()).compose(&DiffOp::d()) + &DiffOp::scalar(a00.clone());
    let a1op = DiffOp::scalar(a1.clone());
    let mut recs = Vec::new();
    let start = Instant::now();
    let r35 = &(&a0.commutator(&a1op) + &a1op.compose(&a1op)) - &DiffOp::scalar(q2.clone());
    recs.push(record(
        format!("{name}:4.35"),
        "4.35",
        "symbolic",
        start,
        if r35.is_zero() { Ok(()) } else { Err(r35.to_string()) },
    ));
    let start = Instant::now();
    let r36 = &(&(&a01 * &a1.derivative(X)) + &(&a1 * &a1)) - &q2;
    recs.push(record(
        format!("{name}:4.36"),
        "4.36",
        "symbolic",
        start,
        if r36.is_zero() { Ok(()) } else { Err(r36.to_string()) },
    ));
    // J+ = t(-A01 d - A00 + A1(E + 1/2)), J- = t^-1(A01 d + A00 + A1(E - 1/2))
    let start = Instant::now();
    let e = BiOp::euler();
    let h = BiOp::scalar(RatFunc::rat(1, 2));
    let a0b = BiOp::from_diffop(&a0);
    let a1b = BiOp::scalar(a1);
    let jp = &BiOp::t_pow(1) * &(&(-&a0b) + &(&a1b * &(&e + &h)));
    let jm = &BiOp::t_pow(-1) * &(&a0b + &(&a1b * &(&e - &h)));
    let want = &e * &BiOp::scalar(q2.scale(&crate::symcore::q(2)));
    let diff = &jm.commutator(&jp) - &want;
    recs.push(record(
        format!("{name}:commutator"),
        "4.10",
        "symbolic",
        start,
        if diff.is_zero() { Ok(()) } else { Err(diff.to_string()) },
    ));
    RelationReport::new(recs)
}

/// The `G(a,b)` realization of a periodic rank-1 operator:
/// `J+ = t(D0 + delta E)`, `J- = t^{-1}(A0 + alpha E)`; verify
/// `[J-, J+] = 2 alpha delta E + Q1` with the printed `Q1`, and
/// `[E, J+-] = +-J+-`.
pub fn check_g_ab(tag: TypeTag) -> Result<RelationReport, QismError> {
    let l = build_l(tag);
    if l.kind != Kind::QismI {
        return Err(QismError::NotApplicable(format!("{tag} is not a periodic type")));
    }
    Ok(g_ab_for(&l))
}

pub fn g_ab_for(l: &LOperator) -> RelationReport {
    let name = format!("g_ab_{}", l.name());
    let e = BiOp::euler();
    let jp = &BiOp::t_pow(1) * &(&BiOp::from_diffop(&l.d0()) + &(&e * &BiOp::scalar(l.delta.clone())));
    let jm = &BiOp::t_pow(-1) * &(&BiOp::from_diffop(&l.a0()) + &(&e * &BiOp::scalar(l.alpha.clone())));
    let q1 = l.listed_q1.clone().unwrap_or_else(|| l.declared.q1.clone());
    let q2 = &l.alpha * &l.delta;
    let mut recs = Vec::new();
    let start = Instant::now();
    let want = &(&e * &BiOp::scalar(q2.scale(&crate::symcore::q(2)))) + &BiOp::scalar(q1.clone());
    let diff = &jm.commutator(&jp) - &want;
    let rec = record(
        format!("{name}:[J-,J+]"),
        "4.10",
        "symbolic",
        start,
        if diff.is_zero() { Ok(()) } else { Err(format!("[J-,J+] - (2 Q2 E + Q1) = {diff} with printed Q1 = {q1}")) },
    );
    // a nonzero scalar residual means the realization is fine and the
    // printed constant is not
    let printed_only = !diff.is_zero() && diff.as_poly_in_euler().map_or(false, |p| p.keys().all(|&k| k == 0));
    recs.push(rec.flag(printed_only));
    for (sign, j, lab) in [(1, &jp, "[E,J+]"), (-1, &jm, "[E,J-]")] {
        let start = Instant::now();
        let d = &e.commutator(j) - &(j * &BiOp::scalar(RatFunc::int(sign)));
        recs.push(record(
            format!("{name}:{lab}"),
            "4.11",
            "symbolic",
            start,
            if d.is_zero() { Ok(()) } else { Err(d.to_string()) },
        ));
    }
    RelationReport::new(recs)
}

/// With `A0 = A01 d + A00`, `D0 = D01 d + D00` first order:
/// `D01 A01' - A01 D01' = delta A01 + alpha D01` and
/// `D01 A00' - A01 D00' = delta A00 + alpha D00 - Q1`, with the printed `Q1`.
pub fn check_lemma42(tag: TypeTag) -> Result<RelationReport, QismError> {
    let l = build_l(tag);
    if l.kind != Kind::QismI {
        return Err(QismError::NotApplicable(format!("{tag} is not a periodic type")));
    }
    let (a0, d0) = (l.a0(), l.d0());
    if a0.order().unwrap_or(0) > 1 || d0.order().unwrap_or(0) > 1 {
        return Err(QismError::NotApplicable(format!("{tag}: A0, D0 must be first order")));
    }
    let (a01, a00, d01, d00) = (a0.coeff(1), a0.coeff(0), d0.coeff(1), d0.coeff(0));
    let q1 = l.listed_q1.clone().unwrap_or_else(|| l.declared.q1.clone());
    let (al, de) = (&l.alpha, &l.delta);
    let r26 = &(&(&d01 * &a01.derivative(X)) - &(&a01 * &d01.derivative(X))) - &(&(de * &a01) + &(al * &d01));
    let r27 = &(&(&d01 * &a00.derivative(X)) - &(&a01 * &d00.derivative(X)))
        - &(&(&(de * &a00) + &(al * &d00)) - &q1);
    let name = format!("lemma42_{}", l.name());
    let mut recs = Vec::new();
    for (eq, r) in [("4.26", r26), ("4.27", r27)] {
        let start = Instant::now();
        let rec = record(format!("{name}:{eq}"), eq, "symbolic", start, if r.is_zero() { Ok(()) } else { Err(r.to_string()) });
        // a constant residual in (4.27) is exactly a wrong printed Q1
        let printed_only = eq == "4.27" && !r.is_zero() && !r.contains_var(X);
        recs.push(rec.flag(printed_only));
    }
    Ok(RelationReport::new(recs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_types_exact() {
        for tag in [MillerTag::CPrime, MillerTag::DPrime, MillerTag::CDoublePrime, MillerTag::DDoublePrime] {
            let rep = check_miller(tag).unwrap();
            assert!(rep.pass(), "{tag}: {:?}", rep.records);
            assert_eq!(rep.records.len(), 3);
        }
    }

    #[test]
    fn single_operator_types() {
        for tag in [MillerTag::Hyper, MillerTag::Bessel] {
            let rep = check_miller(tag).unwrap();
            assert!(rep.pass(), "{tag}: {:?}", rep.records);
        }
    }

    #[test]
    fn g_ab_type_a() {
        assert!(check_g_ab(TypeTag::A).unwrap().pass());
    }

    #[test]
    fn printed_d_prime_constant_is_flagged() {
        let rep = check_g_ab(TypeTag::DPrime).unwrap();
        assert!(!rep.pass());
        assert!(rep.records[0].flagged);
        let rep = check_lemma42(TypeTag::DPrime).unwrap();
        assert!(rep.records[0].pass && !rep.records[1].pass && rep.records[1].flagged);
    }
}
