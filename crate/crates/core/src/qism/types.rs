//! The catalogue of rank-1 L-operators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffop::{BandedBasisOp, BasisTag, DiffOp, ULOp};
use crate::symcore::var::{A, B, C, DELTA, X};
use crate::symcore::{q, qf, RatFunc, Var, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    /// `R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v)`
    QismI,
    /// The reflection form with `R(u+v-1)` in the middle.
    QismII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "Cp")]
    CPrime,
    #[serde(rename = "Dp")]
    DPrime,
    #[serde(rename = "Cpp")]
    CDoublePrime,
    #[serde(rename = "genA")]
    GenA,
    #[serde(rename = "genCpp")]
    GenCDoublePrime,
}

impl TypeTag {
    pub const ALL: [TypeTag; 7] = [
        TypeTag::A,
        TypeTag::B,
        TypeTag::CPrime,
        TypeTag::DPrime,
        TypeTag::CDoublePrime,
        TypeTag::GenA,
        TypeTag::GenCDoublePrime,
    ];

    pub fn kind(self) -> Kind {
        match self {
            TypeTag::GenA | TypeTag::GenCDoublePrime => Kind::QismII,
            _ => Kind::QismI,
        }
    }

    /// Tags whose `C` entry contains an inverse operator.
    pub fn needs_basis(self) -> bool {
        matches!(self, TypeTag::A | TypeTag::CPrime | TypeTag::CDoublePrime)
    }

    pub fn short(self) -> &'static str {
        match self {
            TypeTag::A => "A",
            TypeTag::B => "B",
            TypeTag::CPrime => "Cp",
            TypeTag::DPrime => "Dp",
            TypeTag::CDoublePrime => "Cpp",
            TypeTag::GenA => "genA",
            TypeTag::GenCDoublePrime => "genCpp",
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::A => "A",
            TypeTag::B => "B",
            TypeTag::CPrime => "C'",
            TypeTag::DPrime => "D'",
            TypeTag::CDoublePrime => "C''",
            TypeTag::GenA => "genA",
            TypeTag::GenCDoublePrime => "genC''",
        };
        write!(f, "{s}")
    }
}

impl FromStr for TypeTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "A" => TypeTag::A,
            "B" => TypeTag::B,
            "C'" | "Cp" | "Cprime" => TypeTag::CPrime,
            "D'" | "Dp" | "Dprime" => TypeTag::DPrime,
            "C''" | "Cpp" | "Cdoubleprime" => TypeTag::CDoublePrime,
            "genA" | "GA" => TypeTag::GenA,
            "genC''" | "genCpp" | "GCpp" => TypeTag::GenCDoublePrime,
            _ => return Err(format!("unknown type tag {s:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    A,
    B,
    C,
    D,
}

impl Entry {
    /// Matrix position `(row, col)` with `A` at `(0, 0)`.
    pub fn at(i: usize, k: usize) -> Entry {
        match (i, k) {
            (0, 0) => Entry::A,
            (0, 1) => Entry::B,
            (1, 0) => Entry::C,
            _ => Entry::D,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Entry::A => 'A',
            Entry::B => 'B',
            Entry::C => 'C',
            Entry::D => 'D',
        }
    }
}

/// Which inverse appears in an inverse-bearing `C` entry.
#[derive(Clone, Debug, PartialEq)]
pub enum InverseKind {
    /// `(x d + b)^{-1}` on monomials.
    Euler(RatFunc),
    /// `(d - 1)^{-1}` on monomials.
    DMinusOne,
    /// `d^{-1}` on `x^k e^{-x}`.
    DWeighted,
}

impl InverseKind {
    pub fn basis_op(&self) -> BandedBasisOp {
        match self {
            InverseKind::Euler(b) => BandedBasisOp::inverse_euler(b),
            InverseKind::DMinusOne => BandedBasisOp::inverse_d_minus_one(),
            InverseKind::DWeighted => BandedBasisOp::inverse_d_weighted(),
        }
    }

    /// The operator being inverted.
    pub fn forward(&self) -> DiffOp {
        let x = RatFunc::var(X);
        match self {
            InverseKind::Euler(b) => &DiffOp::scalar(x).compose(&DiffOp::d()) + &DiffOp::scalar(b.clone()),
            InverseKind::DMinusOne => &DiffOp::d() - &DiffOp::identity(),
            InverseKind::DWeighted => DiffOp::d(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CEntry {
    Diff(ULOp),
    /// `scale * inverse o inner(u)`.
    Inverse { scale: RatFunc, inverse: InverseKind, inner: ULOp },
}

/// Which reading of a listed operator is built.
#[derive(Clone, Debug, PartialEq)]
pub enum Variant {
    /// The listed operator, with any corrections needed for consistency.
    Standard,
    /// The operator exactly as printed, where that differs from `Standard`.
    Literal,
    /// Generalized type with `C0` derived from the determinant relation for
    /// the given `Q0`.
    DerivedC0(RatFunc),
}

#[derive(Clone, Debug)]
pub struct Declared {
    pub q0: RatFunc,
    pub q1: RatFunc,
    pub q2: RatFunc,
}

#[derive(Clone, Debug)]
pub struct LOperator {
    pub tag: TypeTag,
    pub kind: Kind,
    pub variant: Variant,
    pub a: ULOp,
    pub b: ULOp,
    pub c: CEntry,
    pub d: ULOp,
    pub alpha: RatFunc,
    pub beta: RatFunc,
    pub gamma: RatFunc,
    pub delta: RatFunc,
    /// Center of the determinant as claimed for this type.
    pub declared: Declared,
    /// `Q1` exactly as printed next to the `G(a,b)` realization, when given.
    pub listed_q1: Option<RatFunc>,
    /// `B0 C(u)` as a differential operator, for inverse-bearing `C`.
    pub b0c: Option<ULOp>,
    pub basis: Option<BasisTag>,
    pub params: Vec<Var>,
}

fn x() -> RatFunc {
    RatFunc::var(X)
}
fn r(v: Var) -> RatFunc {
    RatFunc::var(v)
}
fn k(n: i64) -> RatFunc {
    RatFunc::int(n)
}
fn fr(n: i64, d: i64) -> RatFunc {
    RatFunc::rat(n, d)
}
fn d1() -> DiffOp {
    DiffOp::d()
}
fn d2() -> DiffOp {
    DiffOp::d().compose(&DiffOp::d())
}
fn mf(c: RatFunc) -> DiffOp {
    DiffOp::scalar(c)
}
fn zero_q() -> Q {
    q(0)
}
fn half() -> Q {
    qf(1, 2)
}

/// `op0 + slope * u` as a Laurent operator in `u`.
fn linear(op0: DiffOp, slope: DiffOp) -> ULOp {
    ULOp::new(zero_q(), [(0, op0), (1, slope)])
}

/// `(2.1)`-compatible diagonal of a reflection-type L-operator.
fn qism2_ad(a1: &DiffOp, a0: &DiffOp, delta: &RatFunc) -> (ULOp, ULOp) {
    let dl = mf(delta.clone());
    let a = ULOp::new(half(), [(1, a1.clone()), (0, a0.clone()), (-1, dl.clone())]);
    // (u + 3/2) A1 - A0 + delta/(u - 1/2) with w = u - 1/2
    let d = ULOp::new(half(), [(1, a1.clone()), (0, &a1.scale(&k(2)) - a0), (-1, dl)]);
    (a, d)
}

/// The generalized type A value of `delta` that makes the listed `C(u)`
/// consistent: `(a - c + 1/2)(a - 1/2) / 2`.
pub fn gen_a_delta() -> RatFunc {
    let (a, c) = (r(A), r(C));
    (&(&(&a - &c) + &fr(1, 2)) * &(&a - &fr(1, 2))).scale(&half())
}

pub fn build_l(tag: TypeTag) -> LOperator {
    build_l_variant(tag, Variant::Standard)
}

pub fn build_l_variant(tag: TypeTag, variant: Variant) -> LOperator {
    let (a, b, c) = (r(A), r(B), r(C));
    let one = DiffOp::identity();
    let xd = mf(x()).compose(&d1());
    let base = |alpha: i64, delta: i64| (k(alpha), k(0), k(1), k(delta));
    match tag {
        TypeTag::A => {
            let (alpha, beta, gamma, delta) = base(-1, 1);
            let x1mx = &x() * &(&k(1) - &x());
            let a0 = &(&mf(x1mx.clone()).compose(&d1()) + &mf(&(&x() * &b).scale(&q(-1)) + &(&c - &a)));
            let d0 = &xd + &mf(a.clone());
            let euler_b = &xd + &mf(b.clone());
            let b0 = mf(-x()).compose(&euler_b);
            let n0 = &(&mf(x1mx).compose(&d2()) + &mf(&c - &(&(&(&b + &a) + &k(1)) * &x())).compose(&d1()))
                - &mf(&a * &b);
            let n1 = -&euler_b;
            let inner = linear(n0.clone(), n1.clone());
            let b0c = linear(mf(x()).compose(&n0), mf(x()).compose(&n1));
            LOperator {
                tag,
                kind: Kind::QismI,
                variant,
                a: linear(a0.clone(), -&one),
                b: ULOp::constant(b0),
                c: CEntry::Inverse { scale: k(-1), inverse: InverseKind::Euler(b.clone()), inner },
                d: linear(d0, one),
                alpha,
                beta,
                gamma,
                delta,
                declared: Declared {
                    q0: &(&a - &fr(1, 2)) * &(&(&c - &a) - &fr(1, 2)),
                    q1: &c - &a.scale(&q(2)),
                    q2: k(-1),
                },
                listed_q1: Some(&c - &a.scale(&q(2))),
                b0c: Some(b0c),
                basis: Some(BasisTag::Monomial),
                params: vec![A, B, C],
            }
        }
        TypeTag::B => {
            let (alpha, beta, gamma, delta) = base(-1, 1);
            let a0 = &xd + &mf(&(&c - &a) - &x());
            let d0 = &xd + &mf(a.clone());
            let b0 = mf(-x());
            let c0 = &(&mf(-x()).compose(&d2()) - &mf(&c - &x()).compose(&d1())) + &mf(a.clone());
            LOperator {
                tag,
                kind: Kind::QismI,
                variant,
                a: linear(a0, -&one),
                b: ULOp::constant(b0),
                c: CEntry::Diff(linear(c0, one.clone())),
                d: linear(d0, one),
                alpha,
                beta,
                gamma,
                delta,
                declared: Declared {
                    q0: &(&a - &fr(1, 2)) * &(&(&c - &a) - &fr(1, 2)),
                    q1: &c - &a.scale(&q(2)),
                    q2: k(-1),
                },
                listed_q1: Some(&c - &a.scale(&q(2))),
                b0c: None,
                basis: None,
                params: vec![A, C],
            }
        }
        TypeTag::CPrime => {
            let (alpha, beta, gamma, delta) = base(1, 0);
            let a0 = &xd + &mf(&(&c - &k(1)) - &x());
            let b0 = &d1() - &one;
            let n0 = &mf(x()).compose(&d2()) + &mf(&c - &x()).compose(&d1());
            let n1 = &d1() - &one;
            LOperator {
                tag,
                kind: Kind::QismI,
                variant,
                a: linear(a0, one.clone()),
                b: ULOp::constant(b0),
                c: CEntry::Inverse {
                    scale: k(1),
                    inverse: InverseKind::DMinusOne,
                    inner: linear(n0.clone(), n1.clone()),
                },
                d: ULOp::constant(d1()),
                alpha,
                beta,
                gamma,
                delta,
                declared: Declared { q0: fr(-1, 2), q1: k(1), q2: k(0) },
                listed_q1: Some(k(1)),
                b0c: Some(linear(n0, n1)),
                basis: Some(BasisTag::Monomial),
                params: vec![C],
            }
        }
        TypeTag::DPrime => {
            let (alpha, beta, gamma, delta) = base(0, 0);
            let a0 = &d1() - &mf(x());
            let literal = variant == Variant::Literal;
            // [D0, A0] = [d, d - x] = -1, so B0 = -1 and C(u) = -d^2 + x d + u.
            let (b0, c0, q0, q1) = if literal {
                (mf(k(1)), &d2() - &xd, fr(1, 2), k(-1))
            } else {
                (mf(k(-1)), &(-&d2()) + &xd, fr(-1, 2), k(1))
            };
            LOperator {
                tag,
                kind: Kind::QismI,
                variant,
                a: ULOp::constant(a0),
                b: ULOp::constant(b0),
                c: CEntry::Diff(linear(c0, one)),
                d: ULOp::constant(d1()),
                alpha,
                beta,
                gamma,
                delta,
                declared: Declared { q0, q1, q2: k(0) },
                listed_q1: Some(k(-1)),
                b0c: None,
                basis: None,
                params: vec![],
            }
        }
        TypeTag::CDoublePrime => {
            let (alpha, beta, gamma, delta) = base(2, 0);
            let xinv = x().recip();
            let d0 = mf(xinv.clone()).compose(&d1());
            let b0 = mf(xinv.scale(&q(2))).compose(&d1());
            let n0 = &(&mf(x()).compose(&d2()) + &d1()) - &mf(x());
            let n1 = d1().scale(&k(2));
            LOperator {
                tag,
                kind: Kind::QismI,
                variant,
                a: linear(xd, one.scale(&k(2))),
                b: ULOp::constant(b0),
                c: CEntry::Inverse {
                    scale: fr(1, 2),
                    inverse: InverseKind::DWeighted,
                    inner: linear(n0.clone(), n1.clone()),
                },
                d: ULOp::constant(d0),
                alpha,
                beta,
                gamma,
                delta,
                declared: Declared { q0: k(1), q1: k(0), q2: k(0) },
                listed_q1: Some(k(0)),
                b0c: Some(linear(mf(xinv.clone()).compose(&n0), mf(xinv).compose(&n1))),
                basis: Some(BasisTag::ExpWeighted),
                params: vec![],
            }
        }
        TypeTag::GenA => {
            let free = variant == Variant::Literal;
            let delta = if free { r(DELTA) } else { gen_a_delta() };
            let x1mx = &x() * &(&k(1) - &x());
            let a1 = mf(&x() - &fr(1, 2));
            let a0 = &mf(x1mx.clone()).compose(&d1())
                + &mf(&(&x().scale(&half()) - &(&a * &x())) + &(&c.scale(&half()) - &fr(1, 2)));
            let (ua, ud) = qism2_ad(&a1, &a0, &delta);
            let b0 = mf(-x1mx.clone());
            let q2 = fr(1, 4);
            let (c0, q0) = match &variant {
                Variant::DerivedC0(q0) => (derived_c0(&a1, &a0, &b0, &delta, q0), q0.clone()),
                _ => {
                    let c0 = &(&mf(x1mx).compose(&d2())
                        + &mf(&c - &(&(&a.scale(&q(2)) + &k(1)) * &x())).compose(&d1()))
                        - &mf(&a * &a);
                    let q0 = &(-&delta) - &(&(&c - &k(1)) * &(&c - &k(1))).scale(&qf(1, 4));
                    (c0, q0)
                }
            };
            let params = if free { vec![A, C, DELTA] } else { vec![A, C] };
            LOperator {
                tag,
                kind: Kind::QismII,
                variant,
                a: ua,
                b: ULOp::constant(b0),
                c: CEntry::Diff(ULOp::new(zero_q(), [(2, one), (0, c0)])),
                d: ud,
                alpha: k(0),
                beta: k(0),
                gamma: k(1),
                delta,
                declared: Declared { q0, q1: k(0), q2 },
                listed_q1: None,
                b0c: None,
                basis: None,
                params,
            }
        }
        TypeTag::GenCDoublePrime => {
            let delta = r(DELTA);
            let xinv = x().recip();
            let a1 = mf(xinv.clone());
            let a0 = &d1() + &mf(xinv.scale(&half()));
            let (ua, ud) = qism2_ad(&a1, &a0, &delta);
            let b0 = mf(xinv.pow(2));
            let (c0, q0) = match &variant {
                Variant::DerivedC0(q0) => (derived_c0(&a1, &a0, &b0, &delta, q0), q0.clone()),
                _ => {
                    let x2 = x().pow(2);
                    let c0 = &(&(&mf(-x2.clone()).compose(&d2()) - &xd) - &mf(x2))
                        + &mf(&x() * &delta.scale(&q(2)));
                    (c0, k(1))
                }
            };
            LOperator {
                tag,
                kind: Kind::QismII,
                variant,
                a: ua,
                b: ULOp::constant(b0),
                c: CEntry::Diff(ULOp::new(zero_q(), [(2, one), (0, c0)])),
                d: ud,
                alpha: k(0),
                beta: k(0),
                gamma: k(1),
                delta,
                declared: Declared { q0, q1: k(0), q2: k(0) },
                listed_q1: None,
                b0c: None,
                basis: None,
                params: vec![DELTA],
            }
        }
    }
}

/// `C0 = B0^{-1} (2 delta A1 - A0^2 - B0/4 - Q0)` for a function `B0`.
pub fn derived_c0(a1: &DiffOp, a0: &DiffOp, b0: &DiffOp, delta: &RatFunc, q0: &RatFunc) -> DiffOp {
    let b = b0.as_scalar().or_else(|| (b0.order() == Some(0)).then(|| b0.coeff(0))).expect("B0 is a function");
    let rhs = &(&(&a1.scale(&delta.scale(&q(2))) - &a0.compose(a0)) - &b0.scale(&fr(1, 4))) - &mf(q0.clone());
    rhs.scale(&b.recip())
}

impl LOperator {
    pub fn name(&self) -> String {
        match &self.variant {
            Variant::Standard => self.tag.to_string(),
            Variant::Literal => format!("{}[as printed]", self.tag),
            Variant::DerivedC0(q0) => format!("{}[Q0={}]", self.tag, q0),
        }
    }

    pub fn entry_diff(&self, e: Entry) -> Option<&ULOp> {
        match e {
            Entry::A => Some(&self.a),
            Entry::B => Some(&self.b),
            Entry::D => Some(&self.d),
            Entry::C => match &self.c {
                CEntry::Diff(u) => Some(u),
                CEntry::Inverse { .. } => None,
            },
        }
    }

    /// `A0`, `D0` of `A(u) = A0 + alpha u`, `D(u) = D0 + delta u`.
    pub fn a0(&self) -> DiffOp {
        self.a.coeff(0)
    }

    pub fn d0(&self) -> DiffOp {
        self.d.coeff(0)
    }

    pub fn a1(&self) -> DiffOp {
        self.a.coeff(1)
    }

    pub fn b0(&self) -> DiffOp {
        self.b.coeff(0)
    }

    /// `C0 = C(0)` when `C` is a differential operator.
    pub fn c0(&self) -> Option<DiffOp> {
        match &self.c {
            CEntry::Diff(u) => Some(u.at(&RatFunc::zero())),
            CEntry::Inverse { .. } => None,
        }
    }

    /// `B0 C0`, either directly or from the stored composite.
    pub fn b0c0(&self) -> DiffOp {
        match &self.b0c {
            Some(u) => u.at(&RatFunc::zero()),
            None => self.b0().compose(&self.c0().expect("C0")),
        }
    }

    /// Specialize parameters to numbers.
    pub fn specialize(&self, vals: &[(Var, Q)]) -> LOperator {
        let map: Vec<(Var, RatFunc)> = vals.iter().map(|(v, c)| (*v, RatFunc::constant(c.clone()))).collect();
        let s = |r: &RatFunc| r.subst(&map);
        let su = |u: &ULOp| u.subst(&map);
        LOperator {
            tag: self.tag,
            kind: self.kind,
            variant: self.variant.clone(),
            a: su(&self.a),
            b: su(&self.b),
            c: match &self.c {
                CEntry::Diff(u) => CEntry::Diff(su(u)),
                CEntry::Inverse { scale, inverse, inner } => CEntry::Inverse {
                    scale: s(scale),
                    inverse: match inverse {
                        InverseKind::Euler(b) => InverseKind::Euler(s(b)),
                        other => other.clone(),
                    },
                    inner: su(inner),
                },
            },
            d: su(&self.d),
            alpha: s(&self.alpha),
            beta: s(&self.beta),
            gamma: s(&self.gamma),
            delta: s(&self.delta),
            declared: Declared { q0: s(&self.declared.q0), q1: s(&self.declared.q1), q2: s(&self.declared.q2) },
            listed_q1: self.listed_q1.as_ref().map(s),
            b0c: self.b0c.as_ref().map(su),
            basis: self.basis,
            params: self.params.iter().copied().filter(|p| !vals.iter().any(|(v, _)| v == p)).collect(),
        }
    }
}
