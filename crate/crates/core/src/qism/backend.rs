//! Two ways to evaluate products of L-operator entries: as differential
//! operators, or as exact actions on a function basis.

use super::report::clip;
use super::types::{CEntry, Entry, LOperator};
use super::QismError;
use crate::diffop::{BandedBasisOp, BasisTag, DiffOp};
use crate::symcore::RatFunc;

pub trait Backend {
    type Op: Clone;

    fn name(&self) -> &'static str;
    fn entry(&self, l: &LOperator, e: Entry, at: &RatFunc) -> Result<Self::Op, QismError>;
    fn scalar(&self, c: &RatFunc) -> Self::Op;
    fn add(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
    fn sub(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
    fn compose(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
    fn scale(&self, a: &Self::Op, c: &RatFunc) -> Self::Op;
    /// `Ok(None)` for zero, otherwise a description of the residual.
    fn residual(&self, a: &Self::Op) -> Result<Option<String>, QismError>;
    /// The operator as a multiple of the identity, if it is one.
    fn as_scalar(&self, a: &Self::Op) -> Result<Option<RatFunc>, QismError>;

    fn zero(&self) -> Self::Op {
        self.scalar(&RatFunc::zero())
    }
}

/// Entries as `DiffOp`s. Inverse-bearing `C` entries are rejected.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Backend for Symbolic {
    type Op = DiffOp;

    fn name(&self) -> &'static str {
        "symbolic"
    }

    fn entry(&self, l: &LOperator, e: Entry, at: &RatFunc) -> Result<DiffOp, QismError> {
        l.entry_diff(e).map(|u| u.at(at)).ok_or(QismError::NeedsBasis(l.tag))
    }

    fn scalar(&self, c: &RatFunc) -> DiffOp {
        DiffOp::scalar(c.clone())
    }

    fn add(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a + b
    }

    fn sub(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a - b
    }

    fn compose(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a.compose(b)
    }

    fn scale(&self, a: &DiffOp, c: &RatFunc) -> DiffOp {
        a.scale(c)
    }

    fn residual(&self, a: &DiffOp) -> Result<Option<String>, QismError> {
        Ok((!a.is_zero()).then(|| clip(&a.to_string(), 240)))
    }

    fn as_scalar(&self, a: &DiffOp) -> Result<Option<RatFunc>, QismError> {
        Ok(a.as_scalar())
    }
}

/// Entries as exact actions on `x^k` (or `x^k e^{-x}`), compared on the
/// indices `lo..=N - up`, where `up` is how far the operator raises degree.
#[derive(Clone, Debug)]
pub struct Basis {
    pub tag: BasisTag,
    pub lo: i64,
    pub degree: i64,
}

impl Basis {
    pub fn new(tag: BasisTag, degree: u32) -> Self {
        // x^{-1} d appears twice in products on the weighted basis, and the
        // inverse there is only defined on nonnegative indices.
        let lo = match tag {
            BasisTag::Monomial => 0,
            BasisTag::ExpWeighted => 2,
        };
        Basis { tag, lo, degree: degree as i64 }
    }

    pub fn for_operator(l: &LOperator, degree: u32) -> Self {
        Basis::new(l.basis.unwrap_or(BasisTag::Monomial), degree)
    }

    pub fn range(&self, op: &BandedBasisOp) -> std::ops::RangeInclusive<i64> {
        let up = op.up.unwrap_or(0) as i64;
        self.lo..=(self.degree - up).max(self.lo)
    }

    pub fn lift(&self, d: &DiffOp) -> Result<BandedBasisOp, QismError> {
        Ok(BandedBasisOp::from_diffop(d, self.tag)?)
    }
}

impl Backend for Basis {
    type Op = BandedBasisOp;

    fn name(&self) -> &'static str {
        "basis-action"
    }

    fn entry(&self, l: &LOperator, e: Entry, at: &RatFunc) -> Result<BandedBasisOp, QismError> {
        if let Some(t) = l.basis {
            if t != self.tag {
                return Err(QismError::BasisMismatch(l.tag, self.tag));
            }
        }
        match (e, &l.c) {
            (Entry::C, CEntry::Inverse { scale, inverse, inner }) => {
                let inv = inverse.basis_op();
                if inv.tag != self.tag {
                    return Err(QismError::BasisMismatch(l.tag, self.tag));
                }
                Ok(inv.compose(&self.lift(&inner.at(at))?).scale(scale))
            }
            _ => self.lift(&l.entry_diff(e).expect("differential entry").at(at)),
        }
    }

    fn scalar(&self, c: &RatFunc) -> BandedBasisOp {
        BandedBasisOp::scalar(self.tag, c.clone())
    }

    fn add(&self, a: &BandedBasisOp, b: &BandedBasisOp) -> BandedBasisOp {
        a.add(b)
    }

    fn sub(&self, a: &BandedBasisOp, b: &BandedBasisOp) -> BandedBasisOp {
        a.sub(b)
    }

    fn compose(&self, a: &BandedBasisOp, b: &BandedBasisOp) -> BandedBasisOp {
        a.compose(b)
    }

    fn scale(&self, a: &BandedBasisOp, c: &RatFunc) -> BandedBasisOp {
        a.scale(c)
    }

    fn residual(&self, a: &BandedBasisOp) -> Result<Option<String>, QismError> {
        Ok(a.first_nonzero(self.range(a))?.map(|(k, v)| {
            let parts: Vec<String> = v.iter().map(|(j, c)| format!("{j}: {c}")).collect();
            clip(&format!("index {k} -> {{{}}}", parts.join(", ")), 240)
        }))
    }

    fn as_scalar(&self, a: &BandedBasisOp) -> Result<Option<RatFunc>, QismError> {
        let mut found: Option<RatFunc> = None;
        for k in self.range(a) {
            let v = a.apply(k)?;
            let c = match v.len() {
                0 => RatFunc::zero(),
                1 if v.contains_key(&k) => v[&k].clone(),
                _ => return Ok(None),
            };
            match &found {
                None => found = Some(c),
                Some(f) if *f == c => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(found)
    }
}
