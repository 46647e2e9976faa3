use std::collections::BTreeMap;
use std::fmt;

use super::DiffOp;
use crate::symcore::var::U;
use crate::symcore::{RatFunc, Var, Q};

/// Operator-valued Laurent polynomial `sum_k w^k D_k` in the shifted
/// spectral variable `w = u - center`.
#[derive(Clone, PartialEq)]
pub struct ULOp {
    pub spectral: Var,
    pub center: Q,
    terms: BTreeMap<i32, DiffOp>,
}

impl ULOp {
    pub fn new(center: Q, terms: impl IntoIterator<Item = (i32, DiffOp)>) -> Self {
        let mut t = BTreeMap::new();
        for (k, d) in terms {
            if !d.is_zero() {
                t.insert(k, d);
            }
        }
        ULOp { spectral: U, center, terms: t }
    }

    /// A constant in `u`.
    pub fn constant(d: DiffOp) -> Self {
        ULOp::new(Q::from_integer(0.into()), [(0, d)])
    }

    pub fn coeff(&self, k: i32) -> DiffOp {
        self.terms.get(&k).cloned().unwrap_or_else(DiffOp::zero)
    }

    pub fn powers(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &DiffOp)> {
        self.terms.iter().map(|(&k, d)| (k, d))
    }

    /// Specialize the spectral parameter to `val`.
    pub fn at(&self, val: &RatFunc) -> DiffOp {
        let w = val - &RatFunc::constant(self.center.clone());
        let mut acc = DiffOp::zero();
        for (&k, d) in &self.terms {
            acc = &acc + &d.scale(&w.pow(k));
        }
        acc
    }

    pub fn subst(&self, map: &[(Var, RatFunc)]) -> ULOp {
        ULOp {
            spectral: self.spectral,
            center: self.center.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&k, d)| (k, d.subst(map)))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }
}

impl fmt::Display for ULOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().rev().map(|(k, d)| format!("w^{k}*({d})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ULOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
