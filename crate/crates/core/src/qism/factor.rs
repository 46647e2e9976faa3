//! The factorized form of the determinant used by ladder arguments.

use std::time::Instant;

use super::backend::Backend;
use super::det::DetPoly;
use super::report::{CheckRecord, RelationReport};
use super::types::{Entry, Kind, LOperator};
use super::QismError;
use crate::symcore::var::U;
use crate::symcore::RatFunc;

/// QISM I: `D(u-1)A(u) = B(u-1)C(u) + det(u-1/2)` and
/// `A(u+1)D(u) = B(u+1)C(u) + det(u+1/2)`.
/// QISM II: `-A(-u+1)A(u) = B(u-1)C(u) + det(u-1/2)` and
/// `-A(u+1)A(-u) = B(u+1)C(u) + det(u+1/2)`.
pub fn check_factorization<Be: Backend>(be: &Be, l: &LOperator, det: &DetPoly) -> Result<RelationReport, QismError> {
    let u = RatFunc::var(U);
    let one = RatFunc::one();
    let h = RatFunc::rat(1, 2);
    let (um1, up1, nu, n1) = (&u - &one, &u + &one, -&u, &(-&u) + &one);
    let e = |x: Entry, at: &RatFunc| be.entry(l, x, at);
    let prod = |x, ax: &RatFunc, y, ay: &RatFunc| -> Result<Be::Op, QismError> { Ok(be.compose(&e(x, ax)?, &e(y, ay)?)) };
    use Entry::*;
    let (lhs1, lhs2, eqs) = match l.kind {
        Kind::QismI => (prod(D, &um1, A, &u)?, prod(A, &up1, D, &u)?, ["4.1", "4.2"]),
        Kind::QismII => {
            let neg = |o: Be::Op| be.sub(&be.zero(), &o);
            (neg(prod(A, &n1, A, &u)?), neg(prod(A, &up1, A, &nu)?), ["4.3", "4.4"])
        }
    };
    let rhs1 = be.add(&prod(B, &um1, C, &u)?, &be.scalar(&det.at(&(&u - &h))));
    let rhs2 = be.add(&prod(B, &up1, C, &u)?, &be.scalar(&det.at(&(&u + &h))));
    let clear = match l.kind {
        Kind::QismI => RatFunc::one(),
        Kind::QismII => (&(&u - &h) * &(&u + &h)).pow(2),
    };
    let mut recs = Vec::new();
    for (i, (lhs, rhs)) in [(lhs1, rhs1), (lhs2, rhs2)].into_iter().enumerate() {
        let start = Instant::now();
        let rec = CheckRecord::new(format!("{}:factorization_{}", l.name(), i + 1), eqs[i], be.name());
        let rec = match be.residual(&be.scale(&be.sub(&lhs, &rhs), &clear))? {
            None => rec.zero(),
            Some(r) => rec.outcome(false, r),
        };
        recs.push(rec.timed(start));
    }
    Ok(RelationReport::new(recs))
}

#[cfg(test)]
mod tests {
    use super::super::backend::Symbolic;
    use super::super::det::quantum_det;
    use super::super::types::{build_l, TypeTag};
    use super::*;

    #[test]
    fn d_prime_and_gen_a() {
        for tag in [TypeTag::DPrime, TypeTag::GenA, TypeTag::B] {
            let l = build_l(tag);
            let det = quantum_det(&Symbolic, &l).unwrap();
            let rep = check_factorization(&Symbolic, &l, &det).unwrap();
            assert!(rep.pass(), "{tag}: {:?}", rep.records);
        }
    }
}
