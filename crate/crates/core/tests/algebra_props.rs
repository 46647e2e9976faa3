use proptest::prelude::*;

use qism_ladder::diffop::DiffOp;
use qism_ladder::qism::{check_jacobi_rank1, random_mu};
use qism_ladder::symcore::var::{A, U, X};
use qism_ladder::symcore::{q, RatFunc};

/// Polynomial in `x`, `u`, `a` with small integer coefficients.
fn poly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-4i64..=4, 0i32..3, 0i32..2, 0i32..2), 1..5).prop_map(|ts| {
        ts.into_iter().fold(RatFunc::zero(), |acc, (c, ex, eu, ea)| {
            let m = &(&RatFunc::var(X).pow(ex) * &RatFunc::var(U).pow(eu)) * &RatFunc::var(A).pow(ea);
            &acc + &m.scale(&q(c))
        })
    })
}

fn nonzero() -> impl Strategy<Value = RatFunc> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero()).prop_map(|(n, d)| &n / &d)
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(poly(), 1..4).prop_map(|cs| DiffOp::from_terms(X, cs.into_iter().enumerate().map(|(k, c)| (k as u32, c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_laws(f in ratfunc(), g in ratfunc(), h in nonzero()) {
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!(&(&f * &h) / &h, f.clone());
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
    }

    #[test]
    fn derivative_is_a_derivation(f in ratfunc(), g in ratfunc()) {
        let lhs = (&f * &g).derivative(X);
        let rhs = &(&f.derivative(X) * &g) + &(&f * &g.derivative(X));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_commutes_with_arithmetic(f in ratfunc(), g in ratfunc(), s in poly()) {
        // with s free of u, u -> u + s is invertible, so no nonzero
        // denominator can vanish
        let s = s.subst1(U, &RatFunc::zero());
        let map = [(U, &RatFunc::var(U) + &s)];
        prop_assert_eq!((&f * &g).subst(&map), &f.subst(&map) * &g.subst(&map));
    }

    #[test]
    fn composition_is_associative(p in diffop(), r in diffop(), s in diffop()) {
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
    }

    #[test]
    fn composition_acts_as_successive_application(p in diffop(), r in diffop(), f in ratfunc()) {
        prop_assert_eq!((&p * &r).apply(&f), p.apply(&r.apply(&f)));
    }

    #[test]
    fn commutators_satisfy_jacobi(p in diffop(), r in diffop(), s in diffop()) {
        let sum = &(&p.commutator(&r.commutator(&s)) + &r.commutator(&s.commutator(&p))) + &s.commutator(&p.commutator(&r));
        prop_assert!(sum.is_zero(), "{sum}");
    }

    #[test]
    fn weyl_relation(f in ratfunc()) {
        // [d, f] = f'
        let c = DiffOp::d().commutator(&DiffOp::scalar(f.clone()));
        prop_assert_eq!(c, DiffOp::scalar(f.derivative(X)));
    }

    #[test]
    fn rank1_jacobi_for_random_mu(n in 2usize..=3, seed in any::<u64>()) {
        let mu = random_mu(n, 4, seed);
        prop_assert!(check_jacobi_rank1(n, &mu, 0, seed));
    }
}
