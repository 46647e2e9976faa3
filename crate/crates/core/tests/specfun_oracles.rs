//! Special functions against closed forms and recurrences that use none of
//! the series code.

use proptest::prelude::*;

use qism_ladder::specfun::{bessel_j_jet, gamma, hyp1f1, hyp1f1_jet, hyp2f1, hyp2f1_jet, pochhammer_q, tricomi_psi, BigFloat};
use qism_ladder::symcore::{q, qf};

const P: usize = 160;

fn bf(n: i64, d: i64) -> BigFloat {
    BigFloat::from_q(&qf(n, d), P)
}

fn close(a: &BigFloat, b: &BigFloat, bits: i64) -> bool {
    let scale = BigFloat::max_abs(a, b).clone();
    let diff = (a - b).abs();
    if scale.is_zero() {
        return diff.is_zero();
    }
    (diff / scale).below_pow2(-bits)
}

fn unit_interval() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=9).prop_map(|n| (n, 10))
}

fn positive() -> impl Strategy<Value = (i64, i64)> {
    (1i64..60, 1i64..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn log_series((n, d) in unit_interval()) {
        // 2F1(1,1;2;x) = -ln(1-x)/x
        let x = bf(n, d);
        let one = BigFloat::one(P);
        let f = hyp2f1(&one, &one, &bf(2, 1), &x, P).unwrap();
        let want = -(&one - &x).ln() / &x;
        prop_assert!(close(&f, &want, 120), "{f} vs {want}");
    }

    #[test]
    fn binomial_series((n, d) in unit_interval(), (an, ad) in positive(), (bn, bd) in positive()) {
        // 2F1(a,b;b;x) = (1-x)^(-a)
        let (x, a, b) = (bf(n, d), bf(an, ad), bf(bn, bd));
        let f = hyp2f1(&a, &b, &b, &x, P).unwrap();
        let want = (&BigFloat::one(P) - &x).powf(&-&a);
        prop_assert!(close(&f, &want, 110), "{f} vs {want}");
    }

    #[test]
    fn kummer_exponential((n, d) in positive(), (an, ad) in positive()) {
        let (x, a) = (bf(n, d), bf(an, ad));
        let f = hyp1f1(&a, &a, &x, P).unwrap();
        prop_assert!(close(&f, &x.exp(), 110));
    }

    #[test]
    fn kummer_transformation((n, d) in (1i64..30, 1i64..4), (an, ad) in positive(), (cn, cd) in positive()) {
        // 1F1(a;c;x) = e^x 1F1(c-a;c;-x)
        let (x, a, c) = (bf(n, d), bf(an, ad), bf(cn, cd));
        let lhs = hyp1f1(&a, &c, &x, P).unwrap();
        let rhs = x.exp() * hyp1f1(&(&c - &a), &c, &-&x, P).unwrap();
        prop_assert!(close(&lhs, &rhs, 90), "{lhs} vs {rhs}");
    }

    #[test]
    fn derivative_jets((n, d) in unit_interval(), (an, ad) in positive(), (bn, bd) in positive(), (cn, cd) in positive()) {
        // d/dx 2F1(a,b;c;x) = ab/c 2F1(a+1,b+1;c+1;x), same for 1F1
        let (x, a, b, c) = (bf(n, d), bf(an, ad), bf(bn, bd), bf(cn, cd));
        let one = BigFloat::one(P);
        let j = hyp2f1_jet(&a, &b, &c, &x, P).unwrap();
        let up = hyp2f1(&(&a + &one), &(&b + &one), &(&c + &one), &x, P).unwrap();
        prop_assert!(close(&j.d1, &(&a * &b / &c * &up), 100));
        let k = hyp1f1_jet(&a, &c, &x, P).unwrap();
        let up1 = hyp1f1(&(&a + &one), &(&c + &one), &x, P).unwrap();
        prop_assert!(close(&k.d1, &(&a / &c * &up1), 100));
    }

    #[test]
    fn gamma_recurrence((n, d) in positive()) {
        let z = bf(n, d);
        let lhs = gamma(&(&z + &BigFloat::one(P)), P).unwrap();
        let rhs = &z * gamma(&z, P).unwrap();
        prop_assert!(close(&lhs, &rhs, 120));
    }

    #[test]
    fn bessel_half_order((n, d) in positive()) {
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        let x = bf(n, d);
        let j = bessel_j_jet(&bf(1, 2), &x, P).unwrap();
        let want = (bf(2, 1) / (BigFloat::pi(P) * &x)).sqrt() * x.sin();
        prop_assert!(close(&j.f, &want, 100), "{} vs {want}", j.f);
    }

    #[test]
    fn tricomi_power((n, d) in positive(), (an, ad) in positive().prop_filter("integer c is unsupported", |(n, d)| n % d != 0)) {
        // Psi(a, a+1; x) = x^(-a)
        let (x, a) = (bf(n, d), bf(an, ad));
        let f = tricomi_psi(&a, &(&a + &BigFloat::one(P)), &x, P).unwrap();
        prop_assert!(close(&f, &x.powf(&-&a), 100), "{f}");
    }

    #[test]
    fn pochhammer_ratio(an in 1i64..20, k in 0u32..12) {
        // (a)_k = Gamma(a+k)/Gamma(a) for positive integers a
        let lhs = pochhammer_q(&q(an), k);
        let fact = |m: i64| (1..m).fold(q(1), |acc, i| acc * q(i));
        prop_assert_eq!(lhs, fact(an + k as i64) / fact(an));
    }
}

#[test]
fn gamma_at_half_is_sqrt_pi() {
    let g = gamma(&bf(1, 2), P).unwrap();
    assert!(close(&g, &BigFloat::pi(P).sqrt(), 150));
}
