use proptest::prelude::*;

use qism_ladder::envalg::{bubble_normal_order, casimir, casimir_tilde, normal_order, pbw_commutator, Gen, PbwElement};

fn word(max: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(prop::sample::select(Gen::ALL.to_vec()), 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn agrees_with_bubble_sort(w in word(8)) {
        prop_assert_eq!(normal_order(&w), bubble_normal_order(&w));
    }

    #[test]
    fn products_are_associative(a in word(4), b in word(4), c in word(4)) {
        let (x, y, z) = (normal_order(&a), normal_order(&b), normal_order(&c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        let mut abc = a.clone();
        abc.extend(&b);
        abc.extend(&c);
        prop_assert_eq!(x.mul(&y).mul(&z), normal_order(&abc));
    }

    #[test]
    fn sorted_words_are_fixed(w in word(8)) {
        let mut s = w.clone();
        s.sort();
        let n = normal_order(&s);
        prop_assert_eq!(n.terms().count(), usize::from(true));
        prop_assert_eq!(n.degree() as usize, s.len());
    }

    #[test]
    fn casimirs_commute_with_words(w in word(5)) {
        let x = normal_order(&w);
        prop_assert!(pbw_commutator(&casimir(), &x).is_zero());
        prop_assert!(pbw_commutator(&casimir_tilde(), &x).is_zero());
    }

    #[test]
    fn commutator_jacobi(a in word(3), b in word(3), c in word(3)) {
        let (x, y, z) = (normal_order(&a), normal_order(&b), normal_order(&c));
        let j = pbw_commutator(&x, &pbw_commutator(&y, &z))
            .add(&pbw_commutator(&y, &pbw_commutator(&z, &x)))
            .add(&pbw_commutator(&z, &pbw_commutator(&x, &y)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn leading_term_is_the_sorted_word(w in word(7)) {
        // reordering only adds terms of lower degree
        let mut s = w.clone();
        s.sort();
        let diff = normal_order(&w).sub(&normal_order(&s));
        prop_assert!(diff.is_zero() || (diff.degree() as usize) < w.len());
    }
}

#[test]
fn one_is_the_unit() {
    let x = normal_order(&[Gen::J3, Gen::PPlus, Gen::JMinus]);
    assert_eq!(PbwElement::one().mul(&x), x);
    assert_eq!(x.mul(&PbwElement::one()), x);
}
