//! Normal ordering in U(e(3)) and the map of the boundary quadratic algebra
//! into it, for both choices of delta.

use qism_ladder::envalg::{
    casimir_tilde, check_hom, check_x_operators, normal_order, pbw_commutator, DeltaCandidate, Gen, PbwElement,
};
use qism_ladder::symcore::q;

fn main() {
    use Gen::*;
    println!("J+ J-    = {}", normal_order(&[JPlus, JMinus]));
    println!("J3 P+    = {}", normal_order(&[J3, PPlus]));
    println!("J- P3 J+ = {}", normal_order(&[JMinus, P3, JPlus]));
    let ct = casimir_tilde();
    println!("C~       = {ct}");
    for g in Gen::ALL {
        assert!(pbw_commutator(&ct, &PbwElement::gen(g)).is_zero());
    }
    println!("C~ commutes with all six generators\n");

    for c in [DeltaCandidate::Literal, DeltaCandidate::Central(q(1))] {
        println!("delta candidate: {c}");
        for r in check_hom(&c).records.iter().chain(&check_x_operators(&c).records) {
            let s = if r.pass { "ok  " } else if r.flagged { "FLAG" } else { "FAIL" };
            let res: String = r.residual.chars().take(70).collect();
            println!("  {s} {:<36} {res}", r.id);
        }
    }
}
