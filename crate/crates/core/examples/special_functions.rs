//! Evaluate a few of the special functions behind the ladder families at
//! 192 bits, with their first derivative and the error estimate.

use qism_ladder::specfun::{
    bessel_j_jet, gamma, hyp2f1_jet, parcyl_jet, tricomi_psi_jet, BigFloat, Family, FamilyId,
};
use qism_ladder::symcore::qf;

fn main() {
    let p = 192;
    let f = |n: i64, d: i64| BigFloat::from_q(&qf(n, d), p);

    println!("Gamma(1/2)^2 = {}", gamma(&f(1, 2), p).unwrap().powi(2).to_decimal());

    let j = hyp2f1_jet(&f(1, 3), &f(2, 5), &f(7, 4), &f(1, 2), p).unwrap();
    println!("2F1(1/3, 2/5; 7/4; 1/2) = {}", j.f.to_decimal());
    println!("  d/dx                  = {}", j.d1.to_decimal());
    println!("  error bound           ~ {:.1e}", j.err.to_f64());

    let psi = tricomi_psi_jet(&f(1, 3), &f(9, 7), &f(5, 2), p).unwrap();
    println!("Psi(1/3, 9/7; 5/2)      = {}", psi.f.to_decimal());

    let jb = bessel_j_jet(&f(1, 3), &f(3, 2), p).unwrap();
    println!("J_(1/3)(3/2)            = {}", jb.f.to_decimal());

    let d = parcyl_jet(&f(-1, 3), &f(6, 5), p).unwrap();
    println!("D_(-1/3)(6/5)           = {}", d.f.to_decimal());

    // every family at its standard parameters, u = 1/3
    for id in FamilyId::ALL {
        let fam = Family::standard(id);
        let u = if id == FamilyId::P5 { qf(1, 1) } else { qf(1, 3) };
        let (lo, hi) = fam.domain();
        let x = BigFloat::from_q(&((lo + hi) * qf(1, 2)), p);
        match fam.eval(&u, &x, p) {
            Ok(v) => println!("{id:>3} F(u)(x) = {:.15e}   F' = {:.15e}", v.f.to_f64(), v.d1.to_f64()),
            Err(e) => println!("{id:>3} {e}"),
        }
    }
}
