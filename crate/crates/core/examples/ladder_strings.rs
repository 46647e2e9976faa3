//! Walk the polynomial ladder strings and the finite reflection-algebra
//! string, printing the measured factors at each rung.

use qism_ladder::ladder::{reflection_gap, sample_points, verify_string, StringDomain};
use qism_ladder::specfun::{Family, FamilyId};
use qism_ladder::symcore::{q, qf, Q};

fn show(name: &str, fam: Family, dom: StringDomain, top: Q, steps: usize) {
    let p = 192;
    let xs = sample_points(&fam, 5, 11);
    let run = match verify_string(&fam, &dom, &top, steps, &xs, p) {
        Ok(r) => r,
        Err(e) => return println!("{name}: {e}"),
    };
    println!("{name} ({}): {}", run.tag, if run.pass(p) { "ok" } else { "FAIL" });
    for s in &run.steps {
        let fmt = |m: &qism_ladder::ladder::Measured| if m.zero { "0".to_string() } else { format!("{:.10}", m.value.to_f64()) };
        println!("  u = {:>5}  Delta-(u-1/2) = {:>14}  Delta+(u+1/2) = {:>14}", s.u.to_string(), fmt(&s.down), fmt(&s.up));
    }
    for d in &run.dets {
        println!("  det({}) = {}   product rel err {:.1e}", d.at, d.det, d.rel_err);
    }
}

fn main() {
    let a = qf(1, 3);
    let top = |u: Q| StringDomain { u0: u, j_minus: None, j_plus: Some(1) };
    show("Jacobi", Family::standard(FamilyId::P1), top(-a.clone()), -a.clone(), 3);
    show("Laguerre via 1F1", Family::standard(FamilyId::P6), top(-a.clone()), -a, 3);
    show("Laguerre via Psi", Family::standard(FamilyId::P7), top(q(0)), q(0), 3);
    show("Hermite", Family::P9, top(q(0)), q(0), 3);

    let gen_a = Family::P3 { a: q(-2), c: qf(7, 4) };
    let dom = StringDomain { u0: q(-2), j_minus: Some(-1), j_plus: Some(5) };
    show("finite reflection string", gen_a.clone(), dom, q(2), 4);
    let xs = sample_points(&gen_a, 5, 11);
    println!("  F(1) / F(-1) spread over the samples: {:.1e}", reflection_gap(&gen_a, &q(1), &xs, 192).unwrap());
}
