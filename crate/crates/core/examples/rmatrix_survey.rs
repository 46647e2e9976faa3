//! Run every algebraic check on every L-operator in the catalogue and print
//! one line per record.

use qism_ladder::qism::{
    build_l, check_factorization, check_lemma_c, check_quantum_det, check_rmatrix, crosscheck_commutators,
    with_backend, CheckRecord, TypeTag,
};

fn show(r: &CheckRecord) {
    let status = if r.pass { "ok  " } else if r.flagged { "FLAG" } else { "FAIL" };
    println!("{status} {:<34} ({:>9}) {:>6}ms  {}", r.id, r.eq, r.ms, r.residual);
}

fn main() {
    let degree = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    for tag in TypeTag::ALL {
        let l = build_l(tag);
        let mut recs = Vec::new();
        let rep = with_backend(
            &l,
            degree,
            |be| {
                let mut v = check_rmatrix(be, &l)?.records;
                v.extend(crosscheck_commutators(be, &l)?.records);
                let (d, det) = check_quantum_det(be, &l)?;
                v.extend(d.records);
                if let Some(det) = det {
                    v.extend(check_factorization(be, &l, &det)?.records);
                }
                Ok(v)
            },
            |be| {
                let mut v = check_rmatrix(be, &l)?.records;
                v.extend(crosscheck_commutators(be, &l)?.records);
                let (d, det) = check_quantum_det(be, &l)?;
                v.extend(d.records);
                if let Some(det) = det {
                    v.extend(check_factorization(be, &l, &det)?.records);
                }
                Ok(v)
            },
        );
        match rep {
            Ok(v) => recs.extend(v),
            Err(e) => println!("ERR  {tag}: {e}"),
        }
        recs.extend(check_lemma_c(&l).records);
        for r in &recs {
            show(r);
        }
    }
}
