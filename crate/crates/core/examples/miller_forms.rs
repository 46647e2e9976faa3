//! The factorization-method forms and the four-dimensional Lie algebra
//! realizations of the periodic L-operators.

use qism_ladder::qism::{check_g_ab, check_lemma42, check_miller, MillerTag, TypeTag};

fn main() {
    let tags = MillerTag::SIX.into_iter().chain([MillerTag::Hyper, MillerTag::Bessel]);
    for tag in tags {
        for r in check_miller(tag).unwrap().records {
            println!("{} {:<28} ({})", if r.pass { "ok  " } else { "FAIL" }, r.id, r.eq);
        }
    }
    for tag in [TypeTag::A, TypeTag::B, TypeTag::CPrime, TypeTag::DPrime, TypeTag::CDoublePrime] {
        let mut recs = check_g_ab(tag).unwrap().records;
        if let Ok(l) = check_lemma42(tag) {
            recs.extend(l.records);
        }
        for r in recs {
            let s = if r.pass { "ok  " } else if r.flagged { "FLAG" } else { "FAIL" };
            println!("{s} {:<28} ({})  {}", r.id, r.eq, r.residual);
        }
    }
}
