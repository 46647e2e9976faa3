//! Check every shift pair numerically and print the measured factors next
//! to the closed forms.
//!
//! Usage: `shift_pairs [precision] [seed]`

use qism_ladder::ladder::{sample_points, verify_pair};
use qism_ladder::specfun::{Family, FamilyId};
use qism_ladder::symcore::qf;

fn main() {
    let mut args = std::env::args().skip(1);
    let p: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(192);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    for id in FamilyId::ALL {
        let fam = Family::standard(id);
        let u = if id == FamilyId::P5 { qf(1, 1) } else { qf(1, 3) };
        let xs = sample_points(&fam, 5, seed);
        match verify_pair(&fam, &u, &xs, p) {
            Ok(c) => {
                let (e1, e2) = id.eqs();
                println!(
                    "{:<4} ({e1})/({e2})  {}  residual {:.2e}",
                    id.to_string(),
                    if c.pass() { "ok  " } else { "FAIL" },
                    c.max_residual()
                );
                for d in [&c.down, &c.up] {
                    println!(
                        "       {:?}: expected {:<12} measured {:.12e}",
                        d.dir,
                        d.expected.to_string(),
                        d.measured.value.to_f64()
                    );
                }
            }
            Err(e) => println!("{id}: {e}"),
        }
    }
}
