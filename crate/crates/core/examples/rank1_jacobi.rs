//! The bracket on the n^2 generators of the rank-1 ansatz satisfies the
//! Jacobi identity for any matrix mu; check it exhaustively.

use qism_ladder::qism::{check_jacobi_rank1, random_mu};

fn main() {
    for n in 2..=4 {
        for seed in 0..5 {
            let mu = random_mu(n, 8, seed);
            let ok = check_jacobi_rank1(n, &mu, 0, seed);
            println!("n = {n}, mu #{seed}: {}", if ok { "holds on all triples" } else { "FAILS" });
        }
    }
}
