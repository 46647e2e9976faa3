//! The bracket `[L_ir, L_js] = -mu_jr L_is + mu_is L_jr` on the span of the
//! `n^2` generators, and an exact check of its Jacobi identity.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symcore::{q, Q};

type Vector = Vec<Q>;

fn idx(n: usize, i: usize, r: usize) -> usize {
    i * n + r
}

fn basis(n: usize, i: usize, r: usize) -> Vector {
    let mut v = vec![q(0); n * n];
    v[idx(n, i, r)] = q(1);
    v
}

fn bracket_basis(n: usize, mu: &[Vec<Q>], (i, r): (usize, usize), (j, s): (usize, usize)) -> Vector {
    let mut v = vec![q(0); n * n];
    v[idx(n, i, s)] -= &mu[j][r];
    v[idx(n, j, r)] += &mu[i][s];
    v
}

fn bracket(n: usize, mu: &[Vec<Q>], x: &Vector, y: &Vector) -> Vector {
    let mut out = vec![q(0); n * n];
    for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let w = xa * yb;
            let bb = bracket_basis(n, mu, (a / n, a % n), (b / n, b % n));
            for (o, c) in out.iter_mut().zip(bb) {
                if !c.is_zero() {
                    *o += &w * c;
                }
            }
        }
    }
    out
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]` for three generators.
fn jacobiator(n: usize, mu: &[Vec<Q>], a: usize, b: usize, c: usize) -> Vector {
    let (x, y, z) = (basis(n, a / n, a % n), basis(n, b / n, b % n), basis(n, c / n, c % n));
    let t1 = bracket(n, mu, &bracket(n, mu, &x, &y), &z);
    let t2 = bracket(n, mu, &bracket(n, mu, &y, &z), &x);
    let t3 = bracket(n, mu, &bracket(n, mu, &z, &x), &y);
    t1.into_iter().zip(t2).zip(t3).map(|((p, q), r)| p + q + r).collect()
}

/// Check the Jacobi identity on every triple of generators, or on `trials`
/// random triples when that is fewer than `n^6`.
pub fn check_jacobi_rank1(n: usize, mu: &[Vec<Q>], trials: usize, seed: u64) -> bool {
    assert!((2..=5).contains(&n), "dimension must be between 2 and 5");
    assert!(mu.len() == n && mu.iter().all(|r| r.len() == n), "mu must be n x n");
    let m = n * n;
    let total = m * m * m;
    let zero = |v: Vector| v.iter().all(|c| c.is_zero());
    if trials == 0 || trials >= total {
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if !zero(jacobiator(n, mu, a, b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials).all(|_| zero(jacobiator(n, mu, rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m))))
    }
}

/// A random `n x n` matrix of rationals with `bits`-bit signed numerators
/// and denominators.
pub fn random_mu(n: usize, bits: u32, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lim = 1i64 << bits;
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let num = rng.gen_range(-lim + 1..lim);
                    let den = rng.gen_range(1..lim);
                    Q::new(num.into(), den.into())
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero_mu() {
        let id: Vec<Vec<Q>> = (0..2).map(|i| (0..2).map(|j| q((i == j) as i64)).collect()).collect();
        assert!(check_jacobi_rank1(2, &id, 0, 0));
        assert!(check_jacobi_rank1(2, &vec![vec![q(0); 2]; 2], 0, 0));
    }

    #[test]
    fn random_three_by_three() {
        assert!(check_jacobi_rank1(3, &random_mu(3, 8, 7), 0, 7));
    }

    #[test]
    fn double_bracket_closed_form() {
        let n = 3;
        let mu = random_mu(n, 6, 3);
        let (i, r, j, s, k, t) = (0, 1, 2, 0, 1, 2);
        let got = bracket(n, &mu, &bracket(n, &mu, &basis(n, i, r), &basis(n, j, s)), &basis(n, k, t));
        let mut want = vec![q(0); n * n];
        want[idx(n, i, t)] += &mu[j][r] * &mu[k][s];
        want[idx(n, k, s)] -= &mu[j][r] * &mu[i][t];
        want[idx(n, j, t)] -= &mu[i][s] * &mu[k][r];
        want[idx(n, k, r)] += &mu[i][s] * &mu[j][t];
        assert_eq!(got, want);
    }
}
