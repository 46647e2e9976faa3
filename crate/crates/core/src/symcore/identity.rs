//! Probabilistic identity testing for transcendental expressions.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::complex::Complex;
use super::expr::Expr;
use super::poly::{qf, Q};
use super::var::Var;
use super::SymError;
use crate::specfun::BigFloat;

/// Sampling interval for one symbol. `imaginary` samples `i*t` with `t`
/// drawn from the interval.
#[derive(Clone, Debug)]
pub struct Domain {
    pub lo: Q,
    pub hi: Q,
    pub imaginary: bool,
}

impl Domain {
    pub fn interval(lo: Q, hi: Q) -> Self {
        Domain { lo, hi, imaginary: false }
    }

    pub fn imaginary(lo: Q, hi: Q) -> Self {
        Domain { lo, hi, imaginary: true }
    }
}

impl Default for Domain {
    fn default() -> Self {
        Domain::interval(qf(1, 10), qf(9, 10))
    }
}

#[derive(Clone, Debug)]
pub struct IdentityOptions {
    pub samples: usize,
    pub precision: usize,
    /// Pass when the relative residual is below `2^-tol_bits`.
    pub tol_bits: i64,
    pub seed: u64,
    pub domains: Vec<(Var, Domain)>,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions { samples: 16, precision: 192, tol_bits: 96, seed: 0, domains: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub pass: bool,
    pub points: usize,
    pub skipped: usize,
    /// Worst relative residual as a decimal string.
    pub max_residual: String,
    pub worst_log2: Option<i64>,
}

/// Draw a rational with a 20-bit numerator from the domain.
fn sample(rng: &mut ChaCha8Rng, d: &Domain) -> Q {
    let n: i64 = rng.gen_range(1..(1 << 20));
    let t = qf(n, 1 << 20);
    &d.lo + &(&(&d.hi - &d.lo) * &t)
}

/// Compare `lhs` and `rhs` at random points. Points where either side is
/// undefined are skipped and redrawn, up to four times the sample budget.
pub fn prob_identity(lhs: &Expr, rhs: &Expr, opts: &IdentityOptions) -> IdentityOutcome {
    let diff = lhs - rhs;
    let mut vars = lhs.vars();
    vars.extend(rhs.vars());
    let p = opts.precision;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points = 0;
    let mut skipped = 0;
    let mut worst: Option<BigFloat> = None;
    let mut pass = true;
    let default = Domain::default();
    while points < opts.samples && skipped < 4 * opts.samples.max(1) {
        let mut env: Vec<(Var, Complex)> = Vec::new();
        for &v in &vars {
            let d = opts.domains.iter().find(|(w, _)| *w == v).map(|(_, d)| d).unwrap_or(&default);
            let t = BigFloat::from_q(&sample(&mut rng, d), p);
            let z = if d.imaginary { Complex::new(BigFloat::zero(p), t) } else { Complex::real(t) };
            env.push((v, z));
        }
        let look = |v: Var| env.iter().find(|(w, _)| *w == v).map(|(_, z)| z.clone());
        let vals: Result<(Complex, Complex, Complex), SymError> = (|| {
            Ok((lhs.eval(&look, p)?, rhs.eval(&look, p)?, diff.eval(&look, p)?))
        })();
        let (l, r, d) = match vals {
            Ok(t) => t,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        points += 1;
        let one = BigFloat::one(p);
        let scale = [l.abs(), r.abs(), one].into_iter().fold(BigFloat::zero(p), |m, x| if x > m { x } else { m });
        // both the direct difference and the difference of values must be small
        let d2 = &l - &r;
        let dmag = BigFloat::max_abs(&d.abs(), &d2.abs()).clone();
        let rel = &dmag / &scale;
        if !rel.below_pow2(-opts.tol_bits) {
            pass = false;
        }
        if worst.as_ref().map_or(true, |w| rel > *w) {
            worst = Some(rel);
        }
    }
    if points == 0 {
        pass = false;
    }
    let worst_log2 = worst.as_ref().and_then(|w| w.log2_magnitude());
    IdentityOutcome {
        pass,
        points,
        skipped,
        max_residual: worst.map(|w| w.to_sci(6)).unwrap_or_else(|| "n/a".into()),
        worst_log2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::var::{A, X};

    #[test]
    fn pythagoras_holds_and_perturbation_fails() {
        let x = Expr::var(X);
        let lhs = x.sin().powi(2) + x.cos().powi(2);
        let opts = IdentityOptions::default();
        assert!(prob_identity(&lhs, &Expr::int(1), &opts).pass);
        let bad = &lhs + &(Expr::var(A) * Expr::frac(1, 1 << 30));
        assert!(!prob_identity(&bad, &Expr::int(1), &opts).pass);
    }

    #[test]
    fn imaginary_domain() {
        // cos(a x) with a = i s equals cosh(s x)
        let ax = Expr::var(A) * Expr::var(X);
        let sx = &ax / &Expr::i();
        let cosh = (sx.exp() + (-&sx).exp()) * Expr::frac(1, 2);
        let opts = IdentityOptions {
            domains: vec![(A, Domain::imaginary(qf(1, 10), qf(9, 10)))],
            ..IdentityOptions::default()
        };
        assert!(prob_identity(&ax.cos(), &cosh, &opts).pass);
    }

    #[test]
    fn poles_are_skipped() {
        let x = Expr::var(X);
        let lhs = &x / &x;
        let out = prob_identity(&lhs, &Expr::int(1), &IdentityOptions::default());
        assert!(out.pass);
    }
}
