//! Exact symbolic core.
//!
//! - [`Var`]: interned symbols, with the usual names predeclared as constants
//! - [`MultiPoly`]: sparse multivariate polynomials over `Q`
//! - [`RatFunc`]: rational functions with a factored denominator
//! - [`Expr`]: transcendental expressions, differentiated symbolically and
//!   compared numerically with [`prob_identity`]

mod complex;
mod expr;
mod identity;
mod poly;
mod ratfunc;
pub mod var;

pub use complex::Complex;
pub use expr::Expr;
pub use identity::{prob_identity, Domain, IdentityOptions, IdentityOutcome};
pub(crate) use poly::owned_binop;
pub use poly::{q, qf, Monomial, MultiPoly, Q};
pub use ratfunc::RatFunc;
pub use var::Var;

use crate::specfun::BigFloat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymError {
    #[error("evaluation hits a pole of {0}")]
    Pole(String),
    #[error("no value bound for symbol {0}")]
    Unbound(String),
    #[error("outside the domain: {0}")]
    Domain(String),
}

/// Minimal field interface used to evaluate rational functions numerically.
pub trait NumOps<T> {
    fn from_q(&self, c: &Q) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn div(&self, a: &T, b: &T) -> T;
    /// True when `a` should be treated as an exact zero denominator.
    fn is_negligible(&self, a: &T) -> bool;
}

/// Real arithmetic at a fixed precision.
#[derive(Clone, Copy, Debug)]
pub struct RealOps {
    pub prec: usize,
}

impl NumOps<BigFloat> for RealOps {
    fn from_q(&self, c: &Q) -> BigFloat {
        BigFloat::from_q(c, self.prec)
    }
    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a + b
    }
    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a * b
    }
    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a / b
    }
    fn is_negligible(&self, a: &BigFloat) -> bool {
        a.below_pow2(-(self.prec as i64) + 16)
    }
}

/// Complex arithmetic; the symbol `i` is the imaginary unit.
#[derive(Clone, Copy, Debug)]
pub struct ComplexOps {
    pub prec: usize,
}

impl NumOps<Complex> for ComplexOps {
    fn from_q(&self, c: &Q) -> Complex {
        Complex::real(BigFloat::from_q(c, self.prec))
    }
    fn add(&self, a: &Complex, b: &Complex) -> Complex {
        a + b
    }
    fn mul(&self, a: &Complex, b: &Complex) -> Complex {
        a * b
    }
    fn div(&self, a: &Complex, b: &Complex) -> Complex {
        a / b
    }
    fn is_negligible(&self, a: &Complex) -> bool {
        a.norm_sqr().below_pow2(-2 * (self.prec as i64) + 32)
    }
}

impl RatFunc {
    /// Evaluate at real values taken from `env`.
    pub fn eval_real(
        &self,
        env: &impl Fn(Var) -> Option<BigFloat>,
        prec: usize,
    ) -> Result<BigFloat, SymError> {
        self.eval_with(&|v| env(v).ok_or_else(|| SymError::Unbound(v.name())), &RealOps { prec })
    }

    pub fn eval_q(&self, vals: &[(Var, Q)], prec: usize) -> Result<BigFloat, SymError> {
        let env = |v: Var| vals.iter().find(|(w, _)| *w == v).map(|(_, c)| BigFloat::from_q(c, prec));
        self.eval_real(&env, prec)
    }

    /// Exact value at rational points, if every variable is bound.
    pub fn eval_exact(&self, vals: &[(Var, Q)]) -> Result<Q, SymError> {
        let r = self.eval_partial(vals);
        r.as_constant().ok_or_else(|| SymError::Unbound(format!("{:?}", r.vars())))
    }
}
