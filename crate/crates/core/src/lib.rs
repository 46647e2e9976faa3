//! Exact and high-precision verification of rank-1 L-operators for the
//! Yang R-matrix algebra `R(u) = u + P`, in both the periodic (QISM I) and
//! boundary (QISM II) forms, together with the ladder actions they induce on
//! hypergeometric-type special functions.
//!
//! Modules, bottom up:
//!
//! - [`symcore`]: polynomials, rational functions and expressions over `Q`
//! - [`diffop`]: differential operators, their products and basis actions
//! - [`specfun`]: multiprecision special functions with derivatives
//! - [`qism`]: L-operators and every algebraic check built on them
//! - [`envalg`]: PBW arithmetic in the enveloping algebra of `e(3)`
//! - [`ladder`]: numeric shift relations and ladder strings
//! - [`cli`]: suites, reports and the `verify` runner

pub mod cli;
pub mod diffop;
pub mod envalg;
pub mod ladder;
pub mod qism;
pub mod specfun;
pub mod symcore;
