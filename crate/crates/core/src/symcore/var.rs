//! Interned symbol names.
//!
//! Every symbol lives in a process-wide table so that `Var` is a plain
//! index and compares in O(1). The first few indices are fixed, which lets
//! the rest of the crate use them as constants.

use std::fmt;
use std::sync::{Mutex, OnceLock};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub(crate) u16);

const PREDECLARED: &[&str] = &[
    "x", "t", "y", "u", "v", "w", "a", "b", "c", "q", "s", "k", "alpha", "beta", "gamma",
    "delta", "Q0", "Q1", "Q2", "eps", "lambda", "mu", "nu", "i",
];

pub const X: Var = Var(0);
pub const T: Var = Var(1);
pub const Y: Var = Var(2);
pub const U: Var = Var(3);
pub const V: Var = Var(4);
pub const W: Var = Var(5);
pub const A: Var = Var(6);
pub const B: Var = Var(7);
pub const C: Var = Var(8);
pub const Q: Var = Var(9);
pub const S: Var = Var(10);
pub const K: Var = Var(11);
pub const ALPHA: Var = Var(12);
pub const BETA: Var = Var(13);
pub const GAMMA: Var = Var(14);
pub const DELTA: Var = Var(15);
pub const Q0: Var = Var(16);
pub const Q1: Var = Var(17);
pub const Q2: Var = Var(18);
pub const EPS: Var = Var(19);
pub const LAMBDA: Var = Var(20);
pub const MU: Var = Var(21);
pub const NU: Var = Var(22);
/// Formal imaginary unit; `Expr` folds `i*i` to `-1`.
pub const I: Var = Var(23);

fn table() -> &'static Mutex<Vec<String>> {
    static TABLE: OnceLock<Mutex<Vec<String>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(PREDECLARED.iter().map(|s| s.to_string()).collect()))
}

impl Var {
    /// Look up or create the symbol called `name`.
    pub fn new(name: &str) -> Var {
        let mut t = table().lock().expect("symbol table poisoned");
        if let Some(i) = t.iter().position(|s| s == name) {
            return Var(i as u16);
        }
        t.push(name.to_string());
        Var((t.len() - 1) as u16)
    }

    pub fn name(self) -> String {
        table().lock().expect("symbol table poisoned")[self.0 as usize].clone()
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predeclared_indices_are_stable() {
        assert_eq!(Var::new("x"), X);
        assert_eq!(Var::new("delta"), DELTA);
        assert_eq!(Var::new("i"), I);
        assert_eq!(GAMMA.name(), "gamma");
    }

    #[test]
    fn interning_is_idempotent() {
        let z1 = Var::new("zeta_test");
        let z2 = Var::new("zeta_test");
        assert_eq!(z1, z2);
        assert_ne!(z1, X);
    }
}
