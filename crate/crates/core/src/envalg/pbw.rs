//! Normal ordering in the enveloping algebra of `e(3)` over the ordered
//! basis `P+ < P- < P3 < J+ < J- < J3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::symcore::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    PPlus,
    PMinus,
    P3,
    JPlus,
    JMinus,
    J3,
}

impl Gen {
    pub const ALL: [Gen; 6] = [Gen::PPlus, Gen::PMinus, Gen::P3, Gen::JPlus, Gen::JMinus, Gen::J3];

    fn index(self) -> usize {
        self as usize
    }

    /// Lie bracket of two basis elements as `(coefficient, generator)` terms.
    pub fn bracket(self, other: Gen) -> Vec<(i64, Gen)> {
        use Gen::*;
        let table = |a: Gen, b: Gen| -> Option<(i64, Gen)> {
            match (a, b) {
                (J3, JPlus) => Some((1, JPlus)),
                (J3, JMinus) => Some((-1, JMinus)),
                (J3, PPlus) => Some((1, PPlus)),
                (J3, PMinus) => Some((-1, PMinus)),
                (P3, JPlus) => Some((1, PPlus)),
                (P3, JMinus) => Some((-1, PMinus)),
                (JPlus, JMinus) => Some((2, J3)),
                (JPlus, PMinus) => Some((2, P3)),
                (PPlus, JMinus) => Some((2, P3)),
                _ => None,
            }
        };
        if let Some(t) = table(self, other) {
            vec![t]
        } else if let Some((c, g)) = table(other, self) {
            vec![(-c, g)]
        } else {
            vec![]
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Gen::PPlus => "P+",
            Gen::PMinus => "P-",
            Gen::P3 => "P3",
            Gen::JPlus => "J+",
            Gen::JMinus => "J-",
            Gen::J3 => "J3",
        };
        f.write_str(s)
    }
}

impl FromStr for Gen {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Gen::ALL.into_iter().find(|g| g.to_string() == s).ok_or_else(|| format!("unknown generator {s}"))
    }
}

/// Exponents of `(P+)^e0 (P-)^e1 (P3)^e2 (J+)^e3 (J-)^e4 (J3)^e5`.
pub type Mono = [u32; 6];

fn top(m: &Mono) -> Option<usize> {
    (0..6).rev().find(|&i| m[i] > 0)
}

/// An element in normal form.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PbwElement {
    terms: BTreeMap<Mono, RatFunc>,
}

impl PbwElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::term([0; 6], c)
    }

    pub fn gen(g: Gen) -> Self {
        let mut m = [0; 6];
        m[g.index()] = 1;
        Self::term(m, RatFunc::one())
    }

    pub fn term(m: Mono, c: RatFunc) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Total degree of the leading part.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(RatFunc::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&RatFunc::int(-1))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    /// `self * g`, reduced to normal form.
    pub fn mul_gen(&self, g: Gen) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (mm, cc) in mono_times_gen(m, g) {
                out.add_term(mm, &cc * c);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &o.terms {
            let mut part = self.scale(c);
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    part = part.mul_gen(Gen::ALL[i]);
                }
            }
            out = out.add(&part);
        }
        out
    }
}

/// `m * g` for a normal monomial: move `g` left past every larger generator.
fn mono_times_gen(m: &Mono, g: Gen) -> Vec<(Mono, RatFunc)> {
    let gi = g.index();
    match top(m) {
        Some(k) if k > gi => {
            // m = m' x_k, and x_k g = g x_k + [x_k, g]
            let mut rest = *m;
            rest[k] -= 1;
            // a bracket inside m' g can exceed x_k, so x_k is multiplied back in
            let mut out: Vec<(Mono, RatFunc)> = Vec::new();
            for (mm, c) in mono_times_gen(&rest, g) {
                out.extend(mono_times_gen(&mm, Gen::ALL[k]).into_iter().map(|(m2, c2)| (m2, &c2 * &c)));
            }
            for (c, h) in Gen::ALL[k].bracket(g) {
                for (mm, cc) in mono_times_gen(&rest, h) {
                    out.push((mm, cc.scale(&crate::symcore::q(c))));
                }
            }
            out
        }
        _ => {
            let mut mm = *m;
            mm[gi] += 1;
            vec![(mm, RatFunc::one())]
        }
    }
}

/// Normal form of a product of generators.
pub fn normal_order(word: &[Gen]) -> PbwElement {
    word.iter().fold(PbwElement::one(), |acc, &g| acc.mul_gen(g))
}

pub fn pbw_commutator(a: &PbwElement, b: &PbwElement) -> PbwElement {
    a.mul(b).sub(&b.mul(a))
}

pub fn anticommutator(a: &PbwElement, b: &PbwElement) -> PbwElement {
    a.mul(b).add(&b.mul(a))
}

/// `C = (P3)^2 + P+ P-`.
pub fn casimir() -> PbwElement {
    use Gen::*;
    normal_order(&[P3, P3]).add(&normal_order(&[PPlus, PMinus]))
}

/// `C~ = (P+ J- + P- J+)/2 + P3 J3`.
pub fn casimir_tilde() -> PbwElement {
    use Gen::*;
    normal_order(&[PPlus, JMinus])
        .add(&normal_order(&[PMinus, JPlus]))
        .scale(&RatFunc::rat(1, 2))
        .add(&normal_order(&[P3, J3]))
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { Gen::ALL[i].to_string() } else { format!("{}^{e}", Gen::ALL[i]) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Independent reduction used to check [`normal_order`]: a sum of words,
/// repeatedly swapping the first adjacent descent until every word is sorted.
pub fn bubble_normal_order(word: &[Gen]) -> PbwElement {
    let mut pending: Vec<(Vec<Gen>, i64)> = vec![(word.to_vec(), 1)];
    let mut out = PbwElement::zero();
    while let Some((w, c)) = pending.pop() {
        match (1..w.len()).find(|&i| w[i - 1] > w[i]) {
            None => {
                let mut m = [0; 6];
                for g in &w {
                    m[g.index()] += 1;
                }
                out.add_term(m, RatFunc::int(c));
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i - 1, i);
                pending.push((swapped, c));
                for (k, h) in w[i - 1].bracket(w[i]) {
                    let mut shorter = w[..i - 1].to_vec();
                    shorter.push(h);
                    shorter.extend_from_slice(&w[i + 1..]);
                    pending.push((shorter, c * k));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::Gen::*;
    use super::*;

    #[test]
    fn table_examples() {
        let j = normal_order(&[JPlus, JMinus]);
        assert_eq!(j, normal_order(&[JMinus, JPlus]).add(&PbwElement::gen(J3).scale(&RatFunc::int(2))));
        assert_eq!(normal_order(&[PPlus, PMinus]), normal_order(&[PMinus, PPlus]));
        assert_eq!(normal_order(&[J3, PPlus]), normal_order(&[PPlus, J3]).add(&PbwElement::gen(PPlus)));
        let j3 = PbwElement::gen(J3);
        assert!(pbw_commutator(&j3, &j3).is_zero());
    }

    #[test]
    fn casimirs_central() {
        for g in Gen::ALL {
            let x = PbwElement::gen(g);
            assert!(pbw_commutator(&casimir(), &x).is_zero(), "C with {g}");
            assert!(pbw_commutator(&casimir_tilde(), &x).is_zero(), "C~ with {g}");
        }
    }

    #[test]
    fn matches_bubble_sort() {
        let w = [J3, JMinus, P3, JPlus, PPlus, J3, PMinus, JMinus];
        assert_eq!(normal_order(&w), bubble_normal_order(&w));
    }
}
