//! Monomial orders: a cascade of integer weight vectors refined by a fixed
//! admissible tiebreak (graded reverse lexicographic by default).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Mono;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tie {
    GrevLex,
    Lex,
}

/// Compare monomials by each weight vector in turn, then by the tiebreak.
/// Rational weights are scaled to integers up front (the order is
/// unchanged by positive scaling).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub weights: Vec<Vec<i64>>,
    pub tie: Tie,
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder { weights: Vec::new(), tie: Tie::GrevLex }
    }

    pub fn lex() -> Self {
        MonomialOrder { weights: Vec::new(), tie: Tie::Lex }
    }

    pub fn weighted(w: Vec<i64>) -> Self {
        MonomialOrder { weights: vec![w], tie: Tie::GrevLex }
    }

    /// Elimination order for the given block of variables: any monomial
    /// involving a block variable beats any monomial that avoids them.
    pub fn elimination(block: &[bool]) -> Self {
        let w = block.iter().map(|&b| if b { 1 } else { 0 }).collect();
        MonomialOrder { weights: vec![w], tie: Tie::GrevLex }
    }

    /// Scale a rational weight vector to a primitive integer one.
    pub fn scale_weight(w: &[Rat]) -> Vec<i64> {
        let mut den_lcm = BigInt::one();
        for q in w {
            den_lcm = den_lcm.lcm(q.denom());
        }
        let ints: Vec<BigInt> = w
            .iter()
            .map(|q| (q * Rat::from(den_lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        ints.iter()
            .map(|v| {
                let r = v / &g;
                i64::try_from(&r).expect("scaled weight exceeds i64")
            })
            .collect()
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        for w in &self.weights {
            let wa = dot(w, a);
            let wb = dot(w, b);
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        match self.tie {
            Tie::GrevLex => grevlex_cmp(a, b),
            Tie::Lex => lex_cmp(a, b),
        }
    }

    /// True when every weight vector is componentwise nonnegative; such
    /// orders are global (well-orders) and safe for Buchberger on
    /// inhomogeneous input.
    pub fn is_global(&self) -> bool {
        self.weights.iter().all(|w| w.iter().all(|&c| c >= 0))
    }
}

fn dot(w: &[i64], m: &Mono) -> i128 {
    m.0.iter()
        .zip(w)
        .map(|(&e, &wi)| e as i128 * wi as i128)
        .sum()
}

fn grevlex_cmp(a: &Mono, b: &Mono) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    // reverse scan: the monomial with the smaller last differing exponent
    // is the larger one
    for (ea, eb) in a.0.iter().zip(&b.0).rev() {
        match ea.cmp(eb) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex_cmp(a: &Mono, b: &Mono) -> Ordering {
    for (ea, eb) in a.0.iter().zip(&b.0) {
        match ea.cmp(eb) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> Mono {
        Mono(v.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex();
        // x^2 > x*y > y^2 in two variables under grevlex
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn weighted_dominates() {
        let o = MonomialOrder::weighted(vec![0, 1]);
        // y beats x^5 when only y carries weight
        assert_eq!(o.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn elimination_blocks() {
        let o = MonomialOrder::elimination(&[true, false]);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 7])), Ordering::Greater);
    }
}
