//! Multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are stored as maps from exponent vectors to nonzero rational
//! coefficients; all arithmetic is exact. Gröbner bases, ideal operations,
//! and gcd live in the submodules and are re-exported here.

mod gcd;
mod groebner;
mod ideal;
mod order;
pub(crate) mod parse;

pub use gcd::{divisorial_part, multivariate_gcd, squarefree_part};
pub use groebner::{groebner_basis, normal_form};
pub use ideal::PolyIdeal;
pub use order::{MonomialOrder, Tie};
pub use parse::parse_poly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::format_rat;
use crate::Rat;

/// An exponent vector. The derived ordering (plain lexicographic on the
/// vector) is only used for canonical storage; monomial comparisons for
/// Gröbner computations go through [`MonomialOrder`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; caller must ensure divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// A polynomial ring over Q, described by its ordered variable names.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(vars: Vec<String>) -> Arc<Self> {
        assert!(!vars.is_empty(), "ring needs at least one variable");
        Arc::new(PolyRing { vars })
    }

    /// Q[x1..xn].
    pub fn xs(n: usize) -> Arc<Self> {
        PolyRing::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    /// Q[d1..dn], the commutative polynomial ring in the partials.
    pub fn ds(n: usize) -> Arc<Self> {
        PolyRing::new((1..=n).map(|i| format!("d{i}")).collect())
    }

    /// Q[x1..xn, X1..Xn], coordinates on the cotangent space; Xi stands
    /// for the symbol of the i-th partial.
    pub fn cotangent(n: usize) -> Arc<Self> {
        let mut vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        vars.extend((1..=n).map(|i| format!("X{i}")));
        PolyRing::new(vars)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Ring with extra variables appended.
    pub fn extended(self: &Arc<Self>, extra: &[&str]) -> Arc<PolyRing> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.to_string()));
        PolyRing::new(vars)
    }

    /// Ring keeping only the listed variables (in the given order).
    pub fn restricted(self: &Arc<Self>, keep: &[usize]) -> Arc<PolyRing> {
        PolyRing::new(keep.iter().map(|&i| self.vars[i].clone()).collect())
    }
}

pub fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a.vars == b.vars
}

/// A multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Poly::constant(ring, Rat::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(ring.nvars()), c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Poly::term(ring, Mono::var(ring.nvars(), i), Rat::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Mono, c: Rat) -> Self {
        assert_eq!(m.0.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &Arc<PolyRing>, it: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one_poly(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k * c))
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m1, c1)| (m1.mul(m), c1 * c))
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] = e - 1;
                out.add_term(m2, c * Rat::from(BigInt::from(e)));
            }
        }
        out
    }

    /// Map this polynomial into `target`, sending variable `i` of the
    /// source to variable `map[i]` of the target.
    pub fn embed(&self, target: &Arc<PolyRing>, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars());
        let nv = target.nvars();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nv];
            for (i, &exp) in m.0.iter().enumerate() {
                e[map[i]] += exp;
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Substitute a rational constant for one variable.
    pub fn subst_const(&self, var: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let mut factor = Rat::one();
            for _ in 0..e {
                factor *= value;
            }
            out.add_term(m2, c * factor);
        }
        out
    }

    /// Rescale variables: x_i -> scale_i * x_i.
    pub fn rescale_vars(&self, scale: &[Rat]) -> Poly {
        assert_eq!(scale.len(), self.nvars());
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut factor = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    factor *= &scale[i];
                }
            }
            out.add_term(m.clone(), factor);
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Leading term with respect to an order.
    pub fn lead(&self, order: &MonomialOrder) -> Option<(&Mono, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Terms of maximal weight under `w` (the w-initial form).
    pub fn initial_form(&self, w: &[i64]) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let weight = |m: &Mono| -> i128 {
            m.0.iter()
                .zip(w)
                .map(|(&e, &wi)| e as i128 * wi as i128)
                .sum()
        };
        let max = self.terms.keys().map(weight).max().unwrap();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| weight(m) == max)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Multiply through by the lcm of coefficient denominators, divide by
    /// the gcd of the numerators, and make the grevlex-leading coefficient
    /// positive. The result generates the same ideal.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let factor = Rat::new(den_lcm, num_gcd);
        let mut out = self.scale(&factor);
        let grevlex = MonomialOrder::grevlex();
        if let Some((_, c)) = out.lead(&grevlex) {
            if c.is_negative() {
                out = out.neg();
            }
        }
        out
    }

    /// Make the leading coefficient 1 with respect to `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.lead(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact division; returns None when `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let order = MonomialOrder::grevlex();
        let (dm, dc) = divisor.lead(&order).unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while !rem.is_zero() {
            let (m, c) = rem.lead(&order).unwrap();
            if !dm.divides(m) {
                return None;
            }
            let qm = m.div(&dm);
            let qc = c / &dc;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    /// Canonical display form: terms sorted grevlex-descending.
    pub fn to_string_canonical(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let order = MonomialOrder::grevlex();
        let mut sorted: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        let mut out = String::new();
        for (idx, (m, c)) in sorted.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let a = c.abs();
            let mono = self.mono_string(m);
            if mono.is_empty() {
                out.push_str(&format_rat(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&format_rat(&a));
                    out.push('*');
                }
                out.push_str(&mono);
            }
        }
        out
    }

    fn mono_string(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 1 {
                parts.push(self.ring.var_name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.ring.var_name(i), e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_canonical())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_canonical())
    }
}
