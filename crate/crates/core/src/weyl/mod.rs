//! The Weyl algebra: normally ordered elements, projective weight vectors,
//! initial forms, left Gröbner bases, L-characteristic varieties, and
//! singular loci. This is the direct computational route against which the
//! closed-form descriptions are cross-checked.

mod groebner;
mod parse;

pub use groebner::left_groebner;
pub use parse::parse_weyl;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::format_rat;
use crate::poly::{Mono, MonomialOrder, Poly, PolyIdeal, PolyRing};
use crate::Rat;

/// Monomial x^u ∂^v h^e of the (optionally homogenized) Weyl algebra.
/// Public elements always carry h = 0; the homogenizing exponent only
/// appears inside the Gröbner engine.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct WMono {
    pub xs: Vec<u32>,
    pub ds: Vec<u32>,
    pub h: u32,
}

impl WMono {
    pub fn one(n: usize) -> Self {
        WMono { xs: vec![0; n], ds: vec![0; n], h: 0 }
    }

    pub fn degree(&self) -> u64 {
        self.xs.iter().map(|&e| e as u64).sum::<u64>()
            + self.ds.iter().map(|&e| e as u64).sum::<u64>()
            + self.h as u64
    }

    pub fn divides(&self, other: &WMono) -> bool {
        self.h <= other.h
            && self.xs.iter().zip(&other.xs).all(|(a, b)| a <= b)
            && self.ds.iter().zip(&other.ds).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &WMono) -> WMono {
        WMono {
            xs: self.xs.iter().zip(&other.xs).map(|(a, b)| a - b).collect(),
            ds: self.ds.iter().zip(&other.ds).map(|(a, b)| a - b).collect(),
            h: self.h - other.h,
        }
    }

    pub fn lcm(&self, other: &WMono) -> WMono {
        WMono {
            xs: self.xs.iter().zip(&other.xs).map(|(a, b)| *a.max(b)).collect(),
            ds: self.ds.iter().zip(&other.ds).map(|(a, b)| *a.max(b)).collect(),
            h: self.h.max(other.h),
        }
    }
}

/// An element of the Weyl algebra in normal order: a finite sum
/// Σ c_{uv} x^u ∂^v with all multiplication operators to the left of all
/// differentiation operators.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<WMono, Rat>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(WMono::one(n), c);
        }
        WeylElement { n, terms }
    }

    pub fn one(n: usize) -> Self {
        WeylElement::constant(n, Rat::one())
    }

    /// The multiplication operator x_i.
    pub fn x(n: usize, i: usize) -> Self {
        let mut m = WMono::one(n);
        m.xs[i] = 1;
        WeylElement::term(n, m, Rat::one())
    }

    /// The differentiation operator ∂_i.
    pub fn d(n: usize, i: usize) -> Self {
        let mut m = WMono::one(n);
        m.ds[i] = 1;
        WeylElement::term(n, m, Rat::one())
    }

    /// The Euler operator x_i ∂_i (already in normal order).
    pub fn theta(n: usize, i: usize) -> Self {
        let mut m = WMono::one(n);
        m.xs[i] = 1;
        m.ds[i] = 1;
        WeylElement::term(n, m, Rat::one())
    }

    pub(crate) fn term(n: usize, m: WMono, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeylElement { n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&WMono, &Rat)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, m: WMono, c: Rat) {
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

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> WeylElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        WeylElement { n: self.n, terms }
    }

    pub fn scale(&self, c: &Rat) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k * c))
            .collect();
        WeylElement { n: self.n, terms }
    }

    /// Normal-ordered product. Satisfies ∂_j x_i = x_i ∂_j + δ_ij.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        mul_impl(self, other, false)
    }

    pub(crate) fn mul_homog(&self, other: &WeylElement) -> WeylElement {
        mul_impl(self, other, true)
    }

    /// Total degree (x and ∂ together, plus h inside the engine).
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// An element of C[∂] viewed inside D.
    pub fn from_d_poly(p: &Poly) -> WeylElement {
        let n = p.nvars();
        let mut out = WeylElement::zero(n);
        for (m, c) in p.terms() {
            let w = WMono { xs: vec![0; n], ds: m.0.clone(), h: 0 };
            out.add_term(w, c.clone());
        }
        out
    }

    /// L-weight of the element: the maximum of L·(u, v) over its terms.
    pub fn weight(&self, l: &ProjectiveWeight) -> Option<Rat> {
        self.terms
            .keys()
            .map(|m| l.term_weight(m))
            .max_by(|a, b| a.partial_cmp(b).unwrap())
    }

    /// The initial form in gr^L(D) ≅ C[x, ξ]: the sum of terms of maximal
    /// L-weight, with x_i ↦ x_i and ∂_i ↦ ξ_i. Ties keep every
    /// weight-maximal term.
    pub fn initial_form(&self, l: &ProjectiveWeight) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::Shape("initial form of zero".into()));
        }
        let ring = PolyRing::cotangent(self.n);
        let max = self.weight(l).unwrap();
        let mut out = Poly::zero(&ring);
        for (m, c) in &self.terms {
            if l.term_weight(m) == max {
                let mut e = m.xs.clone();
                e.extend(m.ds.iter());
                out.add_term(Mono(e), c.clone());
            }
        }
        Ok(out)
    }

    pub fn to_string_canonical(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut sorted: Vec<(&WMono, &Rat)> = self.terms.iter().collect();
        // descending by total degree, then reverse structural order
        sorted.sort_by(|(a, _), (b, _)| {
            b.degree().cmp(&a.degree()).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (idx, (m, c)) in sorted.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
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

    fn mono_string(&self, m: &WMono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.xs.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{}", i + 1));
            } else if e > 1 {
                parts.push(format!("x{}^{}", i + 1, e));
            }
        }
        for (i, &e) in m.ds.iter().enumerate() {
            if e == 1 {
                parts.push(format!("d{}", i + 1));
            } else if e > 1 {
                parts.push(format!("d{}^{}", i + 1, e));
            }
        }
        if m.h == 1 {
            parts.push("h".into());
        } else if m.h > 1 {
            parts.push(format!("h^{}", m.h));
        }
        parts.join("*")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_canonical())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_canonical())
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn factorial(k: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=k {
        out *= BigInt::from(i);
    }
    out
}

/// Term product with normal ordering:
/// (x^p ∂^q h^e)(x^r ∂^s h^f) =
///   Σ_k ∏_i C(q_i,k_i) C(r_i,k_i) k_i!  x^{p+r−k} ∂^{q+s−k} h^{e+f+2|k|},
/// summing over 0 ≤ k ≤ min(q, r) componentwise. Without homogenization
/// the h factor is dropped (h = 1).
fn mul_impl(a: &WeylElement, b: &WeylElement, homog: bool) -> WeylElement {
    assert_eq!(a.n, b.n);
    let n = a.n;
    let mut out = WeylElement::zero(n);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let caps: Vec<u32> = (0..n).map(|i| ma.ds[i].min(mb.xs[i])).collect();
            // odometer over k vectors
            let mut k = vec![0u32; n];
            loop {
                let mut coef = BigInt::one();
                for i in 0..n {
                    if k[i] > 0 {
                        coef *= binomial(ma.ds[i], k[i]);
                        coef *= binomial(mb.xs[i], k[i]);
                        coef *= factorial(k[i]);
                    }
                }
                let ktot: u32 = k.iter().sum();
                let m = WMono {
                    xs: (0..n).map(|i| ma.xs[i] + mb.xs[i] - k[i]).collect(),
                    ds: (0..n).map(|i| ma.ds[i] + mb.ds[i] - k[i]).collect(),
                    h: ma.h + mb.h + if homog { 2 * ktot } else { 0 },
                };
                out.add_term(m, ca * cb * Rat::from(coef));
                // advance odometer
                let mut pos = 0;
                loop {
                    if pos == n {
                        break;
                    }
                    if k[pos] < caps[pos] {
                        k[pos] += 1;
                        break;
                    }
                    k[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }
    out
}

/// A projective weight vector L = (L_x, L_∂) with L_x + L_∂ = c·1, c > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveWeight {
    lx: Vec<Rat>,
    ld: Vec<Rat>,
    scaled_x: Vec<i64>,
    scaled_d: Vec<i64>,
}

impl ProjectiveWeight {
    pub fn new(lx: Vec<Rat>, ld: Vec<Rat>) -> Result<Self> {
        if lx.len() != ld.len() || lx.is_empty() {
            return Err(Error::Shape("weight vectors must have equal positive length".into()));
        }
        let c = &lx[0] + &ld[0];
        if c <= Rat::zero() {
            return Err(Error::Shape("projective weight needs L_x + L_∂ = c·1 with c > 0".into()));
        }
        for (a, b) in lx.iter().zip(&ld) {
            if &(a + b) != &c {
                return Err(Error::Shape(
                    "projective weight needs constant coordinate sums".into(),
                ));
            }
        }
        // scale both parts together so relative weights are preserved
        let mut all: Vec<Rat> = lx.clone();
        all.extend(ld.iter().cloned());
        let scaled = MonomialOrder::scale_weight(&all);
        let n = lx.len();
        Ok(ProjectiveWeight {
            lx,
            ld,
            scaled_x: scaled[..n].to_vec(),
            scaled_d: scaled[n..].to_vec(),
        })
    }

    /// The order filtration F = (0,…,0, 1,…,1).
    pub fn order_filtration(n: usize) -> Self {
        ProjectiveWeight::new(vec![Rat::zero(); n], vec![Rat::one(); n]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.lx.len()
    }

    pub fn lx(&self) -> &[Rat] {
        &self.lx
    }

    pub fn ld(&self) -> &[Rat] {
        &self.ld
    }

    /// Integer-scaled weights (order-equivalent to the rational ones).
    pub fn scaled(&self) -> (&[i64], &[i64]) {
        (&self.scaled_x, &self.scaled_d)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.scaled_x.iter().all(|&w| w >= 0) && self.scaled_d.iter().all(|&w| w >= 0)
    }

    /// Restriction to a subset of the variables (still projective).
    pub fn restrict(&self, keep: &[usize]) -> ProjectiveWeight {
        ProjectiveWeight::new(
            keep.iter().map(|&i| self.lx[i].clone()).collect(),
            keep.iter().map(|&i| self.ld[i].clone()).collect(),
        )
        .expect("restriction of a projective weight is projective")
    }

    /// Weight of x1..xn followed by X1..Xn on the cotangent ring, for
    /// commutative initial forms of gr-ideals.
    pub fn cotangent_weight(&self) -> Vec<i64> {
        let mut w = self.scaled_x.clone();
        w.extend(&self.scaled_d);
        w
    }

    pub(crate) fn term_weight(&self, m: &WMono) -> Rat {
        let mut acc = Rat::zero();
        for (i, &e) in m.xs.iter().enumerate() {
            if e > 0 {
                acc += &self.lx[i] * Rat::from(BigInt::from(e));
            }
        }
        for (i, &e) in m.ds.iter().enumerate() {
            if e > 0 {
                acc += &self.ld[i] * Rat::from(BigInt::from(e));
            }
        }
        acc
    }
}

/// A left ideal of the Weyl algebra, given by generators.
#[derive(Clone, Debug)]
pub struct WeylIdeal {
    n: usize,
    gens: Vec<WeylElement>,
}

impl WeylIdeal {
    pub fn new(n: usize, gens: Vec<WeylElement>) -> Self {
        let gens: Vec<WeylElement> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        assert!(gens.iter().all(|g| g.nvars() == n));
        WeylIdeal { n, gens }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[WeylElement] {
        &self.gens
    }
}

/// The ideal gr^L(I) ⊆ C[x, ξ], generated by the initial forms of a left
/// Gröbner basis for the weight.
pub fn gr_ideal(ideal: &WeylIdeal, l: &ProjectiveWeight) -> PolyIdeal {
    let ring = PolyRing::cotangent(ideal.n);
    if ideal.gens.is_empty() {
        return PolyIdeal::zero(&ring);
    }
    let gb = left_groebner(ideal, l);
    let gens = gb
        .iter()
        .map(|g| g.initial_form(l).expect("GB elements are nonzero"))
        .collect();
    PolyIdeal::new(&ring, gens)
}

/// The L-characteristic variety, presented by its defining ideal gr^L(I)
/// in C[x, ξ].
pub fn char_variety(ideal: &WeylIdeal, l: &ProjectiveWeight) -> PolyIdeal {
    gr_ideal(ideal, l)
}

/// Is D/I L-holonomic: the L-characteristic variety is empty or has
/// dimension exactly n.
pub fn is_l_holonomic(ideal: &WeylIdeal, l: &ProjectiveWeight) -> bool {
    let d = gr_ideal(ideal, l).dimension();
    d == -1 || d == ideal.n as i64
}

/// Defining ideal (in x only) of the closure of the singular locus:
/// (gr^F(I) : ⟨ξ⟩^∞) ∩ C[x]. The zero ideal means Sing = X.
pub fn singular_locus(ideal: &WeylIdeal) -> PolyIdeal {
    let n = ideal.n;
    let f = ProjectiveWeight::order_filtration(n);
    let gr = gr_ideal(ideal, &f);
    let ring = gr.ring().clone();
    let xi = PolyIdeal::new(
        &ring,
        (0..n).map(|i| Poly::var(&ring, n + i)).collect(),
    );
    let sat = gr.saturate_ideal(&xi);
    sat.project(&(0..n).collect::<Vec<_>>())
}

/// Finite rank is equivalent to a proper singular locus.
pub fn has_finite_rank(ideal: &WeylIdeal) -> bool {
    !singular_locus(ideal).is_zero_ideal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rat;

    #[test]
    fn leibniz_rule() {
        let d1 = WeylElement::d(1, 0);
        let x1 = WeylElement::x(1, 0);
        let p = d1.mul(&x1);
        assert_eq!(p.to_string_canonical(), "x1*d1 + 1");
    }

    #[test]
    fn commuting_generators() {
        let n = 2;
        let p = WeylElement::x(n, 0).mul(&WeylElement::x(n, 1));
        assert_eq!(p.to_string_canonical(), "x1*x2");
    }

    #[test]
    fn repeated_relation() {
        let d1 = WeylElement::d(1, 0);
        let x1 = WeylElement::x(1, 0);
        let p = d1.mul(&d1).mul(&x1);
        assert_eq!(p.to_string_canonical(), "x1*d1^2 + 2*d1");
    }

    #[test]
    fn associativity_spot_check() {
        let n = 2;
        let a = WeylElement::d(n, 0).add(&WeylElement::x(n, 1).mul(&WeylElement::d(n, 1)));
        let b = WeylElement::x(n, 0).mul(&WeylElement::x(n, 0)).add(&WeylElement::d(n, 1));
        let c = WeylElement::x(n, 0).add(&WeylElement::one(n));
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        assert_eq!(left, right);
    }

    #[test]
    fn initial_forms_under_order_filtration() {
        let n = 1;
        let f = ProjectiveWeight::order_filtration(n);
        // x1 d1 - beta: the constant drops
        let e = WeylElement::theta(n, 0).sub(&WeylElement::constant(n, parse_rat("5").unwrap()));
        let inf = e.initial_form(&f).unwrap();
        assert_eq!(inf.to_string_canonical(), "x1*X1");
    }

    #[test]
    fn initial_form_binomial_full() {
        let n = 3;
        let f = ProjectiveWeight::order_filtration(n);
        let e = WeylElement::d(n, 0)
            .mul(&WeylElement::d(n, 2))
            .sub(&WeylElement::d(n, 1).mul(&WeylElement::d(n, 1)));
        let inf = e.initial_form(&f).unwrap();
        assert_eq!(inf.to_string_canonical(), "-X2^2 + X1*X3");
    }

    #[test]
    fn initial_form_weighted_takes_max_weight() {
        // L_∂ = (0,1,0), L_x = (1,0,1): the ∂2² term has weight 2 > 0
        let n = 3;
        let l = ProjectiveWeight::new(
            vec![Rat::one(), Rat::zero(), Rat::one()],
            vec![Rat::zero(), Rat::one(), Rat::zero()],
        )
        .unwrap();
        let e = WeylElement::d(n, 0)
            .mul(&WeylElement::d(n, 2))
            .sub(&WeylElement::d(n, 1).mul(&WeylElement::d(n, 1)));
        let inf = e.initial_form(&l).unwrap();
        assert_eq!(inf.to_string_canonical(), "-X2^2");
    }
}
