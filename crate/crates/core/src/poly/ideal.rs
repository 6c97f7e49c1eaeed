//! Ideals in a polynomial ring: Gröbner bases, saturation, elimination,
//! dimension, and initial ideals.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;

use super::groebner::{groebner_basis, normal_form};
use super::order::{MonomialOrder, Tie};
use super::{Mono, Poly, PolyRing};
use crate::Rat;

const AUX_T: &str = "@t";
const AUX_S: &str = "@s";
const AUX_Y: &str = "@y";
const AUX_H: &str = "@h";

/// A finitely generated ideal, with a cached reduced Gröbner basis for the
/// default (grevlex) order.
#[derive(Debug)]
pub struct PolyIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: std::sync::OnceLock<Vec<Poly>>,
}

impl Clone for PolyIdeal {
    fn clone(&self) -> Self {
        let gb = std::sync::OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        PolyIdeal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl PolyIdeal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Self {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert!(
                super::same_ring(g.ring(), ring),
                "generator lives in a different ring"
            );
        }
        PolyIdeal { ring: ring.clone(), gens, gb: std::sync::OnceLock::new() }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        PolyIdeal::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis for grevlex; computed once and cached.
    pub fn gb(&self) -> &[Poly] {
        self.gb
            .get_or_init(|| groebner_basis(&self.gens, &MonomialOrder::grevlex()))
    }

    /// Reduced Gröbner basis for an arbitrary order (not cached).
    pub fn gb_for(&self, order: &MonomialOrder) -> Vec<Poly> {
        groebner_basis(&self.gens, order)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.gb();
        gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        normal_form(f, self.gb(), &MonomialOrder::grevlex()).is_zero()
    }

    pub fn contains_ideal(&self, other: &PolyIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn eq_ideal(&self, other: &PolyIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn sum(&self, other: &PolyIdeal) -> PolyIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        PolyIdeal::new(&self.ring, gens)
    }

    /// Ideal intersection via the usual one-extra-variable trick:
    /// I ∩ J = (t·I + (1−t)·J) ∩ Q[x].
    pub fn intersect(&self, other: &PolyIdeal) -> PolyIdeal {
        let n = self.ring.nvars();
        let ext = self.ring.extended(&[AUX_T]);
        let map: Vec<usize> = (0..n).collect();
        let t = Poly::var(&ext, n);
        let one_minus_t = Poly::one(&ext).sub(&t);
        let mut gens: Vec<Poly> = self
            .gens
            .iter()
            .map(|g| g.embed(&ext, &map).mul(&t))
            .collect();
        gens.extend(
            other
                .gens
                .iter()
                .map(|g| g.embed(&ext, &map).mul(&one_minus_t)),
        );
        let k = PolyIdeal::new(&ext, gens);
        k.project_dropping_last(&self.ring)
    }

    /// I : f, computed as (I ∩ ⟨f⟩)/f.
    pub fn quotient_poly(&self, f: &Poly) -> PolyIdeal {
        assert!(!f.is_zero(), "quotient by zero polynomial");
        if f.is_constant() {
            return self.clone();
        }
        if self.is_zero_ideal() {
            return PolyIdeal::zero(&self.ring);
        }
        let inter = self.intersect(&PolyIdeal::new(&self.ring, vec![f.clone()]));
        let gens = inter
            .gens
            .iter()
            .map(|g| {
                g.divide_exact(f)
                    .expect("intersection with a principal ideal divides its generator")
            })
            .collect();
        PolyIdeal::new(&self.ring, gens)
    }

    /// I : J = ∩ over generators f of J of I : f.
    pub fn quotient_ideal(&self, other: &PolyIdeal) -> PolyIdeal {
        let mut acc: Option<PolyIdeal> = None;
        for f in &other.gens {
            let q = self.quotient_poly(f);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| PolyIdeal::new(&self.ring, vec![Poly::one(&self.ring)]))
    }

    /// Saturation I : f^∞ via the Rabinowitsch-style extra variable:
    /// (I + ⟨1 − s·f⟩) ∩ Q[x].
    pub fn saturate_poly(&self, f: &Poly) -> PolyIdeal {
        assert!(!f.is_zero(), "saturation by zero polynomial");
        if f.is_constant() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let ext = self.ring.extended(&[AUX_S]);
        let map: Vec<usize> = (0..n).collect();
        let s = Poly::var(&ext, n);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.embed(&ext, &map)).collect();
        gens.push(Poly::one(&ext).sub(&s.mul(&f.embed(&ext, &map))));
        let k = PolyIdeal::new(&ext, gens);
        k.project_dropping_last(&self.ring)
    }

    /// Saturation by an ideal: I : J^∞ = ∩ over generators f of I : f^∞.
    pub fn saturate_ideal(&self, other: &PolyIdeal) -> PolyIdeal {
        if other.is_zero_ideal() {
            return PolyIdeal::new(&self.ring, vec![Poly::one(&self.ring)]);
        }
        let mut acc: Option<PolyIdeal> = None;
        for f in &other.gens {
            let s = self.saturate_poly(f);
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s),
            });
        }
        acc.unwrap()
    }

    /// Generators of I ∩ Q[remaining variables]: Gröbner basis under an
    /// elimination order, keeping the polynomials free of the block.
    pub fn eliminate(&self, block: &[usize]) -> PolyIdeal {
        let gens = self.eliminate_gens(block);
        PolyIdeal::new(&self.ring, gens)
    }

    fn eliminate_gens(&self, block: &[usize]) -> Vec<Poly> {
        if self.gens.is_empty() {
            return Vec::new();
        }
        let mut flags = vec![false; self.ring.nvars()];
        for &b in block {
            flags[b] = true;
        }
        let order = MonomialOrder::elimination(&flags);
        let gb = groebner_basis(&self.gens, &order);
        gb.into_iter()
            .filter(|g| g.terms().all(|(m, _)| block.iter().all(|&b| m.0[b] == 0)))
            .collect()
    }

    /// Eliminate everything outside `keep` and restate the result in the
    /// smaller ring whose variables are `keep`, in order.
    pub fn project(&self, keep: &[usize]) -> PolyIdeal {
        let n = self.ring.nvars();
        let block: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let sub = self.ring.restricted(keep);
        let gens = self
            .eliminate_gens(&block)
            .into_iter()
            .map(|g| restrict_poly(&g, &sub, keep))
            .collect();
        PolyIdeal::new(&sub, gens)
    }

    fn project_dropping_last(&self, target: &Arc<PolyRing>) -> PolyIdeal {
        let n = target.nvars();
        debug_assert_eq!(self.ring.nvars(), n + 1);
        let gens = self
            .eliminate_gens(&[n])
            .into_iter()
            .map(|g| restrict_poly(&g, target, &(0..n).collect::<Vec<_>>()))
            .collect();
        PolyIdeal::new(target, gens)
    }

    /// Krull dimension of ring/I: the size of the largest variable subset
    /// that is independent modulo the initial monomial ideal. The unit
    /// ideal reports -1 (empty variety); the zero ideal reports nvars.
    pub fn dimension(&self) -> i64 {
        if self.is_zero_ideal() {
            return self.ring.nvars() as i64;
        }
        if self.is_unit() {
            return -1;
        }
        let supports: Vec<Vec<usize>> = {
            let mut sup: Vec<BTreeSet<usize>> = self
                .gb()
                .iter()
                .map(|g| {
                    let (m, _) = g.lead(&MonomialOrder::grevlex()).unwrap();
                    m.support().into_iter().collect()
                })
                .collect();
            sup.sort_by_key(|s| s.len());
            let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
            for s in sup {
                if !minimal.iter().any(|m| m.is_subset(&s)) {
                    minimal.push(s);
                }
            }
            minimal.into_iter().map(|s| s.into_iter().collect()).collect()
        };
        let n = self.ring.nvars();
        fn search(supports: &[Vec<usize>], avail: &mut Vec<bool>, count: usize) -> usize {
            match supports
                .iter()
                .find(|s| s.iter().all(|&v| avail[v]))
            {
                None => count,
                Some(s) => {
                    let mut best = 0;
                    for &v in s {
                        avail[v] = false;
                        best = best.max(search(supports, avail, count - 1));
                        avail[v] = true;
                    }
                    best
                }
            }
        }
        search(&supports, &mut vec![true; n], n) as i64
    }

    /// The ideal of w-initial forms. Weights may be rational and negative;
    /// negative weights go through the homogenization route.
    pub fn initial_ideal(&self, w: &[Rat]) -> PolyIdeal {
        let wi = MonomialOrder::scale_weight(w);
        self.initial_ideal_scaled(&wi)
    }

    pub fn initial_ideal_scaled(&self, wi: &[i64]) -> PolyIdeal {
        assert_eq!(wi.len(), self.ring.nvars());
        if self.gens.is_empty() {
            return PolyIdeal::zero(&self.ring);
        }
        if wi.iter().all(|&c| c >= 0) {
            let order = MonomialOrder { weights: vec![wi.to_vec()], tie: Tie::GrevLex };
            let gb = groebner_basis(&self.gens, &order);
            return PolyIdeal::new(&self.ring, gb.iter().map(|g| g.initial_form(wi)).collect());
        }
        // negative weights: homogenize a degree-compatible basis, run the
        // weight order on homogeneous input, then take initial forms and
        // dehomogenize
        let n = self.ring.nvars();
        let ext = self.ring.extended(&[AUX_H]);
        let homog: Vec<Poly> = self.gb().iter().map(|g| homogenize(g, &ext, n)).collect();
        let mut w2 = wi.to_vec();
        w2.push(0);
        let order = MonomialOrder { weights: vec![w2.clone()], tie: Tie::GrevLex };
        let gbh = groebner_basis(&homog, &order);
        let one = Rat::one();
        let keep: Vec<usize> = (0..n).collect();
        let gens = gbh
            .iter()
            .map(|g| {
                let inw = g.initial_form(&w2).subst_const(n, &one);
                restrict_poly(&inw, &self.ring, &keep)
            })
            .collect();
        PolyIdeal::new(&self.ring, gens)
    }

    /// Radical membership via the Rabinowitsch trick: f ∈ √I iff
    /// 1 ∈ I + ⟨1 − y·f⟩.
    pub fn radical_contains(&self, f: &Poly) -> bool {
        if f.is_zero() {
            return true;
        }
        if self.contains(f) {
            return true;
        }
        let n = self.ring.nvars();
        let ext = self.ring.extended(&[AUX_Y]);
        let map: Vec<usize> = (0..n).collect();
        let y = Poly::var(&ext, n);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.embed(&ext, &map)).collect();
        gens.push(Poly::one(&ext).sub(&y.mul(&f.embed(&ext, &map))));
        PolyIdeal::new(&ext, gens).is_unit()
    }

    /// Do the two ideals cut out the same variety? Two-sided radical
    /// membership of generators.
    pub fn same_variety(&self, other: &PolyIdeal) -> bool {
        other.gens.iter().all(|g| self.radical_contains(g))
            && self.gens.iter().all(|g| other.radical_contains(g))
    }

    /// Reduced grevlex basis, the canonical generator list for display.
    pub fn canonical_gens(&self) -> Vec<Poly> {
        self.gb().to_vec()
    }
}

/// Total-degree homogenization into `ext` using its variable `hvar`.
pub(crate) fn homogenize(g: &Poly, ext: &Arc<PolyRing>, hvar: usize) -> Poly {
    let t = g.total_degree();
    let mut out = Poly::zero(ext);
    for (m, c) in g.terms() {
        let mut e = vec![0u32; ext.nvars()];
        e[..m.0.len()].copy_from_slice(&m.0);
        e[hvar] = (t - m.degree()) as u32;
        out.add_term(Mono(e), c.clone());
    }
    out
}

/// Reinterpret `g` (supported only on `keep`) in the smaller ring.
pub(crate) fn restrict_poly(g: &Poly, target: &Arc<PolyRing>, keep: &[usize]) -> Poly {
    let mut out = Poly::zero(target);
    for (m, c) in g.terms() {
        let e: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
        debug_assert_eq!(
            e.iter().map(|&x| x as u64).sum::<u64>(),
            m.degree(),
            "restricting a polynomial that uses dropped variables"
        );
        out.add_term(Mono(e), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;
    use num_traits::Zero;

    fn ideal(ring: &Arc<PolyRing>, gens: &[&str]) -> PolyIdeal {
        PolyIdeal::new(
            ring,
            gens.iter().map(|s| parse_poly(ring, s).unwrap()).collect(),
        )
    }

    #[test]
    fn saturate_monomial() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x^2*y"]);
        let sat = i.saturate_poly(&parse_poly(&r, "x").unwrap());
        assert!(sat.eq_ideal(&ideal(&r, &["y"])));
    }

    #[test]
    fn saturate_prime_untouched() {
        let r = PolyRing::new(vec!["X1".into(), "X2".into(), "X3".into()]);
        let i = ideal(&r, &["X1*X3 - X2^2"]);
        let f = parse_poly(&r, "X1*X2*X3").unwrap();
        let sat = i.saturate_poly(&f);
        assert!(sat.eq_ideal(&i));
    }

    #[test]
    fn saturate_principal_to_unit() {
        let r = PolyRing::new(vec!["x".into()]);
        let i = ideal(&r, &["x"]);
        let sat = i.saturate_poly(&parse_poly(&r, "x").unwrap());
        assert!(sat.is_unit());
    }

    #[test]
    fn saturate_by_ideal_examples() {
        // <x> : <y>^∞ = <x>, coprime
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x"]);
        assert!(i.saturate_ideal(&ideal(&r, &["y"])).eq_ideal(&i));
        // <x, y> : <x, y>^∞ = <1>
        let m = ideal(&r, &["x", "y"]);
        assert!(m.saturate_ideal(&m).is_unit());
    }

    #[test]
    fn saturate_by_ideal_componentwise_oracle() {
        // <x1*X1> = <x1> ∩ <X1>; neither component contains a power of
        // <X1, X2>, so the saturation leaves the ideal unchanged.
        let r = PolyRing::cotangent(2);
        let i = ideal(&r, &["x1*X1"]);
        let j = ideal(&r, &["X1", "X2"]);
        let sat = i.saturate_ideal(&j);
        assert!(sat.eq_ideal(&i));
        // oracle on the two components
        let cx = ideal(&r, &["x1"]);
        let cxi = ideal(&r, &["X1"]);
        assert!(cx.intersect(&cxi).eq_ideal(&i));
        // a power of j in a component would mean j ⊆ radical
        assert!(!cx.radical_contains(&parse_poly(&r, "X2").unwrap()));
        assert!(!cxi.radical_contains(&parse_poly(&r, "X2").unwrap()));
    }

    #[test]
    fn eliminate_parabola() {
        let r = PolyRing::new(vec!["x".into(), "y".into(), "t".into()]);
        let i = ideal(&r, &["x - t", "y - t^2"]);
        let e = i.eliminate(&[2]);
        let expect = ideal(&r, &["y - x^2"]);
        assert!(e.eq_ideal(&expect));
    }

    #[test]
    fn eliminate_trivial_cases() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x"]);
        assert!(i.eliminate(&[1]).eq_ideal(&i));
        let t = ideal(&r, &["y"]);
        assert!(t.eliminate(&[1]).is_zero_ideal());
    }

    #[test]
    fn dimension_examples() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        assert_eq!(ideal(&r, &["x*y"]).dimension(), 1);
        assert_eq!(ideal(&r, &["1"]).dimension(), -1);
        assert_eq!(PolyIdeal::zero(&r).dimension(), 2);
    }

    #[test]
    fn dimension_conormal_of_full_face() {
        let r = PolyRing::cotangent(3);
        let i = ideal(
            &r,
            &["X1*X3 - X2^2", "x1*X1 + x2*X2 + x3*X3", "x2*X2 + 2*x3*X3"],
        );
        assert_eq!(i.dimension(), 3);
    }

    #[test]
    fn initial_ideal_examples() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x + y"]);
        let inw = i.initial_ideal(&[Rat::one(), Rat::zero()]);
        assert!(inw.eq_ideal(&ideal(&r, &["x"])));
        let tie = i.initial_ideal(&[Rat::one(), Rat::one()]);
        assert!(tie.eq_ideal(&i));

        // the weight of d2^2 under (0,1,0) is 2 > 0, so it is the
        // initial form (maximal weight wins)
        let d = PolyRing::ds(3);
        let j = PolyIdeal::new(&d, vec![parse_poly(&d, "d1*d3 - d2^2").unwrap()]);
        let inj = j.initial_ideal(&[Rat::zero(), Rat::one(), Rat::zero()]);
        assert!(inj.eq_ideal(&PolyIdeal::new(
            &d,
            vec![parse_poly(&d, "d2^2").unwrap()]
        )));
    }

    #[test]
    fn initial_ideal_negative_weights_via_homogenization() {
        // in_{(-1,1)}(<x + y + 1>): the y term dominates weight (1 vs -1, 0)
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x + y + 1"]);
        let inw = i.initial_ideal(&[-Rat::one(), Rat::one()]);
        assert!(inw.eq_ideal(&ideal(&r, &["y"])));
        // dimension is preserved by Gröbner deformation
        assert_eq!(inw.dimension(), i.dimension());
    }

    #[test]
    fn radical_membership_examples() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x^2"]);
        assert!(i.radical_contains(&parse_poly(&r, "x").unwrap()));
        let j = ideal(&r, &["x"]);
        assert!(!j.radical_contains(&parse_poly(&r, "y").unwrap()));
    }

    #[test]
    fn quotient_examples() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x^2*y"]);
        let q = i.quotient_poly(&parse_poly(&r, "x^2").unwrap());
        assert!(q.eq_ideal(&ideal(&r, &["y"])));
    }

    #[test]
    fn saturation_is_idempotent() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = ideal(&r, &["x^3*y - x^2", "x*y^2"]);
        let f = parse_poly(&r, "x").unwrap();
        let once = i.saturate_poly(&f);
        let twice = once.saturate_poly(&f);
        assert!(once.eq_ideal(&twice));
    }
}
