//! Left Gröbner bases in the Weyl algebra for projective weight vectors.
//!
//! When every weight entry is nonnegative the computation runs directly in
//! D with the weight refined by grevlex. A weight with negative entries is
//! handled through the homogenized Weyl algebra (central h with
//! ∂x = x∂ + h²): first a Gröbner basis for a total-degree-compatible
//! order, whose homogenization generates the homogenized ideal, then a
//! basis for the weight order on that homogeneous input, then h ↦ 1.
//! The initial forms of the returned elements generate gr^L(I).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{ProjectiveWeight, WMono, WeylElement, WeylIdeal};
use crate::Rat;

/// Weight-refined order on (x, ∂, h)-monomials: compare the (wx, wd)
/// weight (h weighs nothing), tie-break grevlex with h cheapest.
#[derive(Clone, Debug)]
struct WOrder {
    wx: Vec<i64>,
    wd: Vec<i64>,
}

impl WOrder {
    fn weight(&self, m: &WMono) -> i128 {
        let mut acc: i128 = 0;
        for (i, &e) in m.xs.iter().enumerate() {
            acc += e as i128 * self.wx[i] as i128;
        }
        for (i, &e) in m.ds.iter().enumerate() {
            acc += e as i128 * self.wd[i] as i128;
        }
        acc
    }

    fn cmp(&self, a: &WMono, b: &WMono) -> Ordering {
        match self.weight(a).cmp(&self.weight(b)) {
            Ordering::Equal => {}
            other => return other,
        }
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        // grevlex scan from the cheapest variable: h, then ∂n..∂1, xn..x1
        match a.h.cmp(&b.h) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
        for (ea, eb) in a.ds.iter().zip(&b.ds).rev() {
            match ea.cmp(eb) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        for (ea, eb) in a.xs.iter().zip(&b.xs).rev() {
            match ea.cmp(eb) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

#[derive(Clone, Debug)]
struct OrdWeyl {
    terms: Vec<(WMono, Rat)>, // strictly descending under the active order
    sugar: u64,
}

impl OrdWeyl {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(WMono, Rat) {
        &self.terms[0]
    }
}

fn to_ord(e: &WeylElement, order: &WOrder) -> OrdWeyl {
    let mut terms: Vec<(WMono, Rat)> = e.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    OrdWeyl { terms, sugar: e.total_degree() }
}

fn to_elem(p: &OrdWeyl, n: usize) -> WeylElement {
    let mut out = WeylElement::zero(n);
    for (m, c) in &p.terms {
        out.add_term(m.clone(), c.clone());
    }
    out
}

/// Left multiplication by a monomial, normal-ordered.
fn mono_times(n: usize, m: &WMono, g: &OrdWeyl, order: &WOrder, homog: bool) -> OrdWeyl {
    let lhs = WeylElement::term(n, m.clone(), Rat::one());
    let rhs = to_elem(g, n);
    let prod = if homog { lhs.mul_homog(&rhs) } else { lhs.mul(&rhs) };
    let mut o = to_ord(&prod, order);
    o.sugar = g.sugar + m.degree();
    o
}

/// work := work - c * (m ⋆ g); the product cancels work's lead when called
/// with m = lead(work)/lead(g) and c = lc(work)/lc(g).
fn reduce_step(
    n: usize,
    work: &OrdWeyl,
    g: &OrdWeyl,
    m: &WMono,
    c: &Rat,
    order: &WOrder,
    homog: bool,
) -> OrdWeyl {
    let prod = mono_times(n, m, g, order, homog);
    // merge: work - c*prod
    let mut out = Vec::with_capacity(work.terms.len() + prod.terms.len());
    let mut i = 0;
    let mut j = 0;
    while i < work.terms.len() && j < prod.terms.len() {
        match order.cmp(&work.terms[i].0, &prod.terms[j].0) {
            Ordering::Greater => {
                out.push(work.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((prod.terms[j].0.clone(), -(c * &prod.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let coeff = &work.terms[i].1 - c * &prod.terms[j].1;
                if !coeff.is_zero() {
                    out.push((work.terms[i].0.clone(), coeff));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&work.terms[i..]);
    while j < prod.terms.len() {
        out.push((prod.terms[j].0.clone(), -(c * &prod.terms[j].1)));
        j += 1;
    }
    OrdWeyl { terms: out, sugar: work.sugar.max(prod.sugar) }
}

fn reduce_full(n: usize, f: OrdWeyl, basis: &[OrdWeyl], order: &WOrder, homog: bool) -> OrdWeyl {
    let mut work = f;
    let mut rem: Vec<(WMono, Rat)> = Vec::new();
    'outer: while !work.is_zero() {
        let (m, c) = work.lead().clone();
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.lead();
            if gm.divides(&m) {
                let shift = m.div(gm);
                let coef = &c / gc;
                work = reduce_step(n, &work, g, &shift, &coef, order, homog);
                continue 'outer;
            }
        }
        rem.push((m, c));
        work.terms.remove(0);
    }
    let sugar = work.sugar;
    OrdWeyl { terms: rem, sugar }
}

fn normalize_primitive(p: &mut OrdWeyl) {
    if p.is_zero() {
        return;
    }
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Signed;
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, c) in &p.terms {
        den_lcm = den_lcm.lcm(c.denom());
        num_gcd = num_gcd.gcd(c.numer());
    }
    let mut factor = Rat::new(den_lcm, num_gcd);
    if p.terms[0].1.is_negative() {
        factor = -factor;
    }
    for (_, c) in p.terms.iter_mut() {
        *c = &*c * &factor;
    }
}

/// Buchberger for left ideals. No product criterion (it is invalid in the
/// Weyl algebra); the chain criterion is kept.
fn buchberger(n: usize, gens: &[WeylElement], order: &WOrder, homog: bool) -> Vec<WeylElement> {
    let mut basis: Vec<OrdWeyl> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let mut og = to_ord(g, order);
            normalize_primitive(&mut og);
            basis.push(og);
        }
    }
    if basis.is_empty() {
        return Vec::new();
    }

    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    struct PairKey(u64, u64, Vec<u32>, Vec<u32>, u32, usize, usize);
    let make_key = |basis: &[OrdWeyl], i: usize, j: usize| -> PairKey {
        let li = &basis[i].lead().0;
        let lj = &basis[j].lead().0;
        let l = li.lcm(lj);
        let sugar = (basis[i].sugar + l.div(li).degree()).max(basis[j].sugar + l.div(lj).degree());
        PairKey(sugar, l.degree(), l.xs.clone(), l.ds.clone(), l.h, i, j)
    };

    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.insert(make_key(&basis, i, j));
        }
    }

    while let Some(PairKey(_, _, lx, ld, lh, i, j)) = pairs.pop_first() {
        done.insert((i, j));
        let lcm = WMono { xs: lx, ds: ld, h: lh };
        // chain criterion
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j || basis[k].is_zero() {
                continue;
            }
            if basis[k].lead().0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }
        let (li, ci) = basis[i].lead().clone();
        let (lj, cj) = basis[j].lead().clone();
        let spoly = {
            let left = mono_times(n, &lcm.div(&li), &basis[i], order, homog);
            let mut scaled = left;
            let inv = Rat::one() / ci;
            for (_, c) in scaled.terms.iter_mut() {
                *c = &*c * &inv;
            }
            let shift_j = lcm.div(&lj);
            let coef = Rat::one() / cj;
            reduce_step(n, &scaled, &basis[j], &shift_j, &coef, order, homog)
        };
        let mut nf = reduce_full(n, spoly, &basis, order, homog);
        if nf.is_zero() {
            continue;
        }
        normalize_primitive(&mut nf);
        let new_idx = basis.len();
        basis.push(nf);
        for k in 0..new_idx {
            if !basis[k].is_zero() {
                pairs.insert(make_key(&basis, k, new_idx));
            }
        }
    }

    // minimalize
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if basis[i].is_zero() {
            keep[i] = false;
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && !basis[j].is_zero()
                && basis[j].lead().0.divides(&basis[i].lead().0)
                && (basis[i].lead().0 != basis[j].lead().0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<OrdWeyl> = basis
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(b, _)| b)
        .collect();

    // tail-reduce
    let mut out: Vec<WeylElement> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OrdWeyl> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut nf = reduce_full(n, minimal[i].clone(), &others, order, homog);
        if !nf.is_zero() {
            normalize_primitive(&mut nf);
            out.push(to_elem(&nf, n));
        }
    }
    out.sort_by(|a, b| {
        let oa = to_ord(a, order);
        let ob = to_ord(b, order);
        order.cmp(&oa.lead().0, &ob.lead().0)
    });
    out
}

fn homogenize(e: &WeylElement) -> WeylElement {
    let n = e.nvars();
    let t = e.total_degree();
    let mut out = WeylElement::zero(n);
    for (m, c) in e.terms() {
        let mut m2 = m.clone();
        m2.h = (t - m.degree()) as u32;
        out.add_term(m2, c.clone());
    }
    out
}

fn dehomogenize(e: &WeylElement) -> WeylElement {
    let n = e.nvars();
    let mut out = WeylElement::zero(n);
    for (m, c) in e.terms() {
        let mut m2 = m.clone();
        m2.h = 0;
        out.add_term(m2, c.clone());
    }
    out
}

/// Left Gröbner basis adapted to the weight: the initial forms of the
/// returned generators generate gr^L(I).
pub fn left_groebner(ideal: &WeylIdeal, l: &ProjectiveWeight) -> Vec<WeylElement> {
    let n = ideal.nvars();
    assert_eq!(l.nvars(), n, "weight vector length mismatch");
    let (wx, wd) = l.scaled();
    if l.is_nonnegative() {
        let order = WOrder { wx: wx.to_vec(), wd: wd.to_vec() };
        return buchberger(n, ideal.gens(), &order, false);
    }
    // degree-compatible basis first (Bernstein weight (1,…,1; 1,…,1)),
    // then the weight order on homogenized input
    let pre_order = WOrder { wx: vec![1; n], wd: vec![1; n] };
    let pre = buchberger(n, ideal.gens(), &pre_order, false);
    let hgens: Vec<WeylElement> = pre.iter().map(homogenize).collect();
    let order = WOrder { wx: wx.to_vec(), wd: wd.to_vec() };
    let gb_h = buchberger(n, &hgens, &order, true);
    gb_h.iter().map(dehomogenize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PolyIdeal, PolyRing};
    use crate::Rat;
    use num_traits::{One, Zero};

    #[test]
    fn unit_ideal_detection() {
        // <∂1, x1∂1 - 1> contains 1
        let n = 1;
        let g1 = WeylElement::d(n, 0);
        let g2 = WeylElement::theta(n, 0).sub(&WeylElement::one(n));
        let i = WeylIdeal::new(n, vec![g1, g2]);
        let f = ProjectiveWeight::order_filtration(n);
        let gb = left_groebner(&i, &f);
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].to_string_canonical(), "1");
    }

    #[test]
    fn principal_x_ideal() {
        let n = 2;
        let i = WeylIdeal::new(n, vec![WeylElement::x(n, 0)]);
        let f = ProjectiveWeight::order_filtration(n);
        let gb = left_groebner(&i, &f);
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].to_string_canonical(), "x1");
    }

    #[test]
    fn gr_of_x1_is_x1() {
        let n = 2;
        let i = WeylIdeal::new(n, vec![WeylElement::x(n, 0)]);
        let f = ProjectiveWeight::order_filtration(n);
        let gr = super::super::gr_ideal(&i, &f);
        let ring = PolyRing::cotangent(n);
        let expect = PolyIdeal::new(&ring, vec![crate::poly::parse_poly(&ring, "x1").unwrap()]);
        assert!(gr.eq_ideal(&expect));
        assert_eq!(gr.dimension(), 3);
    }

    #[test]
    fn gr_of_all_partials() {
        let n = 2;
        let i = WeylIdeal::new(n, (0..n).map(|j| WeylElement::d(n, j)).collect());
        let f = ProjectiveWeight::order_filtration(n);
        let gr = super::super::gr_ideal(&i, &f);
        let ring = PolyRing::cotangent(n);
        let expect = PolyIdeal::new(
            &ring,
            vec![
                crate::poly::parse_poly(&ring, "X1").unwrap(),
                crate::poly::parse_poly(&ring, "X2").unwrap(),
            ],
        );
        assert!(gr.eq_ideal(&expect));
        assert_eq!(gr.dimension(), 2);
        assert!(super::super::is_l_holonomic(&i, &f));
    }

    #[test]
    fn example_x1_not_holonomic_but_finite_rank() {
        let n = 2;
        let i = WeylIdeal::new(n, vec![WeylElement::x(n, 0)]);
        let f = ProjectiveWeight::order_filtration(n);
        assert!(!super::super::is_l_holonomic(&i, &f));
        let sing = super::super::singular_locus(&i);
        let xr = PolyRing::xs(n);
        let expect = PolyIdeal::new(&xr, vec![crate::poly::parse_poly(&xr, "x1").unwrap()]);
        assert!(sing.eq_ideal(&expect));
        assert!(super::super::has_finite_rank(&i));
    }

    #[test]
    fn negative_weight_path_matches_on_invariant_input() {
        // gr^L of <x1> is <x1> for any projective weight; exercise the
        // homogenized route with a weight containing negative entries
        let n = 2;
        let i = WeylIdeal::new(n, vec![WeylElement::x(n, 0)]);
        let l = ProjectiveWeight::new(
            vec![Rat::from_integer(2.into()), -Rat::one()],
            vec![-Rat::one(), Rat::from_integer(2.into())],
        )
        .unwrap();
        assert!(!l.is_nonnegative());
        let gr = super::super::gr_ideal(&i, &l);
        let ring = PolyRing::cotangent(n);
        let expect = PolyIdeal::new(&ring, vec![crate::poly::parse_poly(&ring, "x1").unwrap()]);
        assert!(gr.eq_ideal(&expect));
    }

    #[test]
    fn weights_scale_together() {
        let l = ProjectiveWeight::new(
            vec![Rat::new(1.into(), 2.into()), Rat::zero()],
            vec![Rat::zero(), Rat::new(1.into(), 2.into())],
        )
        .unwrap();
        let (wx, wd) = l.scaled();
        assert_eq!(wx, &[1, 0]);
        assert_eq!(wd, &[0, 1]);
        assert!(ProjectiveWeight::new(vec![Rat::one()], vec![-Rat::one()]).is_err());
    }
}
