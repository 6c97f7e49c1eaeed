//! Buchberger's algorithm with the sugar selection strategy and full
//! reduction. Exact over Q throughout; no modular shortcuts.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Mono, MonomialOrder, Poly, PolyRing};
use crate::Rat;

/// A polynomial with terms kept strictly descending under the active order.
#[derive(Clone, Debug)]
struct OrdPoly {
    terms: Vec<(Mono, Rat)>,
    sugar: u64,
}

impl OrdPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Mono, Rat) {
        &self.terms[0]
    }
}

fn to_ord(p: &Poly, order: &MonomialOrder) -> OrdPoly {
    let mut terms: Vec<(Mono, Rat)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    let sugar = p.total_degree();
    OrdPoly { terms, sugar }
}

fn to_poly(p: &OrdPoly, ring: &Arc<PolyRing>) -> Poly {
    Poly::from_terms(ring, p.terms.iter().cloned())
}

/// out = a - c * x^shift * b, with both inputs sorted; merge-based.
fn sub_scaled_shifted(
    a: &OrdPoly,
    b: &OrdPoly,
    c: &Rat,
    shift: &Mono,
    order: &MonomialOrder,
) -> OrdPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.terms.len() && j < b.terms.len() {
        let bm = b.terms[j].0.mul(shift);
        match order.cmp(&a.terms[i].0, &bm) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -(c * &b.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let coeff = &a.terms[i].1 - c * &b.terms[j].1;
                if !coeff.is_zero() {
                    out.push((a.terms[i].0.clone(), coeff));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a.terms[i..]);
    while j < b.terms.len() {
        out.push((b.terms[j].0.mul(shift), -(c * &b.terms[j].1)));
        j += 1;
    }
    let sugar = a.sugar.max(b.sugar + shift.degree());
    OrdPoly { terms: out, sugar }
}

fn normalize_primitive(p: &mut OrdPoly, ring: &Arc<PolyRing>) {
    if p.is_zero() {
        return;
    }
    let as_poly = to_poly(p, ring).primitive();
    // re-sort is unnecessary: primitive only rescales coefficients and may
    // flip all signs; recompute coefficients in place instead
    let factor = {
        let (m0, c0) = p.lead();
        let new_c0 = as_poly
            .terms()
            .find(|(m, _)| *m == m0)
            .map(|(_, c)| c.clone())
            .unwrap();
        new_c0 / c0
    };
    for (_, c) in p.terms.iter_mut() {
        *c = &*c * &factor;
    }
}

/// Full normal form of `f` with respect to `basis` (need not be a GB).
fn reduce_full(f: OrdPoly, basis: &[OrdPoly], order: &MonomialOrder) -> OrdPoly {
    let mut work = f;
    let mut rem: Vec<(Mono, Rat)> = Vec::new();
    let mut sugar = work.sugar;
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
                let next = sub_scaled_shifted(&work, g, &coef, &shift, order);
                sugar = sugar.max(next.sugar);
                work = next;
                work.sugar = sugar;
                continue 'outer;
            }
        }
        rem.push((m, c));
        work.terms.remove(0);
    }
    OrdPoly { terms: rem, sugar }
}

/// Reduced Gröbner basis of the ideal generated by `gens` with respect to
/// `order`. Generators are returned monic, pairwise reduced, and sorted by
/// ascending leading monomial.
///
/// With weight vectors carrying negative entries the order is only a total
/// order on each graded piece; callers must then pass homogeneous input
/// (the ideal-level operations take care of this).
pub fn groebner_basis(gens: &[Poly], order: &MonomialOrder) -> Vec<Poly> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Vec::new(),
    };
    let mut basis: Vec<OrdPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let mut og = to_ord(&g.primitive(), order);
            og.sugar = g.total_degree();
            basis.push(og);
        }
    }
    if basis.is_empty() {
        return Vec::new();
    }

    // pair queue keyed by (sugar, lcm degree, lcm, i, j) for determinism
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    struct PairKey(u64, u64, Vec<u32>, usize, usize);
    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let make_key = |basis: &[OrdPoly], i: usize, j: usize| -> PairKey {
        let li = &basis[i].lead().0;
        let lj = &basis[j].lead().0;
        let l = li.lcm(lj);
        let sugar = (basis[i].sugar + l.div(li).degree()).max(basis[j].sugar + l.div(lj).degree());
        PairKey(sugar, l.degree(), l.0.clone(), i, j)
    };

    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.insert(make_key(&basis, i, j));
        }
    }

    while let Some(PairKey(_, _, lcm_exp, i, j)) = pairs.pop_first() {
        done.insert((i, j));
        let lcm = Mono(lcm_exp);
        let li = basis[i].lead().0.clone();
        let lj = basis[j].lead().0.clone();
        // product criterion: coprime leading monomials
        if li.mul(&lj) == lcm {
            continue;
        }
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
        // S-polynomial
        let ci = basis[i].lead().1.clone();
        let shift_i = lcm.div(&li);
        let spoly = {
            let scaled_i = OrdPoly {
                terms: basis[i]
                    .terms
                    .iter()
                    .map(|(m, c)| (m.mul(&shift_i), c / &ci))
                    .collect(),
                sugar: basis[i].sugar + shift_i.degree(),
            };
            let shift_j = lcm.div(&lj);
            let cj = basis[j].lead().1.clone();
            sub_scaled_shifted(&scaled_i, &basis[j], &(Rat::one() / cj), &shift_j, order)
        };
        let mut nf = reduce_full(spoly, &basis, order);
        if nf.is_zero() {
            continue;
        }
        normalize_primitive(&mut nf, &ring);
        let new_idx = basis.len();
        basis.push(nf);
        for k in 0..new_idx {
            if !basis[k].is_zero() {
                pairs.insert(make_key(&basis, k, new_idx));
            }
        }
    }

    // minimalize: drop elements whose lead is divisible by another lead
    let mut keep: Vec<bool> = vec![true; basis.len()];
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
    let minimal: Vec<OrdPoly> = basis
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(b, _)| b)
        .collect();

    // tail-reduce each element against the others
    let mut reduced: Vec<OrdPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OrdPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = reduce_full(minimal[i].clone(), &others, order);
        if !nf.is_zero() {
            reduced.push(nf);
        }
    }

    let mut out: Vec<Poly> = reduced
        .iter()
        .map(|p| to_poly(p, &ring).monic(order))
        .collect();
    out.sort_by(|a, b| {
        let la = a.lead(order).unwrap().0.clone();
        let lb = b.lead(order).unwrap().0.clone();
        order.cmp(&la, &lb)
    });
    out
}

/// Normal form of `f` against `basis` (deterministic full reduction).
pub fn normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    if f.is_zero() || basis.is_empty() {
        return f.clone();
    }
    let ring = f.ring().clone();
    let ord_basis: Vec<OrdPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_ord(g, order))
        .collect();
    let nf = reduce_full(to_ord(f, order), &ord_basis, order);
    to_poly(&nf, &ring)
}
