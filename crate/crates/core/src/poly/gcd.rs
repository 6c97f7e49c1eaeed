//! Multivariate gcd over Q and the divisorial part of an ideal.
//!
//! The gcd goes through the lcm: ⟨f⟩ ∩ ⟨g⟩ is principal, generated by
//! lcm(f, g), and gcd = f·g / lcm. This reuses the Gröbner engine instead
//! of a separate subresultant tower; everything stays exact.


use super::{Poly, PolyIdeal};
use crate::error::{Error, Result};

/// A gcd of `f` and `g`, normalized primitive with positive leading
/// coefficient. gcd(f, 0) = f by convention.
pub fn multivariate_gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(f.ring());
    }
    let ring = f.ring();
    let fi = PolyIdeal::new(ring, vec![f.clone()]);
    let gi = PolyIdeal::new(ring, vec![g.clone()]);
    let inter = fi.intersect(&gi);
    let gb = inter.gb();
    assert_eq!(
        gb.len(),
        1,
        "intersection of principal ideals must be principal"
    );
    let lcm = &gb[0];
    let prod = f.mul(g);
    prod.divide_exact(lcm)
        .expect("lcm divides the product")
        .primitive()
}

/// The squarefree part f / gcd(f, ∂f/∂x_1, …, ∂f/∂x_n), primitive and
/// positively normalized.
pub fn squarefree_part(f: &Poly) -> Poly {
    assert!(!f.is_zero(), "squarefree part of zero");
    if f.is_constant() {
        return Poly::one(f.ring());
    }
    let mut acc = f.clone();
    for i in 0..f.nvars() {
        let d = f.derivative(i);
        if !d.is_zero() {
            acc = multivariate_gcd(&acc, &d);
        }
        if acc.is_constant() {
            break;
        }
    }
    f.divide_exact(&acc)
        .expect("gcd with derivatives divides f")
        .primitive()
}

/// The squarefree polynomial cutting out the codimension-at-most-one part
/// of Var(I): the squarefree part of the gcd of a reduced Gröbner basis.
/// Returns 1 when the variety has codimension at least two; errors on the
/// zero ideal (the whole space has no divisorial equation).
pub fn divisorial_part(ideal: &PolyIdeal) -> Result<Poly> {
    if ideal.is_zero_ideal() {
        return Err(Error::ZeroIdeal);
    }
    let ring = ideal.ring();
    if ideal.is_unit() {
        return Ok(Poly::one(ring));
    }
    let gb = ideal.gb();
    let mut acc = gb[0].clone();
    for g in &gb[1..] {
        if acc.is_constant() {
            break;
        }
        acc = multivariate_gcd(&acc, g);
    }
    if acc.is_constant() {
        return Ok(Poly::one(ring));
    }
    Ok(squarefree_part(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn gcd_monomials() {
        let r = PolyRing::new(vec!["x".into(), "y".into(), "z".into()]);
        let g = multivariate_gcd(&p(&r, "x^2*y"), &p(&r, "x^2*z"));
        assert_eq!(g.to_string_canonical(), "x^2");
    }

    #[test]
    fn gcd_with_zero() {
        let r = PolyRing::new(vec!["x".into()]);
        let f = p(&r, "2*x^2");
        let g = multivariate_gcd(&f, &Poly::zero(&r));
        assert_eq!(g.to_string_canonical(), "x^2");
    }

    #[test]
    fn gcd_difference_of_squares() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let g = multivariate_gcd(&p(&r, "x^2 - y^2"), &p(&r, "x^2 + 2*x*y + y^2"));
        assert_eq!(g.to_string_canonical(), "x + y");
    }

    #[test]
    fn squarefree_examples() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        assert_eq!(
            squarefree_part(&p(&r, "x^2*y^3")).to_string_canonical(),
            "x*y"
        );
        assert_eq!(
            squarefree_part(&p(&r, "x^2 + 2*x*y + y^2")).to_string_canonical(),
            "x + y"
        );
    }

    #[test]
    fn divisorial_part_examples() {
        let r = PolyRing::new(vec!["x".into(), "y".into(), "z".into()]);
        let i = PolyIdeal::new(&r, vec![p(&r, "x^2*y"), p(&r, "x^2*z")]);
        assert_eq!(divisorial_part(&i).unwrap().to_string_canonical(), "x");

        let j = PolyIdeal::new(&r, vec![p(&r, "x"), p(&r, "y")]);
        assert!(divisorial_part(&j).unwrap().is_constant());

        let k = PolyIdeal::new(&r, vec![p(&r, "x")]);
        assert_eq!(divisorial_part(&k).unwrap().to_string_canonical(), "x");

        assert!(divisorial_part(&PolyIdeal::zero(&r)).is_err());
    }

    #[test]
    fn divisorial_part_of_unit_is_one() {
        let r = PolyRing::new(vec!["x".into()]);
        let i = PolyIdeal::new(&r, vec![p(&r, "2")]);
        assert!(divisorial_part(&i).unwrap().is_one_poly());
    }
}
