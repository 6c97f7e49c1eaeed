//! A-hypergeometric machinery: toric ideals, Euler operators, conormal
//! component ideals, the closed-form L-characteristic variety, sparse
//! discriminants, the discriminantal singular locus, and truncated systems
//! with their oversized torus components.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{lattice_kernel, IntMatrix, PointedMatrix};
use crate::geom::{l_umbrella, Face, Umbrella};
use crate::poly::{divisorial_part, squarefree_part, Mono, Poly, PolyIdeal, PolyRing};
use crate::weyl::{gr_ideal, ProjectiveWeight, WeylElement, WeylIdeal};
use crate::Rat;

/// The toric ideal I_A ⊆ C[∂]: the saturation of the lattice-basis
/// binomial ideal ⟨∂^{z+} − ∂^{z−}⟩ at the product of the variables.
pub fn toric_ideal(a: &IntMatrix) -> PolyIdeal {
    let n = a.cols();
    let ring = PolyRing::ds(n);
    let kernel = lattice_kernel(a);
    if kernel.basis().is_empty() {
        return PolyIdeal::zero(&ring);
    }
    let mut gens = Vec::new();
    for z in kernel.basis() {
        let mut plus = vec![0u32; n];
        let mut minus = vec![0u32; n];
        for (i, e) in z.iter().enumerate() {
            if e > &BigInt::zero() {
                plus[i] = u32::try_from(e).expect("kernel exponent fits u32");
            } else if e < &BigInt::zero() {
                minus[i] = u32::try_from(&-e).expect("kernel exponent fits u32");
            }
        }
        let b = Poly::term(&ring, Mono(plus), Rat::one())
            .sub(&Poly::term(&ring, Mono(minus), Rat::one()));
        gens.push(b);
    }
    let basis_ideal = PolyIdeal::new(&ring, gens);
    let all_vars = (0..n).fold(Poly::one(&ring), |acc, i| acc.mul(&Poly::var(&ring, i)));
    basis_ideal.saturate_poly(&all_vars)
}

/// The Euler operators E_i − β_i with E_i = Σ_j a_ij x_j ∂_j.
pub fn euler_operators(a: &IntMatrix, beta: &[Rat]) -> Result<Vec<WeylElement>> {
    if beta.len() != a.rows() {
        return Err(Error::Shape(format!(
            "beta has length {}, expected {}",
            beta.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    let mut out = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut e = WeylElement::zero(n);
        for j in 0..n {
            let c = Rat::from(a.at(i, j).clone());
            if !c.is_zero() {
                e = e.add(&WeylElement::theta(n, j).scale(&c));
            }
        }
        e = e.sub(&WeylElement::constant(n, beta[i].clone()));
        out.push(e);
    }
    Ok(out)
}

/// An A-hypergeometric system H_A(β) = D·(I_A, E_A − β).
#[derive(Clone, Debug)]
pub struct HypergeometricSystem {
    a: PointedMatrix,
    beta: Vec<Rat>,
}

impl HypergeometricSystem {
    pub fn new(a: PointedMatrix, beta: Vec<Rat>) -> Result<Self> {
        if beta.len() != a.rows() {
            return Err(Error::Shape("beta length must equal the row count".into()));
        }
        Ok(HypergeometricSystem { a, beta })
    }

    pub fn matrix(&self) -> &PointedMatrix {
        &self.a
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    /// The assembled left ideal in the Weyl algebra.
    pub fn weyl_ideal(&self) -> WeylIdeal {
        let n = self.a.cols();
        let mut gens: Vec<WeylElement> = toric_ideal(self.a.matrix())
            .gens()
            .iter()
            .map(WeylElement::from_d_poly)
            .collect();
        gens.extend(euler_operators(self.a.matrix(), &self.beta).expect("validated lengths"));
        WeylIdeal::new(n, gens)
    }
}

/// One component of the closed-form L-characteristic variety: the closure
/// of the conormal to the torus orbit of the face's 0/1 point.
#[derive(Clone, Debug)]
pub struct ConormalComponent {
    pub face: Face,
    pub ideal: PolyIdeal,
    pub dimension: i64,
}

/// The defining ideal of the conormal closure for a face τ, inside
/// C[x, ξ]: ξ off the face, toric binomials of the face submatrix in the
/// face's ξ variables, and the rows of A·(xξ), saturated at ξ_τ.
pub fn conormal_closure_ideal(a: &PointedMatrix, face: &Face) -> ConormalComponent {
    let n = a.cols();
    let d = a.rows();
    let ring = PolyRing::cotangent(n);
    let mut gens: Vec<Poly> = Vec::new();
    for i in 0..n {
        if !face.members.contains(&i) {
            gens.push(Poly::var(&ring, n + i));
        }
    }
    if !face.members.is_empty() {
        let sub = a.matrix().select_cols(&face.members);
        let toric = toric_ideal(&sub);
        let map: Vec<usize> = face.members.iter().map(|&j| n + j).collect();
        for g in toric.gens() {
            gens.push(g.embed(&ring, &map));
        }
    }
    for r in 0..d {
        let mut row = Poly::zero(&ring);
        for j in 0..n {
            let c = Rat::from(a.matrix().at(r, j).clone());
            if !c.is_zero() {
                let mut e = vec![0u32; 2 * n];
                e[j] = 1;
                e[n + j] = 1;
                row.add_term(Mono(e), c);
            }
        }
        if !row.is_zero() {
            gens.push(row);
        }
    }
    let ideal = PolyIdeal::new(&ring, gens);
    let ideal = if face.members.is_empty() {
        ideal
    } else {
        let xi_tau = face
            .members
            .iter()
            .fold(Poly::one(&ring), |acc, &j| acc.mul(&Poly::var(&ring, n + j)));
        ideal.saturate_poly(&xi_tau)
    };
    let dimension = ideal.dimension();
    ConormalComponent { face: face.clone(), ideal, dimension }
}

/// The closed-form L-characteristic variety of H_A(β): one conormal
/// component per face of the L-umbrella. β-independent.
pub fn char_variety_gkz(
    a: &PointedMatrix,
    l: &ProjectiveWeight,
) -> Result<Vec<ConormalComponent>> {
    let u = l_umbrella(a, l)?;
    Ok(u.faces()
        .iter()
        .map(|f| conormal_closure_ideal(a, f))
        .collect())
}

/// The A-discriminant of a face submatrix.
#[derive(Clone, Debug)]
pub struct Discriminant {
    pub matrix: IntMatrix,
    /// Squarefree primitive polynomial in x1..xm (m = column count), or 1.
    pub poly: Poly,
    pub trivial: bool,
}

/// The A-discriminant: eliminate the torus variables from the critical
/// equations of f = Σ x_j t^{a_j} and take the divisorial part; 1 when the
/// discriminantal variety has codimension at least two.
pub fn a_discriminant(m: &IntMatrix) -> Discriminant {
    let d = m.rows();
    let cols = m.cols();
    let xr = PolyRing::xs(cols);
    // Laurent clearing: per-row shift by max(0, −min entry)
    let shift: Vec<BigInt> = (0..d)
        .map(|i| {
            let min = (0..cols).map(|j| m.at(i, j).clone()).min().unwrap();
            if min < BigInt::zero() {
                -min
            } else {
                BigInt::zero()
            }
        })
        .collect();
    let mut vars: Vec<String> = (1..=cols).map(|j| format!("x{j}")).collect();
    vars.extend((1..=d).map(|i| format!("t{i}")));
    let ring = PolyRing::new(vars);

    let mono = |j: usize| -> Mono {
        let mut e = vec![0u32; cols + d];
        e[j] = 1;
        for i in 0..d {
            let exp = m.at(i, j) + &shift[i];
            e[cols + i] = u32::try_from(&exp).expect("cleared exponent is nonnegative");
        }
        Mono(e)
    };

    let mut f = Poly::zero(&ring);
    for j in 0..cols {
        f.add_term(mono(j), Rat::one());
    }
    let mut gens = vec![f];
    for i in 0..d {
        let mut g = Poly::zero(&ring);
        for j in 0..cols {
            let c = Rat::from(m.at(i, j).clone());
            if !c.is_zero() {
                g.add_term(mono(j), c);
            }
        }
        if !g.is_zero() {
            gens.push(g);
        }
    }
    let ideal = PolyIdeal::new(&ring, gens);
    let t_all = (0..d).fold(Poly::one(&ring), |acc, i| {
        acc.mul(&Poly::var(&ring, cols + i))
    });
    let sat = ideal.saturate_poly(&t_all);
    let in_x = sat.project(&(0..cols).collect::<Vec<_>>());
    if in_x.is_zero_ideal() {
        // the critical locus projects onto everything; no divisorial data
        return Discriminant { matrix: m.clone(), poly: Poly::one(&xr), trivial: true };
    }
    let delta = divisorial_part(&in_x).expect("nonzero ideal");
    let trivial = delta.is_constant();
    Discriminant {
        matrix: m.clone(),
        poly: if trivial { Poly::one(&xr) } else { delta },
        trivial,
    }
}

/// Face discriminants contributing to the singular locus of H_A(β).
pub fn sing_locus_gkz_factors(a: &PointedMatrix) -> Result<Vec<(Face, Discriminant)>> {
    let f = ProjectiveWeight::order_filtration(a.cols());
    let u = l_umbrella(a, &f)?;
    let mut out = Vec::new();
    for face in u.faces() {
        if face.members.is_empty() {
            continue;
        }
        let sub = a.matrix().select_cols(&face.members);
        out.push((face.clone(), a_discriminant(&sub)));
    }
    Ok(out)
}

/// The squarefree product of the face discriminants over Φ(A, F), in the
/// global x variables. Cuts out the divisorial singular locus.
pub fn sing_locus_gkz(a: &PointedMatrix) -> Result<Poly> {
    let n = a.cols();
    let ring = PolyRing::xs(n);
    let mut prod = Poly::one(&ring);
    for (face, disc) in sing_locus_gkz_factors(a)? {
        if disc.trivial {
            continue;
        }
        let embedded = disc.poly.embed(&ring, &face.members);
        prod = prod.mul(&embedded);
    }
    if prod.is_constant() {
        return Ok(Poly::one(&ring));
    }
    Ok(squarefree_part(&prod))
}

/// A truncated system D/(I_Ă, E_A − β): the toric ideal of the full-rank
/// k×n matrix Ă but Euler operators only from its first d rows.
#[derive(Clone, Debug)]
pub struct TruncatedSystem {
    breve_a: PointedMatrix,
    a: PointedMatrix,
    beta: Vec<Rat>,
    d: usize,
}

impl TruncatedSystem {
    pub fn new(breve_a: IntMatrix, d: usize, beta: Vec<Rat>) -> Result<Self> {
        let k = breve_a.rows();
        let n = breve_a.cols();
        if !(d < k && k < n) {
            return Err(Error::Shape(format!(
                "truncated system needs d < k < n, got d={d}, k={k}, n={n}"
            )));
        }
        if breve_a.rank() != k {
            return Err(Error::Shape("breve_A must have full row rank".into()));
        }
        if beta.len() != d {
            return Err(Error::Shape("beta length must equal d".into()));
        }
        let a = PointedMatrix::new(breve_a.select_rows(&(0..d).collect::<Vec<_>>()))?;
        let breve_a = PointedMatrix::new_unchecked_span(breve_a)?;
        Ok(TruncatedSystem { breve_a, a, beta, d })
    }

    pub fn breve(&self) -> &PointedMatrix {
        &self.breve_a
    }

    pub fn base(&self) -> &PointedMatrix {
        &self.a
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.breve_a.cols()
    }

    pub fn k(&self) -> usize {
        self.breve_a.rows()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Expected dimension of the oversized components: n + k − d.
    pub fn oversize_dimension(&self) -> i64 {
        (self.n() + self.k() - self.d) as i64
    }

    pub fn weyl_ideal(&self) -> WeylIdeal {
        let n = self.n();
        let mut gens: Vec<WeylElement> = toric_ideal(self.breve_a.matrix())
            .gens()
            .iter()
            .map(WeylElement::from_d_poly)
            .collect();
        gens.extend(euler_operators(self.a.matrix(), &self.beta).expect("validated lengths"));
        WeylIdeal::new(n, gens)
    }

    pub fn umbrella(&self, l: &ProjectiveWeight) -> Result<Umbrella> {
        l_umbrella(&self.breve_a, l)
    }
}

/// The closure ideal of the component attached to a facet τ of Φ(Ă, L):
/// ⟨ξ_i : i ∉ τ⟩ + gr^L(D·I_Ă) + the initial forms of E_A − β, saturated
/// at ξ_τ. The toric part goes through the Weyl engine, not a commutative
/// shortcut.
pub fn truncated_char_component(
    t: &TruncatedSystem,
    face: &Face,
    l: &ProjectiveWeight,
) -> Result<PolyIdeal> {
    let u = t.umbrella(l)?;
    if !u.facets().iter().any(|f| f.members == face.members) {
        return Err(Error::Shape(format!(
            "face {:?} is not a facet of the umbrella",
            face.members
        )));
    }
    let n = t.n();
    let ring = PolyRing::cotangent(n);
    let toric_weyl = WeylIdeal::new(
        n,
        toric_ideal(t.breve_a.matrix())
            .gens()
            .iter()
            .map(WeylElement::from_d_poly)
            .collect(),
    );
    let gr = gr_ideal(&toric_weyl, l);
    let mut gens: Vec<Poly> = Vec::new();
    for i in 0..n {
        if !face.members.contains(&i) {
            gens.push(Poly::var(&ring, n + i));
        }
    }
    gens.extend(gr.gens().iter().cloned());
    for e in euler_operators(t.a.matrix(), &t.beta)? {
        gens.push(e.initial_form(l)?);
    }
    let ideal = PolyIdeal::new(&ring, gens);
    let xi_tau = face
        .members
        .iter()
        .fold(Poly::one(&ring), |acc, &j| acc.mul(&Poly::var(&ring, n + j)));
    Ok(ideal.saturate_poly(&xi_tau))
}

/// A component of Char^L(D/(I_Ă, E_A−β)) meeting the cotangent torus.
#[derive(Clone, Debug)]
pub struct TorusWitness {
    pub facet: Face,
    pub ideal: PolyIdeal,
    pub dimension: i64,
}

/// Search the facets of Φ(Ă, L) (in lexicographic order) for a component
/// that survives saturation by x1⋯xn·ξ1⋯ξn with dimension n + k − d.
/// Failure would contradict the oversized-component theorem and is
/// surfaced as a hard error.
pub fn torus_component_witness(t: &TruncatedSystem, l: &ProjectiveWeight) -> Result<TorusWitness> {
    let u = t.umbrella(l)?;
    let n = t.n();
    let expected = t.oversize_dimension();
    let mut tried = Vec::new();
    for facet in u.facets() {
        let comp = truncated_char_component(t, facet, l)?;
        let ring = comp.ring().clone();
        let all = (0..2 * n).fold(Poly::one(&ring), |acc, i| acc.mul(&Poly::var(&ring, i)));
        let sat = comp.saturate_poly(&all);
        if !sat.is_unit() {
            let dim = sat.dimension();
            if dim == expected {
                return Ok(TorusWitness {
                    facet: facet.clone(),
                    ideal: sat,
                    dimension: dim,
                });
            }
            tried.push(format!("facet {:?}: dimension {}", facet.members, dim));
        } else {
            tried.push(format!("facet {:?}: empty after saturation", facet.members));
        }
    }
    Err(Error::WitnessNotFound(format!(
        "expected a component of dimension {expected}; tried {}",
        tried.join("; ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rat;
    use crate::poly::parse_poly;

    fn a2() -> PointedMatrix {
        PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]])).unwrap()
    }

    #[test]
    fn toric_ideal_of_a2() {
        let i = toric_ideal(a2().matrix());
        let r = i.ring().clone();
        let expect = PolyIdeal::new(&r, vec![parse_poly(&r, "d1*d3 - d2^2").unwrap()]);
        assert!(i.eq_ideal(&expect));
    }

    #[test]
    fn toric_ideal_injective_is_zero() {
        let i = toric_ideal(&IntMatrix::from_rows(&[vec![1]]));
        assert!(i.is_zero_ideal());
    }

    #[test]
    fn toric_ideal_of_ones_row() {
        let i = toric_ideal(&IntMatrix::from_rows(&[vec![1, 1, 1]]));
        let r = i.ring().clone();
        let expect = PolyIdeal::new(
            &r,
            vec![
                parse_poly(&r, "d1 - d2").unwrap(),
                parse_poly(&r, "d2 - d3").unwrap(),
            ],
        );
        assert!(i.eq_ideal(&expect));
    }

    #[test]
    fn euler_operator_examples() {
        let es = euler_operators(a2().matrix(), &[Rat::zero(), Rat::zero()]).unwrap();
        assert_eq!(es[0].to_string_canonical(), "x1*d1 + x2*d2 + x3*d3");
        assert_eq!(es[1].to_string_canonical(), "x2*d2 + 2*x3*d3");

        let e = euler_operators(
            &IntMatrix::from_rows(&[vec![1]]),
            &[parse_rat("5").unwrap()],
        )
        .unwrap();
        assert_eq!(e[0].to_string_canonical(), "x1*d1 - 5");

        let e = euler_operators(
            &IntMatrix::from_rows(&[vec![1, 1]]),
            &[parse_rat("1/2").unwrap()],
        )
        .unwrap();
        assert_eq!(e[0].to_string_canonical(), "x1*d1 + x2*d2 - 1/2");

        assert!(euler_operators(a2().matrix(), &[Rat::zero()]).is_err());
    }

    #[test]
    fn conormal_full_face_of_a2() {
        let a = a2();
        let face = Face { members: vec![0, 1, 2], rank: 2 };
        let c = conormal_closure_ideal(&a, &face);
        let r = c.ideal.ring().clone();
        let raw = PolyIdeal::new(
            &r,
            vec![
                parse_poly(&r, "X1*X3 - X2^2").unwrap(),
                parse_poly(&r, "x1*X1 + x2*X2 + x3*X3").unwrap(),
                parse_poly(&r, "x2*X2 + 2*x3*X3").unwrap(),
            ],
        );
        // the closure ideal is the ξ-saturation of the displayed
        // generators; same variety off Var(ξ1ξ2ξ3)
        let xi = parse_poly(&r, "X1*X2*X3").unwrap();
        assert!(c.ideal.eq_ideal(&raw.saturate_poly(&xi)));
        assert!(c.ideal.contains_ideal(&raw));
        // the quadric relation of the projected orbit already lives here
        assert!(c
            .ideal
            .contains(&parse_poly(&r, "x2^2 - 4*x1*x3").unwrap()));
        assert_eq!(c.dimension, 3);
    }

    #[test]
    fn conormal_vertex_face_of_a2() {
        let a = a2();
        let face = Face { members: vec![0], rank: 1 };
        let c = conormal_closure_ideal(&a, &face);
        let r = c.ideal.ring().clone();
        let expect = PolyIdeal::new(
            &r,
            vec![
                parse_poly(&r, "X2").unwrap(),
                parse_poly(&r, "X3").unwrap(),
                parse_poly(&r, "x1").unwrap(),
            ],
        );
        assert!(c.ideal.eq_ideal(&expect));
        assert_eq!(c.dimension, 3);
    }

    #[test]
    fn conormal_empty_face_is_zero_section() {
        let a = a2();
        let face = Face { members: vec![], rank: 0 };
        let c = conormal_closure_ideal(&a, &face);
        let r = c.ideal.ring().clone();
        let expect = PolyIdeal::new(
            &r,
            vec![
                parse_poly(&r, "X1").unwrap(),
                parse_poly(&r, "X2").unwrap(),
                parse_poly(&r, "X3").unwrap(),
            ],
        );
        assert!(c.ideal.eq_ideal(&expect));
        assert_eq!(c.dimension, 3);
    }

    #[test]
    fn char_variety_components_all_dimension_n() {
        let a = a2();
        let f = ProjectiveWeight::order_filtration(3);
        let comps = char_variety_gkz(&a, &f).unwrap();
        assert_eq!(comps.len(), 4);
        for c in &comps {
            assert_eq!(c.dimension, 3, "face {:?}", c.face.members);
        }
    }

    #[test]
    fn char_variety_n1() {
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1]])).unwrap();
        let f = ProjectiveWeight::order_filtration(1);
        let comps = char_variety_gkz(&a, &f).unwrap();
        let r = PolyRing::cotangent(1);
        assert_eq!(comps.len(), 2);
        assert!(comps[0]
            .ideal
            .eq_ideal(&PolyIdeal::new(&r, vec![parse_poly(&r, "X1").unwrap()])));
        assert!(comps[1]
            .ideal
            .eq_ideal(&PolyIdeal::new(&r, vec![parse_poly(&r, "x1").unwrap()])));
    }

    #[test]
    fn discriminant_of_a2_is_the_quadratic() {
        let disc = a_discriminant(a2().matrix());
        assert!(!disc.trivial);
        assert_eq!(disc.poly.to_string_canonical(), "x2^2 - 4*x1*x3");
    }

    #[test]
    fn discriminant_single_column() {
        let disc = a_discriminant(&IntMatrix::from_rows(&[vec![1], vec![0]]));
        assert_eq!(disc.poly.to_string_canonical(), "x1");
    }

    #[test]
    fn discriminant_codimension_two_is_trivial() {
        let disc = a_discriminant(&IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert!(disc.trivial);
        assert!(disc.poly.is_one_poly());
    }

    #[test]
    fn sing_locus_of_a2() {
        let p = sing_locus_gkz(&a2()).unwrap();
        let r = p.ring().clone();
        let expect = parse_poly(&r, "x1*x3*(x2^2 - 4*x1*x3)").unwrap().primitive();
        assert_eq!(p, expect);
    }

    #[test]
    fn sing_locus_single_vertex() {
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1]])).unwrap();
        let p = sing_locus_gkz(&a).unwrap();
        assert_eq!(p.to_string_canonical(), "x1");
    }

    #[test]
    fn sing_locus_unit_square_axes() {
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]])).unwrap();
        let p = sing_locus_gkz(&a).unwrap();
        assert_eq!(p.to_string_canonical(), "x1*x2");
    }

    #[test]
    fn truncated_system_construction() {
        let breve = IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]);
        let t = TruncatedSystem::new(breve.clone(), 1, vec![Rat::zero()]).unwrap();
        assert_eq!(t.k(), 2);
        assert_eq!(t.oversize_dimension(), 4);
        // k = d rejected
        assert!(TruncatedSystem::new(breve, 2, vec![Rat::zero(), Rat::zero()]).is_err());
    }

    #[test]
    fn truncated_component_dimension() {
        let breve = IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]);
        let t = TruncatedSystem::new(breve, 1, vec![parse_rat("1/2").unwrap()]).unwrap();
        let f = ProjectiveWeight::order_filtration(3);
        let face = Face { members: vec![0, 1, 2], rank: 2 };
        let c = truncated_char_component(&t, &face, &f).unwrap();
        assert_eq!(c.dimension(), 4);
        // β-independence: initial forms drop the constants
        let t2 = TruncatedSystem::new(
            IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]),
            1,
            vec![parse_rat("7").unwrap()],
        )
        .unwrap();
        let c2 = truncated_char_component(&t2, &face, &f).unwrap();
        assert!(c.eq_ideal(&c2));
    }

    #[test]
    fn torus_witness_for_truncated_a2() {
        let breve = IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]);
        let t = TruncatedSystem::new(breve, 1, vec![Rat::zero()]).unwrap();
        let f = ProjectiveWeight::order_filtration(3);
        let w = torus_component_witness(&t, &f).unwrap();
        assert_eq!(w.dimension, 4);
        assert_eq!(w.facet.members, vec![0, 1, 2]);
        assert!(!w.ideal.is_unit());
    }
}
