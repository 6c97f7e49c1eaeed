//! A-graded binomial ideals: cellular decomposition, associated lattices,
//! toral/Andean classification, quasidegree arrangements, the combinatorial
//! holonomicity decision, and the assembly of characteristic varieties and
//! singular loci for binomial modules out of the hypergeometric pieces.
//!
//! Scope: unital-plus-monomial binomial ideals over Q with rational
//! monomial rescalings. Components whose associated primes would need
//! roots of unity (a non-saturated exponent lattice) are flagged; the
//! holonomicity route still handles them through the cellular quasidegrees,
//! but characteristic-variety assembly rejects them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    in_span, lattice_kernel, normalize_rows, rat_rank, IntMatrix, Lattice, PointedMatrix,
};
use crate::hyper::{
    a_discriminant, char_variety_gkz, euler_operators, torus_component_witness, TruncatedSystem,
};
use crate::poly::{squarefree_part, Mono, Poly, PolyIdeal, PolyRing};
use crate::weyl::{gr_ideal, ProjectiveWeight, WeylElement, WeylIdeal};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusClass {
    Toral,
    Andean,
}

/// Is every generator a monomial or a two-term binomial λ∂^u − μ∂^v with
/// Au = Av? Errors on generators that are neither monomial nor binomial.
pub fn is_a_graded(ideal: &PolyIdeal, a: &IntMatrix) -> Result<bool> {
    for g in ideal.gens() {
        let terms: Vec<(&Mono, &Rat)> = g.terms().collect();
        match terms.len() {
            1 => {}
            2 => {
                let u = &terms[0].0 .0;
                let v = &terms[1].0 .0;
                for r in 0..a.rows() {
                    let du: BigInt = (0..a.cols())
                        .map(|j| a.at(r, j) * BigInt::from(u[j]))
                        .sum();
                    let dv: BigInt = (0..a.cols())
                        .map(|j| a.at(r, j) * BigInt::from(v[j]))
                        .sum();
                    if du != dv {
                        return Ok(false);
                    }
                }
            }
            _ => {
                return Err(Error::NonBinomial(g.to_string_canonical()));
            }
        }
    }
    Ok(true)
}

/// A cellular piece of a binomial ideal: variables in the cell are
/// nonzerodivisors modulo the ideal, the others are nilpotent.
#[derive(Clone, Debug)]
pub struct CellularIdeal {
    pub cell: Vec<usize>,
    pub ideal: PolyIdeal,
}

/// Cellular decomposition by the standard saturation/colon splitting.
/// Components are irredundant and deterministically ordered.
pub fn cellular_decomposition(ideal: &PolyIdeal) -> Vec<CellularIdeal> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let mut work = vec![ideal.clone()];
    let mut parts: Vec<CellularIdeal> = Vec::new();
    while let Some(i) = work.pop() {
        if i.is_unit() {
            continue;
        }
        let mut cell = Vec::new();
        let mut saturations = Vec::new();
        for v in 0..n {
            let var = Poly::var(&ring, v);
            let sat = i.saturate_poly(&var);
            let nilpotent = sat.is_unit();
            if !nilpotent {
                cell.push(v);
            }
            saturations.push(sat);
        }
        let prod = cell
            .iter()
            .fold(Poly::one(&ring), |acc, &v| acc.mul(&Poly::var(&ring, v)));
        let sat_cell = if cell.is_empty() {
            i.clone()
        } else {
            i.saturate_poly(&prod)
        };
        if sat_cell.eq_ideal(&i) {
            parts.push(CellularIdeal { cell, ideal: i });
            continue;
        }
        // some cell variable is a zerodivisor: split along the first one
        let v = cell
            .iter()
            .cloned()
            .find(|&v| !saturations[v].eq_ideal(&i))
            .expect("product saturation moved, so a single variable did");
        let var = Poly::var(&ring, v);
        // stabilization exponent: I : x^N = I : x^∞
        let sat = &saturations[v];
        let mut nth = i.clone();
        let mut npow = 0u32;
        while !nth.eq_ideal(sat) {
            nth = nth.quotient_poly(&var);
            npow += 1;
        }
        let mut with_power = i.clone();
        with_power = with_power.sum(&PolyIdeal::new(&ring, vec![var.pow(npow)]));
        work.push(sat.clone());
        work.push(with_power);
    }

    // dedupe
    let mut unique: Vec<CellularIdeal> = Vec::new();
    for p in parts {
        if !unique.iter().any(|q| q.ideal.eq_ideal(&p.ideal)) {
            unique.push(p);
        }
    }
    // prune components containing the intersection of the others
    loop {
        let mut removed = false;
        for j in 0..unique.len() {
            if unique.len() == 1 {
                break;
            }
            let mut inter: Option<PolyIdeal> = None;
            for (k, q) in unique.iter().enumerate() {
                if k == j {
                    continue;
                }
                inter = Some(match inter {
                    None => q.ideal.clone(),
                    Some(acc) => acc.intersect(&q.ideal),
                });
            }
            if let Some(inter) = inter {
                if unique[j].ideal.contains_ideal(&inter) {
                    unique.remove(j);
                    removed = true;
                    break;
                }
            }
        }
        if !removed {
            break;
        }
    }
    unique.sort_by(|a, b| {
        a.cell.cmp(&b.cell).then_with(|| {
            let ga: Vec<String> = a.ideal.gb().iter().map(|g| g.to_string_canonical()).collect();
            let gb: Vec<String> = b.ideal.gb().iter().map(|g| g.to_string_canonical()).collect();
            ga.cmp(&gb)
        })
    });
    unique
}

/// Lattice data of the minimal associated primes of a cellular component:
/// the saturated exponent lattice of I₀ = C ∩ C[∂_σ], the index of the
/// unsaturated lattice inside it (1 means a single rational character),
/// and a rational rescaling when one exists.
#[derive(Clone, Debug)]
pub struct AssociatedLattice {
    pub cell: Vec<usize>,
    /// Saturated lattice in Z^cell (coordinates follow the cell order).
    pub lattice: Lattice,
    /// Index of the exponent lattice in its saturation; > 1 means several
    /// associated primes sharing this lattice, with characters that need
    /// roots of unity over Q.
    pub sat_index: BigInt,
    /// Rescaling c with ∂_i ↦ c_i·∂_i carrying the unital lattice ideal
    /// onto I₀; present exactly when sat_index = 1.
    pub rescale: Option<Vec<Rat>>,
    pub class: TorusClass,
}

/// Toral iff ker_Q(A_σ) ⊆ Q⊗L, i.e. the A-graded Hilbert function of the
/// quotient is bounded. Since A-gradedness forces L ⊆ ker(A_σ), this is
/// the rank condition |σ| − rank L ≤ rank A_σ.
pub fn classify_toral_andean(cell: &[usize], lattice: &Lattice, a: &IntMatrix) -> TorusClass {
    if cell.is_empty() {
        return TorusClass::Toral;
    }
    let rank_a = a.select_cols(cell).rank();
    if cell.len() <= lattice.rank() + rank_a {
        TorusClass::Toral
    } else {
        TorusClass::Andean
    }
}

/// Extract the lattice/character data of a cellular component.
pub fn associated_lattice(c: &CellularIdeal, a: &IntMatrix) -> Result<AssociatedLattice> {
    let m = c.cell.len();
    if m == 0 {
        return Ok(AssociatedLattice {
            cell: Vec::new(),
            lattice: Lattice::zero(0),
            sat_index: BigInt::one(),
            rescale: Some(Vec::new()),
            class: TorusClass::Toral,
        });
    }
    let i0 = c.ideal.project(&c.cell);
    let mut vectors: Vec<Vec<BigInt>> = Vec::new();
    let mut values: Vec<Rat> = Vec::new();
    for g in i0.gb() {
        let terms: Vec<(&Mono, &Rat)> = g.terms().collect();
        if terms.len() != 2 {
            return Err(Error::Unsupported(format!(
                "intersection with the cell ring is not a lattice ideal: generator {}",
                g.to_string_canonical()
            )));
        }
        // monic GB: g = ∂^u + c·∂^v; the relation is ∂^u ≡ (−c)·∂^v
        let order = crate::poly::MonomialOrder::grevlex();
        let (lead, tail) = if order.cmp(terms[0].0, terms[1].0) == std::cmp::Ordering::Greater {
            (terms[0], terms[1])
        } else {
            (terms[1], terms[0])
        };
        let z: Vec<BigInt> = lead
            .0
             .0
            .iter()
            .zip(&tail.0 .0)
            .map(|(&u, &v)| BigInt::from(u) - BigInt::from(v))
            .collect();
        let value = -(tail.1 / lead.1);
        vectors.push(z);
        values.push(value);
    }
    if vectors.is_empty() {
        // I₀ = 0
        return Ok(AssociatedLattice {
            cell: c.cell.clone(),
            lattice: Lattice::zero(m),
            sat_index: BigInt::one(),
            rescale: Some(vec![Rat::one(); m]),
            class: classify_toral_andean(&c.cell, &Lattice::zero(m), a),
        });
    }
    let lattice = Lattice::new(m, vectors.clone());
    let sat = lattice.saturation();
    let sat_index = lattice.index_in_saturation();
    let class = classify_toral_andean(&c.cell, &sat, a);
    let rescale = if sat_index.is_one() {
        Some(solve_rescaling(m, &vectors, &values)?)
    } else {
        None
    };
    Ok(AssociatedLattice { cell: c.cell.clone(), lattice: sat, sat_index, rescale, class })
}

/// Find c ∈ (Q*)^m with ∏_j c_j^{z_j} = ρ(z)^{-1} for every exponent
/// vector z of the lattice ideal, so that ∂_j ↦ c_j∂_j carries the unital
/// lattice ideal onto the given one.
fn solve_rescaling(m: usize, vectors: &[Vec<BigInt>], values: &[Rat]) -> Result<Vec<Rat>> {
    use crate::exact::{invert_unimodular, smith_normal_form};
    let rows = vectors.len();
    let zmat = IntMatrix::new(
        rows,
        m,
        vectors.iter().flatten().cloned().collect(),
    )?;
    let snf = smith_normal_form(&zmat);
    let r = snf.rank();
    // basis of the row lattice: b_k = s_k · (row k of V^{-1}... rows of S·V)
    // values transform along U^{-1}: b = U^{-1}·Z row-wise
    let uinv = invert_unimodular(&snf.u);
    let rpow = |base: &Rat, e: &BigInt| -> Rat {
        let ei = i64::try_from(e).expect("rescaling exponent fits i64");
        let mut acc = Rat::one();
        for _ in 0..ei.unsigned_abs() {
            acc *= base;
        }
        if ei < 0 {
            Rat::one() / acc
        } else {
            acc
        }
    };
    // value on basis vector k of the row lattice
    let mut basis_vals = Vec::with_capacity(r);
    for k in 0..r {
        if !snf.s.at(k, k).is_one() {
            return Err(Error::Unsupported(
                "character extension to the saturated lattice requires roots of unity".into(),
            ));
        }
        let mut v = Rat::one();
        for l in 0..rows {
            let e = uinv.at(k, l);
            if !e.is_zero() {
                v *= rpow(&values[l], e);
            }
        }
        basis_vals.push(v);
    }
    // with s = identity on the first r slots, y = (w', 1, …, 1) where
    // w'_k = ρ(b_k)^{-1}; then c_j = ∏_l y_l^{(V^{-1})_{j l}}
    let vinv = invert_unimodular(&snf.v);
    let mut c = Vec::with_capacity(m);
    for j in 0..m {
        let mut cj = Rat::one();
        for (k, bv) in basis_vals.iter().enumerate() {
            let e = vinv.at(j, k);
            if !e.is_zero() {
                let w = Rat::one() / bv.clone();
                cj *= rpow(&w, e);
            }
        }
        c.push(cj);
    }
    // verify: c^z · values[l] = 1 for every generator
    for (z, val) in vectors.iter().zip(values) {
        let mut acc = Rat::one();
        for (j, e) in z.iter().enumerate() {
            if !e.is_zero() {
                acc *= rpow(&c[j], e);
            }
        }
        if acc * val != Rat::one() {
            return Err(Error::Unsupported(
                "no rational rescaling matches the component's character".into(),
            ));
        }
    }
    Ok(c)
}

/// A piece of a quasidegree set: offset + C-span(directions) ⊆ C^d.
#[derive(Clone, Debug)]
pub struct QdPiece {
    pub offset: Vec<Rat>,
    pub directions: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, Default)]
pub struct QuasidegreeSet {
    pub pieces: Vec<QdPiece>,
}

impl QuasidegreeSet {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.pieces.iter().any(|p| {
            let shifted: Vec<Rat> = point
                .iter()
                .zip(&p.offset)
                .map(|(a, b)| a - b)
                .collect();
            in_span(&p.directions, &shifted)
        })
    }

    fn push_pruned(&mut self, piece: QdPiece) {
        // drop the new piece if an existing one contains it, and evict
        // existing pieces contained in the new one
        let contains = |big: &QdPiece, small: &QdPiece| -> bool {
            if rat_rank(&small.directions)
                != {
                    let mut all = big.directions.clone();
                    all.extend(small.directions.iter().cloned());
                    rat_rank(&all)
                }
            {
                // directions of small not inside big's span
            }
            let dir_ok = small
                .directions
                .iter()
                .all(|v| in_span(&big.directions, v));
            if !dir_ok {
                return false;
            }
            let shifted: Vec<Rat> = small
                .offset
                .iter()
                .zip(&big.offset)
                .map(|(a, b)| a - b)
                .collect();
            in_span(&big.directions, &shifted)
        };
        if self.pieces.iter().any(|p| contains(p, &piece)) {
            return;
        }
        self.pieces.retain(|p| !contains(&piece, p));
        self.pieces.push(piece);
    }
}

/// Quasidegrees of C[∂]/C for a cellular C: for every standard monomial
/// ∂^m in the nilpotent variables, a piece −A·m + span(columns of A_σ).
pub fn quasidegrees(c: &CellularIdeal, a: &IntMatrix) -> QuasidegreeSet {
    let ring = c.ideal.ring().clone();
    let n = ring.nvars();
    let d = a.rows();
    let mut set = QuasidegreeSet::default();
    if c.ideal.is_unit() {
        return set;
    }
    let complement: Vec<usize> = (0..n).filter(|v| !c.cell.contains(v)).collect();
    // nilpotency orders bound the enumeration
    let mut orders = Vec::with_capacity(complement.len());
    for &v in &complement {
        let var = Poly::var(&ring, v);
        let mut pow = var.clone();
        let mut ord = 1u32;
        while !c.ideal.contains(&pow) {
            pow = pow.mul(&var);
            ord += 1;
            assert!(
                ord <= 512,
                "nilpotency order of a non-cell variable exceeds 512; malformed input"
            );
        }
        orders.push(ord);
    }
    let directions: Vec<Vec<Rat>> = c
        .cell
        .iter()
        .map(|&j| (0..d).map(|i| Rat::from(a.at(i, j).clone())).collect())
        .collect();
    // odometer over exponents below the nilpotency orders
    let mut exps = vec![0u32; complement.len()];
    loop {
        let mono = {
            let mut e = vec![0u32; n];
            for (idx, &v) in complement.iter().enumerate() {
                e[v] = exps[idx];
            }
            Poly::term(&ring, Mono(e), Rat::one())
        };
        if !c.ideal.contains(&mono) {
            let offset: Vec<Rat> = (0..d)
                .map(|i| {
                    -complement
                        .iter()
                        .enumerate()
                        .map(|(idx, &j)| Rat::from(a.at(i, j).clone() * BigInt::from(exps[idx])))
                        .sum::<Rat>()
                })
                .collect();
            set.push_pruned(QdPiece { offset, directions: directions.clone() });
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == complement.len() {
                break;
            }
            if exps[pos] + 1 < orders[pos] {
                exps[pos] += 1;
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
        if pos == complement.len() {
            break;
        }
    }
    set
}

/// A fully analyzed cellular component.
#[derive(Clone, Debug)]
pub struct CellularComponent {
    pub cell: Vec<usize>,
    pub ideal: PolyIdeal,
    pub lattice: AssociatedLattice,
    pub quasidegrees: QuasidegreeSet,
}

impl CellularComponent {
    pub fn multiple_characters(&self) -> bool {
        !self.lattice.sat_index.is_one()
    }
}

/// The holonomicity verdict with its supporting data.
#[derive(Clone, Debug)]
pub struct HolonomyReport {
    pub holonomic: bool,
    /// Union of the quasidegree sets of the Andean components.
    pub andean_arrangement: QuasidegreeSet,
    /// Components whose lattice carries several characters; their
    /// arrangement contribution uses the cellular quasidegrees.
    pub flagged_components: Vec<usize>,
    pub components: Vec<CellularComponent>,
}

/// A binomial D-module specification D/(I, E_A − β).
#[derive(Clone, Debug)]
pub struct BinomialModuleSpec {
    a: PointedMatrix,
    ideal: PolyIdeal,
    beta: Vec<Rat>,
}

impl BinomialModuleSpec {
    pub fn new(a: PointedMatrix, gens: Vec<Poly>, beta: Vec<Rat>) -> Result<Self> {
        if beta.len() != a.rows() {
            return Err(Error::Shape("beta length must equal the row count".into()));
        }
        let n = a.cols();
        let ring = PolyRing::ds(n);
        for g in &gens {
            if !crate::poly::same_ring(g.ring(), &ring) {
                return Err(Error::Shape(
                    "binomial generators must live in d1..dn".into(),
                ));
            }
        }
        let ideal = PolyIdeal::new(&ring, gens);
        if !is_a_graded(&ideal, a.matrix())? {
            return Err(Error::NotGraded(
                "a binomial generator has mismatched A-degrees".into(),
            ));
        }
        Ok(BinomialModuleSpec { a, ideal, beta })
    }

    pub fn matrix(&self) -> &PointedMatrix {
        &self.a
    }

    pub fn ideal(&self) -> &PolyIdeal {
        &self.ideal
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    pub fn nvars(&self) -> usize {
        self.a.cols()
    }

    /// The assembled left ideal D·(I, E_A − β).
    pub fn weyl_ideal(&self) -> WeylIdeal {
        let n = self.nvars();
        let mut gens: Vec<WeylElement> = self
            .ideal
            .gens()
            .iter()
            .map(WeylElement::from_d_poly)
            .collect();
        gens.extend(euler_operators(self.a.matrix(), &self.beta).expect("validated lengths"));
        WeylIdeal::new(n, gens)
    }

    /// Cellular components with lattices, classes, and quasidegrees.
    pub fn components(&self) -> Result<Vec<CellularComponent>> {
        let mut out = Vec::new();
        for c in cellular_decomposition(&self.ideal) {
            let lattice = associated_lattice(&c, self.a.matrix())?;
            let quasidegrees = quasidegrees(&c, self.a.matrix());
            out.push(CellularComponent { cell: c.cell, ideal: c.ideal, lattice, quasidegrees });
        }
        Ok(out)
    }

    /// The combinatorial holonomicity test: holonomic iff −β avoids the
    /// Andean arrangement.
    pub fn holonomy_report(&self) -> Result<HolonomyReport> {
        let components = self.components()?;
        let mut arrangement = QuasidegreeSet::default();
        let mut flagged = Vec::new();
        for (idx, c) in components.iter().enumerate() {
            if c.lattice.class == TorusClass::Andean {
                for p in &c.quasidegrees.pieces {
                    arrangement.push_pruned(p.clone());
                }
                if c.multiple_characters() {
                    flagged.push(idx);
                }
            }
        }
        let minus_beta: Vec<Rat> = self.beta.iter().map(|b| -b.clone()).collect();
        let holonomic = !arrangement.contains(&minus_beta);
        Ok(HolonomyReport {
            holonomic,
            andean_arrangement: arrangement,
            flagged_components: flagged,
            components,
        })
    }

    pub fn is_holonomic(&self) -> Result<bool> {
        Ok(self.holonomy_report()?.holonomic)
    }

    /// Toral components whose quasidegrees contain −β (the contributing
    /// components of the characteristic-variety description).
    fn contributing_toral(&self, report: &HolonomyReport) -> Vec<usize> {
        let minus_beta: Vec<Rat> = self.beta.iter().map(|b| -b.clone()).collect();
        report
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                c.lattice.class == TorusClass::Toral && c.quasidegrees.contains(&minus_beta)
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// The L-characteristic variety of a holonomic binomial module: the
    /// rescaled hypergeometric components of the contributing toral
    /// primes, pushed into the full cotangent ring.
    pub fn char_variety(&self, l: &ProjectiveWeight) -> Result<Vec<BinomialCharComponent>> {
        let report = self.holonomy_report()?;
        if !report.holonomic {
            return Err(Error::NotHolonomic);
        }
        let n = self.nvars();
        let ring = PolyRing::cotangent(n);
        let mut out: Vec<BinomialCharComponent> = Vec::new();
        for idx in self.contributing_toral(&report) {
            let comp = &report.components[idx];
            if comp.multiple_characters() {
                return Err(Error::Unsupported(
                    "a contributing toral component carries characters that need roots of unity"
                        .into(),
                ));
            }
            let cell = comp.cell.clone();
            if cell.is_empty() {
                // the prime is ⟨∂_1,…,∂_n⟩: the component is the zero section
                let ideal =
                    PolyIdeal::new(&ring, (0..n).map(|i| Poly::var(&ring, n + i)).collect());
                push_component(
                    &mut out,
                    BinomialCharComponent {
                        cell,
                        face: Vec::new(),
                        dimension: ideal.dimension(),
                        ideal,
                    },
                );
                continue;
            }
            let m = cell.len();
            let a_sigma = self.a.matrix().select_cols(&cell);
            let (a_norm, _g) = normalize_rows(&a_sigma);
            let a_p = PointedMatrix::new(a_norm).expect("normalized face matrix is pointed");
            let l_sigma = l.restrict(&cell);
            let rescale = comp
                .lattice
                .rescale
                .clone()
                .expect("single-character component has a rescaling");
            // variable map: local x_j ↦ x_{cell[j]}, local ξ_j ↦ ξ_{cell[j]}
            let mut map = Vec::with_capacity(2 * m);
            map.extend(cell.iter().cloned());
            map.extend(cell.iter().map(|&j| n + j));
            // rescaling on the global ring: x_i ↦ c^{-1}x_i, ξ_i ↦ c·ξ_i
            let mut scale = vec![Rat::one(); 2 * n];
            for (j, &i) in cell.iter().enumerate() {
                scale[i] = Rat::one() / rescale[j].clone();
                scale[n + i] = rescale[j].clone();
            }
            for local in char_variety_gkz(&a_p, &l_sigma)? {
                let mut gens: Vec<Poly> = local
                    .ideal
                    .gens()
                    .iter()
                    .map(|g| g.embed(&ring, &map).rescale_vars(&scale).primitive())
                    .collect();
                for i in 0..n {
                    if !cell.contains(&i) {
                        gens.push(Poly::var(&ring, n + i));
                    }
                }
                let ideal = PolyIdeal::new(&ring, gens);
                let dimension = ideal.dimension();
                let face: Vec<usize> = local.face.members.iter().map(|&j| cell[j]).collect();
                push_component(
                    &mut out,
                    BinomialCharComponent { cell: cell.clone(), face, dimension, ideal },
                );
            }
        }
        out.sort_by(|a, b| (&a.cell, &a.face).cmp(&(&b.cell, &b.face)));
        Ok(out)
    }

    /// The divisorial singular locus of a holonomic binomial module: the
    /// squarefree product of the rescaled face discriminants over the
    /// contributing toral primes.
    pub fn sing_locus(&self) -> Result<Poly> {
        let report = self.holonomy_report()?;
        if !report.holonomic {
            return Err(Error::NotHolonomic);
        }
        let n = self.nvars();
        let xr = PolyRing::xs(n);
        let mut prod = Poly::one(&xr);
        for idx in self.contributing_toral(&report) {
            let comp = &report.components[idx];
            if comp.multiple_characters() {
                return Err(Error::Unsupported(
                    "a contributing toral component carries characters that need roots of unity"
                        .into(),
                ));
            }
            let cell = &comp.cell;
            if cell.is_empty() {
                continue;
            }
            let a_sigma = self.a.matrix().select_cols(cell);
            let (a_norm, _g) = normalize_rows(&a_sigma);
            let a_p = PointedMatrix::new(a_norm.clone()).expect("normalized matrix is pointed");
            let f_local = ProjectiveWeight::order_filtration(cell.len());
            let u = crate::geom::l_umbrella(&a_p, &f_local)?;
            let rescale = comp
                .lattice
                .rescale
                .clone()
                .expect("single-character component has a rescaling");
            let mut scale = vec![Rat::one(); n];
            for (j, &i) in cell.iter().enumerate() {
                scale[i] = Rat::one() / rescale[j].clone();
            }
            for face in u.faces() {
                if face.members.is_empty() {
                    continue;
                }
                let disc = a_discriminant(&a_norm.select_cols(&face.members));
                if disc.trivial {
                    continue;
                }
                let global: Vec<usize> = face.members.iter().map(|&j| cell[j]).collect();
                let embedded = disc.poly.embed(&xr, &global).rescale_vars(&scale);
                prod = prod.mul(&embedded);
            }
        }
        if prod.is_constant() {
            return Ok(Poly::one(&xr));
        }
        Ok(squarefree_part(&prod))
    }

    /// Holonomicity and L-holonomicity coincide; in verification mode the
    /// direct Weyl computation of dim gr^L must agree or the call fails.
    pub fn is_l_holonomic(&self, l: &ProjectiveWeight, verify: bool) -> Result<bool> {
        let holonomic = self.is_holonomic()?;
        if verify {
            let n = self.nvars();
            let dim = gr_ideal(&self.weyl_ideal(), l).dimension();
            let direct = dim == -1 || dim == n as i64;
            if direct != holonomic {
                return Err(Error::VerificationMismatch(format!(
                    "combinatorial holonomicity {} but dim gr^L = {} in {} variables",
                    holonomic, dim, n
                )));
            }
        }
        Ok(holonomic)
    }

    /// For a non-holonomic module, produce an oversized component meeting
    /// the cotangent torus, through the truncated system of an Andean
    /// component with −β in its quasidegrees.
    pub fn andean_torus_witness(&self, l: &ProjectiveWeight) -> Result<AndeanWitness> {
        let report = self.holonomy_report()?;
        if report.holonomic {
            return Err(Error::WitnessNotFound(
                "the module is holonomic; no oversized component exists".into(),
            ));
        }
        let minus_beta: Vec<Rat> = self.beta.iter().map(|b| -b.clone()).collect();
        let n = self.nvars();
        let ring = PolyRing::cotangent(n);
        for comp in &report.components {
            if comp.lattice.class != TorusClass::Andean
                || !comp.quasidegrees.contains(&minus_beta)
            {
                continue;
            }
            let cell = &comp.cell;
            let m = cell.len();
            debug_assert!(m > 0, "the empty cell is toral");
            let a_sigma = self.a.matrix().select_cols(cell);
            let (a_norm, _g) = normalize_rows(&a_sigma);
            let r = a_norm.rows();
            let k = m - comp.lattice.lattice.rank();
            let l_sigma = l.restrict(cell);
            let map: Vec<usize> = cell
                .iter()
                .cloned()
                .chain(cell.iter().map(|&j| n + j))
                .collect();
            let (local_ideal, local_dim, facet_local) = if k < m {
                // extend the grading rows to a full-rank k×m matrix whose
                // kernel is the component's lattice
                let breve = extend_to_truncated(&a_norm, &comp.lattice.lattice)?;
                let beta_local = vec![Rat::zero(); r];
                let t = TruncatedSystem::new(breve, r, beta_local)?;
                let w = torus_component_witness(&t, &l_sigma)?;
                (w.ideal, w.dimension, w.facet.members)
            } else {
                // zero lattice: only the Euler forms cut the component
                let lring = PolyRing::cotangent(m);
                let mut gens = Vec::new();
                for e in euler_operators(&a_norm, &vec![Rat::zero(); r])? {
                    gens.push(e.initial_form(&l_sigma)?);
                }
                let ideal = PolyIdeal::new(&lring, gens);
                let all = (0..2 * m).fold(Poly::one(&lring), |acc, i| {
                    acc.mul(&Poly::var(&lring, i))
                });
                let sat = ideal.saturate_poly(&all);
                let dim = sat.dimension();
                ((sat), dim, (0..m).collect())
            };
            // embed: free x off the cell, ξ off the cell forced to zero
            let mut gens: Vec<Poly> = local_ideal
                .gens()
                .iter()
                .map(|g| g.embed(&ring, &map))
                .collect();
            for i in 0..n {
                if !cell.contains(&i) {
                    gens.push(Poly::var(&ring, n + i));
                }
            }
            let ideal = PolyIdeal::new(&ring, gens);
            let dimension = local_dim + (n - m) as i64;
            let facet: Vec<usize> = facet_local.iter().map(|&j| cell[j]).collect();
            return Ok(AndeanWitness { cell: cell.clone(), facet, ideal, dimension });
        }
        Err(Error::WitnessNotFound(
            "no Andean component contains −β in its quasidegrees".into(),
        ))
    }
}

/// Oversized-component witness for a non-holonomic binomial module.
#[derive(Clone, Debug)]
pub struct AndeanWitness {
    pub cell: Vec<usize>,
    pub facet: Vec<usize>,
    pub ideal: PolyIdeal,
    pub dimension: i64,
}

/// One component of the characteristic variety of a binomial module,
/// remembering which cell and which umbrella face produced it.
#[derive(Clone, Debug)]
pub struct BinomialCharComponent {
    pub cell: Vec<usize>,
    pub face: Vec<usize>,
    pub dimension: i64,
    pub ideal: PolyIdeal,
}

fn push_component(out: &mut Vec<BinomialCharComponent>, c: BinomialCharComponent) {
    if !out.iter().any(|e| e.ideal.eq_ideal(&c.ideal)) {
        out.push(c);
    }
}

/// Stack rows from the orthogonal complement of the lattice on top of the
/// grading rows until the kernel is exactly the lattice.
fn extend_to_truncated(a_norm: &IntMatrix, lattice: &Lattice) -> Result<IntMatrix> {
    let m = a_norm.cols();
    let k = m - lattice.rank();
    let orth = if lattice.basis().is_empty() {
        // k = m; the caller handles this case separately
        return Err(Error::Shape("zero lattice needs no truncated system".into()));
    } else {
        lattice_kernel(&lattice.basis_matrix())
    };
    let mut rows: Vec<Vec<BigInt>> = (0..a_norm.rows()).map(|i| a_norm.row(i)).collect();
    let rank_of = |rows: &[Vec<BigInt>]| -> usize {
        let flat: Vec<BigInt> = rows.iter().flatten().cloned().collect();
        IntMatrix::new(rows.len(), m, flat).map(|mm| mm.rank()).unwrap_or(0)
    };
    let mut rank = rank_of(&rows);
    for cand in orth.basis() {
        if rank == k {
            break;
        }
        let mut with = rows.clone();
        with.push(cand.clone());
        let nr = rank_of(&with);
        if nr > rank {
            rows = with;
            rank = nr;
        }
    }
    if rank != k {
        return Err(Error::Shape(
            "could not extend the grading to the lattice's orthogonal complement".into(),
        ));
    }
    IntMatrix::new(rows.len(), m, rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rat;
    use crate::poly::parse_poly;

    fn a2() -> PointedMatrix {
        PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]])).unwrap()
    }

    fn a1() -> PointedMatrix {
        PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 1]])).unwrap()
    }

    fn ideal_in_ds(n: usize, gens: &[&str]) -> PolyIdeal {
        let r = PolyRing::ds(n);
        PolyIdeal::new(&r, gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect())
    }

    #[test]
    fn graded_checks() {
        let i = ideal_in_ds(3, &["d1*d3 - d2^2"]);
        assert!(is_a_graded(&i, a2().matrix()).unwrap());
        let j = ideal_in_ds(3, &["d1 - d3"]);
        assert!(!is_a_graded(&j, a2().matrix()).unwrap());
        let k = ideal_in_ds(2, &["d1^2 - d1*d2"]);
        assert!(is_a_graded(&k, &IntMatrix::from_rows(&[vec![1, 1]])).unwrap());
        let bad = ideal_in_ds(2, &["d1 + d2 + 1"]);
        assert!(is_a_graded(&bad, &IntMatrix::from_rows(&[vec![1, 1]])).is_err());
    }

    #[test]
    fn cellular_decomposition_of_spec_example() {
        let i = ideal_in_ds(2, &["d1^2 - d1*d2"]);
        let parts = cellular_decomposition(&i);
        assert_eq!(parts.len(), 2);
        // sorted by cell: <d1> has cell {1}, <d1 - d2> has cell {0, 1}
        assert_eq!(parts[0].cell, vec![0, 1]);
        assert!(parts[0].ideal.eq_ideal(&ideal_in_ds(2, &["d1 - d2"])));
        assert_eq!(parts[1].cell, vec![1]);
        assert!(parts[1].ideal.eq_ideal(&ideal_in_ds(2, &["d1"])));
        // intersection reproduces the input
        let inter = parts[0].ideal.intersect(&parts[1].ideal);
        assert!(inter.eq_ideal(&i));
    }

    #[test]
    fn cellular_decomposition_of_prime_is_itself() {
        let i = ideal_in_ds(3, &["d1*d3 - d2^2"]);
        let parts = cellular_decomposition(&i);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].cell, vec![0, 1, 2]);
        assert!(parts[0].ideal.eq_ideal(&i));
    }

    #[test]
    fn cellular_decomposition_principal_partial() {
        let i = ideal_in_ds(2, &["d1"]);
        let parts = cellular_decomposition(&i);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].cell, vec![1]);
    }

    #[test]
    fn associated_lattices() {
        // <d1 - d2> on cell {0,1}: lattice Z(1,-1)
        let i = ideal_in_ds(2, &["d1 - d2"]);
        let parts = cellular_decomposition(&i);
        let lat = associated_lattice(&parts[0], &IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        assert_eq!(lat.lattice.rank(), 1);
        assert!(lat
            .lattice
            .contains(&[BigInt::from(1), BigInt::from(-1)]));
        assert!(lat.sat_index.is_one());
        assert_eq!(lat.class, TorusClass::Toral);

        // toric of A2 graded by A1: lattice Z(1,-2,1), Andean
        let j = ideal_in_ds(3, &["d1*d3 - d2^2"]);
        let pj = cellular_decomposition(&j);
        let lj = associated_lattice(&pj[0], a1().matrix()).unwrap();
        assert_eq!(lj.lattice.rank(), 1);
        assert!(lj
            .lattice
            .contains(&[BigInt::from(1), BigInt::from(-2), BigInt::from(1)]));
        assert_eq!(lj.class, TorusClass::Andean);
        // same lattice graded by A2 is toral
        let lk = associated_lattice(&pj[0], a2().matrix()).unwrap();
        assert_eq!(lk.class, TorusClass::Toral);

        // <d1> in two variables: zero lattice on cell {1}
        let k = ideal_in_ds(2, &["d1"]);
        let pk = cellular_decomposition(&k);
        let lk = associated_lattice(&pk[0], &IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        assert_eq!(lk.lattice.rank(), 0);
        assert_eq!(lk.class, TorusClass::Toral);
    }

    #[test]
    fn rescaling_of_non_unital_component() {
        // <d1 - 2 d2>: character value 2 on (1,-1); a rescaling exists
        let i = ideal_in_ds(2, &["d1 - 2*d2"]);
        let parts = cellular_decomposition(&i);
        let lat = associated_lattice(&parts[0], &IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        let c = lat.rescale.clone().unwrap();
        // substituting d_i -> c_i d_i into d1 - d2 recovers the ideal
        let r = PolyRing::ds(2);
        let unital = parse_poly(&r, "d1 - d2").unwrap().rescale_vars(&c);
        assert!(parts[0].ideal.contains(&unital.primitive()));
    }

    #[test]
    fn quasidegree_examples() {
        // C[∂]/<d1 d3 - d2^2> graded by A1: all of C
        let i = ideal_in_ds(3, &["d1*d3 - d2^2"]);
        let parts = cellular_decomposition(&i);
        let q = quasidegrees(&parts[0], a1().matrix());
        assert_eq!(q.pieces.len(), 1);
        assert!(q.contains(&[parse_rat("-7/3").unwrap()]));

        // C[d1,d2]/<d1> graded by the identity: the line through -a2
        let j = ideal_in_ds(2, &["d1"]);
        let pj = cellular_decomposition(&j);
        let qj = quasidegrees(&pj[0], &IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(qj.pieces.len(), 1);
        assert!(qj.contains(&[Rat::zero(), parse_rat("-5").unwrap()]));
        assert!(!qj.contains(&[Rat::one(), Rat::zero()]));

        // zero module
        let u = ideal_in_ds(1, &["1"]);
        let pu = cellular_decomposition(&u);
        assert!(pu.is_empty());
    }

    #[test]
    fn holonomic_examples() {
        let beta2 = vec![parse_rat("1").unwrap(), parse_rat("1/2").unwrap()];
        // toric A2 graded by A2: holonomic for any beta
        let s = BinomialModuleSpec::new(
            a2(),
            vec![parse_poly(&PolyRing::ds(3), "d1*d3 - d2^2").unwrap()],
            beta2,
        )
        .unwrap();
        assert!(s.is_holonomic().unwrap());

        // the same ideal graded by A1: Andean arrangement is everything
        let s2 = BinomialModuleSpec::new(
            a1(),
            vec![parse_poly(&PolyRing::ds(3), "d1*d3 - d2^2").unwrap()],
            vec![parse_rat("1/2").unwrap()],
        )
        .unwrap();
        assert!(!s2.is_holonomic().unwrap());

        // <d1^2 - d1 d2> with A = [1,1]: both components toral
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        let s3 = BinomialModuleSpec::new(
            a,
            vec![parse_poly(&PolyRing::ds(2), "d1^2 - d1*d2").unwrap()],
            vec![parse_rat("1/2").unwrap()],
        )
        .unwrap();
        assert!(s3.is_holonomic().unwrap());
    }

    #[test]
    fn unit_ideal_is_holonomic_zero_module() {
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        let s = BinomialModuleSpec::new(
            a,
            vec![parse_poly(&PolyRing::ds(2), "1").unwrap()],
            vec![Rat::zero()],
        )
        .unwrap();
        assert!(s.is_holonomic().unwrap());
        assert!(s.char_variety(&ProjectiveWeight::order_filtration(2)).unwrap().is_empty());
    }

    #[test]
    fn char_variety_of_toric_spec_matches_gkz() {
        let beta = vec![parse_rat("1").unwrap(), parse_rat("1/2").unwrap()];
        let s = BinomialModuleSpec::new(
            a2(),
            vec![parse_poly(&PolyRing::ds(3), "d1*d3 - d2^2").unwrap()],
            beta,
        )
        .unwrap();
        let f = ProjectiveWeight::order_filtration(3);
        let comps = s.char_variety(&f).unwrap();
        let gkz = char_variety_gkz(&a2(), &f).unwrap();
        assert_eq!(comps.len(), gkz.len());
        for (c, g) in comps.iter().zip(&gkz) {
            assert!(c.ideal.eq_ideal(&g.ideal));
            assert_eq!(c.dimension, 3);
        }
    }

    #[test]
    fn is_l_holonomic_with_verification() {
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        let s = BinomialModuleSpec::new(
            a,
            vec![parse_poly(&PolyRing::ds(2), "d1^2 - d1*d2").unwrap()],
            vec![parse_rat("-3").unwrap()],
        )
        .unwrap();
        let f = ProjectiveWeight::order_filtration(2);
        assert!(s.is_l_holonomic(&f, true).unwrap());
    }

    #[test]
    fn non_holonomic_witness_has_oversized_torus_component() {
        let s = BinomialModuleSpec::new(
            a1(),
            vec![parse_poly(&PolyRing::ds(3), "d1*d3 - d2^2").unwrap()],
            vec![parse_rat("1/2").unwrap()],
        )
        .unwrap();
        let f = ProjectiveWeight::order_filtration(3);
        assert!(!s.is_l_holonomic(&f, true).unwrap());
        let w = s.andean_torus_witness(&f).unwrap();
        assert_eq!(w.dimension, 4);
        assert!(!w.ideal.is_unit());
    }
}
