//! Exact integer and rational linear algebra.
//!
//! Matrices carry arbitrary-precision entries; normal forms, kernels, and
//! feasibility certificates are all computed without any rounding. The
//! Smith normal form drives lattice kernels and the lattice-spanning test,
//! and pointedness is decided by Fourier–Motzkin elimination over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// A rectangular matrix with arbitrary-precision integer entries,
/// stored row-major. JSON interchange goes through decimal strings,
/// see [`crate::io`].
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|&e| BigInt::from(e)).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix {
            rows: n,
            cols: n,
            entries: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> IntMatrix {
        let entries = (0..self.rows)
            .flat_map(|i| keep.iter().map(move |&j| self.at(i, j).clone()))
            .collect();
        IntMatrix { rows: self.rows, cols: keep.len(), entries }
    }

    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let entries = keep
            .iter()
            .flat_map(|&i| (0..self.cols).map(move |j| self.at(i, j).clone()))
            .collect();
        IntMatrix { rows: keep.len(), cols: self.cols, entries }
    }

    pub fn stack_rows(&self, below: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != below.cols {
            return Err(Error::Shape("stack_rows: column counts differ".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        Ok(IntMatrix { rows: self.rows + below.rows, cols: self.cols, entries })
    }

    pub fn transpose(&self) -> IntMatrix {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| self.at(i, j).clone()))
            .collect();
        IntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: vec![BigInt::zero(); self.rows * rhs.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_vec_rat(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Rat::from(self.at(i, j).clone()) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of the Smith normal form: `u * m * v = s` with `u`, `v`
/// unimodular and `s` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        let n = self.s.rows.min(self.s.cols);
        (0..n).take_while(|&i| !self.s.at(i, i).is_zero()).count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s.at(i, i).clone()).collect()
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient minimizing |a - q*b|
    let (q, r) = a.div_rem(b);
    if (&r * 2u8).abs() > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Smith normal form over Z. Returns unimodular `u`, `v` and the diagonal
/// `s` with s_1 | s_2 | ... and all diagonal entries nonnegative.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for j in 0..s.cols {
            let tmp = s.at(a, j).clone();
            *s.at_mut(a, j) = s.at(b, j).clone();
            *s.at_mut(b, j) = tmp;
        }
        for j in 0..u.cols {
            let tmp = u.at(a, j).clone();
            *u.at_mut(a, j) = u.at(b, j).clone();
            *u.at_mut(b, j) = tmp;
        }
    };
    let swap_cols = |s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..s.rows {
            let tmp = s.at(i, a).clone();
            *s.at_mut(i, a) = s.at(i, b).clone();
            *s.at_mut(i, b) = tmp;
        }
        for i in 0..v.rows {
            let tmp = v.at(i, a).clone();
            *v.at_mut(i, a) = v.at(i, b).clone();
            *v.at_mut(i, b) = tmp;
        }
    };
    // row_i -= q * row_k  (on s and u)
    let row_sub = |s: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for j in 0..s.cols {
            let sub = q * s.at(k, j);
            *s.at_mut(i, j) -= sub;
        }
        for j in 0..u.cols {
            let sub = q * u.at(k, j);
            *u.at_mut(i, j) -= sub;
        }
    };
    let col_sub = |s: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for i in 0..s.rows {
            let sub = q * s.at(i, k);
            *s.at_mut(i, j) -= sub;
        }
        for i in 0..v.rows {
            let sub = q * v.at(i, k);
            *v.at_mut(i, j) -= sub;
        }
    };

    let mut t = 0usize;
    while t < rows.min(cols) {
        // locate a pivot: nonzero entry of minimal absolute value
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s.at(i, j).is_zero() {
                    match &pivot {
                        Some((pi, pj)) if s.at(*pi, *pj).abs() <= s.at(i, j).abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut s, &mut u, t, pi);
        swap_cols(&mut s, &mut v, t, pj);

        'pivot: loop {
            // clear the pivot column
            for i in t + 1..rows {
                if !s.at(i, t).is_zero() {
                    let q = div_round(s.at(i, t), s.at(t, t));
                    row_sub(&mut s, &mut u, i, t, &q);
                    if !s.at(i, t).is_zero() {
                        swap_rows(&mut s, &mut u, t, i);
                        continue 'pivot;
                    }
                }
            }
            // clear the pivot row
            for j in t + 1..cols {
                if !s.at(t, j).is_zero() {
                    let q = div_round(s.at(t, j), s.at(t, t));
                    col_sub(&mut s, &mut v, j, t, &q);
                    if !s.at(t, j).is_zero() {
                        swap_cols(&mut s, &mut v, t, j);
                        continue 'pivot;
                    }
                }
            }
            // enforce divisibility on the remaining block
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(s.at(i, j) % s.at(t, t)).is_zero() {
                        let minus_one = -BigInt::one();
                        row_sub(&mut s, &mut u, t, i, &minus_one); // row_t += row_i
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if s.at(t, t).sign() == num_bigint::Sign::Minus {
            for j in 0..cols {
                let val = -s.at(t, j).clone();
                *s.at_mut(t, j) = val;
            }
            for j in 0..rows {
                let val = -u.at(t, j).clone();
                *u.at_mut(t, j) = val;
            }
        }
        t += 1;
    }

    SmithForm { u, s, v }
}

/// True iff the columns of `m` span the full lattice Z^rows, i.e. every
/// invariant factor equals 1.
pub fn spans_lattice(m: &IntMatrix) -> bool {
    let snf = smith_normal_form(m);
    snf.rank() == m.rows && snf.invariant_factors().iter().all(|f| f.is_one())
}

/// A finitely generated sublattice of Z^ambient given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new(ambient: usize, basis: Vec<Vec<BigInt>>) -> Self {
        assert!(basis.iter().all(|b| b.len() == ambient));
        Lattice { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        if self.basis.is_empty() {
            return 0;
        }
        self.basis_matrix().rank()
    }

    /// Basis vectors as rows.
    pub fn basis_matrix(&self) -> IntMatrix {
        assert!(!self.basis.is_empty());
        let entries = self.basis.iter().flatten().cloned().collect();
        IntMatrix { rows: self.basis.len(), cols: self.ambient, entries }
    }

    /// The saturation (Q-span intersected with Z^ambient), computed as the
    /// integer kernel of a basis of the orthogonal complement.
    pub fn saturation(&self) -> Lattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let orth = lattice_kernel(&self.basis_matrix());
        if orth.basis.is_empty() {
            // full rank: saturation is all of Z^ambient
            let basis = (0..self.ambient)
                .map(|i| {
                    let mut e = vec![BigInt::zero(); self.ambient];
                    e[i] = BigInt::one();
                    e
                })
                .collect();
            return Lattice { ambient: self.ambient, basis };
        }
        lattice_kernel(&orth.basis_matrix())
    }

    /// Index of this lattice inside its saturation: the product of the
    /// invariant factors of the basis matrix. Returns 1 for the zero lattice.
    pub fn index_in_saturation(&self) -> BigInt {
        if self.basis.is_empty() {
            return BigInt::one();
        }
        smith_normal_form(&self.basis_matrix())
            .invariant_factors()
            .into_iter()
            .product()
    }

    /// Membership test over Z.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(|e| e.is_zero()) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        // solve x * B = v over Z via the Smith form of B
        let b = self.basis_matrix();
        let snf = smith_normal_form(&b);
        // x * B = v  =>  x * U^-1 S V^-1 = v  =>  (x U^-1) S = v V
        let vv = {
            let vm = IntMatrix { rows: 1, cols: v.len(), entries: v.to_vec() };
            vm.mul(&snf.v)
        };
        let r = snf.rank();
        for j in 0..b.cols {
            if j < r {
                if !(vv.at(0, j) % snf.s.at(j, j)).is_zero() {
                    return false;
                }
            } else if !vv.at(0, j).is_zero() {
                return false;
            }
        }
        true
    }
}

/// Basis of the full integer kernel {z : m·z = 0}; saturated by construction.
pub fn lattice_kernel(m: &IntMatrix) -> Lattice {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let basis = (r..m.cols).map(|j| snf.v.col(j)).collect();
    Lattice { ambient: m.cols, basis }
}

/// Outcome of the pointedness test: either a certificate `h` with
/// `h·a_i > 0` for every column, or a Farkas witness `lambda >= 0`,
/// `lambda != 0`, with `m·lambda = 0` proving infeasibility.
#[derive(Clone, Debug)]
pub enum Pointedness {
    Pointed(Vec<Rat>),
    NotPointed(Vec<Rat>),
}

impl Pointedness {
    pub fn certificate(&self) -> Option<&[Rat]> {
        match self {
            Pointedness::Pointed(h) => Some(h),
            Pointedness::NotPointed(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
struct FmRow {
    // coefficients of h_0..h_{d-1}; the constraint is coefs·h > 0
    coefs: Vec<Rat>,
    // multipliers over the original n constraints
    lambda: Vec<Rat>,
}

/// Decide whether there is h in Q^d with h·a_i > 0 for every column a_i of
/// `m`, by Fourier–Motzkin elimination with multiplier tracking.
pub fn is_pointed(m: &IntMatrix) -> Pointedness {
    let d = m.rows;
    let n = m.cols;
    let mut rows: Vec<FmRow> = (0..n)
        .map(|i| {
            let coefs = (0..d).map(|k| Rat::from(m.at(k, i).clone())).collect();
            let mut lambda = vec![Rat::zero(); n];
            lambda[i] = Rat::one();
            FmRow { coefs, lambda }
        })
        .collect();

    // snapshots[k] = system before eliminating variable k
    let mut snapshots: Vec<Vec<FmRow>> = Vec::with_capacity(d);

    for k in 0..d {
        // contradictions may already be visible
        if let Some(row) = rows.iter().find(|r| r.coefs.iter().all(|c| c.is_zero())) {
            return Pointedness::NotPointed(row.lambda.clone());
        }
        snapshots.push(rows.clone());
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for r in rows.into_iter() {
            if r.coefs[k].is_zero() {
                zero.push(r);
            } else if r.coefs[k] > Rat::zero() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
        let mut next = zero;
        for p in &pos {
            for q in &neg {
                // p scaled by -q_k plus q scaled by p_k: coefficient at k vanishes
                let a = -q.coefs[k].clone();
                let b = p.coefs[k].clone();
                let coefs = (0..d)
                    .map(|j| &p.coefs[j] * &a + &q.coefs[j] * &b)
                    .collect();
                let lambda = (0..n)
                    .map(|j| &p.lambda[j] * &a + &q.lambda[j] * &b)
                    .collect();
                next.push(FmRow { coefs, lambda });
            }
        }
        rows = next;
    }

    if let Some(row) = rows.iter().find(|r| r.coefs.iter().all(|c| c.is_zero())) {
        return Pointedness::NotPointed(row.lambda.clone());
    }
    // feasible: back-substitute using the snapshots
    let mut h = vec![Rat::zero(); d];
    for k in (0..d).rev() {
        let system = &snapshots[k];
        let mut lower: Option<Rat> = None; // h_k > lower
        let mut upper: Option<Rat> = None; // h_k < upper
        for r in system {
            if r.coefs[k].is_zero() {
                continue;
            }
            // r.coefs · h > 0 with h_{k+1..} already fixed and h_{<k}
            // considered eliminated later (their coefficients are only
            // nonzero in earlier snapshots, none remain here beyond index k)
            let rest: Rat = (k + 1..d).map(|j| &r.coefs[j] * &h[j]).sum();
            let bound = -rest / &r.coefs[k];
            if r.coefs[k] > Rat::zero() {
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        h[k] = match (lower, upper) {
            (Some(l), Some(u)) => (&l + &u) / Rat::from(BigInt::from(2)),
            (Some(l), None) => l + Rat::one(),
            (None, Some(u)) => u - Rat::one(),
            (None, None) => Rat::zero(),
        };
    }
    // the certificate must verify by direct substitution
    debug_assert!((0..n).all(|i| {
        (0..d)
            .map(|k| Rat::from(m.at(k, i).clone()) * &h[k])
            .sum::<Rat>()
            > Rat::zero()
    }));
    Pointedness::Pointed(h)
}

/// An integer matrix together with its pointedness certificate; the type
/// guarantees that the columns span Z^d as a lattice and that a rational
/// vector h with h·a_i > 0 exists.
#[derive(Clone, Debug)]
pub struct PointedMatrix {
    matrix: IntMatrix,
    h: Vec<Rat>,
}

impl PointedMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !spans_lattice(&matrix) {
            return Err(Error::NotSpanning);
        }
        match is_pointed(&matrix) {
            Pointedness::Pointed(h) => Ok(PointedMatrix { matrix, h }),
            Pointedness::NotPointed(_) => Err(Error::NotPointed),
        }
    }

    /// Pointedness without the lattice-spanning requirement (used for face
    /// submatrices, whose columns need not span).
    pub fn new_unchecked_span(matrix: IntMatrix) -> Result<Self> {
        match is_pointed(&matrix) {
            Pointedness::Pointed(h) => Ok(PointedMatrix { matrix, h }),
            Pointedness::NotPointed(_) => Err(Error::NotPointed),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn certificate(&self) -> &[Rat] {
        &self.h
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

/// Replace `m` by a full-row-rank matrix with the same rational row span
/// whose columns span the full lattice. Returns the new matrix `a` and a
/// rational transform `g` (rows x rank) with `m = g·a`.
pub fn normalize_rows(m: &IntMatrix) -> (IntMatrix, Vec<Vec<Rat>>) {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    assert!(r > 0, "normalize_rows of the zero matrix");
    // m = u^-1 s v^-1; rows of s v^-1 are s_i times rows of v^-1.
    // v is unimodular with v^-1 integral; take a = first r rows of v^-1.
    let vinv = invert_unimodular(&snf.v);
    let a = vinv.select_rows(&(0..r).collect::<Vec<_>>());
    // g = u^-1 * diag(s) restricted to the first r columns
    let uinv = invert_unimodular(&snf.u);
    let g: Vec<Vec<Rat>> = (0..m.rows())
        .map(|i| {
            (0..r)
                .map(|j| Rat::from(uinv.at(i, j) * snf.s.at(j, j)))
                .collect()
        })
        .collect();
    debug_assert!({
        // m == g * a exactly
        (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| {
                let s: Rat = (0..r)
                    .map(|k| &g[i][k] * Rat::from(a.at(k, j).clone()))
                    .sum();
                s == Rat::from(m.at(i, j).clone())
            })
        })
    });
    (a, g)
}

/// Inverse of a unimodular matrix, exact over Z.
pub fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    assert_eq!(n, m.cols());
    // adjugate route via rational Gauss would work; reuse the Smith form
    // machinery instead: solve m·x = e_j column by column over Q and check
    // integrality.
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut rhs = vec![Rat::zero(); n];
        rhs[j] = Rat::one();
        let x = solve_rational(m, &rhs).expect("unimodular matrix is invertible");
        let col = x
            .into_iter()
            .map(|q| {
                assert!(q.is_integer(), "inverse of unimodular matrix must be integral");
                q.to_integer()
            })
            .collect();
        cols.push(col);
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for col in cols.iter() {
            entries.push(col[i].clone());
        }
    }
    IntMatrix { rows: n, cols: n, entries }
}

/// Solve m·x = rhs over the rationals (m square nonsingular). Returns None
/// if the system is singular/inconsistent.
pub fn solve_rational(m: &IntMatrix, rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    assert_eq!(n, rhs.len());
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| Rat::from(m.at(i, j).clone())).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        let p = a[k][k].clone();
        for j in k..=n {
            a[k][j] = &a[k][j] / &p;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let sub = &f * &a[k][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

/// Rational row reduction: returns a basis (as rows) of the row space and
/// the rank. Used for affine geometry in the umbrella construction.
pub fn row_space_basis(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..ncols {
        // reduce all rows by the existing basis first
        let mut found = None;
        for (idx, r) in rows.iter().enumerate() {
            if !r[col].is_zero() && pivots.iter().all(|&p| p > col || r[p].is_zero()) {
                found = Some(idx);
                break;
            }
        }
        let Some(idx) = found else { continue };
        let mut pivot_row = rows.remove(idx);
        let p = pivot_row[col].clone();
        for e in pivot_row.iter_mut() {
            *e = &*e / &p;
        }
        for r in rows.iter_mut() {
            if !r[col].is_zero() {
                let f = r[col].clone();
                for (e, pe) in r.iter_mut().zip(pivot_row.iter()) {
                    let sub = &f * pe;
                    *e = &*e - sub;
                }
            }
        }
        for b in basis.iter_mut() {
            if !b[col].is_zero() {
                let f = b[col].clone();
                for (e, pe) in b.iter_mut().zip(pivot_row.iter()) {
                    let sub = &f * pe;
                    *e = &*e - sub;
                }
            }
        }
        pivots.push(col);
        basis.push(pivot_row);
    }
    basis
}

/// Rank of a rational matrix given as rows.
pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    row_space_basis(rows).len()
}

/// Does `target` lie in the Q-span of `gens`?
pub fn in_span(gens: &[Vec<Rat>], target: &[Rat]) -> bool {
    if target.iter().all(|c| c.is_zero()) {
        return true;
    }
    let mut rows = gens.to_vec();
    let before = rat_rank(&rows);
    rows.push(target.to_vec());
    rat_rank(&rows) == before
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Rat::new(n, d))
}

pub fn format_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> IntMatrix {
        IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]])
    }

    #[test]
    fn smith_identity() {
        let m = IntMatrix::identity(2);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.s, m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
    }

    #[test]
    fn smith_diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
    }

    #[test]
    fn smith_row_gcd() {
        let m = IntMatrix::from_rows(&[vec![2, 4]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(2)]);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
    }

    #[test]
    fn kernel_of_a2() {
        let k = lattice_kernel(&a2());
        assert_eq!(k.rank(), 1);
        let b = &k.basis()[0];
        let pm: Vec<i64> = vec![1, -2, 1];
        let as_i: Vec<BigInt> = pm.iter().map(|&x| BigInt::from(x)).collect();
        let neg: Vec<BigInt> = as_i.iter().map(|x| -x).collect();
        assert!(b == &as_i || b == &neg, "basis was {b:?}");
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let k = lattice_kernel(&IntMatrix::identity(3));
        assert!(k.basis().is_empty());
    }

    #[test]
    fn kernel_of_sum_row() {
        let k = lattice_kernel(&IntMatrix::from_rows(&[vec![1, 1]]));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&[BigInt::from(1), BigInt::from(-1)]));
    }

    #[test]
    fn kernel_is_saturated() {
        // saturation: (2, -2) in kernel => (1, -1) in Z-span of basis
        let k = lattice_kernel(&IntMatrix::from_rows(&[vec![3, 3]]));
        assert!(k.contains(&[BigInt::from(1), BigInt::from(-1)]));
    }

    #[test]
    fn pointed_a2() {
        match is_pointed(&a2()) {
            Pointedness::Pointed(h) => {
                for i in 0..3 {
                    let dot: Rat = (0..2)
                        .map(|k| Rat::from(a2().at(k, i).clone()) * &h[k])
                        .sum();
                    assert!(dot > Rat::zero());
                }
            }
            Pointedness::NotPointed(_) => panic!("A2 is pointed"),
        }
    }

    #[test]
    fn not_pointed_opposite_columns() {
        let m = IntMatrix::from_rows(&[vec![1, -1]]);
        match is_pointed(&m) {
            Pointedness::Pointed(_) => panic!("[1,-1] is not pointed"),
            Pointedness::NotPointed(lambda) => {
                // Farkas: lambda >= 0, nonzero, m·lambda = 0
                assert!(lambda.iter().all(|l| *l >= Rat::zero()));
                assert!(lambda.iter().any(|l| *l > Rat::zero()));
                let dot: Rat = (0..2)
                    .map(|i| Rat::from(m.at(0, i).clone()) * &lambda[i])
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn pointed_positive_orthant() {
        let m = IntMatrix::identity(2);
        assert!(matches!(is_pointed(&m), Pointedness::Pointed(_)));
    }

    #[test]
    fn spans_examples() {
        assert!(!spans_lattice(&IntMatrix::from_rows(&[vec![2]])));
        assert!(spans_lattice(&a2()));
        assert!(spans_lattice(&IntMatrix::from_rows(&[vec![1, 1]])));
    }

    #[test]
    fn normalize_rows_of_dependent_rows() {
        // second row is twice the first
        let m = IntMatrix::from_rows(&[vec![1, 1, 1], vec![2, 2, 2]]);
        let (a, g) = normalize_rows(&m);
        assert_eq!(a.rows(), 1);
        assert!(spans_lattice(&a));
        assert_eq!(g.len(), 2);
        // m = g * a
        for i in 0..2 {
            for j in 0..3 {
                let s: Rat = (0..1)
                    .map(|k| &g[i][k] * Rat::from(a.at(k, j).clone()))
                    .sum();
                assert_eq!(s, Rat::from(m.at(i, j).clone()));
            }
        }
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![1, 1]]);
        let inv = invert_unimodular(&m);
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
    }

    #[test]
    fn det_bareiss() {
        let m = IntMatrix::from_rows(&[vec![2, 3, 1], vec![0, 1, 4], vec![5, 6, 0]]);
        assert_eq!(m.det(), BigInt::from(2 * (0 - 24) - 3 * (0 - 20) + (0 - 5)));
    }
}
