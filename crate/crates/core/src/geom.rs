//! The L-umbrella of a pointed matrix: faces of the L-polyhedron that miss
//! the lifted origin, together with pyramid combinatorics on faces.
//!
//! All hull computations are exact over Q. Faces of the polyhedron are
//! found by brute force: candidate facet hyperplanes are spanned by point
//! subsets, supporting ones are kept, and the face lattice is the
//! intersection closure of the facet point sets. Desk-scale inputs make
//! this entirely comfortable.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_rank, row_space_basis, IntMatrix, PointedMatrix};
use crate::weyl::ProjectiveWeight;
use crate::Rat;

/// A face of the umbrella, identified with the set of column indices whose
/// lifted points lie on it (0-based, sorted).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub members: Vec<usize>,
    pub rank: usize,
}

impl Face {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Chart data fixing the affine piece of projective space in which the
/// L-polyhedron is taken: the hyperplane ε·y0 + h·y = 1.
#[derive(Clone, Debug)]
pub struct UmbrellaChart {
    pub h: Vec<Rat>,
    pub epsilon: Rat,
}

/// The face set Φ(A, L).
#[derive(Clone, Debug)]
pub struct Umbrella {
    n: usize,
    pub chart: UmbrellaChart,
    faces: Vec<Face>,
    facet_flags: Vec<bool>,
}

impl Umbrella {
    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn facet_flags(&self) -> &[bool] {
        &self.facet_flags
    }

    /// Faces of maximal rank.
    pub fn facets(&self) -> Vec<&Face> {
        self.faces
            .iter()
            .zip(&self.facet_flags)
            .filter(|(_, &f)| f)
            .map(|(f, _)| f)
            .collect()
    }

    pub fn face_index_sets(&self) -> Vec<Vec<usize>> {
        self.faces.iter().map(|f| f.members.clone()).collect()
    }
}

fn column_rank(a: &IntMatrix, members: &[usize]) -> usize {
    if members.is_empty() {
        return 0;
    }
    a.select_cols(members).rank()
}

/// Deterministic ε: the largest power of 1/2 (starting at 1) satisfying
/// the chart condition h·a_i + ε·L_∂i > 0 for every column.
pub fn choose_epsilon(a: &PointedMatrix, l: &ProjectiveWeight, h: &[Rat]) -> Rat {
    let d = a.rows();
    let n = a.cols();
    let mut eps = Rat::one();
    let ok = |eps: &Rat| -> bool {
        (0..n).all(|i| {
            let ha: Rat = (0..d)
                .map(|k| Rat::from(a.matrix().at(k, i).clone()) * &h[k])
                .sum();
            ha + eps * &l.ld()[i] > Rat::zero()
        })
    };
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    while !ok(&eps) {
        eps *= &half;
    }
    eps
}

/// Φ(A, L) with the stored pointedness certificate and the deterministic ε.
pub fn l_umbrella(a: &PointedMatrix, l: &ProjectiveWeight) -> Result<Umbrella> {
    let h = a.certificate().to_vec();
    let eps = choose_epsilon(a, l, &h);
    l_umbrella_with_chart(a, l, h, eps)
}

/// Φ(A, L) in an explicit chart (h, ε); chart independence is a tested
/// invariant, not an assumption.
pub fn l_umbrella_with_chart(
    a: &PointedMatrix,
    l: &ProjectiveWeight,
    h: Vec<Rat>,
    epsilon: Rat,
) -> Result<Umbrella> {
    let d = a.rows();
    let n = a.cols();
    if l.nvars() != n {
        return Err(Error::Shape("weight length != column count".into()));
    }
    if h.len() != d {
        return Err(Error::Shape("chart vector length != row count".into()));
    }
    if epsilon <= Rat::zero() {
        return Err(Error::Shape("chart epsilon must be positive".into()));
    }
    // chart denominators must be positive
    let denom = |i: usize| -> Rat {
        let ha: Rat = (0..d)
            .map(|k| Rat::from(a.matrix().at(k, i).clone()) * &h[k])
            .sum();
        ha + &epsilon * &l.ld()[i]
    };
    for i in 0..n {
        if denom(i) <= Rat::zero() {
            return Err(Error::Shape(format!(
                "chart condition h·a_i + ε·L_∂i > 0 fails at column {}",
                i + 1
            )));
        }
    }

    // lifted points in the chart {ε·y0 + h·y = 1} ⊂ Q^{d+1}
    let mut points: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    {
        let mut origin = vec![Rat::zero(); d + 1];
        origin[0] = Rat::one() / &epsilon;
        points.push(origin);
    }
    for i in 0..n {
        let den = denom(i);
        let mut p = Vec::with_capacity(d + 1);
        p.push(&l.ld()[i] / &den);
        for k in 0..d {
            p.push(Rat::from(a.matrix().at(k, i).clone()) / &den);
        }
        points.push(p);
    }

    // group coincident points; ids index the distinct points
    let mut distinct: Vec<Vec<Rat>> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new(); // point id -> original 0..=n indices
    let mut id_of: Vec<usize> = Vec::with_capacity(n + 1);
    for (orig, p) in points.iter().enumerate() {
        match distinct.iter().position(|q| q == p) {
            Some(id) => {
                groups[id].push(orig);
                id_of.push(id);
            }
            None => {
                distinct.push(p.clone());
                groups.push(vec![orig]);
                id_of.push(distinct.len() - 1);
            }
        }
    }
    let origin_id = id_of[0];
    debug_assert_eq!(groups[origin_id], vec![0], "a lifted column equals the origin");

    let facet_sets = hull_facets(&distinct);

    // face lattice: intersection closure of the facet point sets
    let mut face_sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    face_sets.insert(BTreeSet::new());
    for f in &facet_sets {
        face_sets.insert(f.clone());
    }
    loop {
        let mut added = false;
        let current: Vec<BTreeSet<usize>> = face_sets.iter().cloned().collect();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let inter: BTreeSet<usize> =
                    current[i].intersection(&current[j]).cloned().collect();
                if !face_sets.contains(&inter) {
                    face_sets.insert(inter);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    // keep faces that miss the lifted origin; translate to column indices
    let mut faces: Vec<Face> = Vec::new();
    for fs in &face_sets {
        if fs.contains(&origin_id) {
            continue;
        }
        let mut members: Vec<usize> = fs
            .iter()
            .flat_map(|&id| groups[id].iter().cloned())
            .map(|orig| orig - 1)
            .collect();
        members.sort_unstable();
        let rank = column_rank(a.matrix(), &members);
        faces.push(Face { members, rank });
    }
    faces.sort_by(|x, y| x.members.cmp(&y.members));
    faces.dedup_by(|x, y| x.members == y.members);

    let max_rank = faces.iter().map(|f| f.rank).max().unwrap_or(0);
    let facet_flags = faces
        .iter()
        .map(|f| f.rank == max_rank && !f.is_empty())
        .collect();

    Ok(Umbrella {
        n,
        chart: UmbrellaChart { h, epsilon },
        faces,
        facet_flags,
    })
}

/// Facets of conv(points) as sets of point ids. Points live in Q^D but may
/// span a smaller affine hull; facets are taken inside the hull.
fn hull_facets(points: &[Vec<Rat>]) -> Vec<BTreeSet<usize>> {
    let np = points.len();
    assert!(np >= 2, "hull of fewer than two distinct points");
    // affine coordinates within the hull
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&points[0])
                .map(|(a, b)| a - b)
                .collect::<Vec<Rat>>()
        })
        .collect();
    let basis = row_space_basis(&diffs);
    let m = basis.len(); // affine dimension of the hull
    assert!(m >= 1);
    // coordinates of each point in the echelon basis
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let coords: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            let mut v: Vec<Rat> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
            let mut cs = Vec::with_capacity(m);
            for (b, &piv) in basis.iter().zip(&pivots) {
                let c = v[piv].clone();
                if !c.is_zero() {
                    for (ve, be) in v.iter_mut().zip(b) {
                        let sub = &c * be;
                        *ve = &*ve - sub;
                    }
                }
                cs.push(c);
            }
            debug_assert!(v.iter().all(|e| e.is_zero()), "point outside affine hull");
            cs
        })
        .collect();

    let mut facets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    if m == 1 {
        // facets of a segment: its two extreme points
        let min_id = (0..np)
            .min_by(|&i, &j| coords[i][0].cmp(&coords[j][0]))
            .unwrap();
        let max_id = (0..np)
            .max_by(|&i, &j| coords[i][0].cmp(&coords[j][0]))
            .unwrap();
        facets.insert([min_id].into_iter().collect());
        facets.insert([max_id].into_iter().collect());
        return facets.into_iter().collect();
    }

    // all size-m subsets spanning a hyperplane
    let ids: Vec<usize> = (0..np).collect();
    let mut subset = vec![0usize; m];
    enumerate_subsets(&ids, m, &mut subset, 0, 0, &mut |chosen| {
        // functional n·y + c vanishing on the chosen points: nullspace of
        // the m x (m+1) system [coords | 1]
        let rows: Vec<Vec<Rat>> = chosen
            .iter()
            .map(|&i| {
                let mut r = coords[i].clone();
                r.push(Rat::one());
                r
            })
            .collect();
        if rat_rank(&rows) != m {
            return; // degenerate subset
        }
        let func = nullspace_vector(&rows, m + 1);
        let Some(func) = func else { return };
        // supporting test
        let eval = |i: usize| -> Rat {
            coords[i]
                .iter()
                .zip(&func[..m])
                .map(|(a, b)| a * b)
                .sum::<Rat>()
                + &func[m]
        };
        let mut pos = false;
        let mut neg = false;
        let mut zero_set = BTreeSet::new();
        for i in 0..np {
            let v = eval(i);
            if v.is_zero() {
                zero_set.insert(i);
            } else if v > Rat::zero() {
                pos = true;
            } else {
                neg = true;
            }
            if pos && neg {
                return;
            }
        }
        facets.insert(zero_set);
    });
    facets.into_iter().collect()
}

fn enumerate_subsets(
    ids: &[usize],
    size: usize,
    current: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == size {
        visit(current);
        return;
    }
    for i in start..ids.len() {
        current[depth] = ids[i];
        enumerate_subsets(ids, size, current, depth + 1, i + 1, visit);
    }
}

/// One nonzero vector in the nullspace of the given rows (each of length
/// `width`), or None when the nullspace is trivial.
fn nullspace_vector(rows: &[Vec<Rat>], width: usize) -> Option<Vec<Rat>> {
    let basis = row_space_basis(rows);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let &f = free.first()?;
    // set the free coordinate to 1, back-substitute pivots
    let mut v = vec![Rat::zero(); width];
    v[f] = Rat::one();
    for (b, &piv) in basis.iter().zip(&pivots) {
        // b·v = 0 with b[piv] = 1
        let dot: Rat = b
            .iter()
            .zip(&v)
            .enumerate()
            .filter(|(c, _)| *c != piv)
            .map(|(_, (bc, vc))| bc * vc)
            .sum();
        v[piv] = -dot;
    }
    Some(v)
}

/// Is τ a pyramid: some member's removal drops the rank of the column
/// submatrix. The empty face is not a pyramid by convention.
pub fn is_pyramid(members: &[usize], a: &IntMatrix) -> bool {
    if members.is_empty() {
        return false;
    }
    let full = column_rank(a, members);
    members.iter().any(|&i| {
        let rest: Vec<usize> = members.iter().cloned().filter(|&j| j != i).collect();
        column_rank(a, &rest) < full
    })
}

/// The unique non-pyramid face under τ, obtained by peeling rank-critical
/// columns; the associated toric ideals coincide along the way.
pub fn pyramid_core(members: &[usize], a: &IntMatrix) -> Face {
    let mut cur: Vec<usize> = members.to_vec();
    cur.sort_unstable();
    loop {
        let full = column_rank(a, &cur);
        let critical = cur.iter().cloned().find(|&i| {
            let rest: Vec<usize> = cur.iter().cloned().filter(|&j| j != i).collect();
            column_rank(a, &rest) < full
        });
        match critical {
            Some(i) => cur.retain(|&j| j != i),
            None => break,
        }
    }
    let rank = column_rank(a, &cur);
    Face { members: cur, rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rat;

    fn a2() -> PointedMatrix {
        PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]])).unwrap()
    }

    fn face_sets(u: &Umbrella) -> Vec<Vec<usize>> {
        u.face_index_sets()
    }

    #[test]
    fn umbrella_a2_order_filtration() {
        let a = a2();
        let f = ProjectiveWeight::order_filtration(3);
        let u = l_umbrella(&a, &f).unwrap();
        assert_eq!(
            face_sets(&u),
            vec![vec![], vec![0], vec![0, 1, 2], vec![2]]
        );
        let facets: Vec<Vec<usize>> = u.facets().iter().map(|f| f.members.clone()).collect();
        assert_eq!(facets, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn umbrella_a2_weighted_drops_middle_column() {
        let a = a2();
        let l = ProjectiveWeight::new(
            vec![
                parse_rat("1").unwrap(),
                parse_rat("0").unwrap(),
                parse_rat("1").unwrap(),
            ],
            vec![
                parse_rat("0").unwrap(),
                parse_rat("1").unwrap(),
                parse_rat("0").unwrap(),
            ],
        )
        .unwrap();
        let u = l_umbrella(&a, &l).unwrap();
        assert_eq!(face_sets(&u), vec![vec![], vec![0], vec![0, 2], vec![2]]);
        let facets: Vec<Vec<usize>> = u.facets().iter().map(|f| f.members.clone()).collect();
        assert_eq!(facets, vec![vec![0, 2]]);
    }

    #[test]
    fn umbrella_single_point() {
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1]])).unwrap();
        let f = ProjectiveWeight::order_filtration(1);
        let u = l_umbrella(&a, &f).unwrap();
        assert_eq!(face_sets(&u), vec![vec![], vec![0]]);
        let facets: Vec<Vec<usize>> = u.facets().iter().map(|f| f.members.clone()).collect();
        assert_eq!(facets, vec![vec![0]]);
    }

    #[test]
    fn umbrella_repeated_columns_share_a_vertex() {
        let a = PointedMatrix::new(IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        let f = ProjectiveWeight::order_filtration(2);
        let u = l_umbrella(&a, &f).unwrap();
        assert_eq!(face_sets(&u), vec![vec![], vec![0, 1]]);
    }

    #[test]
    fn chart_independence_on_a2() {
        let a = a2();
        let f = ProjectiveWeight::order_filtration(3);
        let u1 = l_umbrella(&a, &f).unwrap();
        // a different valid chart
        let h2 = vec![parse_rat("2").unwrap(), parse_rat("1/3").unwrap()];
        let u2 = l_umbrella_with_chart(&a, &f, h2, parse_rat("1/8").unwrap()).unwrap();
        assert_eq!(face_sets(&u1), face_sets(&u2));
    }

    #[test]
    fn pyramid_examples() {
        let a = a2();
        assert!(!is_pyramid(&[0, 1, 2], a.matrix()));
        assert!(is_pyramid(&[0, 1], a.matrix()));
        assert!(!is_pyramid(&[], a.matrix()));
        assert!(is_pyramid(&[0], a.matrix()));
    }

    #[test]
    fn pyramid_core_examples() {
        let a = a2();
        assert_eq!(pyramid_core(&[0, 1, 2], a.matrix()).members, vec![0, 1, 2]);
        assert_eq!(
            pyramid_core(&[0, 1], a.matrix()).members,
            Vec::<usize>::new()
        );
        assert_eq!(pyramid_core(&[0], a.matrix()).members, Vec::<usize>::new());
    }

    #[test]
    fn pyramid_core_order_independent() {
        // peel in every order on small faces of a 2x4 matrix
        let a = IntMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]);
        let members = vec![0, 1, 3];
        let core = pyramid_core(&members, &a);
        fn peel_all(members: &[usize], a: &IntMatrix, out: &mut Vec<Vec<usize>>) {
            let full = if members.is_empty() {
                0
            } else {
                a.select_cols(members).rank()
            };
            let criticals: Vec<usize> = members
                .iter()
                .cloned()
                .filter(|&i| {
                    let rest: Vec<usize> =
                        members.iter().cloned().filter(|&j| j != i).collect();
                    let r = if rest.is_empty() {
                        0
                    } else {
                        a.select_cols(&rest).rank()
                    };
                    r < full
                })
                .collect();
            if criticals.is_empty() {
                out.push(members.to_vec());
                return;
            }
            for &i in &criticals {
                let rest: Vec<usize> = members.iter().cloned().filter(|&j| j != i).collect();
                peel_all(&rest, a, out);
            }
        }
        let mut results = Vec::new();
        peel_all(&members, &a, &mut results);
        assert!(!results.is_empty());
        for r in results {
            assert_eq!(r, core.members);
        }
    }

    #[test]
    fn faces_do_not_span_the_origin() {
        let a = a2();
        let f = ProjectiveWeight::order_filtration(3);
        let u = l_umbrella(&a, &f).unwrap();
        let d = a.rows();
        let eps = &u.chart.epsilon;
        let h = &u.chart.h;
        let point = |i: usize| -> Vec<Rat> {
            let den: Rat = (0..d)
                .map(|k| Rat::from(a.matrix().at(k, i).clone()) * &h[k])
                .sum::<Rat>()
                + eps * &f.ld()[i];
            let mut p = vec![&f.ld()[i] / &den];
            for k in 0..d {
                p.push(Rat::from(a.matrix().at(k, i).clone()) / &den);
            }
            p
        };
        let mut origin = vec![Rat::zero(); d + 1];
        origin[0] = Rat::one() / eps;
        for face in u.faces() {
            if face.is_empty() {
                continue;
            }
            let pts: Vec<Vec<Rat>> = face.members.iter().map(|&i| point(i)).collect();
            let base = &pts[0];
            let diffs: Vec<Vec<Rat>> = pts[1..]
                .iter()
                .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let r0 = rat_rank(&diffs);
            let mut with = diffs.clone();
            with.push(origin.iter().zip(base).map(|(a, b)| a - b).collect());
            assert_eq!(
                rat_rank(&with),
                r0 + 1,
                "face {:?} spans the origin",
                face.members
            );
        }
    }
}
