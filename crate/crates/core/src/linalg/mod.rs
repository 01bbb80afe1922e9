//! Exact rational linear algebra and the convex feasibility kernel.
//!
//! Everything here works over [`Rational`] (arbitrary precision, always in
//! lowest terms), so every "is the origin in this hull" question is decided
//! exactly. Vectors are plain `Vec<Rational>`; dimensions are checked at the
//! boundaries of each operation rather than encoded in the type.

mod matrix;
mod simplex;

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

pub use matrix::Matrix;
pub use simplex::nonnegative_solution;

use crate::Error;

/// Arbitrary precision rational, stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// `numer / denom` as a rational. Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Converts a slice of integers into a rational vector.
pub fn int_vector(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| rat(v)).collect()
}

pub fn zero_vector(dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| Rational::zero()).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += scale * v`
pub fn axpy(acc: &mut [Rational], scale: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if scale.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a += scale * x;
    }
}

/// `Σ weights[i] · points[i]`; `dim` is used when `points` is empty.
pub fn combination(weights: &[Rational], points: &[Vec<Rational>], dim: usize) -> Vec<Rational> {
    let mut out = zero_vector(dim);
    for (w, p) in weights.iter().zip(points) {
        axpy(&mut out, w, p);
    }
    out
}

/// Convex weights witnessing that the origin lies in the hull of a point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexCertificate {
    /// One weight per input point, in input order.
    pub coefficients: Vec<Rational>,
}

impl ConvexCertificate {
    /// Re-checks the certificate against `points`: nonnegative weights summing
    /// to one whose combination is exactly the zero vector.
    pub fn verify(&self, points: &[Vec<Rational>]) -> bool {
        if self.coefficients.len() != points.len() || points.is_empty() {
            return false;
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return false;
        }
        if self.coefficients.iter().any(Signed::is_negative) {
            return false;
        }
        let total: Rational = self.coefficients.iter().sum();
        total.is_one() && is_zero_vector(&combination(&self.coefficients, points, dim))
    }
}

/// Basis of the right nullspace of `m`.
///
/// One vector per free column of the reduced row echelon form, in increasing
/// column order: the free coordinate is 1, the other free coordinates are 0,
/// and pivot coordinates are read off the reduced rows. Empty iff `m` has
/// full column rank.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = m.rref();
    let mut is_pivot = alloc::vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zero_vector(m.cols());
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(row, free).clone();
            }
            v
        })
        .collect()
}

/// One exact solution of `m · x = b`, with every free variable set to zero,
/// or `None` when the system is inconsistent.
pub fn solve_linear(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length must match row count");
    let augmented = m.augment_column(b);
    let (reduced, pivots) = augmented.rref();
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = zero_vector(m.cols());
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = reduced.get(row, m.cols()).clone();
    }
    Some(x)
}

/// Dimension of the affine hull of `points` (0 for a single point).
pub fn affine_rank(points: &[Vec<Rational>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    if rest.is_empty() {
        return 0;
    }
    let rows = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
}

fn check_dimensions(points: &[Vec<Rational>]) -> Result<usize, Error> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let dim = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
    }
    Ok(dim)
}

/// Decides exactly whether the origin lies in the convex hull of `points`.
///
/// Solves `Σ λ_i p_i = 0, Σ λ_i = 1, λ ≥ 0` with the exact phase-one simplex.
pub fn origin_in_convex_hull(points: &[Vec<Rational>]) -> Result<Option<ConvexCertificate>, Error> {
    let dim = check_dimensions(points)?;
    let mut a = Matrix::zeros(dim + 1, points.len());
    for (col, p) in points.iter().enumerate() {
        for (row, x) in p.iter().enumerate() {
            a.set(row, col, x.clone());
        }
        a.set(dim, col, Rational::one());
    }
    let mut b = zero_vector(dim + 1);
    b[dim] = Rational::one();
    Ok(nonnegative_solution(&a, &b).map(|coefficients| ConvexCertificate { coefficients }))
}

/// A point common to the convex hulls of several point sets, with the convex
/// weights that reach it inside each set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullIntersection {
    pub point: Vec<Rational>,
    pub weights: Vec<Vec<Rational>>,
}

impl HullIntersection {
    /// Exact re-check against the sets it claims to intersect.
    pub fn verify(&self, sets: &[Vec<Vec<Rational>>]) -> bool {
        if sets.len() != self.weights.len() {
            return false;
        }
        let dim = self.point.len();
        sets.iter().zip(&self.weights).all(|(set, w)| {
            !set.is_empty()
                && w.len() == set.len()
                && set.iter().all(|p| p.len() == dim)
                && w.iter().all(|x| !x.is_negative())
                && w.iter().sum::<Rational>().is_one()
                && combination(w, set, dim) == self.point
        })
    }
}

/// Finds a point in the intersection of the convex hulls of `sets`, or `None`
/// if the hulls have no common point. An empty set has an empty hull.
pub fn hulls_intersection(sets: &[Vec<Vec<Rational>>]) -> Result<Option<HullIntersection>, Error> {
    if sets.is_empty() || sets.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let all: Vec<Vec<Rational>> = sets.iter().flatten().cloned().collect();
    let dim = check_dimensions(&all)?;

    // Variables: the weights of every set, concatenated.
    // Rows: Σ w_0 p - Σ w_s p = 0 for each later set s and coordinate, then Σ w_s = 1 per set.
    let cols = all.len();
    let rows = dim * (sets.len() - 1) + sets.len();
    let mut a = Matrix::zeros(rows, cols);
    let mut b = zero_vector(rows);
    let mut offsets = Vec::with_capacity(sets.len());
    let mut offset = 0;
    for set in sets {
        offsets.push(offset);
        offset += set.len();
    }
    for s in 1..sets.len() {
        let base = dim * (s - 1);
        for (i, p) in sets[0].iter().enumerate() {
            for (c, x) in p.iter().enumerate() {
                a.set(base + c, offsets[0] + i, x.clone());
            }
        }
        for (i, p) in sets[s].iter().enumerate() {
            for (c, x) in p.iter().enumerate() {
                a.set(base + c, offsets[s] + i, -x.clone());
            }
        }
    }
    for (s, set) in sets.iter().enumerate() {
        let row = dim * (sets.len() - 1) + s;
        for i in 0..set.len() {
            a.set(row, offsets[s] + i, Rational::one());
        }
        b[row] = Rational::one();
    }

    let Some(x) = nonnegative_solution(&a, &b) else {
        return Ok(None);
    };
    let weights: Vec<Vec<Rational>> = sets
        .iter()
        .zip(&offsets)
        .map(|(set, &o)| x[o..o + set.len()].to_vec())
        .collect();
    let point = combination(&weights[0], &sets[0], dim);
    Ok(Some(HullIntersection { point, weights }))
}

/// All `r`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..r).rev().find(|&i| current[i] != i + n - r) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..r {
            current[j] = current[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| int_vector(r)).collect()
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(pts(rows)).unwrap()
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        assert!(nullspace_basis(&Matrix::identity(2)).is_empty());
    }

    #[test]
    fn single_row_nullspace() {
        let basis = nullspace_basis(&mat(&[&[1, 1]]));
        assert_eq!(basis, vec![int_vector(&[-1, 1])]);
    }

    #[test]
    fn nullspace_of_moment_matrix_spans_expected_plane() {
        let m = mat(&[&[0, 1, 2, 3], &[1, 1, 1, 1]]);
        let basis = nullspace_basis(&m);
        assert_eq!(basis, vec![int_vector(&[1, -2, 1, 0]), int_vector(&[2, -3, 0, 1])]);
        for v in &basis {
            assert!(is_zero_vector(&m.mul_vec(v)));
        }
        // Same span as {(1,-2,1,0), (0,1,-2,1)}.
        let mut rows = basis.clone();
        rows.push(int_vector(&[1, -2, 1, 0]));
        rows.push(int_vector(&[0, 1, -2, 1]));
        assert_eq!(Matrix::from_rows(rows).unwrap().rank(), 2);
    }

    #[test]
    fn symmetric_pair_captures_origin() {
        let cert = origin_in_convex_hull(&pts(&[&[1], &[-1]])).unwrap().unwrap();
        assert_eq!(cert.coefficients, vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn halfspace_points_miss_origin() {
        assert!(origin_in_convex_hull(&pts(&[&[1, 0], &[2, 1]])).unwrap().is_none());
    }

    #[test]
    fn triangle_barycentric_thirds() {
        let points = pts(&[&[2, 1], &[-1, 2], &[-1, -3]]);
        let cert = origin_in_convex_hull(&points).unwrap().unwrap();
        assert_eq!(cert.coefficients, vec![ratio(1, 3); 3]);
        assert!(cert.verify(&points));
    }

    #[test]
    fn empty_point_set_is_an_error() {
        assert_eq!(origin_in_convex_hull(&[]), Err(Error::EmptyPointSet));
    }

    #[test]
    fn ragged_points_are_an_error() {
        let err = origin_in_convex_hull(&pts(&[&[1, 0], &[1]])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn solve_linear_cases() {
        assert_eq!(solve_linear(&Matrix::identity(2), &int_vector(&[3, 4])), Some(int_vector(&[3, 4])));
        assert_eq!(solve_linear(&mat(&[&[1, 1]]), &int_vector(&[5])), Some(int_vector(&[5, 0])));
        assert_eq!(solve_linear(&mat(&[&[1], &[1]]), &int_vector(&[0, 1])), None);
    }

    #[test]
    fn affine_rank_cases() {
        assert_eq!(affine_rank(&pts(&[&[0], &[1]])), 1);
        assert_eq!(affine_rank(&pts(&[&[0, 0], &[1, 1], &[3, 3]])), 1);
        assert_eq!(affine_rank(&pts(&[&[0, 0], &[1, 0], &[0, 1]])), 2);
        assert_eq!(affine_rank(&pts(&[&[4, 4]])), 0);
    }

    #[test]
    fn hull_intersection_of_crossing_segments() {
        let sets = vec![pts(&[&[0, 0], &[2, 2]]), pts(&[&[0, 2], &[2, 0]])];
        let hit = hulls_intersection(&sets).unwrap().unwrap();
        assert_eq!(hit.point, int_vector(&[1, 1]));
        assert!(hit.verify(&sets));
        let apart = vec![pts(&[&[0, 0], &[1, 0]]), pts(&[&[0, 1], &[1, 1]])];
        assert!(hulls_intersection(&apart).unwrap().is_none());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3]
        ]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
