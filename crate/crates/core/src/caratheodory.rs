//! Colourful Carathéodory selection.
//!
//! Given sets `S_1, …, S_n` in `Q^p` that each contain the origin in their
//! convex hull, pick one point from every set so that the picked points still
//! do. [`colourful_select`] uses an exact version of Bárány's pivoting
//! argument; [`colourful_select_tolerant`] searches orbit selections that keep
//! the origin after any `r` picks are dropped.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::linalg::{
    affine_rank, combination, combinations, dot, is_zero_vector, origin_in_convex_hull, solve_linear, zero_vector, ConvexCertificate,
    Matrix, Rational,
};
use crate::Error;

/// Pivot steps before falling back to exhaustive search. The pivot strictly
/// decreases the distance to the origin, so this only guards against bugs.
const MAX_PIVOTS: usize = 10_000;

/// Largest selection space the exhaustive fallback will walk.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

/// One chosen point per set plus convex weights over the chosen points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    /// `indices[j]` is the position of the chosen point inside set `j`.
    pub indices: Vec<usize>,
    pub certificate: ConvexCertificate,
}

impl Selection {
    pub fn points(&self, sets: &[Vec<Vec<Rational>>]) -> Vec<Vec<Rational>> {
        self.indices.iter().zip(sets).map(|(&i, s)| s[i].clone()).collect()
    }

    pub fn verify(&self, sets: &[Vec<Vec<Rational>>]) -> bool {
        self.indices.len() == sets.len()
            && self.indices.iter().zip(sets).all(|(&i, s)| i < s.len())
            && self.certificate.verify(&self.points(sets))
    }
}

/// Checks shapes and that every set captures the origin; returns `p`.
fn check_instance(sets: &[Vec<Vec<Rational>>]) -> Result<usize, Error> {
    let first = sets.first().and_then(|s| s.first()).ok_or(Error::EmptyPointSet)?;
    let p = first.len();
    for (j, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::CaptureFailed { set: j });
        }
        if let Some(bad) = set.iter().find(|x| x.len() != p) {
            return Err(Error::DimensionMismatch { expected: p, found: bad.len() });
        }
    }
    for (j, set) in sets.iter().enumerate() {
        if origin_in_convex_hull(set)?.is_none() {
            return Err(Error::CaptureFailed { set: j });
        }
    }
    Ok(p)
}

/// Closest point of a hull to the origin, written over an affinely
/// independent subset with strictly positive weights.
struct NearestPoint {
    point: Vec<Rational>,
    support: Vec<usize>,
    weights: Vec<Rational>,
}

/// Solves `[G 1; 1ᵀ 0] (μ, ν) = (0, 1)` for the Gram matrix `G` of `face`:
/// the affine weights of the point of `aff(face)` closest to the origin.
fn affine_minimizer(face: &[&Vec<Rational>]) -> Option<Vec<Rational>> {
    let size = face.len();
    let mut kkt = Matrix::zeros(size + 1, size + 1);
    for a in 0..size {
        for b in a..size {
            let g = dot(face[a], face[b]);
            kkt.set(a, b, g.clone());
            kkt.set(b, a, g);
        }
        kkt.set(a, size, Rational::one());
        kkt.set(size, a, Rational::one());
    }
    let mut rhs = zero_vector(size + 1);
    rhs[size] = Rational::one();
    let mut solution = solve_linear(&kkt, &rhs)?;
    solution.truncate(size);
    Some(solution)
}

/// Exact nearest point of `conv(points)` to the origin by Wolfe's
/// minimum-norm-point iteration.
///
/// The corral `support` stays affinely independent, so every KKT system is
/// nonsingular; should one not be, the subset walk takes over.
fn nearest_point(points: &[Vec<Rational>]) -> NearestPoint {
    let dim = points[0].len();
    let norm = |x: &[Rational]| dot(x, x);
    let start = (0..points.len()).min_by(|&a, &b| norm(&points[a]).cmp(&norm(&points[b]))).expect("nonempty");
    let mut support = vec![start];
    let mut weights = vec![Rational::one()];
    let mut x = points[start].clone();

    loop {
        if is_zero_vector(&x) {
            break;
        }
        let xx = norm(&x);
        let (j, best) = points
            .iter()
            .map(|q| dot(&x, q))
            .enumerate()
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("nonempty");
        if best >= xx || support.contains(&j) {
            break;
        }
        support.push(j);
        weights.push(Rational::zero());

        loop {
            let face: Vec<&Vec<Rational>> = support.iter().map(|&i| &points[i]).collect();
            let Some(mu) = affine_minimizer(&face) else {
                return nearest_point_by_subsets(points);
            };
            if mu.iter().all(Signed::is_positive) {
                x = combination(&mu, &points_of(points, &support), dim);
                weights = mu;
                break;
            }
            // Step from the current weights towards μ until a weight hits zero.
            let theta = weights
                .iter()
                .zip(&mu)
                .filter(|(_, m)| !m.is_positive())
                .map(|(l, m)| l / (l - m))
                .min()
                .expect("some affine weight is not positive");
            let stepped: Vec<Rational> =
                weights.iter().zip(&mu).map(|(l, m)| &theta * m + (Rational::one() - &theta) * l).collect();
            let keep: Vec<bool> = stepped.iter().map(Signed::is_positive).collect();
            support = support.iter().zip(&keep).filter(|(_, &k)| k).map(|(&i, _)| i).collect();
            weights = stepped.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(w, _)| w).collect();
        }
    }
    if !points.iter().all(|q| dot(&x, q) >= norm(&x)) {
        return nearest_point_by_subsets(points);
    }
    NearestPoint { point: x, support, weights }
}

fn points_of(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<Rational>> {
    idx.iter().map(|&i| points[i].clone()).collect()
}

/// Nearest point by walking affinely independent subsets by size and
/// keeping the first projection of the origin that lies in the relative
/// interior and satisfies `⟨x, q⟩ ≥ ⟨x, x⟩` for every input point `q`.
fn nearest_point_by_subsets(points: &[Vec<Rational>]) -> NearestPoint {
    let dim = points[0].len();
    for size in 1..=points.len().min(dim + 1) {
        for support in combinations(points.len(), size) {
            let face: Vec<&Vec<Rational>> = support.iter().map(|&i| &points[i]).collect();
            if affine_rank(&points_of(points, &support)) + 1 != size {
                continue;
            }
            let Some(weights) = affine_minimizer(&face) else {
                continue;
            };
            if weights.iter().any(|w| !w.is_positive()) {
                continue;
            }
            let point = combination(&weights, &points_of(points, &support), dim);
            let norm = dot(&point, &point);
            if points.iter().all(|q| dot(&point, q) >= norm) {
                return NearestPoint { point, support, weights };
            }
        }
    }
    unreachable!("every polytope has a nearest point with an affinely independent support")
}

/// Colourful selection capturing the origin, for `n ≥ p + 1` sets in `Q^p`.
///
/// Starts from the first point of every set. While the chosen simplex misses
/// the origin, take its nearest point `x`; `x` is supported on at most `p`
/// chosen points, so some set `j` is unused, and that set has a point `s` with
/// `⟨x, s⟩ ≤ 0`. Replacing the choice for the first such `j` by the point
/// minimizing `⟨x, s⟩` (lowest index on ties) strictly shrinks the distance,
/// so the walk ends. The result is deterministic for a given input order.
pub fn colourful_select(sets: &[Vec<Vec<Rational>>]) -> Result<Selection, Error> {
    let p = check_instance(sets)?;
    let n = sets.len();
    if n < p + 1 {
        return Err(Error::Shape(alloc::format!("{n} sets cannot cover dimension {p}: need at least {}", p + 1)));
    }

    let mut chosen = vec![0usize; n];
    for _ in 0..MAX_PIVOTS {
        let points: Vec<Vec<Rational>> = chosen.iter().zip(sets).map(|(&i, s)| s[i].clone()).collect();
        let near = nearest_point(&points);
        if is_zero_vector(&near.point) {
            let mut coefficients = zero_vector(n);
            for (&j, w) in near.support.iter().zip(near.weights) {
                coefficients[j] = w;
            }
            return Ok(Selection { indices: chosen, certificate: ConvexCertificate { coefficients } });
        }
        let missing = (0..n).find(|j| !near.support.contains(j)).expect("support has at most p < n points");
        let (best, score) = sets[missing]
            .iter()
            .map(|s| dot(&near.point, s))
            .enumerate()
            .fold(None::<(usize, Rational)>, |acc, (i, v)| match acc {
                Some((_, ref b)) if *b <= v => acc,
                _ => Some((i, v)),
            })
            .expect("sets are nonempty");
        if score.is_positive() {
            // Impossible when set `missing` captures the origin.
            break;
        }
        chosen[missing] = best;
    }
    colourful_select_exhaustive(sets)
}

/// Walks every colourful selection in lexicographic order and returns the
/// first one that captures the origin.
pub fn colourful_select_exhaustive(sets: &[Vec<Vec<Rational>>]) -> Result<Selection, Error> {
    let space = sets.iter().try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128)).unwrap_or(u128::MAX);
    if space > EXHAUSTIVE_LIMIT {
        let size = usize::try_from(space).unwrap_or(usize::MAX);
        return Err(Error::TooLarge { size, limit: EXHAUSTIVE_LIMIT as usize });
    }
    if sets.iter().any(Vec::is_empty) {
        return Err(Error::EmptyPointSet);
    }
    let mut indices = vec![0usize; sets.len()];
    loop {
        let points: Vec<Vec<Rational>> = indices.iter().zip(sets).map(|(&i, s)| s[i].clone()).collect();
        if let Some(certificate) = origin_in_convex_hull(&points)? {
            return Ok(Selection { indices, certificate });
        }
        let Some(j) = (0..sets.len()).rev().find(|&j| indices[j] + 1 < sets[j].len()) else {
            return Err(Error::SearchFailed("no colourful selection captures the origin".into()));
        };
        indices[j] += 1;
        for later in &mut indices[j + 1..] {
            *later = 0;
        }
    }
}

/// True iff the origin stays in the hull of `points` after removing any `r` of them.
pub fn verify_tolerance(points: &[Vec<Rational>], r: usize) -> Result<bool, Error> {
    if r >= points.len() {
        return Err(Error::Shape(alloc::format!("tolerance {r} needs more than {} points", points.len())));
    }
    for removed in combinations(points.len(), r) {
        let rest: Vec<Vec<Rational>> =
            points.iter().enumerate().filter(|(i, _)| !removed.contains(i)).map(|(_, x)| x.clone()).collect();
        if origin_in_convex_hull(&rest)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Colourful selection that captures the origin with tolerance `r`.
///
/// Every `orbits[j]` lists the `k` points of one orbit of a cyclic group
/// acting the same way on all sets: shifting every chosen index by the same
/// amount applies one group element to the whole selection. Needs
/// `k ≤ p` and `n = (r + 1)p + 1`.
///
/// The search pins the first set to its last orbit element (the group action
/// carries any tolerant selection to one with that choice) and walks the
/// remaining `k^{n-1}` choices depth first, trying at each step the points
/// that keep the running sum closest to the origin. Every candidate is checked
/// against all `C(n, r)` removals.
pub fn colourful_select_tolerant(orbits: &[Vec<Vec<Rational>>], r: usize) -> Result<Selection, Error> {
    let p = check_instance(orbits)?;
    let k = orbits[0].len();
    if let Some(bad) = orbits.iter().find(|o| o.len() != k) {
        return Err(Error::Shape(alloc::format!("orbits of sizes {k} and {} differ", bad.len())));
    }
    if k > p {
        return Err(Error::GroupTooLarge { group: k, dimension: p });
    }
    let n = orbits.len();
    if n != (r + 1) * p + 1 {
        return Err(Error::Shape(alloc::format!(
            "tolerance {r} in dimension {p} needs {} sets, got {n}",
            (r + 1) * p + 1
        )));
    }
    if r == 0 {
        return colourful_select(orbits);
    }

    let mut chosen = vec![k - 1; n];
    let mut sum = orbits[0][k - 1].clone();
    if search_tolerant(orbits, r, 1, &mut chosen, &mut sum)? {
        let points: Vec<Vec<Rational>> = chosen.iter().zip(orbits).map(|(&i, o)| o[i].clone()).collect();
        let certificate = origin_in_convex_hull(&points)?
            .ok_or_else(|| Error::VerificationFailed("tolerant selection lost the origin".into()))?;
        return Ok(Selection { indices: chosen, certificate });
    }
    Err(Error::SearchFailed("no orbit selection captures the origin with the requested tolerance".into()))
}

fn search_tolerant(
    orbits: &[Vec<Vec<Rational>>],
    r: usize,
    depth: usize,
    chosen: &mut [usize],
    sum: &mut Vec<Rational>,
) -> Result<bool, Error> {
    if depth == orbits.len() {
        let points: Vec<Vec<Rational>> = chosen.iter().zip(orbits).map(|(&i, o)| o[i].clone()).collect();
        return verify_tolerance(&points, r);
    }
    let mut order: Vec<(Rational, usize)> = orbits[depth]
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let next: Vec<Rational> = sum.iter().zip(x).map(|(a, b)| a + b).collect();
            (dot(&next, &next), i)
        })
        .collect();
    order.sort();
    for (_, i) in order {
        chosen[depth] = i;
        for (a, b) in sum.iter_mut().zip(&orbits[depth][i]) {
            *a += b;
        }
        let found = search_tolerant(orbits, r, depth + 1, chosen, sum)?;
        for (a, b) in sum.iter_mut().zip(&orbits[depth][i]) {
            *a -= b;
        }
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;

    fn set(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| int_vector(r)).collect()
    }

    #[test]
    fn one_dimensional_pair_of_sets() {
        let sets = vec![set(&[&[1], &[-1]]), set(&[&[2], &[-3]])];
        let sel = colourful_select(&sets).unwrap();
        assert!(sel.verify(&sets));
        let picked = sel.points(&sets);
        assert!(picked == set(&[&[1], &[-3]]) || picked == set(&[&[-1], &[2]]));
        assert!(sel.certificate.coefficients.iter().all(|c| c.is_positive()));
    }

    #[test]
    fn origins_everywhere() {
        let sets = vec![set(&[&[0, 0], &[1, 1]]), set(&[&[3, 1], &[0, 0]]), set(&[&[0, 0]])];
        let sel = colourful_select(&sets).unwrap();
        assert!(sel.verify(&sets));
    }

    #[test]
    fn capture_failure_names_the_set() {
        let sets = vec![set(&[&[1], &[-1]]), set(&[&[2], &[3]])];
        assert_eq!(colourful_select(&sets), Err(Error::CaptureFailed { set: 1 }));
    }

    #[test]
    fn too_few_sets() {
        let sets = vec![set(&[&[1, 0], &[-1, 0]]), set(&[&[0, 1], &[0, -1]])];
        assert!(matches!(colourful_select(&sets), Err(Error::Shape(_))));
    }

    #[test]
    fn nearest_point_of_segment() {
        let near = nearest_point(&set(&[&[1, -1], &[1, 1]]));
        assert_eq!(near.point, int_vector(&[1, 0]));
        assert_eq!(near.support, vec![0, 1]);
    }

    #[test]
    fn wolfe_agrees_with_subset_walk() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let dim = rng.gen_range(1..=3);
            let count = rng.gen_range(1..=6);
            let pts: Vec<Vec<Rational>> = (0..count)
                .map(|_| int_vector(&(0..dim).map(|_| rng.gen_range(-6..=6)).collect::<Vec<i64>>()))
                .collect();
            assert_eq!(nearest_point(&pts).point, nearest_point_by_subsets(&pts).point);
        }
    }

    #[test]
    fn tolerance_examples() {
        assert!(verify_tolerance(&set(&[&[1], &[-1], &[2], &[-2]]), 1).unwrap());
        assert!(!verify_tolerance(&set(&[&[1], &[-1]]), 1).unwrap());
        assert!(verify_tolerance(&set(&[&[1], &[-1]]), 0).unwrap());
        assert!(verify_tolerance(&set(&[&[1]]), 1).is_err());
    }

    #[test]
    fn tolerant_group_size_checked() {
        // k = 3 orbits in the plane: 3 > p = 2.
        let orbit = set(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let orbits = vec![orbit; 7];
        assert_eq!(colourful_select_tolerant(&orbits, 1), Err(Error::GroupTooLarge { group: 3, dimension: 2 }));
    }

    #[test]
    fn tolerant_identical_symmetric_pairs() {
        let orbits: Vec<_> = (1..=5).map(|s| set(&[&[s, s], &[-s, -s]])).collect();
        let sel = colourful_select_tolerant(&orbits, 1).unwrap();
        assert!(sel.verify(&orbits));
        assert!(verify_tolerance(&sel.points(&orbits), 1).unwrap());
    }

    #[test]
    fn tolerant_with_zero_tolerance_is_plain() {
        let orbits = vec![set(&[&[1, 2], &[-1, -2]]), set(&[&[3, -1], &[-3, 1]]), set(&[&[2, 2], &[-2, -2]])];
        let sel = colourful_select_tolerant(&orbits, 0).unwrap();
        assert_eq!(sel, colourful_select(&orbits).unwrap());
    }
}
