//! Gale duals, a second coloured Radon construction, and balanced coloured
//! splits through a ham-sandwich cut.
//!
//! For `n` points `a_i` in `Q^d` that affinely span the space, the Gale dual
//! is built from a basis of the affine dependences `Σ c_i a_i = 0, Σ c_i = 0`:
//! with the basis vectors as columns, row `i` is the dual point `b_i` in
//! `Q^{n-d-1}`. Two disjoint index sets `X, Y` have intersecting hulls
//! exactly when some hyperplane through the origin keeps `b_X` and `b_Y` on
//! opposite closed sides and contains every other `b_i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::linalg::{
    affine_rank, combinations, dot, hulls_intersection, nonnegative_solution, nullspace_basis, zero_vector,
    HullIntersection, Matrix, Rational,
};
use crate::model::{canonicalize, Configuration, FunctionRepresentation, InjectiveAssignment};
use crate::Error;

/// Largest primal size [`verify_gale_duality`] will check exhaustively.
pub const DUALITY_CHECK_LIMIT: usize = 9;
/// Largest total point count for [`ham_sandwich_origin`].
pub const HAM_SANDWICH_LIMIT: usize = 20;
/// Largest input for [`balanced_split_oracle`].
pub const SPLIT_ORACLE_LIMIT: usize = 12;

/// A primal point list with its Gale dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleDual {
    pub primal: Vec<Vec<Rational>>,
    pub dual: Vec<Vec<Rational>>,
    /// The `(d+1) × n` matrix of primal coordinates with a row of ones.
    pub lifted: Matrix,
}

impl GaleDual {
    pub fn dual_dimension(&self) -> usize {
        self.dual.first().map_or(0, Vec::len)
    }
}

/// Hyperplane `{x : ⟨h, x⟩ = 0}` through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OriginHyperplane {
    pub normal: Vec<Rational>,
}

impl OriginHyperplane {
    pub fn new(normal: Vec<Rational>) -> Result<Self, Error> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::Shape("hyperplane normal must be nonzero".into()));
        }
        Ok(Self { normal })
    }

    /// Which side of the hyperplane `x` lies on (`Equal` means on it).
    pub fn side(&self, x: &[Rational]) -> Ordering {
        dot(&self.normal, x).cmp(&Rational::zero())
    }

    /// True iff no class has more than half of its points (rounded down) on
    /// either open side.
    pub fn bisects(&self, classes: &[Vec<Vec<Rational>>]) -> bool {
        classes.iter().all(|class| {
            let half = class.len() / 2;
            let above = class.iter().filter(|x| self.side(x) == Ordering::Greater).count();
            let below = class.iter().filter(|x| self.side(x) == Ordering::Less).count();
            above <= half && below <= half
        })
    }
}

/// Gale transform of `n ≥ d + 2` points that affinely span `Q^d`.
pub fn gale_transform(points: &[Vec<Rational>]) -> Result<GaleDual, Error> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let d = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
    }
    let n = points.len();
    if n < d + 2 {
        return Err(Error::Shape(format!("Gale transform needs at least d + 2 = {} points, got {n}", d + 2)));
    }
    if affine_rank(points) < d {
        return Err(Error::DegeneratePrimal);
    }
    let mut lifted = Matrix::zeros(d + 1, n);
    for (i, p) in points.iter().enumerate() {
        for (c, x) in p.iter().enumerate() {
            lifted.set(c, i, x.clone());
        }
        lifted.set(d, i, Rational::one());
    }
    let basis = nullspace_basis(&lifted);
    let dual = (0..n).map(|i| basis.iter().map(|v| v[i].clone()).collect()).collect();
    Ok(GaleDual { primal: points.to_vec(), dual, lifted })
}

fn primal_hulls_meet(points: &[Vec<Rational>], x: &[usize], y: &[usize]) -> Result<bool, Error> {
    let pick = |idx: &[usize]| idx.iter().map(|&i| points[i].clone()).collect::<Vec<_>>();
    Ok(hulls_intersection(&[pick(x), pick(y)])?.is_some())
}

/// Is there `h` with `⟨h, b_i⟩ ≥ 0` on `X`, `≤ 0` on `Y`, `= 0` elsewhere,
/// and `Σ_X ⟨h, b_i⟩ - Σ_Y ⟨h, b_i⟩ = 1`? The last row rules out `h = 0`
/// (the dual points span their space, so `h ≠ 0` moves some `b_i` off the
/// hyperplane, and only `X` and `Y` may leave it).
fn dual_separable(dual: &[Vec<Rational>], x: &[usize], y: &[usize]) -> bool {
    let m = dual.first().map_or(0, Vec::len);
    let n = dual.len();
    // Columns: h⁺ (m), h⁻ (m), one slack per index in X ∪ Y.
    let signed: Vec<(usize, bool)> = x.iter().map(|&i| (i, true)).chain(y.iter().map(|&i| (i, false))).collect();
    let cols = 2 * m + signed.len();
    let mut a = Matrix::zeros(n + 1, cols);
    let mut b = zero_vector(n + 1);
    let mut slack = 2 * m;
    for i in 0..n {
        for c in 0..m {
            a.set(i, c, dual[i][c].clone());
            a.set(i, m + c, -dual[i][c].clone());
        }
        if let Some(&(_, in_x)) = signed.iter().find(|(j, _)| *j == i) {
            // ⟨h, b_i⟩ - s = 0 on X, ⟨h, b_i⟩ + s = 0 on Y.
            a.set(i, slack, if in_x { -Rational::one() } else { Rational::one() });
            slack += 1;
        }
    }
    for &(i, in_x) in &signed {
        for c in 0..m {
            let v = if in_x { dual[i][c].clone() } else { -dual[i][c].clone() };
            a.set(n, c, a.get(n, c) + &v);
            a.set(n, m + c, a.get(n, m + c) - &v);
        }
    }
    b[n] = Rational::one();
    nonnegative_solution(&a, &b).is_some()
}

/// Checks the Gale characterization on every pair of disjoint index sets.
///
/// Each `(X, Y)` is compared once (the condition is symmetric in `X` and
/// `Y`), including pairs with an empty side, whose hulls never meet.
pub fn verify_gale_duality(dual: &GaleDual) -> Result<bool, Error> {
    let n = dual.primal.len();
    if n > DUALITY_CHECK_LIMIT {
        return Err(Error::TooLarge { size: n, limit: DUALITY_CHECK_LIMIT });
    }
    if dual.dual.len() != n {
        return Err(Error::Shape(format!("{} dual points for {n} primal points", dual.dual.len())));
    }
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut rest = code;
        for i in 0..n {
            match rest % 3 {
                1 => x.push(i),
                2 => y.push(i),
                _ => {}
            }
            rest /= 3;
        }
        // Skip the mirror image of a pair already seen.
        let mirrored = match (x.first(), y.first()) {
            (Some(a), Some(b)) => b < a,
            (None, Some(_)) => true,
            _ => false,
        };
        if mirrored {
            continue;
        }
        let primal = primal_hulls_meet(&dual.primal, &x, &y)?;
        let separable = dual_separable(&dual.dual, &x, &y);
        if primal != separable {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coloured Radon partition of `d + 1` pairs in `Q^d` through the Gale dual.
///
/// The `2(d+1)` points are listed pair by pair. Their dual points live in
/// `Q^{d+1}`; the midpoints of the dual pairs sum to zero, so some hyperplane
/// through the origin contains all of them, and it puts the two dual points of
/// every pair on opposite closed sides. The point whose dual is on the
/// nonnegative side goes to part 1. When both duals of a pair lie on the
/// hyperplane the first point goes to part 1. The hulls of the two parts meet;
/// equal coefficients are not claimed.
pub fn radon_via_gale(config: &Configuration) -> Result<FunctionRepresentation, Error> {
    let d = config.dimension();
    let n = config.class_count();
    if config.points_per_class() != 2 || n != d + 1 {
        return Err(Error::Shape(format!(
            "coloured Radon needs d + 1 = {} pairs, got {n} classes of {}",
            d + 1,
            config.points_per_class()
        )));
    }
    let points: Vec<Vec<Rational>> = config.classes().iter().flatten().cloned().collect();
    let gale = gale_transform(&points)?;
    let half = Rational::new(1.into(), 2.into());
    let midpoints: Vec<Vec<Rational>> = (0..n)
        .map(|j| gale.dual[2 * j].iter().zip(&gale.dual[2 * j + 1]).map(|(a, b)| (a + b) * &half).collect())
        .collect();
    let normal = nullspace_basis(&Matrix::from_rows(midpoints)?)
        .into_iter()
        .next()
        .ok_or_else(|| Error::SearchFailed("dual midpoints span the whole space".into()))?;
    let hyperplane = OriginHyperplane::new(normal)?;

    let identity = InjectiveAssignment::identity(2);
    let swap = InjectiveAssignment::new(2, alloc::vec![1, 0])?;
    let assignments = (0..n)
        .map(|j| match hyperplane.side(&gale.dual[2 * j]) {
            Ordering::Less => swap.clone(),
            _ => identity.clone(),
        })
        .collect();
    canonicalize(&FunctionRepresentation::new(assignments)?)
}

/// A hyperplane through the origin that bisects every class.
///
/// If all points fit in a hyperplane through the origin, that hyperplane
/// (first nullspace vector) is returned. Otherwise the candidates are the
/// hyperplanes through the origin and `m - 1` linearly independent input
/// points, `m` being the dimension, tried in lexicographic order of the
/// point indices. Some such hyperplane is a vertex of the closed cell of
/// valid cuts, which is nonempty by the ham-sandwich theorem when there are
/// at most `m - 1` classes.
pub fn ham_sandwich_origin(classes: &[Vec<Vec<Rational>>]) -> Result<OriginHyperplane, Error> {
    let all: Vec<Vec<Rational>> = classes.iter().flatten().cloned().collect();
    if all.len() > HAM_SANDWICH_LIMIT {
        return Err(Error::TooLarge { size: all.len(), limit: HAM_SANDWICH_LIMIT });
    }
    let m = all.first().ok_or(Error::EmptyPointSet)?.len();
    if let Some(bad) = all.iter().find(|p| p.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: bad.len() });
    }
    if classes.len() + 1 > m {
        return Err(Error::Shape(format!("{} classes need dimension at least {}, got {m}", classes.len(), classes.len() + 1)));
    }
    let points = Matrix::from_rows(all.clone())?;
    if let Some(normal) = nullspace_basis(&points).into_iter().next() {
        return OriginHyperplane::new(normal);
    }
    for subset in combinations(all.len(), m - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| all[i].clone()).collect();
        let basis = nullspace_basis(&Matrix::from_rows(rows)?);
        if basis.len() != 1 {
            continue;
        }
        let candidate = OriginHyperplane::new(basis.into_iter().next().unwrap())?;
        if candidate.bisects(classes) {
            return Ok(candidate);
        }
    }
    Err(Error::SearchFailed("no candidate hyperplane bisects every class".into()))
}

/// Two disjoint index sets with equal colour counts and intersecting hulls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedSplit {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub hyperplane: OriginHyperplane,
    pub intersection: HullIntersection,
}

fn colour_groups(colours: &[usize]) -> BTreeMap<usize, Vec<usize>> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colours.iter().enumerate() {
        groups.entry(c).or_default().push(i);
    }
    groups
}

/// True iff `a` and `b` hold the same number of points of every colour.
pub fn colour_balanced(colours: &[usize], a: &[usize], b: &[usize]) -> bool {
    colour_groups(colours).keys().all(|c| {
        let count = |s: &[usize]| s.iter().filter(|&&i| colours[i] == *c).count();
        count(a) == count(b)
    })
}

/// Splits `k + d + 2` coloured points of `Q^d` (with `k` colours) into two
/// disjoint sets with the same number of points of every colour whose convex
/// hulls intersect.
///
/// The Gale dual lives in `Q^{k+1}`; a ham-sandwich cut through the origin
/// bisects every colour there. Points strictly on the positive side go to
/// `a`, strictly negative ones to `b`. Points on the cut may join either side
/// without breaking the hull intersection, so for each colour just enough of
/// them (lowest indices first) are added to the smaller side to even the
/// counts; the rest stay out.
pub fn balanced_coloured_split(points: &[Vec<Rational>], colours: &[usize]) -> Result<BalancedSplit, Error> {
    if points.len() != colours.len() {
        return Err(Error::Shape(format!("{} points but {} colours", points.len(), colours.len())));
    }
    let gale = gale_transform(points)?;
    let d = points[0].len();
    let groups = colour_groups(colours);
    if points.len() < groups.len() + d + 2 {
        return Err(Error::Shape(format!(
            "{} colours in dimension {d} need at least {} points, got {}",
            groups.len(),
            groups.len() + d + 2,
            points.len()
        )));
    }
    let classes: Vec<Vec<Vec<Rational>>> =
        groups.values().map(|idx| idx.iter().map(|&i| gale.dual[i].clone()).collect()).collect();
    let hyperplane = ham_sandwich_origin(&classes)?;

    let mut a = Vec::new();
    let mut b = Vec::new();
    for idx in groups.values() {
        let mut above = Vec::new();
        let mut below = Vec::new();
        let mut on = Vec::new();
        for &i in idx {
            match hyperplane.side(&gale.dual[i]) {
                Ordering::Greater => above.push(i),
                Ordering::Less => below.push(i),
                Ordering::Equal => on.push(i),
            }
        }
        let (short, long) = if above.len() < below.len() { (&mut above, &below) } else { (&mut below, &above) };
        let missing = long.len() - short.len();
        if missing > on.len() {
            return Err(Error::VerificationFailed("cut leaves a colour unbalanced".into()));
        }
        short.extend_from_slice(&on[..missing]);
        a.extend(above);
        b.extend(below);
    }
    a.sort_unstable();
    b.sort_unstable();

    if !colour_balanced(colours, &a, &b) {
        return Err(Error::VerificationFailed("split is not colour balanced".into()));
    }
    let pick = |idx: &[usize]| idx.iter().map(|&i| points[i].clone()).collect::<Vec<_>>();
    let intersection = hulls_intersection(&[pick(&a), pick(&b)])?
        .ok_or_else(|| Error::VerificationFailed("split hulls do not intersect".into()))?;
    Ok(BalancedSplit { a, b, hyperplane, intersection })
}

/// Two index sets `(a, b)`.
pub type IndexPair = (Vec<usize>, Vec<usize>);

/// Exhaustive search for a colour-balanced pair of disjoint nonempty sets
/// with intersecting hulls.
///
/// Assignments are walked as base-3 codes (digit `i` is 0 for "unused", 1
/// for `a`, 2 for `b`, point 0 least significant) in increasing order; the
/// first witness is returned.
pub fn balanced_split_oracle(points: &[Vec<Rational>], colours: &[usize]) -> Result<Option<IndexPair>, Error> {
    let n = points.len();
    if n > SPLIT_ORACLE_LIMIT {
        return Err(Error::TooLarge { size: n, limit: SPLIT_ORACLE_LIMIT });
    }
    if colours.len() != n {
        return Err(Error::Shape(format!("{n} points but {} colours", colours.len())));
    }
    for code in 1..3usize.pow(n as u32) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut rest = code;
        for i in 0..n {
            match rest % 3 {
                1 => a.push(i),
                2 => b.push(i),
                _ => {}
            }
            rest /= 3;
        }
        if a.is_empty() || b.is_empty() || b[0] < a[0] || !colour_balanced(colours, &a, &b) {
            continue;
        }
        if primal_hulls_meet(points, &a, &b)? {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;
    use alloc::vec;

    fn line(xs: &[i64]) -> Vec<Vec<Rational>> {
        xs.iter().map(|&x| int_vector(&[x])).collect()
    }

    #[test]
    fn dual_of_four_collinear_points() {
        let g = gale_transform(&line(&[0, 1, 2, 3])).unwrap();
        assert_eq!(g.dual, vec![int_vector(&[1, 2]), int_vector(&[-2, -3]), int_vector(&[1, 0]), int_vector(&[0, 1])]);
        let sum = g.dual.iter().fold(zero_vector(2), |acc, b| acc.iter().zip(b).map(|(x, y)| x + y).collect());
        assert_eq!(sum, zero_vector(2));
    }

    #[test]
    fn dual_of_three_collinear_points() {
        let g = gale_transform(&line(&[0, 1, 2])).unwrap();
        assert_eq!(g.dual, vec![int_vector(&[1]), int_vector(&[-2]), int_vector(&[1])]);
    }

    #[test]
    fn degenerate_primal_rejected() {
        let pts = vec![int_vector(&[0, 0]), int_vector(&[1, 1]), int_vector(&[2, 2]), int_vector(&[5, 5])];
        assert_eq!(gale_transform(&pts), Err(Error::DegeneratePrimal));
        assert!(matches!(gale_transform(&line(&[0, 1])), Err(Error::Shape(_))));
    }

    #[test]
    fn duality_on_the_line() {
        let g = gale_transform(&line(&[0, 1, 2, 3])).unwrap();
        assert!(dual_separable(&g.dual, &[0, 3], &[1, 2]));
        assert!(!dual_separable(&g.dual, &[0], &[1]));
        assert!(!dual_separable(&g.dual, &[], &[]));
        assert!(verify_gale_duality(&g).unwrap());
    }

    #[test]
    fn corrupted_dual_fails_duality() {
        let mut g = gale_transform(&line(&[0, 1, 2, 3])).unwrap();
        g.dual.swap(0, 1);
        assert!(!verify_gale_duality(&g).unwrap());
    }

    #[test]
    fn radon_via_gale_on_symmetric_line() {
        let config = Configuration::new(1, vec![line(&[0, 2]), line(&[2, 0])]).unwrap();
        let rep = radon_via_gale(&config).unwrap();
        let parts = crate::model::decode_partition(&config, &rep).unwrap();
        assert!(hulls_intersection(&parts).unwrap().is_some());
    }

    #[test]
    fn ham_sandwich_single_class() {
        let classes = vec![vec![int_vector(&[1, 0]), int_vector(&[-1, 0])]];
        let h = ham_sandwich_origin(&classes).unwrap();
        assert!(h.bisects(&classes));
    }

    #[test]
    fn ham_sandwich_dimension_check() {
        let classes = vec![vec![int_vector(&[1, 0])], vec![int_vector(&[0, 1])]];
        assert!(matches!(ham_sandwich_origin(&classes), Err(Error::Shape(_))));
    }

    #[test]
    fn balanced_split_on_the_line() {
        let pts = line(&[0, 1, 2, 3]);
        let split = balanced_coloured_split(&pts, &[1, 1, 1, 1]).unwrap();
        assert_eq!(split.a.len(), split.b.len());
        assert!(!split.a.is_empty());
        let oracle = balanced_split_oracle(&pts, &[1, 1, 1, 1]).unwrap();
        assert!(oracle.is_some());
    }

    #[test]
    fn oracle_below_threshold() {
        // Triangle: equal-size disjoint subsets are single vertices or too large.
        let pts = vec![int_vector(&[0, 0]), int_vector(&[1, 0]), int_vector(&[0, 1])];
        assert_eq!(balanced_split_oracle(&pts, &[1, 1, 1]).unwrap(), None);
        assert!(balanced_split_oracle(&line(&[0; 13]), &[0; 13]).is_err());
    }
}
