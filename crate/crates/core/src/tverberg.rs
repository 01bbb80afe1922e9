//! End-to-end partition pipelines and the enumeration oracle.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::caratheodory::{colourful_select, colourful_select_tolerant};
use crate::lift::{lift, lift_orbit, LiftedVector, Orbit};
use crate::linalg::{combinations, nonnegative_solution, nullspace_basis, origin_in_convex_hull, Matrix, Rational};
use crate::model::{
    canonicalize, verify_certificate, Configuration, EqualCoefficientCertificate, FunctionRepresentation,
    InjectiveAssignment, RemovalSet,
};
use crate::Error;

/// Default cap on the number of representations [`enumerate_partitions`] visits.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

fn require_permutation_shape(config: &Configuration) -> Result<usize, Error> {
    let k = config.points_per_class();
    if k < 2 {
        return Err(Error::Shape(format!("need t = k ≥ 2 points per class, got {k}")));
    }
    if config.class_count() == 0 {
        return Err(Error::Shape("no colour classes".into()));
    }
    Ok(k)
}

fn finish(
    config: &Configuration,
    rep: FunctionRepresentation,
    classes: &[usize],
    coefficients: Vec<Rational>,
    removed: Option<&RemovalSet>,
) -> Result<EqualCoefficientCertificate, Error> {
    let cert = EqualCoefficientCertificate::from_coefficients(config, &rep, classes, coefficients);
    if !verify_certificate(config, &rep, &cert, removed)? {
        return Err(Error::VerificationFailed("equal-coefficient certificate does not re-verify".into()));
    }
    Ok(cert)
}

/// Colourful `k`-partition of `n = (k-1)d + 1` classes of `k` points whose
/// parts meet with equal coefficients.
///
/// Lifts every class over all `k!` assignments, selects one lift per class
/// whose hull holds the origin, and reads the partition off the selected
/// assignments. Coefficients are recomputed from the selected lifts rather
/// than copied from the selection, then checked. The returned
/// representation is canonical (`σ_1` is the identity).
pub fn solve_equal_coefficients(
    config: &Configuration,
) -> Result<(FunctionRepresentation, EqualCoefficientCertificate), Error> {
    let k = require_permutation_shape(config)?;
    let d = config.dimension();
    let n = config.class_count();
    if n != (k - 1) * d + 1 {
        return Err(Error::Shape(format!("need n = (k-1)d + 1 = {} classes, got {n}", (k - 1) * d + 1)));
    }
    let orbits: Vec<Vec<LiftedVector>> = (0..n).map(|j| lift_orbit(config, j, Orbit::Full)).collect::<Result<_, _>>()?;
    let sets: Vec<Vec<Vec<Rational>>> =
        orbits.iter().map(|o| o.iter().map(|l| l.coordinates.clone()).collect()).collect();
    let selection = colourful_select(&sets)?;
    if !selection.verify(&sets) {
        return Err(Error::VerificationFailed("colourful selection does not re-verify".into()));
    }

    let rep = FunctionRepresentation::new(
        selection.indices.iter().zip(&orbits).map(|(&i, o)| o[i].assignment.clone()).collect(),
    )?;
    let chosen = selection.points(&sets);
    let coefficients = origin_in_convex_hull(&chosen)?
        .ok_or_else(|| Error::VerificationFailed("selected lifts do not capture the origin".into()))?
        .coefficients;
    let rep = canonicalize(&rep)?;
    let classes: Vec<usize> = (0..n).collect();
    let cert = finish(config, rep.clone(), &classes, coefficients, None)?;
    Ok((rep, cert))
}

/// One removal set and the certificate for the classes that survive it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TolerantEntry {
    pub removed: RemovalSet,
    pub certificate: EqualCoefficientCertificate,
}

/// Certificates for every removal of `r` colour classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TolerantCertificateFamily {
    pub r: usize,
    /// One entry per `r`-subset of classes, in lexicographic order.
    pub entries: Vec<TolerantEntry>,
    /// A single nonnegative weight vector over all `n` classes that, restricted
    /// to the survivors of every removal and renormalized, works for all of
    /// them at once, when one exists.
    pub shared: Option<Vec<Rational>>,
}

impl TolerantCertificateFamily {
    pub fn verify(&self, config: &Configuration, rep: &FunctionRepresentation) -> Result<bool, Error> {
        let expected = combinations(config.class_count(), self.r);
        if self.entries.len() != expected.len() {
            return Ok(false);
        }
        for (entry, removed) in self.entries.iter().zip(&expected) {
            if entry.removed.classes() != removed.as_slice()
                || !verify_certificate(config, rep, &entry.certificate, Some(&entry.removed))?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Colourful `k`-partition of `n = (r+1)(k-1)d + 1` classes whose parts meet
/// with equal coefficients after removing any `r` classes. Needs `d ≥ 2`.
pub fn solve_tolerant(
    config: &Configuration,
    r: usize,
) -> Result<(FunctionRepresentation, TolerantCertificateFamily), Error> {
    if config.dimension() < 2 {
        return Err(Error::RequiresDimensionTwo);
    }
    let k = require_permutation_shape(config)?;
    let d = config.dimension();
    let n = config.class_count();
    let p = (k - 1) * d;
    if n != (r + 1) * p + 1 {
        return Err(Error::Shape(format!("need n = (r+1)(k-1)d + 1 = {} classes, got {n}", (r + 1) * p + 1)));
    }
    if r == 0 {
        let (rep, certificate) = solve_equal_coefficients(config)?;
        let entries = alloc::vec![TolerantEntry { removed: RemovalSet::new(Vec::new())?, certificate: certificate.clone() }];
        let family = TolerantCertificateFamily { r, entries, shared: Some(certificate.coefficients) };
        return Ok((rep, family));
    }

    let orbits: Vec<Vec<LiftedVector>> =
        (0..n).map(|j| lift_orbit(config, j, Orbit::Cyclic)).collect::<Result<_, _>>()?;
    let sets: Vec<Vec<Vec<Rational>>> =
        orbits.iter().map(|o| o.iter().map(|l| l.coordinates.clone()).collect()).collect();
    let selection = colourful_select_tolerant(&sets, r)?;
    let lifts = selection.points(&sets);
    let rep = canonicalize(&FunctionRepresentation::new(
        selection.indices.iter().zip(&orbits).map(|(&i, o)| o[i].assignment.clone()).collect(),
    )?)?;

    let mut entries = Vec::new();
    for removed in combinations(n, r) {
        let removed = RemovalSet::new(removed)?;
        let survivors = removed.survivors(n);
        let kept: Vec<Vec<Rational>> = survivors.iter().map(|&j| lifts[j].clone()).collect();
        let coefficients = origin_in_convex_hull(&kept)?
            .ok_or_else(|| Error::VerificationFailed(format!("removal {:?} loses the origin", removed.classes())))?
            .coefficients;
        let certificate = finish(config, rep.clone(), &survivors, coefficients, Some(&removed))?;
        entries.push(TolerantEntry { removed, certificate });
    }
    let shared = shared_coefficients(&lifts, r);
    Ok((rep, TolerantCertificateFamily { r, entries, shared }))
}

/// Looks for `α ≥ 0` over all lifts with `Σ_{j ∉ C} α_j F_j = 0` and
/// `Σ_{j ∉ C} α_j ≥ 1` for every `r`-subset `C`, normalized to sum one.
fn shared_coefficients(lifts: &[Vec<Rational>], r: usize) -> Option<Vec<Rational>> {
    let n = lifts.len();
    let p = lifts[0].len();
    let removals = combinations(n, r);
    // Columns: α (n), then one surplus variable per removal.
    let cols = n + removals.len();
    let rows = removals.len() * (p + 1);
    let mut a = Matrix::zeros(rows, cols);
    let mut b = crate::linalg::zero_vector(rows);
    for (c, removed) in removals.iter().enumerate() {
        let base = c * (p + 1);
        for j in (0..n).filter(|j| !removed.contains(j)) {
            for (row, x) in lifts[j].iter().enumerate() {
                a.set(base + row, j, x.clone());
            }
            a.set(base + p, j, Rational::one());
        }
        a.set(base + p, n + c, -Rational::one());
        b[base + p] = Rational::one();
    }
    let solution = nonnegative_solution(&a, &b)?;
    let alpha = &solution[..n];
    let total: Rational = alpha.iter().sum();
    Some(alpha.iter().map(|x| x / &total).collect())
}

/// Coloured Radon partition of `d + 1` pairs in `Q^d` from a linear
/// dependence of the differences `x_i - y_i`.
///
/// Negative dependence coefficients are flipped by swapping the pair, which
/// leaves nonnegative weights that are normalized to sum one.
pub fn solve_radon(config: &Configuration) -> Result<(FunctionRepresentation, EqualCoefficientCertificate), Error> {
    let d = config.dimension();
    let n = config.class_count();
    if config.points_per_class() != 2 || n != d + 1 {
        return Err(Error::Shape(format!(
            "coloured Radon needs d + 1 = {} pairs, got {n} classes of {}",
            d + 1,
            config.points_per_class()
        )));
    }
    let differences: Vec<Vec<Rational>> = (0..n)
        .map(|j| config.point(j, 0).iter().zip(config.point(j, 1)).map(|(x, y)| x - y).collect())
        .collect();
    let m = Matrix::from_columns(&differences)?;
    let dependence = nullspace_basis(&m).into_iter().next().expect("d + 1 vectors in Q^d are dependent");

    let identity = InjectiveAssignment::identity(2);
    let swap = InjectiveAssignment::new(2, alloc::vec![1, 0])?;
    let rep = FunctionRepresentation::new(
        dependence.iter().map(|c| if c.is_negative() { swap.clone() } else { identity.clone() }).collect(),
    )?;
    let magnitudes: Vec<Rational> = dependence.iter().map(Signed::abs).collect();
    let total: Rational = magnitudes.iter().sum();
    let coefficients = magnitudes.into_iter().map(|x| x / &total).collect();
    let rep = canonicalize(&rep)?;
    let classes: Vec<usize> = (0..n).collect();
    let cert = finish(config, rep.clone(), &classes, coefficients, None)?;
    Ok((rep, cert))
}

/// Every canonical representation (`σ_1` = identity) whose parts meet with
/// equal coefficients, with a certificate for each, in lexicographic order.
///
/// Visits `(k!)^{n-1}` representations and fails up front if that exceeds `budget`.
pub fn enumerate_partitions(
    config: &Configuration,
    budget: u128,
) -> Result<Vec<(FunctionRepresentation, EqualCoefficientCertificate)>, Error> {
    let k = require_permutation_shape(config)?;
    let n = config.class_count();
    let perms = InjectiveAssignment::all_permutations(k);
    let required = (1..n).try_fold(1u128, |acc, _| acc.checked_mul(perms.len() as u128)).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let lifts: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|j| {
            perms
                .iter()
                .map(|sigma| lift(config, j, sigma).map(|l| l.coordinates))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let classes: Vec<usize> = (0..n).collect();
    let identity_index = 0;
    let mut choice = alloc::vec![0usize; n];
    let mut found = Vec::new();
    loop {
        choice[0] = identity_index;
        let points: Vec<Vec<Rational>> = choice.iter().enumerate().map(|(j, &c)| lifts[j][c].clone()).collect();
        if let Some(cert) = origin_in_convex_hull(&points)? {
            let rep = FunctionRepresentation::new(choice.iter().map(|&c| perms[c].clone()).collect())?;
            let cert = finish(config, rep.clone(), &classes, cert.coefficients, None)?;
            found.push((rep, cert));
        }
        let Some(j) = (1..n).rev().find(|&j| choice[j] + 1 < perms.len()) else {
            return Ok(found);
        };
        choice[j] += 1;
        for later in &mut choice[j + 1..] {
            *later = 0;
        }
    }
}

/// `(k-1)!^{(k-1)d}`
pub fn count_lower_bound(k: usize, d: usize) -> BigUint {
    let factorial = (1..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    let exponent = (k.saturating_sub(1) * d) as u32;
    if factorial.is_zero() {
        return BigUint::zero();
    }
    factorial.pow(exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector, rat, ratio};
    use alloc::vec;

    fn line_config(classes: &[&[i64]]) -> Configuration {
        let classes = classes.iter().map(|c| c.iter().map(|&x| int_vector(&[x])).collect()).collect();
        Configuration::new(1, classes).unwrap()
    }

    #[test]
    fn symmetric_equal_coefficients() {
        let config = line_config(&[&[-1, 1], &[1, -1]]);
        let (rep, cert) = solve_equal_coefficients(&config).unwrap();
        let id = InjectiveAssignment::identity(2);
        assert_eq!(rep.assignments(), &[id.clone(), id]);
        assert_eq!(cert.coefficients, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(cert.common_point, vec![rat(0)]);
    }

    #[test]
    fn wrong_class_count_rejected() {
        let config = line_config(&[&[-1, 1], &[1, -1], &[0, 3]]);
        assert!(matches!(solve_equal_coefficients(&config), Err(Error::Shape(_))));
    }

    #[test]
    fn radon_on_symmetric_line() {
        let config = line_config(&[&[0, 2], &[2, 0]]);
        let (rep, cert) = solve_radon(&config).unwrap();
        assert_eq!(cert.coefficients, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(cert.common_point, vec![rat(1)]);
        let parts = crate::model::decode_partition(&config, &rep).unwrap();
        assert_eq!(parts[0], vec![int_vector(&[0]), int_vector(&[2])]);
    }

    #[test]
    fn radon_with_coincident_pair() {
        let classes = vec![
            vec![int_vector(&[1, 1]), int_vector(&[1, 1])],
            vec![int_vector(&[0, 5]), int_vector(&[3, -2])],
            vec![int_vector(&[7, 0]), int_vector(&[-4, 4])],
        ];
        let config = Configuration::new(2, classes).unwrap();
        let (rep, cert) = solve_radon(&config).unwrap();
        assert!(verify_certificate(&config, &rep, &cert, None).unwrap());
        assert_eq!(cert.coefficients, vec![rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn tolerant_rejects_the_line() {
        let config = line_config(&[&[-1, 1], &[1, -1], &[0, 2]]);
        assert_eq!(solve_tolerant(&config, 1), Err(Error::RequiresDimensionTwo));
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(count_lower_bound(2, 3), BigUint::from(1u32));
        assert_eq!(count_lower_bound(3, 2), BigUint::from(16u32));
        assert_eq!(count_lower_bound(4, 1), BigUint::from(216u32));
    }

    #[test]
    fn enumeration_budget() {
        let config = line_config(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(enumerate_partitions(&config, 35), Err(Error::BudgetExceeded { required: 36, budget: 35 }));
    }

    #[test]
    fn enumeration_of_symmetric_instance() {
        let config = line_config(&[&[-1, 1], &[1, -1]]);
        let all = enumerate_partitions(&config, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(!all.is_empty());
        let (rep, _) = solve_equal_coefficients(&config).unwrap();
        assert!(all.iter().any(|(r, _)| *r == rep));
    }
}
