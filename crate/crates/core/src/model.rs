//! Coloured configurations, colourful partitions in function representation,
//! and equal-coefficient certificates.
//!
//! A colourful `k`-partition of `n` colour classes with `t` points each is
//! stored as one injective map `σ_j: [k] -> [t]` per class: part `i` takes the
//! point with index `σ_j(i)` from class `j`. Indices are zero-based in memory.
//! Points are identified by index, so repeated coordinates inside a class are
//! fine.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::linalg::{combination, Rational};
use crate::Error;

/// `n` ordered colour classes of `t` points each in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    dimension: usize,
    classes: Vec<Vec<Vec<Rational>>>,
}

impl Configuration {
    pub fn new(dimension: usize, classes: Vec<Vec<Vec<Rational>>>) -> Result<Self, Error> {
        if dimension == 0 {
            return Err(Error::Shape("dimension must be at least 1".into()));
        }
        let t = classes.first().map_or(0, Vec::len);
        for (j, class) in classes.iter().enumerate() {
            if class.len() != t {
                return Err(Error::Shape(format!(
                    "class {j} has {} points, expected {t}",
                    class.len()
                )));
            }
            if let Some(p) = class.iter().find(|p| p.len() != dimension) {
                return Err(Error::DimensionMismatch { expected: dimension, found: p.len() });
            }
        }
        Ok(Self { dimension, classes })
    }

    /// Ambient dimension `d`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of colour classes `n`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Points per class `t`.
    pub fn points_per_class(&self) -> usize {
        self.classes.first().map_or(0, Vec::len)
    }

    pub fn classes(&self) -> &[Vec<Vec<Rational>>] {
        &self.classes
    }

    /// Point `m` of class `j`.
    pub fn point(&self, j: usize, m: usize) -> &[Rational] {
        &self.classes[j][m]
    }
}

/// An injective map `[k] -> [t]`, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InjectiveAssignment {
    t: usize,
    values: Vec<usize>,
}

impl InjectiveAssignment {
    pub fn new(t: usize, values: Vec<usize>) -> Result<Self, Error> {
        for (i, &v) in values.iter().enumerate() {
            if v >= t {
                return Err(Error::InvalidAssignment(format!("value {v} outside [0, {t})")));
            }
            if values[..i].contains(&v) {
                return Err(Error::InvalidAssignment(format!("value {v} repeated")));
            }
        }
        Ok(Self { t, values })
    }

    pub fn identity(k: usize) -> Self {
        Self { t: k, values: (0..k).collect() }
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `σ(i)`
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_permutation(&self) -> bool {
        self.t == self.values.len()
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`. Needs `other` to map into `[self.k()]`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        if other.t != self.k() {
            return Err(Error::InvalidAssignment(format!(
                "cannot compose: inner map lands in [{}], outer map is defined on [{}]",
                other.t,
                self.k()
            )));
        }
        Ok(Self { t: self.t, values: other.values.iter().map(|&i| self.values[i]).collect() })
    }

    /// Inverse of a permutation.
    pub fn inverse(&self) -> Result<Self, Error> {
        if !self.is_permutation() {
            return Err(Error::InvalidAssignment("only permutations have inverses".into()));
        }
        let mut values = alloc::vec![0; self.t];
        for (i, &v) in self.values.iter().enumerate() {
            values[v] = i;
        }
        Ok(Self { t: self.t, values })
    }

    /// All permutations of `[k]` in lexicographic order.
    pub fn all_permutations(k: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            out.push(Self { t: k, values: current.clone() });
            // Next lexicographic permutation.
            let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
                return out;
            };
            let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
    }
}

/// A colourful `k`-partition as `(σ_1, …, σ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionRepresentation {
    assignments: Vec<InjectiveAssignment>,
}

impl FunctionRepresentation {
    pub fn new(assignments: Vec<InjectiveAssignment>) -> Result<Self, Error> {
        if let Some(first) = assignments.first() {
            if let Some(bad) = assignments.iter().find(|s| s.k() != first.k() || s.t() != first.t()) {
                return Err(Error::Shape(format!(
                    "assignments disagree on (k, t): ({}, {}) vs ({}, {})",
                    first.k(),
                    first.t(),
                    bad.k(),
                    bad.t()
                )));
            }
        }
        Ok(Self { assignments })
    }

    pub fn assignments(&self) -> &[InjectiveAssignment] {
        &self.assignments
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn k(&self) -> usize {
        self.assignments.first().map_or(0, InjectiveAssignment::k)
    }

    pub fn t(&self) -> usize {
        self.assignments.first().map_or(0, InjectiveAssignment::t)
    }

    /// Checks that this representation fits `config`.
    pub fn check_against(&self, config: &Configuration) -> Result<(), Error> {
        if self.len() != config.class_count() {
            return Err(Error::Shape(format!(
                "representation has {} maps, configuration has {} classes",
                self.len(),
                config.class_count()
            )));
        }
        if self.t() != config.points_per_class() {
            return Err(Error::Shape(format!(
                "representation maps into [{}], classes have {} points",
                self.t(),
                config.points_per_class()
            )));
        }
        if self.k() == 0 {
            return Err(Error::Shape("partition needs at least one part".into()));
        }
        Ok(())
    }

    /// Point of class `j` that belongs to part `i`.
    pub fn point<'a>(&self, config: &'a Configuration, part: usize, class: usize) -> &'a [Rational] {
        config.point(class, self.assignments[class].apply(part))
    }
}

/// Decodes `(σ_1, …, σ_n)` into the parts `A_1, …, A_k`; part `i` lists one
/// point per class, in class order.
pub fn decode_partition(
    config: &Configuration,
    rep: &FunctionRepresentation,
) -> Result<Vec<Vec<Vec<Rational>>>, Error> {
    rep.check_against(config)?;
    Ok((0..rep.k())
        .map(|i| (0..rep.len()).map(|j| rep.point(config, i, j).to_vec()).collect())
        .collect())
}

/// Relabels the parts so that `σ_1` becomes the identity.
///
/// Every `σ_j` is replaced by `σ_j ∘ σ_1⁻¹`, which permutes the parts without
/// changing the unordered family of sets.
pub fn canonicalize(rep: &FunctionRepresentation) -> Result<FunctionRepresentation, Error> {
    let Some(first) = rep.assignments.first() else {
        return Ok(rep.clone());
    };
    if !first.is_permutation() {
        return Err(Error::Shape(format!(
            "canonical form needs t = k (t = {}, k = {})",
            first.t(),
            first.k()
        )));
    }
    let relabel = first.inverse()?;
    let assignments = rep
        .assignments
        .iter()
        .map(|s| s.compose(&relabel))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FunctionRepresentation { assignments })
}

/// Colour classes removed before checking a tolerant certificate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RemovalSet {
    classes: Vec<usize>,
}

impl RemovalSet {
    /// Zero-based class indices; they are sorted and must be distinct.
    pub fn new(mut classes: Vec<usize>) -> Result<Self, Error> {
        classes.sort_unstable();
        if classes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Shape("removal set repeats a class".into()));
        }
        Ok(Self { classes })
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, class: usize) -> bool {
        self.classes.binary_search(&class).is_ok()
    }

    /// Classes of `0..n` that survive the removal, ascending.
    pub fn survivors(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|j| !self.contains(*j)).collect()
    }
}

/// Convex coefficients `α_j`, one per (surviving) class, and the point
/// `Σ_j α_j x^i_j` that every part reaches with them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualCoefficientCertificate {
    pub coefficients: Vec<Rational>,
    pub common_point: Vec<Rational>,
}

impl EqualCoefficientCertificate {
    /// Builds the certificate for `coefficients` over the listed classes,
    /// taking the common point from part 0.
    pub fn from_coefficients(
        config: &Configuration,
        rep: &FunctionRepresentation,
        classes: &[usize],
        coefficients: Vec<Rational>,
    ) -> Self {
        let points: Vec<Vec<Rational>> = classes.iter().map(|&j| rep.point(config, 0, j).to_vec()).collect();
        let common_point = combination(&coefficients, &points, config.dimension());
        Self { coefficients, common_point }
    }
}

/// Exact check of an equal-coefficient certificate.
///
/// With a removal set, the coefficients are indexed by the surviving classes
/// in ascending order and must sum to one on their own.
pub fn verify_certificate(
    config: &Configuration,
    rep: &FunctionRepresentation,
    cert: &EqualCoefficientCertificate,
    removed: Option<&RemovalSet>,
) -> Result<bool, Error> {
    rep.check_against(config)?;
    let survivors = match removed {
        Some(c) => {
            if let Some(&bad) = c.classes().iter().find(|&&j| j >= config.class_count()) {
                return Err(Error::Shape(format!("removed class {bad} out of range")));
            }
            c.survivors(config.class_count())
        }
        None => (0..config.class_count()).collect(),
    };
    if cert.coefficients.len() != survivors.len() {
        return Err(Error::Shape(format!(
            "{} coefficients for {} classes",
            cert.coefficients.len(),
            survivors.len()
        )));
    }
    if cert.common_point.len() != config.dimension() {
        return Err(Error::DimensionMismatch {
            expected: config.dimension(),
            found: cert.common_point.len(),
        });
    }
    if cert.coefficients.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    if !cert.coefficients.iter().sum::<Rational>().is_one() {
        return Ok(false);
    }
    let ok = (0..rep.k()).all(|i| {
        let points: Vec<Vec<Rational>> = survivors.iter().map(|&j| rep.point(config, i, j).to_vec()).collect();
        combination(&cert.coefficients, &points, config.dimension()) == cert.common_point
    });
    Ok(ok)
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

    fn perm(values: &[usize]) -> InjectiveAssignment {
        InjectiveAssignment::new(values.len(), values.to_vec()).unwrap()
    }

    fn rep(perms: &[&[usize]]) -> FunctionRepresentation {
        FunctionRepresentation::new(perms.iter().map(|p| perm(p)).collect()).unwrap()
    }

    #[test]
    fn decode_single_class() {
        let config = line_config(&[&[0, 1]]);
        let parts = decode_partition(&config, &rep(&[&[0, 1]])).unwrap();
        assert_eq!(parts, vec![vec![int_vector(&[0])], vec![int_vector(&[1])]]);
        let swapped = decode_partition(&config, &rep(&[&[1, 0]])).unwrap();
        assert_eq!(swapped, vec![vec![int_vector(&[1])], vec![int_vector(&[0])]]);
    }

    #[test]
    fn decode_two_classes() {
        let config = line_config(&[&[0, 2], &[2, 0]]);
        let parts = decode_partition(&config, &rep(&[&[0, 1], &[0, 1]])).unwrap();
        assert_eq!(parts[0], vec![int_vector(&[0]), int_vector(&[2])]);
        assert_eq!(parts[1], vec![int_vector(&[2]), int_vector(&[0])]);
    }

    #[test]
    fn decode_rejects_mismatched_sizes() {
        let config = line_config(&[&[0, 2], &[2, 0]]);
        assert!(decode_partition(&config, &rep(&[&[0, 1]])).is_err());
        let three = line_config(&[&[0, 1, 2], &[0, 1, 2]]);
        assert!(decode_partition(&three, &rep(&[&[0, 1], &[1, 0]])).is_err());
    }

    #[test]
    fn assignment_validation() {
        assert!(InjectiveAssignment::new(3, vec![0, 0]).is_err());
        assert!(InjectiveAssignment::new(2, vec![0, 2]).is_err());
        assert!(InjectiveAssignment::new(3, vec![2, 0]).is_ok());
    }

    #[test]
    fn permutations_are_lexicographic() {
        let all = InjectiveAssignment::all_permutations(3);
        let values: Vec<&[usize]> = all.iter().map(|p| p.values()).collect();
        assert_eq!(values, vec![
            &[0, 1, 2][..],
            &[0, 2, 1],
            &[1, 0, 2],
            &[1, 2, 0],
            &[2, 0, 1],
            &[2, 1, 0]
        ]);
    }

    #[test]
    fn symmetric_certificate_checks() {
        let config = line_config(&[&[-1, 1], &[1, -1]]);
        let r = rep(&[&[0, 1], &[0, 1]]);
        let good = EqualCoefficientCertificate {
            coefficients: vec![ratio(1, 2), ratio(1, 2)],
            common_point: vec![rat(0)],
        };
        assert!(verify_certificate(&config, &r, &good, None).unwrap());

        let lopsided = EqualCoefficientCertificate { coefficients: vec![rat(1), rat(0)], common_point: vec![rat(-1)] };
        assert!(!verify_certificate(&config, &r, &lopsided, None).unwrap());

        let half = EqualCoefficientCertificate {
            coefficients: vec![ratio(1, 4), ratio(1, 4)],
            common_point: vec![rat(0)],
        };
        assert!(!verify_certificate(&config, &r, &half, None).unwrap());
    }

    #[test]
    fn certificate_length_mismatch_is_an_error() {
        let config = line_config(&[&[-1, 1], &[1, -1]]);
        let r = rep(&[&[0, 1], &[0, 1]]);
        let cert = EqualCoefficientCertificate { coefficients: vec![rat(1)], common_point: vec![rat(0)] };
        assert!(verify_certificate(&config, &r, &cert, None).is_err());
    }

    #[test]
    fn removal_set_reindexes_coefficients() {
        // Class 1 disagrees across parts; dropping it leaves a consistent pair.
        let config = line_config(&[&[3, 3], &[0, 9], &[5, 5]]);
        let r = rep(&[&[0, 1], &[0, 1], &[0, 1]]);
        let cert = EqualCoefficientCertificate { coefficients: vec![ratio(1, 2), ratio(1, 2)], common_point: vec![rat(4)] };
        let removed = RemovalSet::new(vec![1]).unwrap();
        assert!(verify_certificate(&config, &r, &cert, Some(&removed)).unwrap());
        let wrong = RemovalSet::new(vec![0]).unwrap();
        assert!(!verify_certificate(&config, &r, &cert, Some(&wrong)).unwrap());
        assert!(RemovalSet::new(vec![2, 2]).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let id = rep(&[&[0, 1]]);
        assert_eq!(canonicalize(&id).unwrap(), id);
        assert_eq!(canonicalize(&rep(&[&[1, 0]])).unwrap(), id);
        assert_eq!(canonicalize(&rep(&[&[1, 0], &[0, 1]])).unwrap(), rep(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn canonicalize_needs_permutations() {
        let r = FunctionRepresentation::new(vec![InjectiveAssignment::new(3, vec![0, 2]).unwrap()]).unwrap();
        assert!(canonicalize(&r).is_err());
    }
}
