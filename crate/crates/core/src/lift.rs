//! Tensor lift of colour classes into `Q^{(k-1)d}`.
//!
//! For a class `z_1, …, z_t` and an assignment `σ`, the lift is
//! `Σ_i u_i ⊗ z_{σ(i)}` where `u_1, …, u_k` is a [`SimplexFrame`]. A family of
//! lifts `F_j(σ_j)` combines to zero with weights `α` exactly when every part
//! of the partition reaches the same point with those weights, which turns
//! equal-coefficient intersection into "the origin is in a convex hull".

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{combination, is_zero_vector, origin_in_convex_hull, zero_vector, Rational};
use crate::model::{Configuration, FunctionRepresentation, InjectiveAssignment};
use crate::Error;

/// `k` vectors in `Q^{k-1}` whose only vanishing combinations have all
/// coefficients equal: `u_i = e_i` for `i < k` and `u_k = -(e_1 + … + e_{k-1})`.
///
/// Only this kernel property is needed; a regular simplex would need
/// irrational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexFrame {
    vectors: Vec<Vec<Rational>>,
}

impl SimplexFrame {
    pub fn new(k: usize) -> Result<Self, Error> {
        if k < 2 {
            return Err(Error::Shape("simplex frame needs k ≥ 2".into()));
        }
        let vectors = (0..k)
            .map(|i| {
                (0..k - 1)
                    .map(|c| {
                        if i == k - 1 {
                            -Rational::one()
                        } else if i == c {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self { vectors })
    }

    pub fn k(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// `Σ_i β_i u_i`
    pub fn combine(&self, beta: &[Rational]) -> Vec<Rational> {
        combination(beta, &self.vectors, self.k() - 1)
    }
}

/// `simplex_frame(k)`
pub fn simplex_frame(k: usize) -> Result<SimplexFrame, Error> {
    SimplexFrame::new(k)
}

/// The lift `F_j(σ)` of one class under one assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedVector {
    pub class: usize,
    pub assignment: InjectiveAssignment,
    /// `k - 1` contiguous blocks of `d` coordinates.
    pub coordinates: Vec<Rational>,
}

fn lift_with_frame(frame: &SimplexFrame, config: &Configuration, j: usize, sigma: &InjectiveAssignment) -> Vec<Rational> {
    let d = config.dimension();
    let mut coords = zero_vector((frame.k() - 1) * d);
    for (i, u) in frame.vectors().iter().enumerate() {
        let z = config.point(j, sigma.apply(i));
        for (block, weight) in u.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            for (c, x) in z.iter().enumerate() {
                coords[block * d + c] += weight * x;
            }
        }
    }
    coords
}

fn check_assignment(config: &Configuration, j: usize, sigma: &InjectiveAssignment) -> Result<(), Error> {
    if j >= config.class_count() {
        return Err(Error::Shape(alloc::format!("class {j} out of range")));
    }
    if sigma.t() != config.points_per_class() {
        return Err(Error::InvalidAssignment(alloc::format!(
            "assignment maps into [{}], class has {} points",
            sigma.t(),
            config.points_per_class()
        )));
    }
    Ok(())
}

/// `F_j(σ) = Σ_i u_i ⊗ z(j)_{σ(i)}`; block `c` of the result is `Σ_i (u_i)_c z(j)_{σ(i)}`.
pub fn lift(config: &Configuration, j: usize, sigma: &InjectiveAssignment) -> Result<LiftedVector, Error> {
    check_assignment(config, j, sigma)?;
    let frame = SimplexFrame::new(sigma.k())?;
    Ok(LiftedVector { class: j, assignment: sigma.clone(), coordinates: lift_with_frame(&frame, config, j, sigma) })
}

/// The cyclic shift `β^m`, where `β` sends every index one step to the right
/// and the last back to the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicShift {
    pub k: usize,
    pub exponent: usize,
}

impl CyclicShift {
    /// `β^m` as a permutation of `[k]`.
    pub fn permutation(&self) -> InjectiveAssignment {
        let values = (0..self.k).map(|i| (i + self.exponent) % self.k).collect();
        InjectiveAssignment::new(self.k, values).expect("a shift is a permutation")
    }

    /// `β^m ∘ τ`, the action `m · F_j(τ) = F_j(β^m τ)`.
    pub fn act(&self, tau: &InjectiveAssignment) -> Result<InjectiveAssignment, Error> {
        self.permutation().compose(tau)
    }
}

/// Which assignments an orbit ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orbit {
    /// Every permutation of `[k]`, in lexicographic order.
    Full,
    /// `β, β², …, β^k` applied to the identity, in that order.
    Cyclic,
}

/// All lifts of class `j` over an orbit of assignments (needs `t = k`).
///
/// The orbit is checked to capture the origin before it is returned.
pub fn lift_orbit(config: &Configuration, j: usize, orbit: Orbit) -> Result<Vec<LiftedVector>, Error> {
    let k = config.points_per_class();
    if k < 2 {
        return Err(Error::Shape("orbits need k = t ≥ 2".into()));
    }
    if j >= config.class_count() {
        return Err(Error::Shape(alloc::format!("class {j} out of range")));
    }
    let assignments: Vec<InjectiveAssignment> = match orbit {
        Orbit::Full => InjectiveAssignment::all_permutations(k),
        Orbit::Cyclic => (1..=k).map(|m| CyclicShift { k, exponent: m }.permutation()).collect(),
    };
    let frame = SimplexFrame::new(k)?;
    let lifts: Vec<LiftedVector> = assignments
        .into_iter()
        .map(|sigma| LiftedVector { class: j, coordinates: lift_with_frame(&frame, config, j, &sigma), assignment: sigma })
        .collect();
    let coords: Vec<Vec<Rational>> = lifts.iter().map(|l| l.coordinates.clone()).collect();
    if origin_in_convex_hull(&coords)?.is_none() {
        return Err(Error::CaptureFailed { set: j });
    }
    Ok(lifts)
}

/// The two sides of the lift equivalence for given weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma1Sides {
    /// `Σ_j α_j F_j(σ_j) = 0`
    pub lifted_zero: bool,
    /// `Σ_j α_j z(j)_{σ_j(i)}` is the same point for every part `i`.
    pub equal_points: bool,
}

impl Lemma1Sides {
    pub fn agree(&self) -> bool {
        self.lifted_zero == self.equal_points
    }
}

/// Evaluates both sides of the lift equivalence independently.
pub fn lemma1_sides(config: &Configuration, rep: &FunctionRepresentation, alpha: &[Rational]) -> Result<Lemma1Sides, Error> {
    rep.check_against(config)?;
    if alpha.len() != config.class_count() {
        return Err(Error::Shape(alloc::format!(
            "{} coefficients for {} classes",
            alpha.len(),
            config.class_count()
        )));
    }
    let k = rep.k();
    if k < 2 {
        return Err(Error::Shape("the lift needs k ≥ 2".into()));
    }
    let frame = SimplexFrame::new(k)?;
    let d = config.dimension();
    let mut lifted = zero_vector((k - 1) * d);
    for (j, (a, sigma)) in alpha.iter().zip(rep.assignments()).enumerate() {
        let f = lift_with_frame(&frame, config, j, sigma);
        crate::linalg::axpy(&mut lifted, a, &f);
    }

    let part_point = |i: usize| {
        let points: Vec<Vec<Rational>> = (0..rep.len()).map(|j| rep.point(config, i, j).to_vec()).collect();
        combination(alpha, &points, d)
    };
    let first = part_point(0);
    let equal_points = (1..k).all(|i| part_point(i) == first);
    Ok(Lemma1Sides { lifted_zero: is_zero_vector(&lifted), equal_points })
}

/// True iff both sides of the lift equivalence hold or both fail.
pub fn check_lemma1(config: &Configuration, rep: &FunctionRepresentation, alpha: &[Rational]) -> Result<bool, Error> {
    lemma1_sides(config, rep, alpha).map(|s| s.agree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vector, rat, ratio, Matrix};
    use alloc::vec;

    fn line_config(classes: &[&[i64]]) -> Configuration {
        let classes = classes.iter().map(|c| c.iter().map(|&x| int_vector(&[x])).collect()).collect();
        Configuration::new(1, classes).unwrap()
    }

    fn perm(values: &[usize]) -> InjectiveAssignment {
        InjectiveAssignment::new(values.len(), values.to_vec()).unwrap()
    }

    #[test]
    fn frames_for_small_k() {
        assert_eq!(simplex_frame(2).unwrap().vectors(), &[int_vector(&[1]), int_vector(&[-1])]);
        assert_eq!(
            simplex_frame(3).unwrap().vectors(),
            &[int_vector(&[1, 0]), int_vector(&[0, 1]), int_vector(&[-1, -1])]
        );
        assert!(simplex_frame(1).is_err());
    }

    #[test]
    fn frame_kernel_is_constants() {
        for k in 2..7 {
            let frame = simplex_frame(k).unwrap();
            assert!(is_zero_vector(&frame.combine(&vec![rat(2); k])));
            // k×(k-1) matrix of rank k-1: the kernel of β ↦ Σ β_i u_i is one-dimensional.
            let m = Matrix::from_columns(frame.vectors()).unwrap();
            assert_eq!(m.rank(), k - 1);
            assert_eq!(crate::linalg::nullspace_basis(&m), vec![vec![rat(1); k]]);
        }
    }

    #[test]
    fn lift_of_pair_is_difference() {
        let config = line_config(&[&[5, 3]]);
        assert_eq!(lift(&config, 0, &perm(&[0, 1])).unwrap().coordinates, int_vector(&[2]));
        assert_eq!(lift(&config, 0, &perm(&[1, 0])).unwrap().coordinates, int_vector(&[-2]));
    }

    #[test]
    fn lift_layout_is_block_major() {
        // k = 3, d = 2: block c is z_{σ(c)} - z_{σ(2)}.
        let class = vec![int_vector(&[1, 2]), int_vector(&[10, 20]), int_vector(&[100, 200])];
        let config = Configuration::new(2, vec![class]).unwrap();
        let l = lift(&config, 0, &perm(&[2, 0, 1])).unwrap();
        assert_eq!(l.coordinates, int_vector(&[90, 180, -9, -18]));
    }

    #[test]
    fn lift_rejects_wrong_range() {
        let config = line_config(&[&[5, 3, 1]]);
        assert!(lift(&config, 0, &perm(&[0, 1])).is_err());
        assert!(lift(&config, 1, &perm(&[0, 1, 2])).is_err());
    }

    #[test]
    fn orbits_of_a_pair() {
        let config = line_config(&[&[5, 3]]);
        let full: Vec<_> = lift_orbit(&config, 0, Orbit::Full).unwrap().into_iter().map(|l| l.coordinates).collect();
        assert_eq!(full, vec![int_vector(&[2]), int_vector(&[-2])]);
        let cyclic: Vec<_> = lift_orbit(&config, 0, Orbit::Cyclic).unwrap().into_iter().map(|l| l.coordinates).collect();
        assert_eq!(cyclic.len(), 2);
        assert!(cyclic.iter().all(|c| full.contains(c)));
    }

    #[test]
    fn repeated_point_lifts_to_zero() {
        let class = vec![int_vector(&[4, -1]); 3];
        let config = Configuration::new(2, vec![class]).unwrap();
        for l in lift_orbit(&config, 0, Orbit::Full).unwrap() {
            assert!(is_zero_vector(&l.coordinates));
        }
    }

    #[test]
    fn cyclic_orbit_order() {
        let config = line_config(&[&[1, 2, 3]]);
        let values: Vec<Vec<usize>> =
            lift_orbit(&config, 0, Orbit::Cyclic).unwrap().iter().map(|l| l.assignment.values().to_vec()).collect();
        assert_eq!(values, vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn shift_has_order_k() {
        for k in 2..6 {
            assert_eq!(CyclicShift { k, exponent: k }.permutation(), InjectiveAssignment::identity(k));
            assert_ne!(CyclicShift { k, exponent: 1 }.permutation(), InjectiveAssignment::identity(k));
        }
    }

    #[test]
    fn lemma1_symmetric_instance() {
        let config = line_config(&[&[-1, 1], &[1, -1]]);
        let rep = FunctionRepresentation::new(vec![perm(&[0, 1]), perm(&[0, 1])]).unwrap();
        let sides = lemma1_sides(&config, &rep, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(sides, Lemma1Sides { lifted_zero: true, equal_points: true });
        let sides = lemma1_sides(&config, &rep, &[rat(1), rat(0)]).unwrap();
        assert_eq!(sides, Lemma1Sides { lifted_zero: false, equal_points: false });
        assert!(check_lemma1(&config, &rep, &[rat(1), rat(0)]).unwrap());
        assert!(check_lemma1(&config, &rep, &[rat(1)]).is_err());
    }
}
