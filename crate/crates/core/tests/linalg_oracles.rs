mod common;

use colourful_core::linalg::{
    int_vector, is_zero_vector, nullspace_basis, origin_in_convex_hull, solve_linear, Matrix, Rational,
};
use common::brute_origin_in_hull;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
            .prop_map(|rows| Matrix::from_rows(rows.iter().map(|r| int_vector(r)).collect()).unwrap())
    })
}

fn point_cloud() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..4, 1usize..7).prop_flat_map(|(dim, count)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, dim), count)
            .prop_map(|pts| pts.iter().map(|p| int_vector(p)).collect())
    })
}

#[test]
fn nullspace_example_matches_hand_reduction() {
    let m = Matrix::from_rows(vec![int_vector(&[0, 1, 2, 3]), int_vector(&[1, 1, 1, 1])]).unwrap();
    let basis = nullspace_basis(&m);
    let expected = [int_vector(&[1, -2, 1, 0]), int_vector(&[0, 1, -2, 1])];
    for v in &expected {
        assert!(is_zero_vector(&m.mul_vec(v)));
    }
    // Same span as the hand-derived basis.
    let mut rows = basis.clone();
    rows.extend(expected.iter().cloned());
    assert_eq!(Matrix::from_rows(rows).unwrap().rank(), basis.len());
    assert_eq!(basis.len(), 2);
}

proptest! {
    #[test]
    fn nullspace_vectors_are_independent_kernel_elements(m in small_matrix()) {
        let basis = nullspace_basis(&m);
        prop_assert_eq!(basis.len(), m.cols() - m.rank());
        for v in &basis {
            prop_assert!(is_zero_vector(&m.mul_vec(v)));
        }
        if !basis.is_empty() {
            prop_assert_eq!(Matrix::from_rows(basis.clone()).unwrap().rank(), basis.len());
        }
    }

    #[test]
    fn solve_linear_solutions_satisfy_system(m in small_matrix(), seed in prop::collection::vec(-5i64..=5, 5)) {
        let x0 = int_vector(&seed[..m.cols()]);
        let b = m.mul_vec(&x0);
        let x = solve_linear(&m, &b).expect("system built from a solution is consistent");
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn hull_membership_agrees_with_caratheodory_oracle(points in point_cloud()) {
        let fast = origin_in_convex_hull(&points).unwrap();
        let slow = brute_origin_in_hull(&points);
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(cert) = fast {
            prop_assert!(cert.verify(&points));
        }
    }
}
