//! Phase-one simplex over exact rationals.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{Matrix, Rational};

/// Finds `x ≥ 0` with `a · x = b`, or `None` if no such `x` exists.
///
/// Runs the phase-one simplex method on `a x + s = b` (rows negated so that
/// `b ≥ 0`, one artificial `s_i` per row) minimizing `Σ s_i`. Bland's rule
/// picks entering and leaving variables, so the method terminates without
/// cycling, and all arithmetic is exact. The returned point is a basic
/// feasible solution and is deterministic for a given input.
pub fn nonnegative_solution(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must match row count");
    let m = a.rows();
    let n = a.cols();
    let width = n + m + 1;
    let rhs = n + m;

    let mut tableau: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let flip = b[r].is_negative();
            let mut row = Vec::with_capacity(width);
            for c in 0..n {
                let x = a.get(r, c).clone();
                row.push(if flip { -x } else { x });
            }
            for i in 0..m {
                row.push(if i == r { Rational::from_integer(1.into()) } else { Rational::zero() });
            }
            row.push(if flip { -b[r].clone() } else { b[r].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective: artificials are basic, so the
    // cost of a structural column is minus its column sum.
    let mut cost: Vec<Rational> = (0..width)
        .map(|c| {
            if (n..n + m).contains(&c) {
                Rational::zero()
            } else {
                -tableau.iter().map(|row| &row[c]).sum::<Rational>()
            }
        })
        .collect();

    while let Some(enter) = (0..n + m).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (r, row) in tableau.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((best_r, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*best_r]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always limits the step.
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x: Vec<Rational> = (0..n).map(|_| Rational::zero()).collect();
    for (r, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tableau[r][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = tableau[row][col].recip();
    for x in tableau[row].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let pivot_row = tableau[row].clone();
    for (r, other) in tableau.iter_mut().enumerate() {
        if r != row {
            eliminate(other, &pivot_row, col);
        }
    }
    eliminate(cost, &pivot_row, col);
}

fn eliminate(target: &mut [Rational], pivot_row: &[Rational], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let factor = target[col].clone();
    for (t, p) in target.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *t -= &factor * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;
    use alloc::vec;

    #[test]
    fn finds_nonnegative_point() {
        // x + y = 2, x - y = 0
        let a = Matrix::from_rows(vec![int_vector(&[1, 1]), int_vector(&[1, -1])]).unwrap();
        let x = nonnegative_solution(&a, &int_vector(&[2, 0])).unwrap();
        assert_eq!(x, int_vector(&[1, 1]));
    }

    #[test]
    fn negative_rhs_rows_are_handled() {
        // -x - y = -3
        let a = Matrix::from_rows(vec![int_vector(&[-1, -1])]).unwrap();
        let x = nonnegative_solution(&a, &int_vector(&[-3])).unwrap();
        assert_eq!(a.mul_vec(&x), int_vector(&[-3]));
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn infeasible_sign_pattern() {
        // x + y = -1 with x, y ≥ 0
        let a = Matrix::from_rows(vec![int_vector(&[1, 1])]).unwrap();
        assert!(nonnegative_solution(&a, &int_vector(&[-1])).is_none());
    }

    #[test]
    fn redundant_rows_keep_feasibility() {
        let a = Matrix::from_rows(vec![int_vector(&[1, 2]), int_vector(&[2, 4])]).unwrap();
        let x = nonnegative_solution(&a, &int_vector(&[4, 8])).unwrap();
        assert_eq!(a.mul_vec(&x), int_vector(&[4, 8]));
    }
}
