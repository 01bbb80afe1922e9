#![allow(dead_code)]

use colourful_core::linalg::{int_vector, solve_linear, Matrix, Rational};
use colourful_core::model::Configuration;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const BOUND: i64 = 100;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    int_vector(&(0..d).map(|_| rng.gen_range(-BOUND..=BOUND)).collect::<Vec<_>>())
}

pub fn random_config(rng: &mut impl Rng, n: usize, t: usize, d: usize) -> Configuration {
    let classes = (0..n).map(|_| (0..t).map(|_| random_point(rng, d)).collect()).collect();
    Configuration::new(d, classes).unwrap()
}

pub fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| s.len() <= max)
        .collect()
}

/// Carathéodory oracle: the origin is in the hull iff it is a nonnegative
/// barycentric combination of some subset of at most `p + 1` points.
pub fn brute_origin_in_hull(points: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let p = points[0].len();
    for subset in subsets(points.len(), p + 1) {
        let mut columns: Vec<Vec<Rational>> = subset.iter().map(|&i| points[i].clone()).collect();
        for c in &mut columns {
            c.push(Rational::from_integer(1.into()));
        }
        let m = Matrix::from_columns(&columns).unwrap();
        let mut rhs = vec![Rational::from_integer(0.into()); p + 1];
        rhs[p] = Rational::from_integer(1.into());
        if let Some(lambda) = solve_linear(&m, &rhs) {
            if lambda.iter().all(|x| !x.is_negative()) {
                let mut full = vec![Rational::from_integer(0.into()); points.len()];
                for (&i, l) in subset.iter().zip(lambda) {
                    full[i] = l;
                }
                return Some(full);
            }
        }
    }
    None
}

/// Brute-force check that the hulls of two point lists meet: the origin is
/// in the hull of the pairwise differences iff the hulls intersect.
pub fn brute_hulls_meet(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let diffs: Vec<Vec<Rational>> =
        a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p - q).collect())).collect();
    brute_origin_in_hull(&diffs).is_some()
}
