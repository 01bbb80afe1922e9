//! Seeded random instances with integer coordinates in `[-100, 100]`.

use colourful_core::linalg::{affine_rank, int_vector};
use colourful_core::{Error, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::format::{to_q, Generator, InstanceFile, InstanceKind};

pub const COORDINATE_BOUND: i64 = 100;

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-COORDINATE_BOUND..=COORDINATE_BOUND)).collect();
    int_vector(&coords)
}

/// Draws `count` points, redrawing the whole set until it affinely spans `Q^d`.
fn spanning_points(rng: &mut ChaCha8Rng, count: usize, d: usize) -> Vec<Vec<Rational>> {
    loop {
        let points: Vec<_> = (0..count).map(|_| random_point(rng, d)).collect();
        if affine_rank(&points) == d {
            return points;
        }
    }
}

/// Number of classes (or points, for `balanced`) the kind needs.
pub fn derived_size(kind: InstanceKind, k: usize, d: usize, r: usize) -> Result<usize, CliError> {
    if d == 0 {
        return Err(CliError::usage("d must be at least 1"));
    }
    match kind {
        InstanceKind::Tverberg if k >= 2 => Ok((k - 1) * d + 1),
        InstanceKind::Radon if k == 2 => Ok(d + 1),
        InstanceKind::Radon => Err(CliError::usage("radon instances have k = 2")),
        InstanceKind::Tolerant if d < 2 => Err(Error::RequiresDimensionTwo.into()),
        InstanceKind::Tolerant if k >= 2 => Ok((r + 1) * (k - 1) * d + 1),
        InstanceKind::Tverberg | InstanceKind::Tolerant => Err(CliError::usage("k must be at least 2")),
        InstanceKind::Balanced if k >= 1 => Ok(k + d + 2),
        InstanceKind::Balanced => Err(CliError::usage("balanced instances need at least one colour")),
    }
}

/// The instance for `(kind, k, d, r, seed)`; the same arguments always give
/// the same instance.
pub fn generate(kind: InstanceKind, k: usize, d: usize, r: usize, seed: u64) -> Result<InstanceFile, CliError> {
    let n = derived_size(kind, k, d, r)?;
    if kind != InstanceKind::Tolerant && r != 0 {
        return Err(CliError::usage("r only applies to tolerant instances"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut file = InstanceFile {
        kind: Some(kind),
        d,
        n,
        t: None,
        r: None,
        classes: None,
        points: None,
        colours: None,
        seed: Some(seed),
        generator: Some(Generator { kind, k, d, r }),
    };
    match kind {
        InstanceKind::Tverberg | InstanceKind::Tolerant => {
            let classes = (0..n).map(|_| (0..k).map(|_| to_q(&random_point(&mut rng, d))).collect()).collect();
            file.t = Some(k);
            file.classes = Some(classes);
            if kind == InstanceKind::Tolerant {
                file.r = Some(r);
            }
        }
        InstanceKind::Radon => {
            // The Gale route needs the 2(d+1) points to span.
            let points = spanning_points(&mut rng, 2 * n, d);
            file.t = Some(2);
            file.classes = Some(points.chunks(2).map(|pair| pair.iter().map(|p| to_q(p)).collect()).collect());
        }
        InstanceKind::Balanced => {
            let points = spanning_points(&mut rng, n, d);
            let mut colours: Vec<usize> = (0..n).map(|i| if i < k { i + 1 } else { rng.gen_range(1..=k) }).collect();
            colours.shuffle(&mut rng);
            file.points = Some(points.iter().map(|p| to_q(p)).collect());
            file.colours = Some(colours);
        }
    }
    Ok(file)
}
