//! Exact constructions of equal-coefficient colourful Tverberg partitions.
//!
//! Given colour classes of points in `Q^d`, the crate builds colourful
//! partitions whose convex hulls meet, together with rational certificates
//! that can be re-checked with zero residual:
//!
//! - [`tverberg::solve_equal_coefficients`] lifts every colour class into
//!   `Q^{(k-1)d}` ([`lift`]) and runs an exact colourful Carathéodory search
//!   ([`caratheodory`]) to get one convex coefficient vector shared by all parts.
//! - [`tverberg::solve_tolerant`] does the same with a tolerance `r`: the parts
//!   still meet after any `r` colour classes are dropped.
//! - [`tverberg::solve_radon`] and [`gale::radon_via_gale`] give two independent
//!   constructions of coloured Radon partitions.
//! - [`gale::balanced_coloured_split`] finds two disjoint sets with equal colour
//!   counts and intersecting hulls from a Gale dual and a ham-sandwich cut.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

mod error;

pub mod caratheodory;
pub mod gale;
pub mod lift;
pub mod linalg;
pub mod model;
pub mod tverberg;

pub use error::Error;
pub use linalg::Rational;
