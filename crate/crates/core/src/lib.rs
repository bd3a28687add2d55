//! Smallest circles through exactly `n` points of the nine imaginary
//! quadratic lattices of class number one.
//!
//! For a lattice `L` and `n >= 3`, `uc(L, n)` is the squared radius of the
//! smallest circle passing through exactly `n` points of `L`. This crate
//! computes it with exact rational arithmetic:
//!
//! - [`arith`]: big rationals and exact square-root predicates.
//! - [`lattice`]: the lattices, their embedding in the plane, disks.
//! - [`circle`]: circumcircles, canonical keys, counting points on a circle.
//! - [`search`]: the circle enumeration and the `uc` search, certified or
//!   heuristic.
//! - [`rings`]: Gaussian/Eisenstein arithmetic and the explicit circles
//!   with `2^(l+2)` and `6 * 2^m` points.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod circle;
pub mod kernel;
pub mod lattice;
pub mod rings;
pub mod search;

pub use arith::BigRat;
pub use circle::{canonical_key, circumcircle, count_on_circle, Circle, CircleKey, GeomError};
pub use lattice::{point_group, BasisCase, Isometry, LatticeError, LatticePoint, LatticeSpec, QPoint};
pub use search::{
    certify_completeness, enumerate_circles, uc, uc_table, SearchConfig, SearchError, SearchMode, UcResult,
};
