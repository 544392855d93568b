//! Computational toolkit for determinantal singularities.
//!
//! Given the presentation matrix of a determinantal variety, the crate computes
//! the rank-strata ideals and their dimensions, EIDS transversality verdicts,
//! zero-dimensional colengths, the triangular Euler-characteristic system that
//! links stabilization data to polar multiplicities, chain-rule generator
//! matrices for the Jacobian module and the module of determinantal deformations,
//! and hyperplane sections.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and all
//! geometry goes through reduced Gröbner bases.

pub mod detmodel;
pub mod genericity;
pub mod groebner;
pub mod invariants;
pub mod polyring;
pub mod strata;

mod error;

pub use error::{Error, ErrorKind, Result};
