//! Independent oracles and seeded generators shared by the integration and
//! acceptance test suites.

pub mod macaulay;
pub mod random;
