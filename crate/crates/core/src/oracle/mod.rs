//! Independent ground truth: the finite-field tower, genetic `On_2`, MEX
//! machinery, digit-wise addition, and the verification suites built on them.

pub mod digits;
pub mod genetic;
pub mod mex;
pub mod tower;
pub mod verify;

pub use genetic::{on2_genetic, GeneticOn2, Op};
pub use mex::{check_lower_bounds, has_mex_property, mex, mex_set};
pub use tower::{build_tower, TowerField};
