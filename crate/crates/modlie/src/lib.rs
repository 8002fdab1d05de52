//! Exact computation with finite-dimensional Lie algebras over small
//! finite fields.
//!
//! The crate provides structure-constant Lie algebras over `F_{p^k}`,
//! their derivation and outer derivation algebras, centroids, simplicity
//! and central-simplicity tests, a split-section search deciding the taut
//! property, and complete enumeration of commutative post-Lie algebra
//! (CPA) structures via a two-stage linear/quadratic solve.
//!
//! Everything is exact: no floating point, no probabilistic algorithms.
//! See the `examples/` directory for runnable tours of each capability,
//! and the `modlie` binary for the file-based command line interface.

pub mod field;
pub mod matrix;
pub mod lie;
pub mod construct;
pub mod derivation;
pub mod polysolve;
pub mod cpa;
pub mod taut;
pub mod format;
pub mod report;
pub mod cli;
