//! Numerical toolkit for intrinsic graphs in the first Heisenberg group.
//!
//! The crate evaluates the sub-Riemannian graph area of a function `f(y, t)`
//! and its first and second variations, builds characteristic (Lagrangian)
//! parametrizations of `f`, recovers the quadratic profile of stationary
//! fields, and reproduces two stable but non-planar examples: a dilation
//! cone and a strip built on the Cantor staircase.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bump;
pub mod cantor;
pub mod cone;
pub mod error;
pub mod field;
pub mod group;
pub mod lagrangian;
pub mod mesh;
pub mod numerics;
pub mod report;
pub mod strips;
pub mod suite;
pub mod variation;

pub use error::{Error, Result};
