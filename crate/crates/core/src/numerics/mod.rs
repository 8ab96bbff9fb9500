//! Quadrature, finite differences, root finding, characteristic ODEs and the
//! weighted Rayleigh-quotient eigenvalue.

pub mod finite_diff;
pub mod ode;
pub mod quadrature;
pub mod rayleigh;
pub mod roots;

pub use finite_diff::{fd_partial, Axis};
pub use ode::{
    flow_separation_check, flow_through, ode_flow, ode_flow_with, Curve1D, OdeOptions, Separation,
};
pub use quadrature::{
    gauss_legendre, integrate1d, integrate2d, Integral, QuadratureSpec, Rect, Seam, SeamSet,
};
pub use rayleigh::{rayleigh_min, RayleighProblem};
pub use roots::bisect_monotone;
