//! Numerical workbench for the parameterized volume conjecture.
//!
//! Evaluates colored Jones polynomials of the unknot, the figure-eight knot
//! and torus knots at deformed roots of unity, extrapolates the large-`N`
//! growth rate, and checks the analytic layer built on top of it: the
//! potential `H(K;u)`, the longitude function `v_K(u)`, the volume function,
//! the Schläfli identity, A-polynomial pairings and surgery coefficients.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod jones;
pub mod knots;
pub mod numerics;
pub mod sweep;

pub use error::{Error, Result};
pub use knots::KnotSpec;
pub use numerics::{LimitEstimate, LogComplex};

pub use num_complex::Complex64;
