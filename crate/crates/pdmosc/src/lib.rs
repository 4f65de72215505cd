//! Exactly solvable radial harmonic oscillator in a position-dependent mass
//! background `m(r) = (1 + alpha r^2)^-2`, solved through a point canonical
//! transformation onto the trigonometric Poschl-Teller problem.
//!
//! The crate provides closed-form spectra and wavefunctions, the deformed
//! supersymmetric hierarchy, rational extensions with exceptional orthogonal
//! polynomials (types I, II, III), their constant-mass limits, and an
//! independent finite-difference/quadrature verification engine.

pub mod error;
pub mod extensions;
pub mod oracle;
pub mod oscillator;
pub mod pct;
pub mod specfun;
pub mod susy;

pub use error::{Error, Result};
