//! Weighted Steklov eigenvalues on the disk, conformal reconstruction of
//! planar domains from boundary weights, and the explicit families used to
//! probe quantitative stability of the Weinstock inequality.
//!
//! The runnable programs under `examples/` are the intended entry points;
//! the `steklov` binary wraps the same experiments for scripted runs.

pub mod conformal;
pub mod constructions;
pub mod disk;
pub mod error;
pub mod experiments;
pub mod fem;
pub mod fourier;
pub mod linalg;
pub mod parse;
pub mod quad;

pub use error::{Error, Result};
