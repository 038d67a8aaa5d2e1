//! O(2)/O(3)-covariant fuzzy circle and fuzzy sphere as explicit
//! finite-dimensional operator algebras, with machine verification of the
//! defining identities, spectral formulas, convergence scans, and an
//! independent radial Schrödinger eigensolver cross-check.

pub mod circle;
pub mod cli;
pub mod error;
pub mod lie;
pub mod operator;
pub mod radial;
pub mod report;
pub mod special;
pub mod sphere;

pub use error::Error;
pub use operator::{Operator, EigenSystem};
