//! Unitary representations of su(2) and so(4) ≅ su(2)⊕su(2).
//!
//! Angular momentum labels are carried as doubled integers (`two_j`,
//! `two_m`) so half-integer spins stay exact.

pub mod cg;
pub mod so4;
pub mod su2;

pub use cg::clebsch_gordan;
pub use so4::{coeff_a, so4_coupled_rep, so4_product_oracle, So4Rep};
pub use su2::{su2_irrep, Su2Irrep};
