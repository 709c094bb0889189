//! Exact integer and 𝔽₂ linear algebra.

mod f2;
mod matrix;
mod smith;
mod symplectic;

pub use f2::{solve_f2, F2Matrix, F2Solution, F2Vector};
pub use matrix::IntMatrix;
pub use smith::{rank_over_rationals, smith_normal_form, SmithForm};
pub use symplectic::{standard_form, symplectic_basis};
