//! Exact polynomial algebra over grids: natural division, lacunary
//! structure, vanishing ideals and their Gröbner bases, nonvanishing
//! checkers and nonzero counting.

pub mod cli;
pub mod counting;
pub mod division;
pub mod error;
pub mod grid;
pub mod ideals;
pub mod lacunary;
pub mod nullsatz;
pub mod order;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod selftest;
pub mod stability;

pub use error::{Error, Result};
pub use order::MonomialOrder;
pub use poly::{Degree, ExponentVector, Polynomial, Term};
pub use scalar::{Field, Scalar};
