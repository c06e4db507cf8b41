//! Exact computation with crossed products of algebras by coalgebras,
//! entwining structures, cleft extensions, gauge equivalence and the dual
//! coalgebra constructions, together with axiom checkers.

pub mod cleft;
pub mod coalg;
pub mod crossprod;
pub mod dualcross;
pub mod entwine;
pub mod error;
pub mod gauge;
pub mod instances;
pub mod kernel;
pub mod ncalg;

pub use error::{Error, Result};
