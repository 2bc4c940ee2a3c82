//! Exact enumeration toolkit for the hard-core lattice gas on the triangular
//! lattice with exclusion diameter `D`.
//!
//! Everything is parameterised by the squared diameter `n = D²`, which is
//! always an integer of the form `a² + ab + b²`. Arithmetic is exact:
//! integers for geometry and rationals for force families.

pub mod configurations;
pub mod eisenstein;
pub mod error;
pub mod excitations;
pub mod forces;
pub mod lattice;
pub mod render;
pub mod scanner;

pub use error::{Error, Result};
pub use lattice::{LatticeSite, Sublattice};
