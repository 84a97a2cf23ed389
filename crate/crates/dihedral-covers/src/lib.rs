//! Exact computations for dihedral covers and the Picard groups of double covers of `P^1`.

pub mod error;
pub mod cover_geometry;
pub mod deformations;
pub mod dihedral_algebra;
pub mod double_cover;
pub mod exactmath;
pub mod hyperelliptic;

pub use error::{Error, Result};
