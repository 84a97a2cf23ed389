//! The book chapters, compiled so their snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/matrix-pairs.md")]
pub mod matrix_pairs {}

#[doc = include_str!("../../../book/src/jacobians-and-torsion.md")]
pub mod jacobians_and_torsion {}

#[doc = include_str!("../../../book/src/dihedral-algebra.md")]
pub mod dihedral_algebra {}

#[doc = include_str!("../../../book/src/cover-geometry.md")]
pub mod cover_geometry {}

#[doc = include_str!("../../../book/src/deformations.md")]
pub mod deformations {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
