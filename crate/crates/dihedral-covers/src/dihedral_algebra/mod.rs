//! Representation theory of `D_n` and the multiplication algebra of simple dihedral covers.

mod algebra;
mod cyclo;
mod eigensheaf;
mod group;

pub use algebra::{d3_resolvent, field_polynomial, phi_tensor, AFPoly, Basis, D3Resolvent, Elem, FieldPolynomial, PhiTensor, SimpleCoverAlgebra};
pub use cyclo::{cyclotomic_poly, CycloElem};
pub use eigensheaf::{eigensheaf_decomposition, projector_degrees, Eigensheaf};
pub use group::{epsilon, CMat, CharTable, DihedralGroup, GroupElem, Irrep};
