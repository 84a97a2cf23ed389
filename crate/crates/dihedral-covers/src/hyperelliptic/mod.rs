//! Hyperelliptic curves `z^2 = F(x0, x1)`: Jacobian arithmetic, Riemann–Roch spaces,
//! matrix pairs and the n-torsion rank test.

mod cantor;
mod convert;
mod rr;
mod torsion;
mod two_torsion;

pub use cantor::{cantor_add, class_order, negate, scalar_mul, MumfordClass, DEFAULT_ORDER_CAP};
pub use convert::{class_from_matrix, matrix_from_class, stratum, Stratum};
pub use rr::{rr_space, RRDivisor, RRFunction};
pub use torsion::{is_n_torsion, sym_power_pushforward, torsion_matrix, xi_form, TorsionMatrix, XiForm};
pub use two_torsion::{enumerate_two_torsion, random_degree0_pair};

use crate::double_cover::DoubleCoverRing;
use crate::error::{Error, Result};
use crate::exactmath::{FieldElem, HPoly, UPoly};

/// Coordinates moving a rational Weierstrass point to `[1 : 0]`.
///
/// `x0 = rho y0 + y1`, `x1 = y0`; forms are carried over by `H(x(y))`. The affine
/// model `y^2 = f(x)` is the dehomogenization at `y1 = 1` and has degree `2g + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddModel {
    pub rho: Option<FieldElem>,
    to_odd: Vec<Vec<FieldElem>>,
    from_odd: Vec<Vec<FieldElem>>,
    pub f: UPoly,
}

impl OddModel {
    /// `H(x(y))`.
    pub fn to_odd(&self, h: &HPoly) -> HPoly {
        h.linear_substitute(&self.to_odd)
    }

    /// Inverse of [`OddModel::to_odd`].
    pub fn from_odd(&self, h: &HPoly) -> HPoly {
        h.linear_substitute(&self.from_odd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HECurve {
    g: u32,
    ring: DoubleCoverRing,
    odd: Option<OddModel>,
}

impl HECurve {
    pub fn new(f: HPoly) -> Result<HECurve> {
        if f.nvars() != 2 || f.degree() < 4 || f.degree() % 2 != 0 {
            return Err(Error::InvalidInput(format!("F must be a binary form of even degree >= 4, got degree {}", f.degree())));
        }
        let ring = DoubleCoverRing::new(f.clone())?;
        if !ring.is_normal() {
            return Err(Error::NonNormal);
        }
        let g = f.degree() / 2 - 1;
        let fl = f.field();
        let odd = if f.x1_valuation() > 0 {
            let id = vec![vec![fl.one(), fl.zero()], vec![fl.zero(), fl.one()]];
            Some(OddModel { rho: None, to_odd: id.clone(), from_odd: id, f: f.dehomogenize() })
        } else {
            f.dehomogenize().roots().into_iter().next().map(|rho| {
                let to_odd = vec![vec![rho.clone(), fl.one()], vec![fl.one(), fl.zero()]];
                let from_odd = vec![vec![fl.zero(), fl.one()], vec![fl.one(), -&rho]];
                let fo = f.linear_substitute(&to_odd).dehomogenize();
                OddModel { rho: Some(rho), to_odd, from_odd, f: fo }
            })
        };
        Ok(HECurve { g, ring, odd })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn ring(&self) -> &DoubleCoverRing {
        &self.ring
    }

    pub fn branch(&self) -> &HPoly {
        self.ring.branch()
    }

    pub fn odd_model(&self) -> Result<&OddModel> {
        self.odd.as_ref().ok_or_else(|| Error::NoRationalRoot(self.ring.field().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse::parse_hpoly, Field};

    #[test]
    fn odd_model_has_odd_degree() {
        let f = Field::Fp(101);
        let c = HECurve::new(parse_hpoly("x0^6 - x1^6", f, 2, None).unwrap()).unwrap();
        let m = c.odd_model().unwrap();
        assert_eq!(m.f.deg(), Some(5));
        let h = parse_hpoly("3*x0^2 + x0*x1 - 7*x1^2", f, 2, None).unwrap();
        assert_eq!(m.from_odd(&m.to_odd(&h)), h);
    }

    #[test]
    fn no_rational_root() {
        let c = HECurve::new(parse_hpoly("x0^4 + x1^4", Field::Q, 2, None).unwrap()).unwrap();
        assert!(matches!(c.odd_model(), Err(Error::NoRationalRoot(_))));
    }
}
