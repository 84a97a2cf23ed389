use super::HECurve;
use crate::double_cover::crt;
use crate::error::{Error, Result};
use crate::exactmath::{FieldElem, Mat, UPoly};

/// `E + k ∞` on the odd model, with `E` an effective semi-reduced divisor `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRDivisor {
    pub u: UPoly,
    pub v: UPoly,
    pub inf: i64,
}

impl RRDivisor {
    pub fn at_infinity(field: crate::exactmath::Field, k: i64) -> RRDivisor {
        RRDivisor { u: UPoly::one(field), v: UPoly::zero(field), inf: k }
    }

    /// From affine points `(x, y, multiplicity)` plus `k ∞`.
    ///
    /// Points over the same `x` must coincide, and Weierstrass points (`y = 0`) can
    /// only appear once. Higher multiplicities are lifted by Newton iteration.
    pub fn from_points(curve: &HECurve, pts: &[(FieldElem, FieldElem, u32)], k: i64) -> Result<RRDivisor> {
        let f = &curve.odd_model()?.f;
        let field = f.field();
        let (mut u, mut v) = (UPoly::one(field), UPoly::zero(field));
        for (i, (x, y, m)) in pts.iter().enumerate() {
            if !f.eval(x).eq(&(y * y)) {
                return Err(Error::InvalidInput(format!("({x}, {y}) is not on the curve")));
            }
            if pts[..i].iter().any(|(x2, _, _)| x2 == x) {
                return Err(Error::InvalidInput("repeated x-coordinate: merge multiplicities into one entry".into()));
            }
            if y.is_zero() && *m > 1 {
                return Err(Error::InvalidInput("a Weierstrass point can only appear with multiplicity 1".into()));
            }
            let lin = UPoly::linear_root(x);
            let modulus = lin.pow(*m);
            let mut w = UPoly::constant(y.clone());
            if *m > 1 {
                let two_inv = field.int(2).inv().unwrap();
                for _ in 0..*m {
                    let inv = w.inv_mod(&modulus).expect("y != 0");
                    w = (&w + &f.mul_mod(&inv, &modulus)).rem(&modulus).scale(&two_inv);
                }
            }
            v = crt(&v, &u, &w, &modulus);
            u = &u * &modulus;
        }
        Ok(RRDivisor { u, v, inf: k })
    }

    pub fn degree(&self) -> i64 {
        self.u.deg_i() + self.inf
    }
}

/// The function `(alpha + y beta) / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRFunction {
    pub alpha: UPoly,
    pub beta: UPoly,
    pub den: UPoly,
}

/// Basis of `L(E + k ∞)`.
///
/// Every such function is `(alpha + y beta) / u` with `alpha - v beta ≡ 0 mod u`, and
/// the pole order at `∞` bounds `2 deg alpha` and `2 deg beta + 2g + 1` by `k + 2 deg u`.
pub fn rr_space(curve: &HECurve, d: &RRDivisor) -> Result<Vec<RRFunction>> {
    let f = &curve.odd_model()?.f;
    let field = f.field();
    let u = d.u.monic();
    if !u.divides(&(f - &(&d.v * &d.v))) {
        return Err(Error::InvalidInput("divisor is not semi-reduced: u does not divide f - v^2".into()));
    }
    let du = u.deg().unwrap() as i64;
    let budget = d.inf + 2 * du;
    if budget < 0 {
        return Ok(vec![]);
    }
    let amax = budget / 2;
    let bnum = budget - 2 * curve.genus() as i64 - 1;
    let bmax = if bnum < 0 { -1 } else { bnum / 2 };
    let na = (amax + 1) as usize;
    let nb = (bmax + 1) as usize;
    let n = na + nb;
    let mut cols = vec![];
    for i in 0..na {
        cols.push(UPoly::monomial(field.one(), i).rem(&u));
    }
    for j in 0..nb {
        cols.push((-&(&d.v * &UPoly::monomial(field.one(), j))).rem(&u));
    }
    let mut m = Mat::zeros(field, du as usize, n);
    for (c, p) in cols.iter().enumerate() {
        for r in 0..du as usize {
            m.data[r][c] = p.coeff(r);
        }
    }
    let kernel = if du == 0 { (0..n).map(|i| unit(field, n, i)).collect() } else { m.nullspace() };
    Ok(kernel
        .into_iter()
        .map(|w| RRFunction {
            alpha: UPoly::from_coeffs(field, w[..na].to_vec()),
            beta: UPoly::from_coeffs(field, w[na..].to_vec()),
            den: u.clone(),
        })
        .collect())
}

fn unit(field: crate::exactmath::Field, n: usize, i: usize) -> Vec<FieldElem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse::parse_hpoly, Field};

    fn curve() -> HECurve {
        HECurve::new(parse_hpoly("x0^5*x1 + x1^6", Field::Fp(7), 2, None).unwrap()).unwrap()
    }

    #[test]
    fn small_spaces() {
        let c = curve();
        let f = Field::Fp(7);
        assert_eq!(rr_space(&c, &RRDivisor::at_infinity(f, 0)).unwrap().len(), 1);
        assert!(rr_space(&c, &RRDivisor::at_infinity(f, -1)).unwrap().is_empty());
        let b = rr_space(&c, &RRDivisor::at_infinity(f, 3)).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|h| h.beta.is_zero() && h.alpha.deg_i() <= 1));
    }

    #[test]
    fn riemann_roch_in_the_nonspecial_range() {
        let c = curve();
        let f = Field::Fp(7);
        let pts = [(f.int(0), f.int(1), 2), (f.int(6), f.int(0), 1)];
        for k in 0..6 {
            let d = RRDivisor::from_points(&c, &pts, k).unwrap();
            let dim = rr_space(&c, &d).unwrap().len() as i64;
            if d.degree() > 2 {
                assert_eq!(dim, d.degree() + 1 - 2, "k = {k}");
            }
        }
    }
}
