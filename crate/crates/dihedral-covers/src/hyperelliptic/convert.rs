//! Matrix pairs to Mumford classes and back, through the odd model.
//!
//! The section `e1` of `L ⊗ q^*O(a)` vanishes on `E = (q, -P)`. Since the
//! hyperplane pullback is `2∞` on the odd model, the Mumford class attached to `L`
//! is the reduction of `E - deg(E) ∞`, i.e. `[L] - deg(L) ∞`.

use super::cantor::MumfordClass;
use super::rr::{rr_space, RRDivisor};
use super::HECurve;
use crate::double_cover::{validate, BundlePair};
use crate::error::{Error, Result};
use crate::exactmath::HPoly;

fn check(pair: &BundlePair, curve: &HECurve) -> Result<()> {
    if validate(pair, curve.ring()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("pair {pair} is not valid on z^2 = {}", curve.branch())))
    }
}

/// Mumford class of `[L] - deg(L) ∞`.
pub fn class_from_matrix(pair: &BundlePair, curve: &HECurve) -> Result<MumfordClass> {
    check(pair, curve)?;
    let odd = curve.odd_model()?;
    let q = odd.to_odd(&pair.q);
    let p = odd.to_odd(&pair.p);
    if q.x1_valuation() > 1 {
        return Err(Error::Invariant("q vanishes twice at a Weierstrass point".into()));
    }
    let u = q.dehomogenize().monic();
    let v = (-&p.dehomogenize()).rem(&u);
    MumfordClass::from_semireduced(u, v, curve)
}

/// The normalized degree-0 pair of a reduced class.
///
/// With `d = deg u` and `k = d mod 2` the pair lives in the stratum
/// `a = (d + k) / 2`, `b = g + 1 - a`, with `q = u x1^k` and `P = -v` on the odd model.
pub fn matrix_from_class(c: &MumfordClass, curve: &HECurve) -> Result<BundlePair> {
    c.validate(curve)?;
    let odd = curve.odd_model()?;
    let field = curve.ring().field();
    let l = curve.ring().l();
    let d = c.u.deg().unwrap() as u32;
    let k = d % 2;
    let a = ((d + k) / 2) as i64;
    let b = l - a;
    let q = &HPoly::homogenize(&c.u, d) * &HPoly::monomial(field.one(), [0, k, 0], 2);
    let p = HPoly::homogenize(&(-&c.v), l as u32);
    let big_f = odd.to_odd(curve.branch());
    let f = (&big_f - &(&p * &p))
        .div_exact_binary(&q)
        .ok_or_else(|| Error::Invariant("q does not divide F - P^2".into()))?;
    let pair = BundlePair::new(l, a, b, odd.from_odd(&p), odd.from_odd(&f), odd.from_odd(&q)).normalized();
    if !validate(&pair, curve.ring()) {
        return Err(Error::Invariant(format!("matrix_from_class produced an invalid pair {pair}")));
    }
    Ok(pair)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub a: i64,
    pub b: i64,
    /// `deg L = g + 1 - a - b`.
    pub d: i64,
}

/// Splitting type of the pair, cross-checked against `h0(L ⊗ q^*O(m))` for `a - 1 <= m <= b`.
pub fn stratum(pair: &BundlePair, curve: &HECurve) -> Result<Stratum> {
    check(pair, curve)?;
    let g = curve.genus() as i64;
    let (a, b) = (pair.a.min(pair.b), pair.a.max(pair.b));
    let d = g + 1 - a - b;
    let c = class_from_matrix(pair, curve)?;
    let du = c.u.deg_i();
    for m in a - 1..=b {
        let div = RRDivisor { u: c.u.clone(), v: c.v.clone(), inf: d - du + 2 * m };
        let h0 = rr_space(curve, &div)?.len() as i64;
        let expected = (m - a + 1).max(0) + (m - b + 1).max(0);
        if h0 != expected {
            return Err(Error::Invariant(format!("stratum: h0(L(m)) = {h0} at m = {m}, splitting ({a}, {b}) predicts {expected}")));
        }
    }
    Ok(Stratum { a, b, d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse::parse_hpoly, Field};
    use crate::hyperelliptic::class_order;

    #[test]
    fn trivial_round_trip() {
        let f = Field::Fp(101);
        let c = HECurve::new(parse_hpoly("x0^6 - x1^6", f, 2, None).unwrap()).unwrap();
        let t = c.ring().trivial_pair();
        let cls = class_from_matrix(&t, &c).unwrap();
        assert!(cls.is_identity());
        assert_eq!(matrix_from_class(&cls, &c).unwrap(), t);
        assert_eq!(stratum(&t, &c).unwrap(), Stratum { a: 0, b: 3, d: 0 });
    }

    #[test]
    fn two_torsion_pair_has_order_two() {
        let f = Field::Q;
        let c = HECurve::new(parse_hpoly("x0^4 - x1^4", f, 2, None).unwrap()).unwrap();
        let p = BundlePair::new(
            2,
            1,
            1,
            HPoly::zero(f, 2, 2),
            parse_hpoly("x0^2 + x1^2", f, 2, None).unwrap(),
            parse_hpoly("x0^2 - x1^2", f, 2, None).unwrap(),
        );
        let cls = class_from_matrix(&p, &c).unwrap();
        assert_eq!(class_order(&cls, &c, 200).unwrap(), Some(2));
        assert_eq!(stratum(&p, &c).unwrap(), Stratum { a: 1, b: 1, d: 0 });
    }
}
