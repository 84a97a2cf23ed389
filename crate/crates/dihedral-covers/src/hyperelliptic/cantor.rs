use std::fmt;

use super::HECurve;
use crate::error::{Error, Result};
use crate::exactmath::{Field, UPoly};

pub const DEFAULT_ORDER_CAP: u64 = 200;

/// Reduced divisor `D - deg(D) ∞` on the odd model `y^2 = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MumfordClass {
    pub u: UPoly,
    pub v: UPoly,
}

impl fmt::Display for MumfordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl MumfordClass {
    pub fn identity(field: Field) -> MumfordClass {
        MumfordClass { u: UPoly::one(field), v: UPoly::zero(field) }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_constant()
    }

    /// Checks `u` monic, `deg v < deg u <= g` and `u | f - v^2`.
    pub fn validate(&self, curve: &HECurve) -> Result<()> {
        let f = &curve.odd_model()?.f;
        let ok = !self.u.is_zero()
            && self.u.lc().is_one()
            && self.u.deg().unwrap() <= curve.genus() as usize
            && self.v.deg_i() < self.u.deg_i()
            && self.u.divides(&(f - &(&self.v * &self.v)));
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("{self} is not a reduced Mumford pair on y^2 = {f}")))
        }
    }

    /// Builds and reduces a semi-reduced pair.
    pub fn from_semireduced(u: UPoly, v: UPoly, curve: &HECurve) -> Result<MumfordClass> {
        let f = &curve.odd_model()?.f;
        let u = u.monic();
        if !u.divides(&(f - &(&v * &v))) {
            return Err(Error::InvalidInput("u does not divide f - v^2".into()));
        }
        let v = v.rem(&u);
        Ok(reduce(u, v, f, curve.genus()))
    }
}

fn reduce(mut u: UPoly, mut v: UPoly, f: &UPoly, g: u32) -> MumfordClass {
    while u.deg().unwrap() > g as usize {
        let u2 = (f - &(&v * &v)).exact_div(&u).expect("Mumford invariant").monic();
        v = (-&v).rem(&u2);
        u = u2;
    }
    let v = v.rem(&u);
    MumfordClass { u, v }
}

/// Cantor composition followed by reduction.
pub fn cantor_add(c1: &MumfordClass, c2: &MumfordClass, curve: &HECurve) -> Result<MumfordClass> {
    let f = &curve.odd_model()?.f;
    let (d1, e1, e2) = c1.u.xgcd(&c2.u);
    let (d, k1, k2) = d1.xgcd(&(&c1.v + &c2.v));
    let s1 = &k1 * &e1;
    let s2 = &k1 * &e2;
    let s3 = k2;
    let u = (&c1.u * &c2.u).exact_div(&(&d * &d)).expect("d^2 divides u1 u2");
    let num = &(&(&(&s1 * &c1.u) * &c2.v) + &(&(&s2 * &c2.u) * &c1.v)) + &(&s3 * &(&(&c1.v * &c2.v) + f));
    let v = num.exact_div(&d).expect("d divides the composed v").rem(&u);
    Ok(reduce(u, v, f, curve.genus()))
}

pub fn negate(c: &MumfordClass) -> MumfordClass {
    MumfordClass { u: c.u.clone(), v: (-&c.v).rem(&c.u) }
}

/// `k c` by double-and-add; negative `k` negates.
pub fn scalar_mul(c: &MumfordClass, k: i64, curve: &HECurve) -> Result<MumfordClass> {
    let field = c.u.field();
    let mut acc = MumfordClass::identity(field);
    let mut base = if k < 0 { negate(c) } else { c.clone() };
    let mut e = k.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = cantor_add(&acc, &base, curve)?;
        }
        base = cantor_add(&base, &base, curve)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Smallest `k <= cap` with `k c = 0`, or `None` when the cap is exceeded.
pub fn class_order(c: &MumfordClass, curve: &HECurve, cap: u64) -> Result<Option<u64>> {
    let mut acc = c.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Ok(Some(k));
        }
        acc = cantor_add(&acc, c, curve)?;
    }
    Ok(None)
}
