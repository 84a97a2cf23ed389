use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A coefficient field: the rationals or a prime field `F_p` with `p` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// `F_p` for an odd prime `p < 2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 3 || p % 2 == 0 || p >= (1 << 32) || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not an odd prime below 2^32")));
        }
        Ok(Field::Fp(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> FieldElem {
        match *self {
            Field::Q => FieldElem::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => FieldElem::Fp { v: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn bigint(&self, n: &BigInt) -> FieldElem {
        match *self {
            Field::Q => FieldElem::Q(BigRational::from_integer(n.clone())),
            Field::Fp(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElem::Fp { v: r.to_u64().unwrap(), p }
            }
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod `p`.
    pub fn rational(&self, r: &BigRational) -> Result<FieldElem> {
        match self {
            Field::Q => Ok(FieldElem::Q(r.clone())),
            Field::Fp(_) => {
                let num = self.bigint(r.numer());
                let den = self.bigint(r.denom());
                den.inv()
                    .map(|d| &num * &d)
                    .ok_or_else(|| Error::InvalidInput(format!("denominator of {r} vanishes in {self}")))
            }
        }
    }

    /// A random element: uniform over `F_p`, or an integer in `[-bound, bound]` over `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElem {
        match *self {
            Field::Q => self.int(rng.gen_range(-bound..=bound)),
            Field::Fp(p) => FieldElem::Fp { v: rng.gen_range(0..p), p },
        }
    }

    /// Elements usable as distinct evaluation points; `None` once `F_p` is exhausted.
    pub fn point(&self, i: u64) -> Option<FieldElem> {
        match *self {
            Field::Q => Some(self.int(i as i64)),
            Field::Fp(p) => (i < p).then_some(FieldElem::Fp { v: i, p }),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Q` (reduced, positive denominator) or of `F_p` (representative in `[0, p)`).
///
/// Arithmetic between elements of different fields panics; public entry points
/// check fields first and return [`Error::FieldMismatch`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Q(_) => Field::Q,
            FieldElem::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_one(),
            FieldElem::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Q(r) => FieldElem::Q(r.recip()),
            FieldElem::Fp { v, p } => FieldElem::Fp { v: pow_mod(*v, p - 2, *p), p: *p },
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The rational value, or the canonical representative for `F_p`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            FieldElem::Q(r) => r.clone(),
            FieldElem::Fp { v, .. } => BigRational::from_integer(BigInt::from(*v)),
        }
    }

    /// Square root in `F_p` by exhaustive search for small `p`, Tonelli-Shanks otherwise.
    /// Over `Q` only perfect rational squares are handled.
    pub fn sqrt(&self) -> Option<FieldElem> {
        match self {
            FieldElem::Q(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                (&n * &n == *r.numer() && &d * &d == *r.denom())
                    .then(|| FieldElem::Q(BigRational::new(n, d)))
            }
            FieldElem::Fp { v, p } => tonelli_shanks(*v, *p).map(|s| FieldElem::Fp { v: s, p: *p }),
        }
    }

    fn same(&self, other: &FieldElem) -> u64 {
        match (self, other) {
            (FieldElem::Q(_), FieldElem::Q(_)) => 0,
            (FieldElem::Fp { p, .. }, FieldElem::Fp { p: q, .. }) if p == q => *p,
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(n, q, p), pow_mod(n, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(r) if r.is_integer() => write!(f, "{}", r.numer()),
            FieldElem::Q(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { v: a, .. }, FieldElem::Fp { v: b, .. }) => {
                let p = self.same(o);
                FieldElem::Fp { v: (a + b) % p, p }
            }
            _ => {
                self.same(o);
                unreachable!()
            }
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a - b),
            (FieldElem::Fp { v: a, .. }, FieldElem::Fp { v: b, .. }) => {
                let p = self.same(o);
                FieldElem::Fp { v: (a + p - b) % p, p }
            }
            _ => {
                self.same(o);
                unreachable!()
            }
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { v: a, .. }, FieldElem::Fp { v: b, .. }) => {
                let p = self.same(o);
                FieldElem::Fp { v: mul_mod(*a, *b, p), p }
            }
            _ => {
                self.same(o);
                unreachable!()
            }
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, o: &FieldElem) -> FieldElem {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { v, p } => FieldElem::Fp { v: (p - v) % p, p: *p },
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
