use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::Mat;
use super::field::{Field, FieldElem};

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

/// Dense univariate polynomial, coefficients stored from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: Field,
    var: char,
    coeffs: Vec<FieldElem>,
    degree: Degree,
}

impl UPoly {
    pub fn from_coeffs(field: Field, mut coeffs: Vec<FieldElem>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let degree = match coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        };
        UPoly { field, var: 'x', coeffs, degree }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: Field) -> UPoly {
        UPoly::from_coeffs(field, vec![])
    }

    pub fn one(field: Field) -> UPoly {
        UPoly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> UPoly {
        UPoly::from_coeffs(c.field(), vec![c])
    }

    pub fn x(field: Field) -> UPoly {
        UPoly::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElem, k: usize) -> UPoly {
        let field = c.field();
        let mut v = vec![field.zero(); k];
        v.push(c);
        UPoly::from_coeffs(field, v)
    }

    /// `x - r`
    pub fn linear_root(r: &FieldElem) -> UPoly {
        UPoly::from_coeffs(r.field(), vec![-r, r.field().one()])
    }

    pub fn with_var(mut self, var: char) -> UPoly {
        self.var = var;
        self
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// Degree as an option (`None` for zero).
    pub fn deg(&self) -> Option<usize> {
        match self.degree {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Degree with `-1` for the zero polynomial, for degree comparisons.
    pub fn deg_i(&self) -> i64 {
        self.deg().map_or(-1, |d| d as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.degree == Degree::MinusInfinity
    }

    pub fn is_constant(&self) -> bool {
        self.deg().map_or(true, |d| d == 0)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn lc(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &FieldElem) -> UPoly {
        UPoly::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect()).with_var(self.var)
    }

    pub fn monic(&self) -> UPoly {
        match self.lc().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly::from_coeffs(self.field, v).with_var(self.var)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        UPoly::from_coeffs(self.field, v).with_var(self.var)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc.with_var(self.var)
    }

    /// Substitutes a polynomial for the variable.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UPoly::constant(c.clone());
        }
        acc.with_var(self.var)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.deg().expect("division by the zero polynomial");
        let inv = d.lc().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * dc);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (
            UPoly::from_coeffs(self.field, q).with_var(self.var),
            UPoly::from_coeffs(self.field, r).with_var(self.var),
        )
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.field == Field::Q && !self.is_zero() && !other.is_zero() {
            return gcd_integer_prs(self, other).with_var(self.var);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic().with_var(self.var)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic (or zero).
    pub fn xgcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(f), UPoly::zero(f));
        let (mut t0, mut t1) = (UPoly::zero(f), UPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().inv() {
            Some(i) => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse modulo `m`, if `self` and `m` are coprime.
    pub fn inv_mod(&self, m: &UPoly) -> Option<UPoly> {
        // Euclid on (m, self mod m), tracking only the cofactor of self
        let f = self.field;
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (UPoly::zero(f), UPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = (&s0 - &(&q * &s1)).rem(m);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0.deg() == Some(0)).then(|| s0.scale(&r0.lc().inv().unwrap()))
    }

    /// The `phi` with `deg phi < deg m` and `self * phi ≡ num mod m`, when `self` is a unit mod `m`.
    ///
    /// Over `Q` this solves the multiplication-matrix system by Cramer's rule with integer
    /// determinants, which keeps intermediate heights far below those of Euclid.
    pub fn div_mod(&self, num: &UPoly, m: &UPoly) -> Option<UPoly> {
        let d = m.deg()?;
        if self.field != Field::Q || d == 0 {
            return Some(num.mul_mod(&self.inv_mod(m)?, m));
        }
        let mut cols = vec![self.rem(m)];
        for _ in 1..d {
            let next = cols.last().unwrap().mul_mod(&UPoly::monomial(self.field.one(), 1), m);
            cols.push(next);
        }
        let a = Mat::from_rows(self.field, (0..d).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect());
        let det = a.det();
        let inv = det.inv()?;
        let b = num.rem(m);
        let phi = (0..d)
            .map(|j| {
                let mut aj = a.clone();
                for i in 0..d {
                    aj.data[i][j] = b.coeff(i);
                }
                &aj.det() * &inv
            })
            .collect();
        Some(UPoly::from_coeffs(self.field, phi).with_var(self.var))
    }

    pub fn mul_mod(&self, other: &UPoly, m: &UPoly) -> UPoly {
        (self * other).rem(m)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Product of the distinct irreducible factors (char 0 or degree below `p`).
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    /// Roots in the base field: exhaustive over `F_p`, rational root test over `Q`.
    pub fn roots(&self) -> Vec<FieldElem> {
        if self.is_constant() {
            return vec![];
        }
        match self.field {
            Field::Fp(p) => (0..p)
                .map(|v| self.field.int(v as i64))
                .filter(|x| self.eval(x).is_zero())
                .collect(),
            Field::Q => rational_roots(self),
        }
    }
}

/// Primitive integer coefficients of a nonzero rational polynomial.
fn primitive_integer(f: &UPoly) -> Vec<BigInt> {
    let lcm = f.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.to_rational().denom()));
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| (c.to_rational() * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    primitive_part(ints)
}

fn primitive_part(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Gcd over `Q` by a primitive pseudo-remainder sequence over `Z`, which keeps
/// coefficient growth in check compared with monic Euclid over `Q`.
fn gcd_integer_prs(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut x, mut y) = (primitive_integer(a), primitive_integer(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !(y.len() == 1 && !y[0].is_zero()) {
        // pseudo-remainder of x by y
        let dy = y.len() - 1;
        let ly = y[dy].clone();
        let mut r = x;
        while r.len() > dy {
            let lr = r.last().unwrap().clone();
            let k = r.len() - 1 - dy;
            for c in r.iter_mut() {
                *c *= &ly;
            }
            for (i, yc) in y.iter().enumerate() {
                r[k + i] -= &lr * yc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        if r.is_empty() {
            return UPoly::from_coeffs(Field::Q, y.into_iter().map(|c| Field::Q.bigint(&c)).collect()).monic();
        }
        x = y;
        y = primitive_part(r);
    }
    UPoly::one(Field::Q)
}

fn rational_roots(f: &UPoly) -> Vec<FieldElem> {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.to_rational().denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.to_rational() * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = vec![];
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Field::Q.zero());
    }
    let (a0, an) = (ints[low].abs(), ints.last().unwrap().abs());
    let (dn, dd) = (divisors(&a0), divisors(&an));
    let mut seen = std::collections::BTreeSet::new();
    for n in &dn {
        for d in &dd {
            for s in [1, -1] {
                let r = num_rational::BigRational::new(n * s, d.clone());
                if seen.insert(r.clone()) {
                    let x = FieldElem::Q(r);
                    if f.eval(&x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        UPoly::from_coeffs(self.field, v).with_var(self.var)
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect();
        UPoly::from_coeffs(self.field, v).with_var(self.var)
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.field).with_var(self.var);
        }
        let mut v = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(self.field, v).with_var(self.var)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.field, self.coeffs.iter().map(|c| -c).collect()).with_var(self.var)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            super::write_term(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UPoly {
        UPoly::from_ints(Field::Q, c)
    }

    #[test]
    fn zero_has_sentinel_degree() {
        assert_eq!(UPoly::zero(Field::Q).degree(), Degree::MinusInfinity);
        assert_eq!(q(&[0, 0]).degree(), Degree::MinusInfinity);
        assert_eq!(q(&[1, 2, 0]).degree(), Degree::Finite(1));
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2 - 1, x - 1) = x - 1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])), q(&[-1, 1]));
        // gcd(p, 0) = monic(p)
        assert_eq!(q(&[2, 4]).gcd(&UPoly::zero(Field::Q)), q(&[1, 2]).monic());
        assert!(UPoly::zero(Field::Q).gcd(&UPoly::zero(Field::Q)).is_zero());
    }

    #[test]
    fn div_mod_matches_inverse() {
        let m = q(&[3, -1, 0, 2, 1]);
        let a = q(&[1, 5, -2, 7, 3, 1]);
        let num = q(&[2, 0, 1]);
        let phi = a.div_mod(&num, &m).unwrap();
        assert_eq!(phi, num.mul_mod(&a.inv_mod(&m).unwrap(), &m));
        assert_eq!(a.mul_mod(&phi, &m), num.rem(&m));
    }

    #[test]
    fn xgcd_identity() {
        let a = q(&[1, 0, 3, 1]);
        let b = q(&[-2, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3) x
        let f = &(&q(&[-1, 2]) * &q(&[3, 1])) * &q(&[0, 1]);
        let mut r: Vec<String> = f.roots().iter().map(|x| x.to_string()).collect();
        r.sort();
        assert_eq!(r, vec!["-3", "0", "1/2"]);
    }

    #[test]
    fn display() {
        assert_eq!(q(&[-1, 0, 3]).to_string(), "3*x^2 - 1");
        assert_eq!(q(&[0, -1]).to_string(), "-x");
    }
}
