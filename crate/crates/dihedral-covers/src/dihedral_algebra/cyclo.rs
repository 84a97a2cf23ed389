use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::exactmath::{Field, UPoly};

/// The n-th cyclotomic polynomial, from `t^n - 1 = ∏_{d | n} Φ_d`.
pub fn cyclotomic_poly(n: u32) -> UPoly {
    let f = Field::Q;
    let mut p = &UPoly::monomial(f.one(), n as usize) - &UPoly::one(f);
    for d in 1..n {
        if n % d == 0 {
            p = p.exact_div(&cyclotomic_poly(d)).expect("Φ_d divides t^n - 1");
        }
    }
    p.with_var('t')
}

/// An element of `Q(ζ_n)`, reduced modulo `Φ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    n: u32,
    c: UPoly,
}

impl CycloElem {
    fn reduced(n: u32, c: UPoly) -> CycloElem {
        CycloElem { n, c: c.rem(&cyclotomic_poly_cached(n)).with_var('t') }
    }

    pub fn zero(n: u32) -> CycloElem {
        CycloElem { n, c: UPoly::zero(Field::Q).with_var('t') }
    }

    pub fn one(n: u32) -> CycloElem {
        CycloElem::int(n, 1)
    }

    pub fn int(n: u32, k: i64) -> CycloElem {
        CycloElem::reduced(n, UPoly::constant(Field::Q.int(k)))
    }

    pub fn rational(n: u32, r: &BigRational) -> CycloElem {
        CycloElem::reduced(n, UPoly::constant(Field::Q.rational(r).unwrap()))
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> CycloElem {
        let e = k.rem_euclid(n as i64) as usize;
        CycloElem::reduced(n, UPoly::monomial(Field::Q.one(), e))
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c.is_constant() && self.c.coeff(0).is_one()
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.c.is_constant().then(|| self.c.coeff(0).to_rational())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.c.coeffs().iter().map(|c| c.to_rational()).collect()
    }

    pub fn inv(&self) -> Option<CycloElem> {
        if self.is_zero() {
            return None;
        }
        let m = cyclotomic_poly_cached(self.n);
        self.c.inv_mod(&m).map(|c| CycloElem::reduced(self.n, c))
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> CycloElem {
        let mut acc = CycloElem::zero(self.n);
        for (k, a) in self.c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                let t = CycloElem::zeta_pow(self.n, -(k as i64));
                acc = &acc + &t.scale(&a.to_rational());
            }
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> CycloElem {
        CycloElem { n: self.n, c: self.c.scale(&Field::Q.rational(r).unwrap()) }
    }
}

fn cyclotomic_poly_cached(n: u32) -> UPoly {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<u32, UPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = cyclotomic_poly(n);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

impl<'a> Add<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn add(self, o: &CycloElem) -> CycloElem {
        debug_assert_eq!(self.n, o.n);
        CycloElem { n: self.n, c: (&self.c + &o.c).with_var('t') }
    }
}

impl<'a> Sub<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn sub(self, o: &CycloElem) -> CycloElem {
        debug_assert_eq!(self.n, o.n);
        CycloElem { n: self.n, c: (&self.c - &o.c).with_var('t') }
    }
}

impl<'a> Mul<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn mul(self, o: &CycloElem) -> CycloElem {
        debug_assert_eq!(self.n, o.n);
        if self.c.is_constant() || o.c.is_constant() {
            return CycloElem { n: self.n, c: (&self.c * &o.c).with_var('t') };
        }
        CycloElem::reduced(self.n, &self.c * &o.c)
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem { n: self.n, c: (-&self.c).with_var('t') }
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_constant() {
            write!(f, "{}", self.c.coeff(0))
        } else {
            write!(f, "{}", self.c.to_string().replace('t', "z"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), UPoly::from_ints(Field::Q, &[-1, 1]).with_var('t'));
        assert_eq!(cyclotomic_poly(6), UPoly::from_ints(Field::Q, &[1, -1, 1]).with_var('t'));
        assert_eq!(cyclotomic_poly(12), UPoly::from_ints(Field::Q, &[1, 0, -1, 0, 1]).with_var('t'));
    }

    #[test]
    fn roots_of_unity() {
        for n in 1..=12 {
            let z = CycloElem::zeta_pow(n, 1);
            let mut acc = CycloElem::one(n);
            for _ in 0..n {
                acc = &acc * &z;
            }
            assert!(acc.is_one());
            assert!((&z * &z.conj()).is_one());
            assert!((&z * &z.inv().unwrap()).is_one());
        }
    }
}
