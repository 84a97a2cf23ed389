use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, FieldElem};
use super::upoly::UPoly;

pub type Exps = [u32; 3];

/// Homogeneous polynomial in 2 or 3 variables `x0, x1[, x2]`.
///
/// The zero polynomial still carries a degree label, so that sums and graded
/// matrices keep track of where it lives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPoly {
    field: Field,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exps, FieldElem>,
}

impl HPoly {
    pub fn zero(field: Field, nvars: usize, degree: u32) -> HPoly {
        assert!(nvars == 2 || nvars == 3, "HPoly supports 2 or 3 variables");
        HPoly { field, nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElem, nvars: usize) -> HPoly {
        let mut p = HPoly::zero(c.field(), nvars, 0);
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn one(field: Field, nvars: usize) -> HPoly {
        HPoly::constant(field.one(), nvars)
    }

    pub fn monomial(c: FieldElem, e: Exps, nvars: usize) -> HPoly {
        let mut p = HPoly::zero(c.field(), nvars, e.iter().sum());
        p.add_term(e, c);
        p
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> HPoly {
        let mut e = [0; 3];
        e[i] = 1;
        HPoly::monomial(field.one(), e, nvars)
    }

    /// Builds from terms; panics if a term has the wrong total degree.
    pub fn from_terms(field: Field, nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Exps, FieldElem)>) -> HPoly {
        let mut p = HPoly::zero(field, nvars, degree);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exps, c: FieldElem) {
        assert_eq!(e.iter().sum::<u32>(), self.degree, "term of wrong degree");
        assert!(self.nvars == 3 || e[2] == 0);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| self.field.zero());
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> FieldElem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficient of the lexicographically largest monomial.
    pub fn lc(&self) -> FieldElem {
        self.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap_or_else(|| self.field.zero())
    }

    /// Relabels a zero polynomial with a new degree; no-op check otherwise.
    pub fn with_degree(mut self, d: u32) -> HPoly {
        if self.is_zero() {
            self.degree = d;
        } else {
            assert_eq!(d, self.degree);
        }
        self
    }

    pub fn scale(&self, c: &FieldElem) -> HPoly {
        HPoly::from_terms(self.field, self.nvars, self.degree, self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn pow(&self, k: u32) -> HPoly {
        let mut acc = HPoly::one(self.field, self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, pt: &[FieldElem]) -> FieldElem {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                t = &t * &pt[i].pow(e[i] as u64);
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> HPoly {
        let d = self.degree.saturating_sub(1);
        let mut p = HPoly::zero(self.field, self.nvars, d);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                p.add_term(f, c * &self.field.int(e[i] as i64));
            }
        }
        p
    }

    /// `self(M x)`: substitutes `x_i -> sum_j m[i][j] x_j`.
    pub fn linear_substitute(&self, m: &[Vec<FieldElem>]) -> HPoly {
        let n = self.nvars;
        let images: Vec<HPoly> = (0..n)
            .map(|i| {
                let mut p = HPoly::zero(self.field, n, 1);
                for j in 0..n {
                    let mut e = [0; 3];
                    e[j] = 1;
                    p.add_term(e, m[i][j].clone());
                }
                p
            })
            .collect();
        let mut acc = HPoly::zero(self.field, n, self.degree);
        for (e, c) in &self.terms {
            let mut t = HPoly::constant(c.clone(), n);
            for i in 0..n {
                t = &t * &images[i].pow(e[i]);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Binary form `f(x0, x1)` to `f(x, 1)`.
    pub fn dehomogenize(&self) -> UPoly {
        assert_eq!(self.nvars, 2);
        let mut v = vec![self.field.zero(); self.degree as usize + 1];
        for (e, c) in &self.terms {
            v[e[0] as usize] = c.clone();
        }
        UPoly::from_coeffs(self.field, v)
    }

    /// Binary form of degree `d` whose dehomogenization is `u`.
    pub fn homogenize(u: &UPoly, d: u32) -> HPoly {
        let du = u.deg().unwrap_or(0) as u32;
        assert!(du <= d, "cannot homogenize degree {du} to {d}");
        HPoly::from_terms(
            u.field(),
            2,
            d,
            u.coeffs().iter().enumerate().map(|(i, c)| ([i as u32, d - i as u32, 0], c.clone())),
        )
    }

    /// Dense coefficients of a binary form, indexed by the exponent of `x1`.
    pub fn to_dense(&self) -> Vec<FieldElem> {
        assert_eq!(self.nvars, 2);
        let d = self.degree as usize;
        let mut v = vec![self.field.zero(); d + 1];
        for (e, c) in &self.terms {
            v[e[1] as usize] = c.clone();
        }
        v
    }

    pub fn from_dense(field: Field, coeffs: &[FieldElem]) -> HPoly {
        let d = coeffs.len() as u32 - 1;
        HPoly::from_terms(field, 2, d, coeffs.iter().enumerate().map(|(j, c)| ([d - j as u32, j as u32, 0], c.clone())))
    }

    /// Multiplicity of `x1` as a factor of a binary form.
    pub fn x1_valuation(&self) -> u32 {
        self.terms.keys().map(|e| e[1]).min().unwrap_or(0)
    }

    /// Monic gcd of binary forms (normalized by [`HPoly::lc`]); `gcd(0, 0) = 0`.
    pub fn gcd_binary(&self, other: &HPoly) -> HPoly {
        if self.is_zero() {
            return other.make_monic();
        }
        if other.is_zero() {
            return self.make_monic();
        }
        let k = self.x1_valuation().min(other.x1_valuation());
        let a = self.strip_x1().dehomogenize();
        let b = other.strip_x1().dehomogenize();
        let g = a.gcd(&b);
        let dg = g.deg().unwrap() as u32;
        let h = HPoly::homogenize(&g, dg);
        (&h * &HPoly::monomial(self.field.one(), [0, k, 0], 2)).make_monic()
    }

    fn strip_x1(&self) -> HPoly {
        let k = self.x1_valuation();
        HPoly::from_terms(self.field, 2, self.degree - k, self.terms.iter().map(|(e, c)| ([e[0], e[1] - k, 0], c.clone())))
    }

    pub fn make_monic(&self) -> HPoly {
        match self.lc().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    /// Exact division of binary forms.
    pub fn div_exact_binary(&self, d: &HPoly) -> Option<HPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(HPoly::zero(self.field, 2, self.degree.checked_sub(d.degree)?));
        }
        let deg = self.degree.checked_sub(d.degree)?;
        let kd = d.x1_valuation();
        if self.x1_valuation() < kd {
            return None;
        }
        let q = self.strip_x1_by(kd).dehomogenize().exact_div(&d.strip_x1().dehomogenize())?;
        let out = HPoly::homogenize(&q, deg);
        (&out * d == *self).then_some(out)
    }

    fn strip_x1_by(&self, k: u32) -> HPoly {
        HPoly::from_terms(self.field, 2, self.degree - k, self.terms.iter().map(|(e, c)| ([e[0], e[1] - k, 0], c.clone())))
    }

    /// A binary form is squarefree iff `x1^2` does not divide it and its dehomogenization is squarefree.
    pub fn is_squarefree_binary(&self) -> bool {
        !self.is_zero() && self.x1_valuation() <= 1 && {
            let u = self.strip_x1().dehomogenize();
            u.is_constant() || u.is_squarefree()
        }
    }

    /// Product of distinct linear-or-irreducible factors of a binary form, monic.
    pub fn squarefree_part_binary(&self) -> HPoly {
        if self.is_zero() {
            return self.clone();
        }
        let k = self.x1_valuation().min(1);
        let u = self.strip_x1().dehomogenize().squarefree_part();
        let h = HPoly::homogenize(&u, u.deg().unwrap() as u32);
        (&h * &HPoly::monomial(self.field.one(), [0, k, 0], 2)).make_monic()
    }

    /// Rational points `[r0 : r1]` of `{self = 0}` on `P^1`, as `(r0, r1)` with `r1 in {0, 1}`.
    pub fn roots_binary(&self) -> Vec<(FieldElem, FieldElem)> {
        let mut out = vec![];
        if self.x1_valuation() > 0 {
            out.push((self.field.one(), self.field.zero()));
        }
        for r in self.strip_x1().dehomogenize().roots() {
            out.push((r, self.field.one()));
        }
        out
    }

    /// Ternary form as a polynomial in `x2` with coefficients in `k[x]`, `x = x0/x1`.
    pub fn as_poly_in_x2(&self) -> Vec<UPoly> {
        assert_eq!(self.nvars, 3);
        let d = self.degree as usize;
        let mut cols = vec![vec![self.field.zero(); d + 1]; d + 1];
        for (e, c) in &self.terms {
            cols[e[2] as usize][e[0] as usize] = c.clone();
        }
        cols.into_iter().map(|v| UPoly::from_coeffs(self.field, v)).collect()
    }

    /// Restriction of a ternary form to the line `x1 = 0`, as a binary form in `(x0, x2)`.
    pub fn restrict_x1_zero(&self) -> HPoly {
        assert_eq!(self.nvars, 3);
        HPoly::from_terms(
            self.field,
            2,
            self.degree,
            self.terms.iter().filter(|(e, _)| e[1] == 0).map(|(e, c)| ([e[0], e[2], 0], c.clone())),
        )
    }
}

impl<'a> Add<&'a HPoly> for &'a HPoly {
    type Output = HPoly;
    fn add(self, o: &HPoly) -> HPoly {
        if o.is_zero() && o.degree != self.degree {
            return self.clone();
        }
        if self.is_zero() && o.degree != self.degree {
            return o.clone();
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degrees");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a HPoly> for &'a HPoly {
    type Output = HPoly;
    fn sub(self, o: &HPoly) -> HPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a HPoly> for &'a HPoly {
    type Output = HPoly;
    fn mul(self, o: &HPoly) -> HPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut p = HPoly::zero(self.field, self.nvars, self.degree + o.degree);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                p.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], a * b);
            }
        }
        p
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly::from_terms(self.field, self.nvars, self.degree, self.terms.iter().map(|(e, c)| (*e, -c)))
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { format!("x{i}") } else { format!("x{i}^{}", e[i]) })
                .collect();
            super::write_term(f, c, &mono.join("*"), first)?;
            first = false;
        }
        Ok(())
    }
}
