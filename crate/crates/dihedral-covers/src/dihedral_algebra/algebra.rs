//! The rank-2n algebra `O_Y[u, v] / (uv - F, u^n + v^n - 2a)` of a simple dihedral
//! cover, on the basis `1, s, u, ..., u^{n-1}, v, ..., v^{n-1}` with `s = u^n - v^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclo::CycloElem;
use crate::error::{Error, Result};

/// A polynomial in the formal generators `a` and `F` with `Q(ζ_n)` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AFPoly {
    n: u32,
    terms: BTreeMap<(u32, u32), CycloElem>,
}

impl AFPoly {
    pub fn zero(n: u32) -> AFPoly {
        AFPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(c: CycloElem) -> AFPoly {
        AFPoly::term(c, 0, 0)
    }

    pub fn int(n: u32, c: i64) -> AFPoly {
        AFPoly::constant(CycloElem::int(n, c))
    }

    /// `c a^i F^j`.
    pub fn term(c: CycloElem, i: u32, j: u32) -> AFPoly {
        let n = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        AFPoly { n, terms }
    }

    pub fn a(n: u32) -> AFPoly {
        AFPoly::term(CycloElem::one(n), 1, 0)
    }

    pub fn big_f(n: u32) -> AFPoly {
        AFPoly::term(CycloElem::one(n), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent of a, exponent of F) -> coefficient`.
    pub fn terms(&self) -> &BTreeMap<(u32, u32), CycloElem> {
        &self.terms
    }

    pub fn constant_term(&self) -> CycloElem {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(|| CycloElem::zero(self.n))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| *k == (0, 0))
    }

    /// Weighted degree with `a` of weight `n` and `F` of weight 2, when homogeneous.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|(i, j)| self.n * i + 2 * j);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn add(&self, o: &AFPoly) -> AFPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let s = match terms.get(k) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if s.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, s);
            }
        }
        AFPoly { n: self.n, terms }
    }

    pub fn neg(&self) -> AFPoly {
        AFPoly { n: self.n, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &AFPoly) -> AFPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &AFPoly) -> AFPoly {
        let mut out = AFPoly::zero(self.n);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                out = out.add(&AFPoly::term(c1 * c2, i1 + i2, j1 + j2));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloElem) -> AFPoly {
        let terms = self.terms.iter().map(|(k, x)| (*k, x * c)).filter(|(_, x)| !x.is_zero()).collect();
        AFPoly { n: self.n, terms }
    }

    pub fn pow(&self, e: u32) -> AFPoly {
        (0..e).fold(AFPoly::int(self.n, 1), |acc, _| acc.mul(self))
    }

    /// Substitute numeric values for `a` and `F`.
    pub fn eval(&self, a: &CycloElem, f: &CycloElem) -> CycloElem {
        let pw = |x: &CycloElem, e: u32| (0..e).fold(CycloElem::one(self.n), |acc, _| &acc * x);
        self.terms.iter().fold(CycloElem::zero(self.n), |acc, ((i, j), c)| &acc + &(&(c * &pw(a, *i)) * &pw(f, *j)))
    }
}

impl fmt::Display for AFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = [("a", *i), ("F", *j)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
                .collect();
            match (c.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (true, false) => write!(f, "{}", mono.join("*"))?,
                (false, false) if c.as_rational().is_some() => write!(f, "{c}*{}", mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    One,
    S,
    U(u32),
    V(u32),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::One => write!(f, "1"),
            Basis::S => write!(f, "s"),
            Basis::U(1) => write!(f, "u"),
            Basis::V(1) => write!(f, "v"),
            Basis::U(i) => write!(f, "u^{i}"),
            Basis::V(j) => write!(f, "v^{j}"),
        }
    }
}

/// An algebra element, one coefficient per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub coeffs: Vec<AFPoly>,
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(AFPoly::is_zero)
    }

    pub fn add(&self, o: &Elem) -> Elem {
        Elem { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        Elem { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn scale(&self, c: &AFPoly) -> Elem {
        Elem { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }
}

/// Structure constants of the simple `D_n` cover algebra.
#[derive(Clone, Debug)]
pub struct SimpleCoverAlgebra {
    n: u32,
    basis: Vec<Basis>,
    table: Vec<Vec<Elem>>,
}

impl SimpleCoverAlgebra {
    pub fn new(n: u32) -> Result<SimpleCoverAlgebra> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("simple dihedral cover needs n >= 2, got {n}")));
        }
        let mut basis = vec![Basis::One, Basis::S];
        basis.extend((1..n).map(Basis::U));
        basis.extend((1..n).map(Basis::V));
        let mut alg = SimpleCoverAlgebra { n, basis, table: vec![] };
        let exps = |b: &Basis| match *b {
            Basis::One => (0, 0, 0),
            Basis::S => (0, 0, 1),
            Basis::U(i) => (i, 0, 0),
            Basis::V(j) => (0, j, 0),
        };
        let table = alg
            .basis
            .iter()
            .map(|x| {
                alg.basis
                    .iter()
                    .map(|y| {
                        let (ex, ey) = (exps(x), exps(y));
                        alg.reduce(ex.0 + ey.0, ex.1 + ey.1, ex.2 + ey.2)
                    })
                    .collect()
            })
            .collect();
        alg.table = table;
        Ok(alg)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Basis] {
        &self.basis
    }

    pub fn index(&self, b: Basis) -> usize {
        let n = self.n as usize;
        match b {
            Basis::One => 0,
            Basis::S => 1,
            Basis::U(i) => 1 + i as usize,
            Basis::V(j) => n + j as usize,
        }
    }

    pub fn zero(&self) -> Elem {
        Elem { coeffs: vec![AFPoly::zero(self.n); self.rank()] }
    }

    pub fn from_afpoly(&self, c: AFPoly) -> Elem {
        self.basis_elem(Basis::One).scale(&c)
    }

    pub fn basis_elem(&self, b: Basis) -> Elem {
        let mut e = self.zero();
        e.coeffs[self.index(b)] = AFPoly::int(self.n, 1);
        e
    }

    pub fn u(&self) -> Elem {
        self.basis_elem(Basis::U(1))
    }

    pub fn v(&self) -> Elem {
        self.basis_elem(Basis::V(1))
    }

    pub fn s(&self) -> Elem {
        self.basis_elem(Basis::S)
    }

    /// Normal form of `u^i v^j s^e` under `uv -> F`, `u^n -> a + s/2`,
    /// `v^n -> a - s/2`, `s u^i -> 2a u^i - 2F^i v^{n-i}`,
    /// `s v^i -> 2F^i u^{n-i} - 2a v^i`, `s^2 -> 4a^2 - 4F^n`.
    pub fn reduce(&self, i: u32, j: u32, e: u32) -> Elem {
        let n = self.n;
        let c = |k: i64| AFPoly::int(n, k);
        let half = AFPoly::constant(CycloElem::rational(n, &BigRational::new(BigInt::from(1), BigInt::from(2))));
        let a = AFPoly::a(n);
        let f = AFPoly::big_f(n);
        if i > 0 && j > 0 {
            let m = i.min(j);
            return self.reduce(i - m, j - m, e).scale(&f.pow(m));
        }
        if e >= 2 {
            let s2 = c(4).mul(&a.pow(2)).sub(&c(4).mul(&f.pow(n)));
            return self.reduce(i, j, e - 2).scale(&s2);
        }
        if i >= n {
            return self.reduce(i - n, 0, e).scale(&a).add(&self.reduce(i - n, 0, e + 1).scale(&half));
        }
        if j >= n {
            return self.reduce(0, j - n, e).scale(&a).sub(&self.reduce(0, j - n, e + 1).scale(&half));
        }
        match (i, j, e) {
            (0, 0, 0) => self.basis_elem(Basis::One),
            (0, 0, _) => self.basis_elem(Basis::S),
            (i, 0, 0) => self.basis_elem(Basis::U(i)),
            (0, j, 0) => self.basis_elem(Basis::V(j)),
            (i, 0, _) => self.basis_elem(Basis::U(i)).scale(&c(2).mul(&a)).sub(&self.basis_elem(Basis::V(n - i)).scale(&c(2).mul(&f.pow(i)))),
            (0, j, _) => self.basis_elem(Basis::U(n - j)).scale(&c(2).mul(&f.pow(j))).sub(&self.basis_elem(Basis::V(j)).scale(&c(2).mul(&a))),
            _ => unreachable!(),
        }
    }

    /// Product of two basis vectors.
    pub fn basis_product(&self, x: Basis, y: Basis) -> &Elem {
        &self.table[self.index(x)][self.index(y)]
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = self.zero();
        for (i, cx) in x.coeffs.iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            for (j, cy) in y.coeffs.iter().enumerate() {
                if cy.is_zero() {
                    continue;
                }
                out = out.add(&self.table[i][j].scale(&cx.mul(cy)));
            }
        }
        out
    }

    pub fn pow(&self, x: &Elem, e: u32) -> Elem {
        (0..e).fold(self.basis_elem(Basis::One), |acc, _| self.mul(&acc, x))
    }

    /// `σ`: `u ↦ ζu`, `v ↦ ζ^{-1} v`, `s ↦ s`.
    pub fn sigma(&self, x: &Elem) -> Elem {
        let n = self.n;
        let coeffs = self
            .basis
            .iter()
            .zip(&x.coeffs)
            .map(|(b, c)| match b {
                Basis::U(i) => c.scale(&CycloElem::zeta_pow(n, *i as i64)),
                Basis::V(j) => c.scale(&CycloElem::zeta_pow(n, -(*j as i64))),
                _ => c.clone(),
            })
            .collect();
        Elem { coeffs }
    }

    /// `τ`: `u ↔ v`, `s ↦ -s`.
    pub fn tau(&self, x: &Elem) -> Elem {
        let mut out = self.zero();
        for (b, c) in self.basis.iter().zip(&x.coeffs) {
            let (target, c) = match *b {
                Basis::One => (Basis::One, c.clone()),
                Basis::S => (Basis::S, c.neg()),
                Basis::U(i) => (Basis::V(i), c.clone()),
                Basis::V(j) => (Basis::U(j), c.clone()),
            };
            out.coeffs[self.index(target)] = c;
        }
        out
    }

    /// The action of `σ^k τ^t` (apply `τ^t` first).
    pub fn act(&self, k: u32, t: u8, x: &Elem) -> Elem {
        let mut y = if t == 1 { self.tau(x) } else { x.clone() };
        for _ in 0..k {
            y = self.sigma(&y);
        }
        y
    }

    /// Commutativity on all basis pairs.
    pub fn check_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Associativity on all basis triples.
    pub fn check_associative(&self) -> bool {
        let b: Vec<Elem> = self.basis.iter().map(|x| self.basis_elem(*x)).collect();
        for x in &b {
            for y in &b {
                let xy = self.mul(x, y);
                for z in &b {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `σ` and `τ` are ring homomorphisms, `σ^n = τ^2 = (στ)^2 = 1`.
    pub fn check_group_action(&self) -> bool {
        let b: Vec<Elem> = self.basis.iter().map(|x| self.basis_elem(*x)).collect();
        for x in &b {
            for y in &b {
                let xy = self.mul(x, y);
                if self.sigma(&xy) != self.mul(&self.sigma(x), &self.sigma(y)) || self.tau(&xy) != self.mul(&self.tau(x), &self.tau(y)) {
                    return false;
                }
            }
            if self.act(self.n, 0, x) != *x || self.tau(&self.tau(x)) != *x || self.sigma(&self.tau(&self.sigma(&self.tau(x)))) != *x {
                return false;
            }
        }
        true
    }

    /// `m^-(s w1, w2) = s m^+(w1, w2)` on all basis pairs, where
    /// `m^±(x, y) = x τ(y) ± τ(x) y`.
    pub fn check_u3_identity(&self) -> bool {
        let m = |x: &Elem, y: &Elem, plus: bool| {
            let (l, r) = (self.mul(x, &self.tau(y)), self.mul(&self.tau(x), y));
            if plus {
                l.add(&r)
            } else {
                l.sub(&r)
            }
        };
        let s = self.s();
        let b: Vec<Elem> = self.basis.iter().map(|x| self.basis_elem(*x)).collect();
        b.iter().all(|x| b.iter().all(|y| m(&self.mul(&s, x), y, false) == self.mul(&s, &m(x, y, true))))
    }

    pub fn format(&self, x: &Elem) -> String {
        let parts: Vec<String> = self
            .basis
            .iter()
            .zip(&x.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| if *b == Basis::One { format!("({c})") } else { format!("({c})*{b}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Coefficients of `X^{2n} - 2a X^n + F^n`, constant term first, together with
/// whether `∏_i (X - ζ^i u)(X - ζ^i v)` expands to it in the algebra.
#[derive(Clone, Debug)]
pub struct FieldPolynomial {
    pub n: u32,
    pub coeffs: Vec<AFPoly>,
    pub conjugates_verified: bool,
}

pub fn field_polynomial(n: u32) -> Result<FieldPolynomial> {
    let alg = SimpleCoverAlgebra::new(n)?;
    let deg = 2 * n as usize;
    let mut coeffs = vec![AFPoly::zero(n); deg + 1];
    coeffs[0] = AFPoly::big_f(n).pow(n);
    coeffs[n as usize] = AFPoly::int(n, -2).mul(&AFPoly::a(n));
    coeffs[deg] = AFPoly::int(n, 1);

    // polynomial in X with algebra coefficients, constant term first
    let mut prod: Vec<Elem> = vec![alg.basis_elem(Basis::One)];
    for i in 0..n {
        let z = AFPoly::constant(CycloElem::zeta_pow(n, i as i64));
        for root in [alg.u().scale(&z), alg.v().scale(&z)] {
            let mut next = vec![alg.zero(); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c);
                next[k] = next[k].sub(&alg.mul(c, &root));
            }
            prod = next;
        }
    }
    let conjugates_verified = prod.iter().zip(&coeffs).all(|(e, c)| *e == alg.from_afpoly(c.clone()));
    Ok(FieldPolynomial { n, coeffs, conjugates_verified })
}

/// `Φ_{n-1}(w_1 ⊗ ... ⊗ w_n) = τ(w_1 ⋯ w_{n-1}) ∧ w_n` on the basis `{u, v^{n-1}}` of `U_1`,
/// as multiples of `u ∧ v^{n-1}`, together with `m^-_{1,n-1}(u ∧ v^{n-1})`.
#[derive(Clone, Debug)]
pub struct PhiTensor {
    pub n: u32,
    /// Keyed by the argument tuple, `0` for `u` and `1` for `v^{n-1}`.
    pub entries: BTreeMap<Vec<u8>, AFPoly>,
    pub symmetric: bool,
    /// `u τ(v^{n-1}) - τ(u) v^{n-1}`, which is `s`.
    pub m_minus: Elem,
    /// Coefficient of `m_minus` on the `χ2`-line generator `s`.
    pub m_minus_coefficient: AFPoly,
    /// True when that coefficient is a nonzero constant, so the vanishing divisor is empty.
    pub m_minus_is_unit: bool,
}

pub fn phi_tensor(n: u32) -> Result<PhiTensor> {
    let alg = SimpleCoverAlgebra::new(n)?;
    let gens = [alg.u(), alg.basis_elem(Basis::V(n - 1))];
    let (iu, iv) = (alg.index(Basis::U(1)), alg.index(Basis::V(n - 1)));
    let mut entries = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let args: Vec<u8> = (0..n).map(|i| (mask >> i & 1) as u8).collect();
        let prod = args[..n as usize - 1].iter().fold(alg.basis_elem(Basis::One), |acc, w| alg.mul(&acc, &gens[*w as usize]));
        let x = alg.tau(&prod);
        let rest: Vec<usize> = (0..alg.rank()).filter(|i| *i != iu && *i != iv && !x.coeffs[*i].is_zero()).collect();
        if !rest.is_empty() {
            return Err(Error::Invariant(format!("τ(m(...)) left U_1 for arguments {args:?}")));
        }
        let (x1, x2) = (&x.coeffs[iu], &x.coeffs[iv]);
        let val = if args[n as usize - 1] == 0 { x2.neg() } else { x1.clone() };
        entries.insert(args, val);
    }
    let symmetric = entries.iter().all(|(k, v)| {
        let mut sorted = k.clone();
        sorted.sort();
        entries[&sorted] == *v
    });
    if !symmetric {
        return Err(Error::Invariant(format!("φ_{} is not symmetric", n - 1)));
    }
    let vn1 = alg.basis_elem(Basis::V(n - 1));
    let m_minus = alg.mul(&alg.u(), &alg.tau(&vn1)).sub(&alg.mul(&alg.tau(&alg.u()), &vn1));
    let m_minus_coefficient = m_minus.coeffs[alg.index(Basis::S)].clone();
    let only_s = m_minus.coeffs.iter().enumerate().all(|(i, c)| i == alg.index(Basis::S) || c.is_zero());
    if !only_s {
        return Err(Error::Invariant("m^-_{1,n-1} is not in the χ2-line".into()));
    }
    let m_minus_is_unit = m_minus_coefficient.is_constant() && !m_minus_coefficient.is_zero();
    Ok(PhiTensor { n, entries, symmetric, m_minus, m_minus_coefficient, m_minus_is_unit })
}

/// The `D_3` resolvent `w^3 - 3F w - 2a` of `w = u + v`.
#[derive(Clone, Debug)]
pub struct D3Resolvent {
    /// Cubic coefficients, constant term first.
    pub cubic: Vec<AFPoly>,
    /// `-4p^3 - 27q^2` at `p = -3F`, `q = -2a`.
    pub discriminant: AFPoly,
    /// Whether `w = u + v` satisfies the cubic in the `n = 3` algebra.
    pub identity_holds: bool,
}

pub fn d3_resolvent() -> Result<D3Resolvent> {
    let n = 3;
    let alg = SimpleCoverAlgebra::new(n)?;
    let (a, f) = (AFPoly::a(n), AFPoly::big_f(n));
    let p = AFPoly::int(n, -3).mul(&f);
    let q = AFPoly::int(n, -2).mul(&a);
    let cubic = vec![q.clone(), p.clone(), AFPoly::zero(n), AFPoly::int(n, 1)];
    let discriminant = AFPoly::int(n, -4).mul(&p.pow(3)).sub(&AFPoly::int(n, 27).mul(&q.pow(2)));
    let w = alg.u().add(&alg.v());
    let lhs = alg.pow(&w, 3).add(&w.scale(&p)).add(&alg.from_afpoly(q));
    Ok(D3Resolvent { cubic, discriminant, identity_holds: lhs.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_rules() {
        let alg = SimpleCoverAlgebra::new(3).unwrap();
        assert_eq!(alg.format(&alg.reduce(1, 1, 0)), "(F)");
        assert_eq!(alg.format(&alg.reduce(3, 0, 0)), "(a) + (1/2)*s");
        let su = alg.reduce(1, 0, 1);
        assert_eq!(su.coeffs[alg.index(Basis::U(1))], AFPoly::int(3, 2).mul(&AFPoly::a(3)));
        assert_eq!(su.coeffs[alg.index(Basis::V(2))], AFPoly::int(3, -2).mul(&AFPoly::big_f(3)));
    }

    #[test]
    fn small_algebras_are_consistent() {
        for n in 2..=4 {
            let alg = SimpleCoverAlgebra::new(n).unwrap();
            assert_eq!(alg.rank(), 2 * n as usize);
            assert!(alg.check_commutative());
            assert!(alg.check_associative());
            assert!(alg.check_group_action());
            assert!(alg.check_u3_identity());
        }
    }

    #[test]
    fn phi_for_d3() {
        let phi = phi_tensor(3).unwrap();
        assert!(phi.symmetric);
        assert_eq!(phi.entries[&vec![0, 0, 0]], AFPoly::int(3, -1));
        assert!(phi.m_minus_is_unit);
    }

    #[test]
    fn resolvent() {
        let r = d3_resolvent().unwrap();
        assert!(r.identity_holds);
        let expect = AFPoly::int(3, 108).mul(&AFPoly::big_f(3).pow(3)).sub(&AFPoly::int(3, 108).mul(&AFPoly::a(3).pow(2)));
        assert_eq!(r.discriminant, expect);
    }

    #[test]
    fn field_polynomial_small() {
        for n in 2..=4 {
            assert!(field_polynomial(n).unwrap().conjugates_verified, "n = {n}");
        }
    }
}
