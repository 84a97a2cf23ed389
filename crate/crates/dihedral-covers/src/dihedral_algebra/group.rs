//! `D_n`, its complex irreducible representations over `Q(ζ_n)`, and the
//! projectors of the canonical decomposition of the regular representation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::cyclo::CycloElem;
use crate::error::{Error, Result};

/// `σ^k τ^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub k: u32,
    pub t: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DihedralGroup {
    n: u32,
}

impl DihedralGroup {
    pub fn new(n: u32) -> Result<DihedralGroup> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("D_n needs n >= 2, got {n}")));
        }
        Ok(DihedralGroup { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        2 * self.n as usize
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { k: 0, t: 0 }
    }

    pub fn sigma(&self) -> GroupElem {
        GroupElem { k: 1 % self.n, t: 0 }
    }

    pub fn tau(&self) -> GroupElem {
        GroupElem { k: 0, t: 1 }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..2u8).flat_map(move |t| (0..self.n).map(move |k| GroupElem { k, t }))
    }

    /// Position `k + n t` in the regular representation.
    pub fn index(&self, g: GroupElem) -> usize {
        g.k as usize + self.n as usize * g.t as usize
    }

    /// `σ^k τ^t σ^k' τ^t' = σ^{k ± k'} τ^{t + t'}`, using `τ σ = σ^{-1} τ`.
    pub fn mul(&self, g: GroupElem, h: GroupElem) -> GroupElem {
        let n = self.n as i64;
        let k2 = if g.t == 0 { h.k as i64 } else { -(h.k as i64) };
        GroupElem { k: (g.k as i64 + k2).rem_euclid(n) as u32, t: (g.t + h.t) % 2 }
    }

    pub fn inv(&self, g: GroupElem) -> GroupElem {
        if g.t == 1 {
            g
        } else {
            GroupElem { k: (self.n - g.k) % self.n, t: 0 }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Irrep {
    /// `χ1`, the trivial character.
    Trivial,
    /// `χ2`: `σ ↦ 1`, `τ ↦ -1`.
    Sign,
    /// `χ3` (n even): `σ ↦ -1`, `τ ↦ 1`.
    Chi3,
    /// `χ4` (n even): `σ ↦ -1`, `τ ↦ -1`.
    Chi4,
    /// `ρ^ℓ`: `σ ↦ diag(ζ^ℓ, ζ^{-ℓ})`, `τ ↦ [[0, 1], [1, 0]]`.
    Rho(u32),
}

impl Irrep {
    pub fn dim(&self) -> usize {
        match self {
            Irrep::Rho(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrep::Trivial => write!(f, "chi1"),
            Irrep::Sign => write!(f, "chi2"),
            Irrep::Chi3 => write!(f, "chi3"),
            Irrep::Chi4 => write!(f, "chi4"),
            Irrep::Rho(l) => write!(f, "rho{l}"),
        }
    }
}

/// Square matrix over `Q(ζ_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMat {
    pub n: u32,
    pub data: Vec<Vec<CycloElem>>,
}

impl CMat {
    pub fn zeros(n: u32, rows: usize, cols: usize) -> CMat {
        CMat { n, data: vec![vec![CycloElem::zero(n); cols]; rows] }
    }

    pub fn identity(n: u32, size: usize) -> CMat {
        let mut m = CMat::zeros(n, size, size);
        for i in 0..size {
            m.data[i][i] = CycloElem::one(n);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.data.first().map_or(0, |r| r.len())
    }

    pub fn mul(&self, o: &CMat) -> CMat {
        let mut out = CMat::zeros(self.n, self.rows(), o.cols());
        for i in 0..self.rows() {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols() {
                    if !o.data[k][j].is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * &o.data[k][j]);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &CMat) -> CMat {
        let data = self.data.iter().zip(&o.data).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect();
        CMat { n: self.n, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(CycloElem::is_zero)
    }

    pub fn trace(&self) -> CycloElem {
        (0..self.rows()).fold(CycloElem::zero(self.n), |acc, i| &acc + &self.data[i][i])
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows(), self.cols());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("nonzero pivot");
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = &m[i][c] * &inv;
                    for j in c..cols {
                        let d = &factor * &m[r][j];
                        m[i][j] = &m[i][j] - &d;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    group: DihedralGroup,
    irreps: Vec<Irrep>,
}

impl CharTable {
    pub fn new(n: u32) -> Result<CharTable> {
        let group = DihedralGroup::new(n)?;
        let mut irreps = vec![Irrep::Trivial, Irrep::Sign];
        let top = if n % 2 == 0 {
            irreps.extend([Irrep::Chi3, Irrep::Chi4]);
            n / 2 - 1
        } else {
            (n - 1) / 2
        };
        irreps.extend((1..=top).map(Irrep::Rho));
        Ok(CharTable { group, irreps })
    }

    pub fn group(&self) -> &DihedralGroup {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn n(&self) -> u32 {
        self.group.n()
    }

    /// The representing matrix `ρ_i(g)`.
    pub fn matrix(&self, i: usize, g: GroupElem) -> CMat {
        let n = self.n();
        let sign = |neg: bool| CycloElem::int(n, if neg { -1 } else { 1 });
        let scalar = |c: CycloElem| CMat { n, data: vec![vec![c]] };
        let odd_k = g.k % 2 == 1;
        match self.irreps[i] {
            Irrep::Trivial => scalar(CycloElem::one(n)),
            Irrep::Sign => scalar(sign(g.t == 1)),
            Irrep::Chi3 => scalar(sign(odd_k)),
            Irrep::Chi4 => scalar(sign(odd_k ^ (g.t == 1))),
            Irrep::Rho(l) => {
                let e = g.k as i64 * l as i64;
                let (z, zi, o) = (CycloElem::zeta_pow(n, e), CycloElem::zeta_pow(n, -e), CycloElem::zero(n));
                let data = if g.t == 0 { vec![vec![z, o.clone()], vec![o, zi]] } else { vec![vec![o.clone(), z], vec![zi, o]] };
                CMat { n, data }
            }
        }
    }

    pub fn character(&self, i: usize, g: GroupElem) -> CycloElem {
        self.matrix(i, g).trace()
    }

    /// `p_i = (n_i / 2n) Σ_g conj(χ_i(g)) R(g)` on the regular representation,
    /// where `R(g) e_h = e_{gh}`.
    pub fn projector(&self, i: usize) -> Result<CMat> {
        if i >= self.irreps.len() {
            return Err(Error::InvalidInput(format!("irrep index {i} out of range for D_{}", self.n())));
        }
        let g = &self.group;
        let n = self.n();
        let size = g.order();
        let w = BigRational::new(BigInt::from(self.irreps[i].dim()), BigInt::from(size));
        let mut p = CMat::zeros(n, size, size);
        for x in g.elements() {
            let c = self.character(i, x).conj().scale(&w);
            if c.is_zero() {
                continue;
            }
            for h in g.elements() {
                p.data[g.index(g.mul(x, h))][g.index(h)] = c.clone();
            }
        }
        Ok(p)
    }

    /// `(1/2n) Σ_g χ_i(g) conj(χ_j(g))`, which is `δ_ij` for irreducible characters.
    pub fn inner_product(&self, i: usize, j: usize) -> CycloElem {
        let n = self.n();
        let s = self.group.elements().fold(CycloElem::zero(n), |acc, g| &acc + &(&self.character(i, g) * &self.character(j, g).conj()));
        s.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order())))
    }

    /// Whether each `ρ_i` is a homomorphism and the characters are orthonormal.
    pub fn verify(&self) -> bool {
        let g = &self.group;
        let dims: usize = self.irreps.iter().map(|r| r.dim() * r.dim()).sum();
        if dims != g.order() {
            return false;
        }
        for i in 0..self.irreps.len() {
            for x in g.elements() {
                for y in g.elements() {
                    if self.matrix(i, g.mul(x, y)) != self.matrix(i, x).mul(&self.matrix(i, y)) {
                        return false;
                    }
                }
            }
            for j in 0..self.irreps.len() {
                let ip = self.inner_product(i, j);
                if (i == j && !ip.is_one()) || (i != j && !ip.is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

/// `ε^k_{i,j}`: with `o = |<σ^k>| = n / gcd(n, k)` and `ζ_n^{ik} = ζ_o^{ı_i(k)}`,
/// this is 1 when `ı_i(k) + ı_j(k) >= o`.
pub fn epsilon(n: u32, k: u32, i: u32, j: u32) -> Result<u8> {
    if n < 2 || k == 0 || k >= n || i >= n || j >= n {
        return Err(Error::InvalidInput(format!("epsilon needs 1 <= k < n and 0 <= i, j < n (n={n}, k={k}, i={i}, j={j})")));
    }
    let g = n.gcd(&k) as u64;
    let ord = n as u64 / g;
    let imath = |i: u32| (i as u64 * k as u64 % n as u64) / g;
    Ok(u8::from(imath(i) + imath(j) >= ord))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law() {
        let g = DihedralGroup::new(5).unwrap();
        let (s, t) = (g.sigma(), g.tau());
        let st = g.mul(s, t);
        assert_eq!(g.mul(st, st), g.identity());
        assert_eq!(g.mul(t, s), g.mul(g.inv(s), t));
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
        }
    }

    #[test]
    fn tables_verify() {
        for n in 2..=8 {
            assert!(CharTable::new(n).unwrap().verify(), "n = {n}");
        }
    }

    #[test]
    fn projector_ranks() {
        let ranks = |n| {
            let t = CharTable::new(n).unwrap();
            (0..t.irreps().len()).map(|i| t.projector(i).unwrap().rank()).collect::<Vec<_>>()
        };
        assert_eq!(ranks(3), vec![1, 1, 4]);
        assert_eq!(ranks(4), vec![1, 1, 1, 1, 4]);
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(3, 1, 1, 1).unwrap(), 0);
        assert_eq!(epsilon(3, 1, 1, 2).unwrap(), 1);
        assert_eq!(epsilon(6, 2, 0, 5).unwrap(), 0);
        // k = 2 in D_6: σ^2 has order 3, ζ_6^{2·2} = ζ_3^2
        assert_eq!(epsilon(6, 2, 2, 2).unwrap(), 1);
        assert!(epsilon(3, 0, 1, 1).is_err());
    }
}
