use super::algebra::{Basis, SimpleCoverAlgebra};
use super::cyclo::CycloElem;
use super::group::{CMat, CharTable, Irrep};
use crate::error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// One isotypic piece of `π_* O_X` for a simple cover with `L = O(m)`.
///
/// `summands` lists the rank-2 bundles `U_ℓ ⊕ U_{n-ℓ}` for `ρ^ℓ`, or a single line bundle
/// for a character, each as the degrees of its line-bundle summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigensheaf {
    pub irrep: Irrep,
    pub summands: Vec<Vec<i64>>,
}

impl Eigensheaf {
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.summands.iter().flatten().copied().collect();
        d.sort_unstable();
        d
    }
}

fn check(n: u32, m: i64) -> Result<()> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidInput(format!("eigensheaf decomposition needs n >= 2 and m >= 1 (n={n}, m={m})")));
    }
    Ok(())
}

/// `1 ↦ O`, `s ↦ O(-nm)`, `ρ^ℓ ↦ U_ℓ ⊕ U_{n-ℓ}` with `U_ℓ = <u^ℓ, v^{n-ℓ}> = O(-ℓm) ⊕ O(-(n-ℓ)m)`,
/// and for even `n` the lines `u^{n/2} ± v^{n/2}` of degree `-(n/2)m`.
pub fn eigensheaf_decomposition(n: u32, m: i64) -> Result<Vec<Eigensheaf>> {
    check(n, m)?;
    let table = CharTable::new(n)?;
    let n_ = n as i64;
    Ok(table
        .irreps()
        .iter()
        .map(|r| {
            let summands = match *r {
                Irrep::Trivial => vec![vec![0]],
                Irrep::Sign => vec![vec![-n_ * m]],
                Irrep::Chi3 | Irrep::Chi4 => vec![vec![-(n_ / 2) * m]],
                Irrep::Rho(l) => {
                    let l = l as i64;
                    vec![vec![-l * m, -(n_ - l) * m], vec![-(n_ - l) * m, -l * m]]
                }
            };
            Eigensheaf { irrep: *r, summands }
        })
        .collect())
}

/// Degrees read off by projecting the algebra basis onto each isotypic component.
///
/// The group permutes basis lines up to roots of unity, so each projected basis vector
/// has the degree of the vector it came from; a greedy rank count picks a basis of the image.
pub fn projector_degrees(n: u32, m: i64) -> Result<Vec<(Irrep, Vec<i64>)>> {
    check(n, m)?;
    let table = CharTable::new(n)?;
    let alg = SimpleCoverAlgebra::new(n)?;
    let group = table.group();
    let degree = |b: &Basis| match *b {
        Basis::One => 0,
        Basis::S => -(n as i64) * m,
        Basis::U(i) | Basis::V(i) => -(i as i64) * m,
    };
    let mut out = vec![];
    for (i, irrep) in table.irreps().iter().enumerate() {
        let w = BigRational::new(BigInt::from(irrep.dim()), BigInt::from(group.order()));
        let mut rows: Vec<Vec<CycloElem>> = vec![];
        let mut degs = vec![];
        for b in alg.basis() {
            let x = alg.basis_elem(*b);
            let mut acc = alg.zero();
            for g in group.elements() {
                let c = table.character(i, g).conj().scale(&w);
                if !c.is_zero() {
                    acc = acc.add(&alg.act(g.k, g.t, &x).scale(&super::algebra::AFPoly::constant(c)));
                }
            }
            if acc.coeffs.iter().any(|c| !c.is_constant()) {
                return Err(Error::Invariant("projection left the constant span".into()));
            }
            let v: Vec<CycloElem> = acc.coeffs.iter().map(|c| c.constant_term()).collect();
            let mut trial = rows.clone();
            trial.push(v);
            if (CMat { n, data: trial.clone() }).rank() > rows.len() {
                rows = trial;
                degs.push(degree(b));
            }
        }
        degs.sort_unstable();
        out.push((*irrep, degs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d3_decomposition() {
        let d = eigensheaf_decomposition(3, 1).unwrap();
        assert_eq!(d[0].summands, vec![vec![0]]);
        assert_eq!(d[1].summands, vec![vec![-3]]);
        assert_eq!(d[2].summands, vec![vec![-1, -2], vec![-2, -1]]);
    }

    #[test]
    fn projector_cross_check() {
        for n in 2..=6 {
            for m in 1..=2 {
                let formula = eigensheaf_decomposition(n, m).unwrap();
                let proj = projector_degrees(n, m).unwrap();
                let total: usize = proj.iter().map(|(_, d)| d.len()).sum();
                assert_eq!(total, 2 * n as usize);
                for (e, (r, d)) in formula.iter().zip(&proj) {
                    assert_eq!(e.irrep, *r);
                    assert_eq!(e.degrees(), *d, "n={n} m={m} {r}");
                }
            }
        }
    }
}
