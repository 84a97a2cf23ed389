//! The n-torsion rank test and symmetric-power pushforwards.
//!
//! For a degree-0 pair the map
//! `⊕_{i=0}^{n} H0(O(i a + (n-i) b - 2)) -> ⊕_{k=0}^{n-2} H0(O(k a + (n-2-k) b + 2g))`,
//! `(σ_i) ↦ (f σ_{k+2} - 2P σ_{k+1} - q σ_k)_k`, fails to be surjective exactly when
//! `L^n` is trivial. Rows of the stored matrix index the source, columns the target.

use super::HECurve;
use crate::double_cover::{tensor, validate, BundlePair};
use crate::error::{Error, Result};
use crate::exactmath::{HPoly, Mat};

/// `Ξ = f u^2 - 2P uv - q v^2`, kept as its three coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiForm {
    pub uu: HPoly,
    pub uv: HPoly,
    pub vv: HPoly,
}

pub fn xi_form(pair: &BundlePair) -> XiForm {
    let two = pair.field().int(2);
    XiForm { uu: pair.f.clone(), uv: pair.p.scale(&-two), vv: -&pair.q }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionMatrix {
    pub n: u32,
    pub matrix: Mat,
    /// Degrees of the source pieces `i a + (n-i) b - 2`, `i = 0..=n`.
    pub source_degrees: Vec<i64>,
    /// Degrees of the target pieces `k a + (n-2-k) b + 2g`, `k = 0..=n-2`.
    pub target_degrees: Vec<i64>,
}

impl TorsionMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols
    }
}

fn offsets(degs: &[i64]) -> (Vec<usize>, usize) {
    let mut off = vec![];
    let mut total = 0;
    for d in degs {
        off.push(total);
        total += (*d + 1).max(0) as usize;
    }
    (off, total)
}

fn check_degree0(pair: &BundlePair, curve: &HECurve) -> Result<()> {
    if !validate(pair, curve.ring()) {
        return Err(Error::InvalidInput(format!("pair {pair} is not valid on z^2 = {}", curve.branch())));
    }
    if pair.a + pair.b != curve.genus() as i64 + 1 {
        return Err(Error::Hypothesis(format!("pair must have degree 0 (a + b = g + 1), got a + b = {}", pair.a + pair.b)));
    }
    Ok(())
}

pub fn torsion_matrix(n: u32, pair: &BundlePair, curve: &HECurve) -> Result<TorsionMatrix> {
    check_degree0(pair, curve)?;
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    let field = pair.field();
    let g = curve.genus() as i64;
    let (a, b, n_) = (pair.a, pair.b, n as i64);
    let src: Vec<i64> = (0..=n_).map(|i| i * a + (n_ - i) * b - 2).collect();
    let tgt: Vec<i64> = (0..=n_ - 2).map(|k| k * a + (n_ - 2 - k) * b + 2 * g).collect();
    let (soff, rows) = offsets(&src);
    let (toff, cols) = offsets(&tgt);
    let xi = xi_form(pair);
    let mut m = Mat::zeros(field, rows, cols);
    for (i, &di) in src.iter().enumerate() {
        for e in 0..=di.max(-1) {
            let mono = HPoly::monomial(field.one(), [(di - e) as u32, e as u32, 0], 2);
            let row = soff[i] + e as usize;
            // σ_i feeds τ_{i-2} through f, τ_{i-1} through -2P, τ_i through -q
            for (k, coeff) in [(i as i64 - 2, &xi.uu), (i as i64 - 1, &xi.uv), (i as i64, &xi.vv)] {
                if k < 0 || k > n_ - 2 || coeff.is_zero() {
                    continue;
                }
                let img = coeff * &mono;
                for (c, val) in img.to_dense().into_iter().enumerate() {
                    m.data[row][toff[k as usize] + c] = val;
                }
            }
        }
    }
    Ok(TorsionMatrix { n, matrix: m, source_degrees: src, target_degrees: tgt })
}

/// Whether `L^n` is trivial, by non-surjectivity of the torsion map.
pub fn is_n_torsion(n: u32, pair: &BundlePair, curve: &HECurve) -> Result<bool> {
    check_degree0(pair, curve)?;
    if pair.a.min(pair.b) == 0 {
        // only the trivial class lives in the stratum a = 0
        return Ok(true);
    }
    let t = torsion_matrix(n, pair, curve)?;
    Ok(t.matrix.rank() < t.cols())
}

/// Splitting degrees `(-a_n, -b_n)` of `q_*(L^n)`, `n >= 0`.
///
/// Computed from the n-fold tensor power and checked against
/// `c1(S^n N) - c1(K2 ⊗ S^{n-2} N) = -n (a + b) + (n - 1)(g + 1)`.
pub fn sym_power_pushforward(n: u32, pair: &BundlePair, curve: &HECurve) -> Result<(i64, i64)> {
    let ring = curve.ring();
    if !validate(pair, ring) {
        return Err(Error::InvalidInput(format!("pair {pair} is not valid")));
    }
    let mut acc = ring.trivial_pair();
    for _ in 0..n {
        acc = tensor(&acc, pair, ring)?;
    }
    let (n_, s, l) = (n as i64, pair.a + pair.b, ring.l());
    if acc.c1() != -n_ * s + (n_ - 1) * l {
        return Err(Error::Invariant("symmetric power: first Chern class mismatch".into()));
    }
    Ok((-acc.a, -acc.b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse::parse_hpoly, Field};

    fn setup() -> (HECurve, BundlePair) {
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
        (c, p)
    }

    #[test]
    fn elliptic_two_torsion() {
        let (c, p) = setup();
        let t = torsion_matrix(2, &p, &c).unwrap();
        assert_eq!((t.rows(), t.cols()), (3, 3));
        assert!(is_n_torsion(2, &p, &c).unwrap());
        assert!(!is_n_torsion(3, &p, &c).unwrap());
        assert!(is_n_torsion(4, &p, &c).unwrap());
    }

    #[test]
    fn pushforward_of_square() {
        let (c, p) = setup();
        assert_eq!(sym_power_pushforward(2, &p, &c).unwrap(), (0, -2));
        assert_eq!(sym_power_pushforward(1, &p, &c).unwrap(), (-1, -1));
    }
}
