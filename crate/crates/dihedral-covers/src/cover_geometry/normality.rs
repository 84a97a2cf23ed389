use num_integer::Integer;

use super::checks::Verdict;
use crate::double_cover::BundlePair;
use crate::error::{Error, Result};
use crate::exactmath::UPoly;
use crate::hyperelliptic::{cantor_add, class_from_matrix, class_order, negate, scalar_mul, HECurve, MumfordClass};

/// An effective reduced divisor `D_k` on `Z`, given on the odd model by `(u, v)`
/// with `u` squarefree and `u | f - v^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledDivisor {
    pub k: u32,
    pub u: UPoly,
    pub v: UPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub kappa: u32,
    /// `(n/κ) F_1 - Σ (k/κ) D_k` in `Pic^0`, when it has degree 0.
    pub class: Option<MumfordClass>,
    pub order: Option<u64>,
    pub verdict: Verdict,
}

impl NormalityReport {
    /// `None` when inconclusive.
    pub fn is_normal(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Pass(_) => Some(true),
            Verdict::Fail(_) => Some(false),
            Verdict::Inconclusive(_) => None,
        }
    }
}

fn shares_point(a: &LabelledDivisor, b: &LabelledDivisor) -> bool {
    let g = a.u.gcd(&b.u);
    g.deg_i() > 0 && g.gcd(&(&a.v - &b.v)).deg_i() > 0
}

/// Normality of the `D_n` cover built from `F_1` and the divisors `D_k`, `1 <= k <= n/2`.
///
/// The divisors `D_{n-k} = τ(D_k)` are added automatically. With
/// `κ = gcd{k : D_k != 0}` (`κ = n` when there are none) the cover is normal iff
/// `κ = 1` or `(n/κ) F_1 - Σ_{k=1}^{n-1} (k/κ) D_k` has order exactly `κ`.
pub fn normality_criterion(n: u32, f1: &BundlePair, divisors: &[LabelledDivisor], curve: &HECurve, cap: u64) -> Result<NormalityReport> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    let f = &curve.odd_model()?.f;
    let mut all = vec![];
    for d in divisors {
        if d.k == 0 || 2 * d.k > n {
            return Err(Error::InvalidInput(format!("divisor labels must satisfy 1 <= k <= n/2, got {}", d.k)));
        }
        let u = d.u.monic();
        if !u.is_squarefree() || !u.divides(&(f - &(&d.v * &d.v))) {
            return Err(Error::InvalidInput(format!("D_{} is not an effective reduced divisor (u, v)", d.k)));
        }
        let d = LabelledDivisor { k: d.k, u: u.clone(), v: d.v.rem(&u) };
        if u.deg_i() == 0 {
            continue;
        }
        let conj = LabelledDivisor { k: n - d.k, u: u.clone(), v: (-&d.v).rem(&u) };
        if 2 * d.k == n {
            if conj.v != d.v {
                return Err(Error::Hypothesis(format!("D_{} must be τ-invariant for even n", d.k)));
            }
            all.push(d);
        } else {
            all.push(d);
            all.push(conj);
        }
    }
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if shares_point(a, b) {
                return Err(Error::Hypothesis(format!("D_{} and D_{} have a common component", a.k, b.k)));
            }
        }
    }
    let kappa = all.iter().fold(0u32, |g, d| g.gcd(&d.k));
    let kappa = if kappa == 0 { n } else { kappa };
    if kappa == 1 {
        return Ok(NormalityReport { kappa, class: None, order: None, verdict: Verdict::Pass("κ = 1".into()) });
    }
    let g = curve.genus() as i64;
    let deg_f1 = g + 1 - f1.a - f1.b;
    let (nk, kk) = ((n / kappa) as i64, kappa as i64);
    let total_degree = nk * deg_f1 - all.iter().map(|d| (d.k as i64 / kk) * d.u.deg_i()).sum::<i64>();
    if total_degree != 0 {
        return Ok(NormalityReport {
            kappa,
            class: None,
            order: None,
            verdict: Verdict::Fail(format!("the combination has degree {total_degree}, so it is not torsion")),
        });
    }
    // each term is taken as [X] - deg(X) ∞; the ∞ parts cancel because the degree is 0
    let mut acc = scalar_mul(&class_from_matrix(f1, curve)?, nk, curve)?;
    for d in &all {
        let c = MumfordClass::from_semireduced(d.u.clone(), d.v.clone(), curve)?;
        acc = cantor_add(&acc, &negate(&scalar_mul(&c, d.k as i64 / kk, curve)?), curve)?;
    }
    let order = class_order(&acc, curve, cap)?;
    let verdict = match order {
        None => Verdict::Inconclusive(format!("order exceeds the cap {cap}")),
        Some(o) if o == kappa as u64 => Verdict::Pass(format!("order {o} = κ")),
        Some(o) => Verdict::Fail(format!("order {o} != κ = {kappa}")),
    };
    Ok(NormalityReport { kappa, class: Some(acc), order, verdict })
}
