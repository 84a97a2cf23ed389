use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// The base of the cover: `P^d` with `L = O(m)`, or a surface given by its numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseGeometry {
    ProjectiveSpace { d: u32, m: i64 },
    /// `χ(O_Y)`, `K_Y^2`, `K_Y·L`, `L^2`.
    AbstractSurface { chi: i64, k2: i64, kl: i64, l2: i64 },
}

impl BaseGeometry {
    pub fn plane(m: i64) -> BaseGeometry {
        BaseGeometry::ProjectiveSpace { d: 2, m }
    }

    fn surface_numbers(&self) -> Option<(i64, i64, i64, i64)> {
        match *self {
            BaseGeometry::ProjectiveSpace { d: 2, m } => Some((1, 9, -3 * m, m * m)),
            BaseGeometry::ProjectiveSpace { .. } => None,
            BaseGeometry::AbstractSurface { chi, k2, kl, l2 } => Some((chi, k2, kl, l2)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    K3,
    /// `ω_X` is the pullback of an anti-ample bundle.
    DelPezzoLike,
    /// `ω_X` is the pullback of an ample bundle.
    GeneralTypeMinimal,
    Other(String),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::K3 => write!(f, "K3"),
            Classification::DelPezzoLike => write!(f, "del-Pezzo-like"),
            Classification::GeneralTypeMinimal => write!(f, "general-type-minimal"),
            Classification::Other(why) => write!(f, "other: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: u32,
    pub base: BaseGeometry,
    /// Degree `e` of `A_∞`; 0 for simple covers.
    pub e: i64,
    /// `ω_X = π^*(ω_Y(nL)) = π^* O(nm - d - 1)` on `P^d` (simple covers only).
    pub omega_degree: Option<i64>,
    /// `((K_Y + nL)·L, (K_Y + nL)^2)` on a surface (simple covers only).
    pub omega_intersections: Option<(i64, i64)>,
    pub k2: Option<i64>,
    pub chi: Option<i64>,
    /// Splitting of `π_* O_X`: degrees on `P^d`, or multiples of `L` on an abstract surface.
    pub pushforward: Vec<i64>,
    pub branch_degree: Option<i64>,
    pub cusp_count: Option<i64>,
    pub classification: Classification,
    /// Set when no polynomial data was checked (formula-level report) or `d != 2`.
    pub unchecked_hypotheses: bool,
}

/// `π_* O_X = O ⊕ O(-nL - A_∞) ⊕ (⊕_{i=1}^{n-1} O(-iL) ⊕ O(-(n-i)L))(-A_∞)`.
pub fn pushforward_degrees(n: u32, m: i64, e: i64) -> Vec<i64> {
    let n_ = n as i64;
    let mut out = vec![0, -n_ * m - e];
    for i in 1..n_ {
        out.extend([-i * m - e, -(n_ - i) * m - e]);
    }
    out
}

/// `χ(O_{P^d}(k)) = (k+1)(k+2)...(k+d) / d!`.
pub fn chi_projective(d: u32, k: i64) -> i64 {
    let (mut num, mut den) = (1i128, 1i128);
    for i in 1..=d as i128 {
        num *= k as i128 + i;
        den *= i;
    }
    (num / den) as i64
}

fn exact_int(r: Rational64, what: &str) -> Result<i64> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Invariant(format!("{what} = {r} is not an integer")))
    }
}

/// Closed-form `χ(O_X) = 2n χ(O_Y) + n(2n^2 + 1) L^2 / 6 + n^2 L·K_Y / 2`.
pub fn chi_formula(n: u32, chi: i64, kl: i64, l2: i64) -> Result<i64> {
    let n = n as i64;
    let r = Rational64::from_integer(2 * n * chi) + Rational64::new(n * (2 * n * n + 1) * l2, 6) + Rational64::new(n * n * kl, 2);
    exact_int(r, "chi(O_X)")
}

/// `K_X^2 = 2n (K_Y + nL)^2`.
pub fn k2_formula(n: u32, k2: i64, kl: i64, l2: i64) -> i64 {
    let n = n as i64;
    2 * n * (k2 + 2 * n * kl + n * n * l2)
}

pub fn classify(report: &InvariantReport) -> Classification {
    let is_surface = matches!(report.base, BaseGeometry::ProjectiveSpace { d: 2, .. } | BaseGeometry::AbstractSurface { .. });
    if !is_surface {
        return Classification::Other("classification is only for surfaces".into());
    }
    if report.e != 0 {
        return Classification::Other("ω_X is not computed for almost-simple covers".into());
    }
    match (report.omega_degree, report.omega_intersections) {
        (Some(0), _) | (None, Some((0, 0))) => {
            if report.chi == Some(2) {
                Classification::K3
            } else {
                Classification::Other(format!("ω_X numerically trivial but χ(O_X) = {:?}", report.chi))
            }
        }
        (Some(w), _) if w < 0 => Classification::DelPezzoLike,
        (Some(_), _) => Classification::GeneralTypeMinimal,
        (None, Some((wl, w2))) => Classification::Other(format!(
            "positivity of K_Y + nL is not determined by (K_Y + nL)·L = {wl}, (K_Y + nL)^2 = {w2}"
        )),
        (None, None) => Classification::Other("no ω_X data".into()),
    }
}

/// Formula-level invariants of a simple (`e = 0`) or almost-simple (`e > 0`, `P^d` only) cover.
///
/// On surfaces `χ(O_X)` is computed both in closed form and as the Riemann–Roch sum over
/// the summands of `π_* O_X`; a disagreement is an error.
pub fn invariants(n: u32, base: BaseGeometry, e: i64) -> Result<InvariantReport> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    if e < 0 {
        return Err(Error::InvalidInput(format!("deg A_inf must be nonnegative, got {e}")));
    }
    let n_ = n as i64;
    let (omega_degree, omega_intersections, pushforward, chi_rr, branch_degree, cusp_count) = match base {
        BaseGeometry::ProjectiveSpace { d, m } => {
            if m < 1 || d < 1 {
                return Err(Error::InvalidInput(format!("need d >= 1 and m >= 1 (d={d}, m={m})")));
            }
            let push = pushforward_degrees(n, m, e);
            let chi: i64 = push.iter().map(|k| chi_projective(d, *k)).sum();
            let omega = (e == 0).then_some(n_ * m - d as i64 - 1);
            let branch = if e == 0 { 2 * n_ * m } else { e + 2 * (n_ * m + e) };
            let cusps = (d == 2).then_some((n_ * m + e) * 2 * m);
            (omega, None, push, chi, Some(branch), cusps)
        }
        BaseGeometry::AbstractSurface { chi, k2: _, kl, l2 } => {
            if e != 0 {
                return Err(Error::InvalidInput("almost-simple covers need a concrete P^d base".into()));
            }
            let push = pushforward_degrees(n, 1, 0);
            // χ(O(jL)) = χ(O_Y) + (j^2 L^2 - j K·L) / 2
            let sum: Rational64 = push.iter().map(|j| Rational64::from_integer(chi) + Rational64::new(j * j * l2 - j * kl, 2)).sum();
            let omega_l = kl + n_ * l2;
            let (_, k2, _, _) = base.surface_numbers().unwrap();
            let omega_sq = k2 + 2 * n_ * kl + n_ * n_ * l2;
            (None, Some((omega_l, omega_sq)), push, exact_int(sum, "Riemann-Roch sum")?, None, None)
        }
    };
    let (k2, chi) = match (base.surface_numbers(), e) {
        (Some((chi_y, k2_y, kl, l2)), 0) => {
            let closed = chi_formula(n, chi_y, kl, l2)?;
            if closed != chi_rr {
                return Err(Error::Invariant(format!("chi(O_X): closed form {closed} != Riemann-Roch sum {chi_rr}")));
            }
            (Some(k2_formula(n, k2_y, kl, l2)), Some(closed))
        }
        _ => (None, Some(chi_rr)),
    };
    let mut report = InvariantReport {
        n,
        base,
        e,
        omega_degree,
        omega_intersections,
        k2,
        chi,
        pushforward,
        branch_degree,
        cusp_count,
        classification: Classification::Other(String::new()),
        unchecked_hypotheses: true,
    };
    report.classification = classify(&report);
    Ok(report)
}

/// `m L ≡ Σ_{i=1}^{m-1} i D_i` at the level of degrees; `d_degs[i - 1] = deg D_i`.
pub fn building_data_degree_check(m: i64, l_deg: i64, d_degs: &[i64]) -> bool {
    m * l_deg == d_degs.iter().enumerate().map(|(i, d)| (i as i64 + 1) * d).sum::<i64>()
}
