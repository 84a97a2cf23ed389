//! Simple and almost-simple dihedral covers: hypothesis checks on `P^2`, branch
//! divisors, numerical invariants, and the normality criterion over a hyperelliptic base.

mod checks;
mod elim;
mod invariants;
mod normality;

pub use checks::{
    branch_divisor, branch_divisor_almost_simple, check_almost_simple, check_simple, common_zeros_inside, dn_epimorphism_criterion, transverse,
    AlmostSimpleCheckReport, BranchDivisor, DnEpimorphism, RationalPointCheck, SimpleCheckReport, Verdict,
};
pub use invariants::{
    building_data_degree_check, chi_formula, chi_projective, classify, invariants, k2_formula, pushforward_degrees, BaseGeometry, Classification,
    InvariantReport,
};
pub use normality::{normality_criterion, LabelledDivisor, NormalityReport};

use crate::error::{Error, Result};
use crate::exactmath::HPoly;

/// `uv = F`, `u^n + v^n = 2a` over `P^d` (`d = nvars - 1`), with `L = O(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCoverSpec {
    pub n: u32,
    pub m: u32,
    pub a: HPoly,
    pub f: HPoly,
}

impl SimpleCoverSpec {
    pub fn new(n: u32, a: HPoly, f: HPoly) -> Result<SimpleCoverSpec> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
        }
        crate::exactmath::check_same_field(a.field(), f.field())?;
        if a.nvars() != f.nvars() {
            return Err(Error::InvalidInput("a and F must live on the same projective space".into()));
        }
        if f.degree() == 0 || f.degree() % 2 == 1 {
            return Err(Error::InvalidInput(format!("deg F = {} must be 2m with m >= 1", f.degree())));
        }
        let m = f.degree() / 2;
        if a.degree() != n * m {
            return Err(Error::InvalidInput(format!("deg a = {} must be n m = {}", a.degree(), n * m)));
        }
        Ok(SimpleCoverSpec { n, m, a, f })
    }

    pub fn d(&self) -> u32 {
        self.a.nvars() as u32 - 1
    }

    pub fn base(&self) -> BaseGeometry {
        BaseGeometry::ProjectiveSpace { d: self.d(), m: self.m as i64 }
    }
}

/// Almost-simple data: `F` of degree `2m`, `a_∞` of degree `e`, `a_0` of degree `nm + e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostSimpleSpec {
    pub n: u32,
    pub m: u32,
    pub e: u32,
    pub f: HPoly,
    pub a0: HPoly,
    pub a_inf: HPoly,
}

impl AlmostSimpleSpec {
    pub fn new(n: u32, f: HPoly, a0: HPoly, a_inf: HPoly) -> Result<AlmostSimpleSpec> {
        let simple = SimpleCoverSpec::new(n, HPoly::zero(f.field(), f.nvars(), n * f.degree() / 2), f)?;
        crate::exactmath::check_same_field(a0.field(), simple.f.field())?;
        crate::exactmath::check_same_field(a_inf.field(), simple.f.field())?;
        if a_inf.is_zero() {
            return Err(Error::InvalidInput("a_inf must be nonzero".into()));
        }
        let e = a_inf.degree();
        if a0.degree() != n * simple.m + e {
            return Err(Error::InvalidInput(format!("deg a_0 = {} must be n m + e = {}", a0.degree(), n * simple.m + e)));
        }
        Ok(AlmostSimpleSpec { n, m: simple.m, e, f: simple.f, a0, a_inf })
    }

    /// The simple cover with `a = a_0 / a_∞`, when `a_∞` is a nonzero constant.
    pub fn as_simple(&self) -> Option<SimpleCoverSpec> {
        if self.e != 0 {
            return None;
        }
        let c = self.a_inf.lc().inv()?;
        SimpleCoverSpec::new(self.n, self.a0.scale(&c), self.f.clone()).ok()
    }
}

/// Invariants of a concrete spec; hypotheses are marked checked only after [`check_simple`] passes.
pub fn spec_invariants(spec: &SimpleCoverSpec, checks: Option<&SimpleCheckReport>) -> Result<InvariantReport> {
    let mut r = invariants(spec.n, spec.base(), 0)?;
    r.unchecked_hypotheses = !checks.is_some_and(|c| c.smooth_off_f.is_pass() && c.transversal.is_pass());
    Ok(r)
}
