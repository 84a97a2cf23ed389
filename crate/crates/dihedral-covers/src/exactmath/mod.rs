//! Exact scalars, polynomials, resultants and graded polynomial matrices.

mod field;
mod graded;
mod hpoly;
mod linalg;
pub mod parse;
mod upoly;

use std::fmt;

pub use field::{Field, FieldElem};
pub use graded::GradedMatrix;
pub(crate) use graded::solve_graded;
pub use hpoly::{Exps, HPoly};
pub use linalg::{det_upoly, rank_upoly, Mat};
pub use upoly::{Degree, UPoly};

use crate::error::{Error, Result};

/// Sylvester matrix of `p` and `q` for their actual degrees.
pub fn sylvester(p: &UPoly, q: &UPoly) -> Mat {
    let (m, n) = (p.deg().unwrap_or(0), q.deg().unwrap_or(0));
    let f = p.field();
    let mut s = Mat::zeros(f, m + n, m + n);
    for i in 0..n {
        for k in 0..=m {
            s.data[i][i + k] = p.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s.data[n + i][i + k] = q.coeff(n - k);
        }
    }
    s
}

/// Resultant as the Sylvester determinant; zero iff a common root exists.
pub fn resultant(p: &UPoly, q: &UPoly) -> Result<FieldElem> {
    check_same_field(p.field(), q.field())?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidInput("resultant of two zero polynomials".into()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(p.field().zero());
    }
    Ok(sylvester(p, q).det())
}

/// Monic gcd, with `gcd(0, 0) = 0`.
pub fn gcd_poly(p: &UPoly, q: &UPoly) -> Result<UPoly> {
    check_same_field(p.field(), q.field())?;
    Ok(p.gcd(q))
}

pub(crate) fn check_same_field(a: Field, b: Field) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(a.to_string(), b.to_string()));
    }
    Ok(())
}

pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, c: &FieldElem, mono: &str, first: bool) -> fmt::Result {
    let s = c.to_string();
    let (neg, mag) = match s.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, s),
    };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    match (mono.is_empty(), mag.as_str()) {
        (true, _) => write!(f, "{mag}"),
        (false, "1") => write!(f, "{mono}"),
        (false, _) => write!(f, "{mag}*{mono}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UPoly {
        UPoly::from_ints(Field::Q, c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&q(&[-1, 1]), &q(&[1, 1])).unwrap(), Field::Q.int(2));
        assert!(resultant(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap().is_zero());
        assert!(resultant(&UPoly::zero(Field::Q), &UPoly::zero(Field::Q)).is_err());
    }

    #[test]
    fn resultant_rejects_mixed_fields() {
        let a = UPoly::from_ints(Field::Fp(7), &[1, 1]);
        assert!(matches!(resultant(&a, &q(&[1, 1])), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn resultant_constant_power() {
        // Res(3, x^2 + 1) = 3^2
        assert_eq!(resultant(&q(&[3]), &q(&[1, 0, 1])).unwrap(), Field::Q.int(9));
    }
}
