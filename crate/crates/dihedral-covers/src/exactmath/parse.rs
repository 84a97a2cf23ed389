//! Text grammar for polynomials: `3*x0^2*x1 - 1/2*x1^3`.
//!
//! Terms are joined by `+`/`-`; a term is a product of rational numbers and
//! variable powers. Variables: `x0 x1 x2 x u v w z`. Whitespace is ignored.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use super::hpoly::HPoly;
use super::upoly::UPoly;
use crate::error::{Error, Result};

pub const VARIABLES: [&str; 8] = ["x0", "x1", "x2", "x", "u", "v", "w", "z"];

/// A parsed polynomial before it is assigned a field and shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPoly {
    pub terms: BTreeMap<[u32; 8], BigRational>,
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<u32> {
        let n = self.number()?;
        n.try_into().or_else(|_| self.err("exponent too large"))
    }

    fn factor(&mut self, coeff: &mut BigRational, exps: &mut [u32; 8]) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut r = BigRational::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    r /= BigRational::from_integer(d);
                }
                *coeff *= r;
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let Some(idx) = VARIABLES.iter().position(|v| *v == name) else {
                    self.pos = start;
                    return self.err(format!("unknown variable `{name}`"));
                };
                let mut e = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.exponent()?;
                }
                exps[idx] += e;
                Ok(())
            }
            Some(_) => self.err("expected a number or a variable"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(s: &str) -> Result<ParsedPoly> {
    let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
    let mut terms: BTreeMap<[u32; 8], BigRational> = BTreeMap::new();
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        match lx.peek() {
            None if first => return lx.err("empty polynomial"),
            None => break,
            Some(b'+') => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(_) => return lx.err("expected `+` or `-`"),
        }
        first = false;
        let mut coeff = sign;
        let mut exps = [0u32; 8];
        lx.factor(&mut coeff, &mut exps)?;
        while lx.peek() == Some(b'*') {
            lx.pos += 1;
            lx.factor(&mut coeff, &mut exps)?;
        }
        let e = terms.entry(exps).or_insert_with(BigRational::zero);
        *e += coeff;
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(ParsedPoly { terms })
}

/// Parses a homogeneous form in `x0, x1` (and `x2` when `nvars == 3`).
pub fn parse_hpoly(s: &str, field: Field, nvars: usize, degree: Option<u32>) -> Result<HPoly> {
    let p = parse(s)?;
    let mut deg = None;
    let mut out = vec![];
    for (e, c) in &p.terms {
        if e[3..].iter().any(|&k| k > 0) || (nvars == 2 && e[2] > 0) {
            let allowed = if nvars == 2 { "x0, x1" } else { "x0, x1, x2" };
            return Err(Error::Parse { pos: 0, msg: format!("only {allowed} allowed in `{s}`") });
        }
        let d = e[0] + e[1] + e[2];
        if *deg.get_or_insert(d) != d {
            return Err(Error::Parse { pos: 0, msg: format!("`{s}` is not homogeneous") });
        }
        out.push(([e[0], e[1], e[2]], field.rational(c)?));
    }
    let d = match (deg, degree) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Parse { pos: 0, msg: format!("`{s}` has degree {a}, expected {b}") })
        }
        (Some(a), _) => a,
        (None, b) => b.unwrap_or(0),
    };
    Ok(HPoly::from_terms(field, nvars, d, out))
}

/// Parses a univariate polynomial in a single variable (`x` by convention).
pub fn parse_upoly(s: &str, field: Field) -> Result<UPoly> {
    let p = parse(s)?;
    let mut var = None;
    let mut coeffs = vec![];
    for (e, c) in &p.terms {
        let used: Vec<usize> = (0..8).filter(|&i| e[i] > 0).collect();
        if used.len() > 1 || (used.len() == 1 && *var.get_or_insert(used[0]) != used[0]) {
            return Err(Error::Parse { pos: 0, msg: format!("`{s}` is not univariate") });
        }
        let k = used.first().map_or(0, |&i| e[i]) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, field.zero());
        }
        coeffs[k] = field.rational(c)?;
    }
    let v = var.map_or('x', |i| if VARIABLES[i].len() == 1 { VARIABLES[i].chars().next().unwrap() } else { 'x' });
    Ok(UPoly::from_coeffs(field, coeffs).with_var(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_example() {
        let p = parse_hpoly("3*x0^2*x1 - 1/2*x1^3", Field::Q, 2, None).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.to_string(), "3*x0^2*x1 - 1/2*x1^3");
    }

    #[test]
    fn whitespace_and_signs() {
        let p = parse_upoly(" - x ^ 2 +  2 * x -1", Field::Q).unwrap();
        assert_eq!(p.to_string(), "-x^2 + 2*x - 1");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x0^2 + * x1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("x0 + y").is_err());
        assert!(parse_hpoly("x0^2 + x1", Field::Q, 2, None).is_err());
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn zero_keeps_requested_degree() {
        let p = parse_hpoly("x0 - x0", Field::Q, 2, Some(4)).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.degree(), 4);
    }
}
