//! Cohomology of twisted differentials on projective space.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};

/// `h^q(P^d, Ω^p(k))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CohomQuery {
    pub d: u32,
    pub p: u32,
    pub k: i64,
    pub q: u32,
}

impl CohomQuery {
    pub fn new(d: u32, p: u32, k: i64, q: u32) -> Result<CohomQuery> {
        if d == 0 || p > d || q > d {
            return Err(Error::InvalidInput(format!("need d >= 1, 0 <= p, q <= d; got d = {d}, p = {p}, q = {q}")));
        }
        Ok(CohomQuery { d, p, k, q })
    }

    /// `Θ(k) = Ω^{d-1}(d + 1 + k)`.
    pub fn tangent(d: u32, k: i64, q: u32) -> Result<CohomQuery> {
        CohomQuery::new(d, d - 1, k + d as i64 + 1, q)
    }

    /// `O(k) = Ω^0(k)`.
    pub fn line_bundle(d: u32, k: i64, q: u32) -> Result<CohomQuery> {
        CohomQuery::new(d, 0, k, q)
    }
}

/// `C(n, r)`, zero outside `0 <= r <= n`.
pub fn binomial(n: i64, r: i64) -> u64 {
    if r < 0 || n < 0 || r > n {
        return 0;
    }
    let r = r.min(n - r) as u128;
    let mut acc = 1u128;
    for i in 0..r {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

fn bott_raw(c: CohomQuery) -> u64 {
    let CohomQuery { d, p, k, q } = c;
    let (d, p, q) = (d as i64, p as i64, q as i64);
    if q == 0 && k > p {
        binomial(k + d - p, k) * binomial(k - 1, p)
    } else if q == d && k < p - d {
        binomial(-k + p, -k) * binomial(-k - 1, d - p)
    } else if q == p && k == 0 {
        1
    } else {
        0
    }
}

fn cache() -> &'static RwLock<HashMap<CohomQuery, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<CohomQuery, u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `h^q(P^d, Ω^p(k))` by Bott's formula, memoized.
pub fn bott(c: CohomQuery) -> u64 {
    if let Some(v) = cache().read().unwrap().get(&c) {
        return *v;
    }
    let v = bott_raw(c);
    cache().write().unwrap().insert(c, v);
    v
}

/// `h^0(P^d, O(k))`.
pub fn h0_line(d: u32, k: i64) -> u64 {
    binomial(k + d as i64, d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: u32, p: u32, k: i64, q: u32) -> u64 {
        bott(CohomQuery::new(d, p, k, q).unwrap())
    }

    #[test]
    fn plane_values() {
        assert_eq!(h(2, 1, 0, 1), 1);
        assert_eq!(bott(CohomQuery::tangent(2, 0, 0).unwrap()), 8);
        assert_eq!(h(2, 1, 2, 0), 3);
        assert_eq!(h(2, 2, 0, 2), 1);
        assert_eq!(h(2, 2, -3, 2), 10);
        assert_eq!(h(3, 0, 2, 0), 10);
    }

    #[test]
    fn line_bundles_match_monomial_count() {
        for d in 1..=4 {
            for k in -8..=8 {
                assert_eq!(h(d, 0, k, 0), h0_line(d, k));
            }
        }
    }
}
