//! Elimination for plane curves: resultants in `x2` over `k[x]`, `x = x0 / x1`,
//! gcds over `k[x] / (m)` with splitting at zero divisors, and bivariate gcds.

use rand::Rng;

use crate::exactmath::{det_upoly, sylvester, Field, FieldElem, HPoly, Mat, UPoly};

/// A polynomial in `x2` with coefficients in `k[x]`, constant term first.
pub(crate) type BiPoly = Vec<UPoly>;

pub(crate) fn to_bi(p: &HPoly) -> BiPoly {
    trim(p.as_poly_in_x2())
}

fn trim(mut p: BiPoly) -> BiPoly {
    while p.last().is_some_and(UPoly::is_zero) {
        p.pop();
    }
    p
}

fn deg2(p: &BiPoly) -> i64 {
    p.len() as i64 - 1
}

/// `Res_{x2}(p, q)` for `p, q` whose leading `x2`-coefficients are nonzero constants.
///
/// The resultant has degree at most `deg p · deg q` in `x`, so it is interpolated from
/// scalar Sylvester determinants; small prime fields fall back to a symbolic determinant.
pub(crate) fn res_x2(p: &BiPoly, q: &BiPoly, field: Field) -> UPoly {
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m + n == 0 {
        return UPoly::one(field);
    }
    interpolate_det(p, q, |pe, qe| sylvester(pe, qe).det()).unwrap_or_else(|| res_x2_symbolic(p, q, p[0].field()))
}

/// Interpolates `x ↦ det(p(x, ·), q(x, ·))` for a Sylvester-type minor `det`, whose
/// `x`-degree is at most `(deg p + deg q)` times the largest coefficient degree.
/// `None` when the field has too few points.
fn interpolate_det(p: &BiPoly, q: &BiPoly, det: impl Fn(&UPoly, &UPoly) -> FieldElem) -> Option<UPoly> {
    let field = p[0].field();
    let (m, n) = (p.len() - 1, q.len() - 1);
    let bound = p.iter().chain(q).map(|c| c.deg_i().max(0) as usize).max().unwrap_or(0) * (m + n);
    let xs: Vec<FieldElem> = (0..=bound as u64).map(|i| field.point(i)).collect::<Option<_>>()?;
    let ys: Vec<FieldElem> = xs
        .iter()
        .map(|x| {
            let (pe, qe) = (eval_bi_at_x(p, x), eval_bi_at_x(q, x));
            debug_assert_eq!((pe.deg(), qe.deg()), (Some(m), Some(n)));
            det(&pe, &qe)
        })
        .collect();
    Some(interpolate(&xs, &ys))
}

/// The first subresultant `S_1 = s1 x2 + s0` of `p, q` in `x2`, as `(s1, s0)`.
///
/// Above a root of `Res_{x2}` where `s1` does not vanish, `p` and `q` share exactly one
/// root, `x2 = -s0 / s1`. Both leading coefficients must be nonzero constants.
pub(crate) fn subres1_x2(p: &BiPoly, q: &BiPoly) -> Option<(UPoly, UPoly)> {
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m < 1 || n < 1 || m + n < 3 {
        return None;
    }
    let coeff = |k: usize| move |pe: &UPoly, qe: &UPoly| subres1_coeff(pe, qe, k);
    Some((interpolate_det(p, q, coeff(1))?, interpolate_det(p, q, coeff(0))?))
}

/// Coefficient of `y^k` (`k` = 0 or 1) in the first subresultant of univariate `p, q`.
fn subres1_coeff(p: &UPoly, q: &UPoly, k: usize) -> FieldElem {
    let (m, n) = (p.deg().unwrap(), q.deg().unwrap());
    let width = m + n - 1;
    // columns are the powers y^{width-1}, ..., y^0; keep the first width - 2 and y^k
    let mut rows = vec![];
    for (poly, deg, shifts) in [(p, m, n - 1), (q, n, m - 1)] {
        for s in (0..shifts).rev() {
            let mut row = vec![p.field().zero(); width];
            for e in 0..=deg {
                row[width - 1 - (e + s)] = poly.coeff(e);
            }
            rows.push(row);
        }
    }
    let cols: Vec<usize> = (0..width - 2).chain([width - 1 - k]).collect();
    let sub: Vec<Vec<FieldElem>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
    Mat::from_rows(p.field(), sub).det()
}

/// `h(x, phi(x)) mod m`.
pub(crate) fn eval_bi_mod(h: &BiPoly, phi: &UPoly, m: &UPoly) -> UPoly {
    h.iter().rev().fold(UPoly::zero(m.field()), |acc, c| (&acc.mul_mod(phi, m) + c).rem(m))
}

fn res_x2_symbolic(p: &BiPoly, q: &BiPoly, field: Field) -> UPoly {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let mut s = vec![vec![UPoly::zero(field); m + n]; m + n];
    for i in 0..n {
        for k in 0..=m {
            s[i][i + k] = p[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s[n + i][i + k] = q[n - k].clone();
        }
    }
    det_upoly(&s, field)
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[FieldElem], ys: &[FieldElem]) -> UPoly {
    let field = xs[0].field();
    let mut dd = ys.to_vec();
    for j in 1..xs.len() {
        for i in (j..xs.len()).rev() {
            dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UPoly::zero(field);
    for i in (0..xs.len()).rev() {
        acc = &(&acc * &UPoly::linear_root(&xs[i])) + &UPoly::constant(dd[i].clone());
    }
    acc
}

/// A random invertible integer matrix with entries in `[-10, 10]`.
pub(crate) fn random_change<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Vec<Vec<FieldElem>> {
    loop {
        let m: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-10..=10)).collect()).collect();
        let mat = Mat::from_ints(field, &m);
        if !mat.det().is_zero() {
            return mat.data;
        }
    }
}

pub(crate) fn apply(m: &[Vec<FieldElem>], v: &[FieldElem]) -> Vec<FieldElem> {
    m.iter().map(|row| row.iter().zip(v).fold(v[0].field().zero(), |acc, (a, b)| &acc + &(a * b))).collect()
}

/// Whether `(0 : 0 : 1)` lies off the curve, so the leading `x2`-coefficient is a nonzero constant.
pub(crate) fn monic_in_x2(p: &HPoly) -> bool {
    let f = p.field();
    !p.eval(&[f.zero(), f.zero(), f.one()]).is_zero()
}

pub(crate) fn gradient(p: &HPoly) -> Vec<HPoly> {
    (0..3).map(|i| p.partial(i)).collect()
}

/// Rank of the Jacobian of `(p, q)` at a point.
pub(crate) fn jacobian_rank(p: &HPoly, q: &HPoly, pt: &[FieldElem]) -> usize {
    let field = p.field();
    let rows: Vec<Vec<FieldElem>> = [p, q].iter().map(|h| gradient(h).iter().map(|d| if d.is_zero() { field.zero() } else { d.eval(pt) }).collect()).collect();
    Mat::from_rows(field, rows).rank()
}

fn eval_bi_at_x(p: &BiPoly, x: &FieldElem) -> UPoly {
    UPoly::from_coeffs(x.field(), p.iter().map(|c| c.eval(x)).collect())
}

/// Common points `(x : 1 : t)` of `p` and `q` above a rational `x`.
pub(crate) fn points_above(p: &BiPoly, q: &BiPoly, x: &FieldElem) -> Vec<Vec<FieldElem>> {
    let g = eval_bi_at_x(p, x).gcd(&eval_bi_at_x(q, x));
    let f = x.field();
    g.roots().into_iter().map(|t| vec![x.clone(), f.one(), t]).collect()
}

// ---- polynomials in x2 over A = k[x] / (m), m squarefree ----

fn reduce(p: &BiPoly, m: &UPoly) -> BiPoly {
    trim(p.iter().map(|c| c.rem(m)).collect())
}

/// Splits `m` so that on each factor the leading coefficient of `p` is a unit (or `p` vanishes).
fn normalize(m: &UPoly, p: &BiPoly) -> Vec<(UPoly, BiPoly)> {
    if m.deg_i() <= 0 {
        return vec![];
    }
    let p = reduce(p, m);
    let Some(lc) = p.last() else { return vec![(m.clone(), p)] };
    let g = lc.gcd(m);
    if g.deg_i() == 0 {
        return vec![(m.clone(), p)];
    }
    let other = m.exact_div(&g).expect("gcd divides m");
    let mut out = normalize(&g, &p[..p.len() - 1].to_vec());
    if other.deg_i() > 0 {
        out.push((other.monic(), reduce(&p, &other)));
    }
    out
}

fn monic_over(p: &BiPoly, m: &UPoly) -> BiPoly {
    let inv = p.last().unwrap().inv_mod(m).expect("unit leading coefficient");
    p.iter().map(|c| c.mul_mod(&inv, m)).collect()
}

/// Remainder of `p` by `q`, where `q` has a unit leading coefficient mod `m`.
fn rem_over(p: &BiPoly, q: &BiPoly, m: &UPoly) -> BiPoly {
    let q = monic_over(q, m);
    let dq = q.len() - 1;
    let mut r = reduce(p, m);
    while r.len() > dq {
        let k = r.len() - 1 - dq;
        let c = r.last().unwrap().clone();
        for (i, qc) in q.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c.mul_mod(qc, m)).rem(m);
        }
        r = trim(r);
    }
    r
}

/// `gcd(p, q)` over `k[x] / (m)`, returned as monic gcds on a factorization of `m`.
/// An empty gcd means both polynomials vanish identically on that factor.
fn gcd_over(m: &UPoly, p: &BiPoly, q: &BiPoly) -> Vec<(UPoly, BiPoly)> {
    let mut out = vec![];
    for (m1, p1) in normalize(m, p) {
        for (m2, q1) in normalize(&m1, q) {
            let p1 = reduce(&p1, &m2);
            if q1.is_empty() {
                let g = if p1.is_empty() { p1 } else { monic_over(&p1, &m2) };
                out.push((m2, g));
            } else if p1.is_empty() {
                out.push((m2.clone(), monic_over(&q1, &m2)));
            } else {
                let (big, small) = if p1.len() >= q1.len() { (p1, q1) } else { (q1, p1) };
                let r = rem_over(&big, &small, &m2);
                out.extend(gcd_over(&m2, &small, &r));
            }
        }
    }
    out
}

pub(crate) fn gcd_over_all(m: &UPoly, polys: &[BiPoly]) -> Vec<(UPoly, BiPoly)> {
    let mut branches = vec![(m.monic(), polys[0].clone())];
    for p in &polys[1..] {
        branches = branches.into_iter().flat_map(|(mi, g)| gcd_over(&mi, &g, p)).collect();
    }
    branches
}

/// Whether `h^k ≡ 0 mod g` over `k[x] / (m)` with `k = deg g`.
pub(crate) fn vanishes_on_roots(h: &BiPoly, g: &BiPoly, m: &UPoly) -> bool {
    let field = m.field();
    let mut acc: BiPoly = vec![UPoly::one(field)];
    for _ in 0..deg2(g).max(1) {
        let mut prod = vec![UPoly::zero(field); acc.len() + h.len()];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in h.iter().enumerate() {
                prod[i + j] = (&prod[i + j] + &a.mul_mod(b, m)).rem(m);
            }
        }
        acc = rem_over(&trim(prod), g, m);
    }
    acc.is_empty()
}

// ---- bivariate gcd over k[x][x2] ----

fn content(p: &BiPoly) -> UPoly {
    p.iter().fold(UPoly::zero(p[0].field()), |acc, c| acc.gcd(c))
}

fn primitive(p: &BiPoly) -> BiPoly {
    let c = content(p);
    p.iter().map(|x| x.exact_div(&c).expect("content divides")).collect()
}

/// Pseudo-division: `lc(b)^k a = q b + r`.
fn pdiv(a: &BiPoly, b: &BiPoly) -> (BiPoly, BiPoly) {
    let field = b[0].field();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut q: BiPoly = vec![UPoly::zero(field); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in q.iter_mut() {
            *c = &*c * &lb;
        }
        q[k] = &q[k] + &lr;
        let mut next: BiPoly = r.iter().map(|c| c * &lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[k + i] = &next[k + i] - &(&lr * bc);
        }
        r = trim(next);
    }
    (trim(q), r)
}

fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let (_, r) = pdiv(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(&r) };
    }
    x.iter().map(|k| k * &c).collect()
}

fn d_x2(p: &BiPoly) -> BiPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c.scale(&c.field().int(i as i64))).collect())
}

fn total_degree(p: &BiPoly) -> u32 {
    p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| j as u32 + c.deg().unwrap() as u32).max().unwrap_or(0)
}

fn homogenize3(p: &BiPoly, field: Field, extra_x1: u32) -> HPoly {
    let d = total_degree(p) + extra_x1;
    let mut terms = vec![];
    for (j, c) in p.iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            terms.push(([i as u32, d - i as u32 - j as u32, j as u32], a.clone()));
        }
    }
    HPoly::from_terms(field, 3, d, terms)
}

/// Certifies that `h` is squarefree: after a shear `x0 -> x0 + i x2, x1 -> x1 + j x2`
/// making `h` monic in `x2`, `Res_{x2}(h, d h / d x2)` is nonzero. `false` means unknown.
fn discriminant_nonzero(h: &HPoly) -> bool {
    let field = h.field();
    let shear = (0..4u64).flat_map(|i| (0..4u64).map(move |j| (i, j))).find_map(|(i, j)| {
        let (fi, fj) = (field.point(i)?, field.point(j)?);
        (!h.eval(&[fi.clone(), fj.clone(), field.one()]).is_zero()).then_some((fi, fj))
    });
    let Some((fi, fj)) = shear else { return false };
    let (o, z) = (field.one(), field.zero());
    let m = vec![vec![o.clone(), z.clone(), fi], vec![z.clone(), o.clone(), fj], vec![z, field.zero(), o]];
    let b = to_bi(&h.linear_substitute(&m));
    let db = d_x2(&b);
    if db.len() + 1 != b.len() || db.is_empty() {
        return false;
    }
    !res_x2(&b, &db, field).is_zero()
}

/// Product of the distinct irreducible factors of a ternary form, up to a scalar.
///
/// In characteristic `p` this assumes the form has degree below `p`.
pub(crate) fn squarefree_part_ternary(h: &HPoly) -> HPoly {
    let field = h.field();
    if h.is_zero() || h.degree() == 0 {
        return HPoly::one(field, 3);
    }
    if discriminant_nonzero(h) {
        return h.make_monic();
    }
    let k = h.terms().map(|(e, _)| e[1]).min().unwrap();
    let stripped = HPoly::from_terms(field, 3, h.degree() - k, h.terms().map(|(e, c)| ([e[0], e[1] - k, e[2]], c.clone())));
    let b = to_bi(&stripped);
    let c = content(&b).squarefree_part();
    let p = primitive(&b);
    let core = if p.len() <= 1 {
        vec![UPoly::one(field)]
    } else {
        let g = bi_gcd(&p, &d_x2(&p));
        let (q, r) = pdiv(&p, &g);
        debug_assert!(r.is_empty());
        primitive(&q)
    };
    let full: BiPoly = core.iter().map(|x| x * &c).collect();
    homogenize3(&full, field, u32::from(k > 0)).make_monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse::parse_hpoly;

    fn h(s: &str) -> HPoly {
        parse_hpoly(s, Field::Q, 3, None).unwrap()
    }

    #[test]
    fn subresultant_recovers_common_root() {
        // y^2 - x and y - x^2 + y^2 - x meet where y = x^2, y^2 = x
        let p = to_bi(&h("x2^2 - x0*x1"));
        let q = to_bi(&h("x2^2 + x2*x1 - x0^2 - x0*x1"));
        let r = res_x2(&p, &q, Field::Q);
        let (s1, s0) = subres1_x2(&p, &q).unwrap();
        for x in [Field::Q.int(0), Field::Q.int(1)] {
            assert!(r.eval(&x).is_zero());
            let t = &-&s0.eval(&x) / &s1.eval(&x);
            assert_eq!(points_above(&p, &q, &x), vec![vec![x.clone(), Field::Q.one(), t]]);
        }
    }

    #[test]
    fn discriminant_fast_path_agrees() {
        for s in ["x0^2 + x1^2 - x2^2", "x0*x1*x2 + x2^3", "x0^2*x1 - 2*x0*x1*x2 + x1*x2^2", "x0^4 - x1^2*x2^2"] {
            let f = h(s);
            let sq = squarefree_part_ternary(&f);
            assert_eq!(discriminant_nonzero(&f), sq.degree() == f.degree(), "{s}");
        }
    }

    #[test]
    fn line_and_conic() {
        let r = res_x2(&to_bi(&h("x2 - x0")), &to_bi(&h("x2^2 - x0*x1")), Field::Q);
        // x^2 - x = x (x - 1)
        assert_eq!(r.deg(), Some(2));
        assert!(r.is_squarefree());
    }

    #[test]
    fn dynamic_gcd_splits() {
        let f = Field::Q;
        // over x in {0, 1}: x2 - x and x2^2 - x share x2 = x exactly when x^2 = x
        let m = UPoly::from_ints(f, &[0, -1, 1]);
        let p = to_bi(&h("x2 - x0"));
        let q = to_bi(&h("x2^2 - x0*x1"));
        let out = gcd_over(&m, &p, &q);
        assert!(out.iter().all(|(_, g)| g.len() == 2));
    }

    #[test]
    fn squarefree_ternary() {
        let p = &(&h("x0 - x2") * &h("x0 - x2")) * &h("x0*x1 + x2^2");
        let s = squarefree_part_ternary(&p);
        assert_eq!(s.degree(), 3);
        let q = &h("x1") * &h("x1*x2 + x0^2");
        assert_eq!(squarefree_part_ternary(&(&q * &h("x1"))).degree(), 3);
    }
}
