use rand::Rng;

use super::HECurve;
use crate::double_cover::{crt, validate, BundlePair};
use crate::error::{Error, Result};
use crate::exactmath::{FieldElem, HPoly, UPoly};

fn linear_form(r: &(FieldElem, FieldElem)) -> HPoly {
    let f = r.0.field();
    HPoly::from_terms(f, 2, 1, [([1, 0, 0], r.1.clone()), ([0, 1, 0], -&r.0)])
}

/// All nontrivial 2-torsion pairs `P = 0`, `F = q f`, for `F` split over the field.
///
/// A subset `S` of the `2g + 2` roots of even size gives `q = ∏_S`; `S` and its
/// complement give the same class, so each class is listed once, with `|S| <= g + 1`.
pub fn enumerate_two_torsion(curve: &HECurve) -> Result<Vec<BundlePair>> {
    let big_f = curve.branch();
    let roots = big_f.roots_binary();
    let nroots = roots.len();
    if nroots != big_f.degree() as usize {
        return Err(Error::InvalidInput(format!("F does not split over {}", big_f.field())));
    }
    let field = big_f.field();
    let l = curve.ring().l();
    let lins: Vec<HPoly> = roots.iter().map(linear_form).collect();
    let mut out = vec![];
    for mask in 1u64..(1 << nroots) {
        let size = mask.count_ones() as i64;
        if size % 2 == 1 || size > l || (size == l && mask & 1 == 0) {
            continue;
        }
        let q = (0..nroots)
            .filter(|i| mask >> i & 1 == 1)
            .fold(HPoly::one(field, 2), |acc, i| &acc * &lins[i]);
        let f = big_f.div_exact_binary(&q).expect("q divides F");
        let a = size / 2;
        out.push(BundlePair::new(l, a, l - a, HPoly::zero(field, 2, l as u32), f, q).normalized());
    }
    Ok(out)
}

/// A random locally free degree-0 pair in the generic stratum `a = floor((g + 1) / 2)`.
///
/// `q` is a product of distinct linear factors `x - r` with `F(r)` a nonzero square,
/// and `P` interpolates a square root of `F` at each `r`.
pub fn random_degree0_pair<R: Rng + ?Sized>(curve: &HECurve, rng: &mut R) -> Result<BundlePair> {
    let big_f = curve.branch();
    let field = big_f.field();
    let g = curve.genus() as i64;
    let l = g + 1;
    let a = (g + 1) / 2;
    let b = l - a;
    let faff = big_f.dehomogenize();
    let mut roots: Vec<(FieldElem, FieldElem)> = vec![];
    let mut tries = 0;
    while roots.len() < 2 * a as usize {
        tries += 1;
        if tries > 100_000 {
            return Err(Error::InvalidInput("could not find enough points with square F-value".into()));
        }
        let r = field.random(rng, 50);
        if roots.iter().any(|(x, _)| *x == r) {
            continue;
        }
        let val = faff.eval(&r);
        if val.is_zero() {
            continue;
        }
        if let Some(s) = val.sqrt() {
            let s = if rng.gen_bool(0.5) { s } else { -s };
            roots.push((r, s));
        }
    }
    let (mut qa, mut pa) = (UPoly::one(field), UPoly::zero(field));
    for (r, s) in &roots {
        let lin = UPoly::linear_root(r);
        pa = crt(&pa, &qa, &UPoly::constant(s.clone()), &lin);
        qa = &qa * &lin;
    }
    let extra = (l - 2 * a) as usize;
    let h = UPoly::from_coeffs(field, (0..=extra).map(|_| field.random(rng, 50)).collect());
    let pa = &pa + &(&qa * &h);
    let p = HPoly::homogenize(&pa, l as u32);
    let q = HPoly::homogenize(&qa, 2 * a as u32);
    let f = (big_f - &(&p * &p)).div_exact_binary(&q).ok_or_else(|| Error::Invariant("q does not divide F - P^2".into()))?;
    let pair = BundlePair::new(l, a, b, p, f, q).normalized();
    if !validate(&pair, curve.ring()) {
        return Err(Error::Invariant(format!("random pair {pair} failed validation")));
    }
    Ok(pair)
}
