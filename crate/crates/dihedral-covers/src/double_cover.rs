//! Divisorial sheaves on a double cover `z^2 = F` of `P^1`, encoded as matrix pairs.
//!
//! A pair is a splitting `O(-a) ⊕ O(-b)` of the pushforward together with the action
//! of `z`, the trace-free matrix `N = [[P, f], [q, -P]]` with `P^2 + q f = F`. In the
//! basis `e1, e2` we have `z e1 = P e1 + q e2` and `z e2 = f e1 - P e2`.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{solve_graded, Field, FieldElem, GradedMatrix, HPoly, UPoly};

/// `R = O ⊕ z O(-L)` with `z^2 = F` and `deg L = l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoverRing {
    l: i64,
    f: HPoly,
    normal: bool,
}

impl DoubleCoverRing {
    pub fn new(f: HPoly) -> Result<DoubleCoverRing> {
        if f.nvars() != 2 || f.degree() % 2 != 0 || f.degree() == 0 || f.is_zero() {
            return Err(Error::InvalidInput("branch form must be a nonzero binary form of positive even degree".into()));
        }
        let normal = f.is_squarefree_binary();
        Ok(DoubleCoverRing { l: f.degree() as i64 / 2, f, normal })
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn branch(&self) -> &HPoly {
        &self.f
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    /// True when `F` is squarefree, i.e. the cover is normal.
    pub fn is_normal(&self) -> bool {
        self.normal
    }

    fn require_normal(&self) -> Result<()> {
        if self.normal {
            Ok(())
        } else {
            Err(Error::NonNormal)
        }
    }

    /// The pair of `O_Z`: splitting `(0, l)`, `N = [[0, F], [1, 0]]`.
    pub fn trivial_pair(&self) -> BundlePair {
        let fl = self.field();
        BundlePair {
            a: 0,
            b: self.l,
            p: HPoly::zero(fl, 2, self.l as u32),
            f: self.f.clone(),
            q: HPoly::one(fl, 2),
        }
    }
}

/// Splitting `(a, b)` of `O(-a) ⊕ O(-b)` and the entries of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundlePair {
    pub a: i64,
    pub b: i64,
    pub p: HPoly,
    pub f: HPoly,
    pub q: HPoly,
}

impl fmt::Display for BundlePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}; P={}, f={}, q={})", self.a, self.b, self.p, self.f, self.q)
    }
}

fn label(p: HPoly, d: i64) -> HPoly {
    if p.is_zero() {
        p.with_degree(d.max(0) as u32)
    } else {
        p
    }
}

impl BundlePair {
    /// Assembles a pair; zero entries are relabelled to their expected degree.
    pub fn new(l: i64, a: i64, b: i64, p: HPoly, f: HPoly, q: HPoly) -> BundlePair {
        BundlePair { a, b, p: label(p, l), f: label(f, l - a + b), q: label(q, l + a - b) }
    }

    pub fn field(&self) -> Field {
        self.p.field()
    }

    /// First Chern class of the pushforward, `-a - b`.
    pub fn c1(&self) -> i64 {
        -self.a - self.b
    }

    /// `N` as a graded map `O(-a-l) ⊕ O(-b-l) -> O(-a) ⊕ O(-b)`.
    pub fn matrix(&self, l: i64) -> Result<GradedMatrix> {
        GradedMatrix::new(
            self.field(),
            vec![self.a, self.b],
            vec![self.a + l, self.b + l],
            vec![vec![self.p.clone(), self.f.clone()], vec![self.q.clone(), -&self.p]],
        )
    }

    fn scaled(&self, lambda: &FieldElem) -> BundlePair {
        let inv = lambda.inv().expect("nonzero scale");
        BundlePair { a: self.a, b: self.b, p: self.p.clone(), f: self.f.scale(&inv), q: self.q.scale(lambda) }
    }

    fn swapped(&self) -> BundlePair {
        BundlePair { a: self.b, b: self.a, p: -&self.p, f: self.q.clone(), q: self.f.clone() }
    }

    /// Canonical representative: `a <= b`, then `q` monic (or `f` monic when `q = 0`).
    pub fn normalized(&self) -> BundlePair {
        let mut p = if self.a > self.b { self.swapped() } else { self.clone() };
        if !p.q.is_zero() {
            p = p.scaled(&p.q.lc().inv().unwrap());
        } else if !p.f.is_zero() {
            p = p.scaled(&p.f.lc());
        }
        p
    }
}

/// Degrees match the splitting and `P^2 + q f = F`.
pub fn validate(pair: &BundlePair, ring: &DoubleCoverRing) -> bool {
    let l = ring.l;
    let ok_deg = |p: &HPoly, d: i64| p.nvars() == 2 && p.field() == ring.field() && if p.is_zero() { true } else { p.degree() as i64 == d };
    if !(ok_deg(&pair.p, l) && ok_deg(&pair.f, l - pair.a + pair.b) && ok_deg(&pair.q, l + pair.a - pair.b)) {
        return false;
    }
    let lhs = &(&pair.p * &pair.p) + &(&pair.q * &pair.f);
    (&lhs - ring.branch()).is_zero()
}

/// Whether the pair is locally free, with the non-free locus (radical of `gcd(P, f, q)`).
pub fn is_locally_free(pair: &BundlePair) -> (bool, HPoly) {
    let g = pair.p.gcd_binary(&pair.f).gcd_binary(&pair.q);
    if g.degree() == 0 && !g.is_zero() {
        (true, g)
    } else {
        (false, g.squarefree_part_binary())
    }
}

fn check_pair(pair: &BundlePair, ring: &DoubleCoverRing) -> Result<()> {
    if pair.field() != ring.field() {
        return Err(Error::FieldMismatch(pair.field().to_string(), ring.field().to_string()));
    }
    if !validate(pair, ring) {
        return Err(Error::InvalidInput(format!("pair {pair} does not satisfy P^2 + q f = F with matching degrees")));
    }
    Ok(())
}

/// `N ⊗ Id` and `Id ⊗ N` on the 4-dimensional tensor product, basis index `2 i + j`.
fn kron(n1: &GradedMatrix, n2: &GradedMatrix, l: i64) -> (GradedMatrix, GradedMatrix) {
    let f = n1.field();
    let c: Vec<i64> = (0..4).map(|k| n1.row_twists()[k / 2] + n2.row_twists()[k % 2]).collect();
    let cl: Vec<i64> = c.iter().map(|t| t + l).collect();
    let zero = |d: i64| HPoly::zero(f, 2, d.max(0) as u32);
    let left = GradedMatrix::from_fn(f, c.clone(), cl.clone(), |r, s, d| {
        if r % 2 == s % 2 {
            n1.entry(r / 2, s / 2).clone()
        } else {
            zero(d)
        }
    });
    let right = GradedMatrix::from_fn(f, c, cl, |r, s, d| if r / 2 == s / 2 { n2.entry(r % 2, s % 2).clone() } else { zero(d) });
    (left, right)
}

/// The pair of the reflexive hull of `L1 ⊗ L2`.
///
/// The hull is the dual of `ker(ψ^T)` with `ψ = N1 ⊗ Id - Id ⊗ N2`; the action of `z`
/// on it is the transpose of the action of `(N1 ⊗ Id)^T` on the kernel.
pub fn tensor(p1: &BundlePair, p2: &BundlePair, ring: &DoubleCoverRing) -> Result<BundlePair> {
    ring.require_normal()?;
    check_pair(p1, ring)?;
    check_pair(p2, ring)?;
    let l = ring.l;
    let f = ring.field();
    let (left, right) = kron(&p1.matrix(l)?, &p2.matrix(l)?, l);
    let psi = left.sub(&right)?;
    let k = psi.transpose().kernel_basis()?;
    if k.cols() != 2 {
        return Err(Error::Invariant(format!("tensor: kernel of psi^T has rank {}, expected 2", k.cols())));
    }
    let t = k.col_twists().to_vec();
    let target = left.transpose().mul(&k)?.shifted(l);
    let (sol, _) = solve_graded(f, &t, &[t[0] + l, t[1] + l], |x| k.mul(x).expect("twists agree"), Some(&target));
    let act = sol.ok_or_else(|| Error::Invariant("tensor: kernel is not stable under z".into()))?;
    let (pp, ff, qq, mm) = (act.entry(0, 0), act.entry(1, 0), act.entry(0, 1), act.entry(1, 1));
    if !(pp + mm).is_zero() {
        return Err(Error::Invariant("tensor: z-action is not trace free".into()));
    }
    let out = BundlePair::new(l, -t[0], -t[1], pp.clone(), ff.clone(), qq.clone()).normalized();
    check_pair(&out, ring).map_err(|_| Error::Invariant(format!("tensor produced an invalid pair {out}")))?;
    if out.c1() != p1.c1() + p2.c1() + l {
        return Err(Error::Invariant("tensor: first Chern class bookkeeping failed".into()));
    }
    Ok(out)
}

/// The pair `(N^*(-L), N^T)` of the inverse sheaf.
pub fn inverse(pair: &BundlePair, ring: &DoubleCoverRing) -> Result<BundlePair> {
    ring.require_normal()?;
    check_pair(pair, ring)?;
    let l = ring.l;
    Ok(BundlePair::new(l, l - pair.a, l - pair.b, pair.p.clone(), pair.q.clone(), pair.f.clone()).normalized())
}

fn det_constant(psi: &GradedMatrix) -> FieldElem {
    let d = &(psi.entry(0, 0) * psi.entry(1, 1)) - &(psi.entry(0, 1) * psi.entry(1, 0));
    d.coeff(&[0, 0, 0])
}

/// Whether some `Ψ` with constant nonzero determinant satisfies `Ψ N1 = N2 Ψ`.
pub fn is_isomorphic(p1: &BundlePair, p2: &BundlePair, ring: &DoubleCoverRing) -> Result<bool> {
    check_pair(p1, ring)?;
    check_pair(p2, ring)?;
    if p1.c1() != p2.c1() {
        return Ok(false);
    }
    let l = ring.l;
    let f = ring.field();
    let (n1, n2) = (p1.matrix(l)?, p2.matrix(l)?);
    let rows = [p2.a, p2.b];
    let cols = [p1.a, p1.b];
    let (_, basis) = solve_graded(f, &rows, &cols, |x| x.mul(&n1).unwrap().sub(&n2.mul(&x.shifted(l)).unwrap()).unwrap(), None);
    if basis.is_empty() {
        return Ok(false);
    }
    let dets: Vec<FieldElem> = basis.iter().map(det_constant).collect();
    if dets.iter().any(|d| !d.is_zero()) {
        return Ok(true);
    }
    let combo = |c: &[FieldElem]| GradedMatrix::linear_combination(f, &basis, c, &rows, &cols);
    if basis.len() == 2 {
        return Ok(!det_constant(&combo(&[f.one(), f.one()])).is_zero());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..20 {
        let c: Vec<FieldElem> = basis.iter().map(|_| f.random(&mut rng, 1000)).collect();
        if !det_constant(&combo(&c)).is_zero() {
            return Ok(true);
        }
    }
    // det is a quadratic form on the solution space; it is nonzero iff some polar value is.
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let mut c = vec![f.zero(); basis.len()];
            c[i] = f.one();
            c[j] = f.one();
            if !det_constant(&combo(&c)).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Zero divisor of a section of `L ⊗ q^*O(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorOfSection {
    /// `det(s | N s) = q s1^2 - 2 P s1 s2 - f s2^2`, the image divisor with multiplicity.
    pub u_form: HPoly,
    /// Monic affine part (`x1 = 1`) of the non-embedded divisor.
    pub u: UPoly,
    /// `z ≡ v(x)` on the divisor, `deg v < deg u`.
    pub v: UPoly,
    /// Multiplicity over `x1 = 0`.
    pub at_infinity: u32,
    /// Common factor of `s1, s2`: the section vanishes on the whole fibre there.
    pub embedded: Option<HPoly>,
}

/// Divisor of the section `s = s1 e1 + s2 e2` of `L ⊗ q^*O(k)`.
///
/// A point `(x, z0)` lies on it iff `(N + z0) s = 0` there.
pub fn divisor_of_section(pair: &BundlePair, ring: &DoubleCoverRing, k: i64, s1: &HPoly, s2: &HPoly) -> Result<DivisorOfSection> {
    check_pair(pair, ring)?;
    let f = ring.field();
    let s1 = label(s1.clone(), k - pair.a);
    let s2 = label(s2.clone(), k - pair.b);
    if s1.is_zero() && s2.is_zero() {
        return Err(Error::InvalidInput("section is zero".into()));
    }
    for (s, d) in [(&s1, k - pair.a), (&s2, k - pair.b)] {
        if !s.is_zero() && s.degree() as i64 != d {
            return Err(Error::InvalidInput(format!("section entry {s} should have degree {d}")));
        }
    }
    let two = f.int(2);
    let u_form = {
        let a = &(&pair.q * &s1) * &s1;
        let b = (&(&pair.p * &s1) * &s2).scale(&two);
        let c = &(&pair.f * &s2) * &s2;
        &(&a - &b) - &c
    };
    if u_form.is_zero() {
        return Err(Error::Invariant("det(s | N s) vanishes identically".into()));
    }
    let common = s1.gcd_binary(&s2);
    let embedded = (common.degree() > 0).then(|| common.clone());
    let (t1, t2) = if embedded.is_some() {
        (divide_or_zero(&s1, &common), divide_or_zero(&s2, &common))
    } else {
        (s1.clone(), s2.clone())
    };
    let rest = if embedded.is_some() {
        let a = &(&pair.q * &t1) * &t1;
        let b = (&(&pair.p * &t1) * &t2).scale(&two);
        let c = &(&pair.f * &t2) * &t2;
        &(&a - &b) - &c
    } else {
        u_form.clone()
    };
    let at_infinity = u_form.x1_valuation();
    let u = rest.dehomogenize().monic();
    let (a1, a2) = (t1.dehomogenize(), t2.dehomogenize());
    let (pp, ff, qq) = (pair.p.dehomogenize(), pair.f.dehomogenize(), pair.q.dehomogenize());
    // split u into the part prime to s1 and the rest (which is prime to s2)
    let mut ua = u.clone();
    loop {
        let g = ua.gcd(&a1);
        if g.is_constant() {
            break;
        }
        ua = ua.exact_div(&g).unwrap();
    }
    let ub = u.exact_div(&ua).unwrap();
    let va = if ua.is_constant() {
        UPoly::zero(f)
    } else {
        let num = -&(&(&pp * &a1) + &(&ff * &a2));
        num.mul_mod(&a1.inv_mod(&ua).unwrap(), &ua)
    };
    let vb = if ub.is_constant() {
        UPoly::zero(f)
    } else {
        let inv = a2.inv_mod(&ub).ok_or_else(|| Error::Invariant("section entries share a factor with u".into()))?;
        let num = &(&pp * &a2) - &(&qq * &a1);
        num.mul_mod(&inv, &ub)
    };
    let v = crt(&va, &ua, &vb, &ub);
    Ok(DivisorOfSection { u_form, u, v, at_infinity, embedded })
}

fn divide_or_zero(s: &HPoly, g: &HPoly) -> HPoly {
    if s.is_zero() {
        HPoly::zero(s.field(), 2, s.degree().saturating_sub(g.degree()))
    } else {
        s.div_exact_binary(g).expect("gcd divides")
    }
}

/// The `v` with `v ≡ va mod ua`, `v ≡ vb mod ub`, for coprime moduli.
pub(crate) fn crt(va: &UPoly, ua: &UPoly, vb: &UPoly, ub: &UPoly) -> UPoly {
    if ub.is_constant() {
        return va.rem(ua);
    }
    if ua.is_constant() {
        return vb.rem(ub);
    }
    let m = ua.inv_mod(ub).expect("coprime moduli");
    let t = (vb - va).mul_mod(&m, ub);
    (va + &(ua * &t)).rem(&(ua * ub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse::parse_hpoly;

    fn hp(s: &str, f: Field) -> HPoly {
        parse_hpoly(s, f, 2, None).unwrap()
    }

    fn elliptic() -> DoubleCoverRing {
        DoubleCoverRing::new(hp("x0^4 - x1^4", Field::Q)).unwrap()
    }

    fn two_torsion(ring: &DoubleCoverRing) -> BundlePair {
        // F = (x0^2 - x1^2)(x0^2 + x1^2)
        let f = ring.field();
        BundlePair::new(2, 1, 1, HPoly::zero(f, 2, 2), hp("x0^2 + x1^2", f), hp("x0^2 - x1^2", f))
    }

    #[test]
    fn trivial_pair_is_valid_and_free() {
        let r = elliptic();
        let t = r.trivial_pair();
        assert!(validate(&t, &r));
        assert!(is_locally_free(&t).0);
        assert_eq!((t.a, t.b), (0, 2));
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let r = elliptic();
        let mut t = two_torsion(&r);
        assert!(validate(&t, &r));
        t.f = hp("x0^2 + 2*x1^2", Field::Q);
        assert!(!validate(&t, &r));
        let wrong = BundlePair::new(2, 1, 1, HPoly::zero(Field::Q, 2, 2), hp("x0^4 - x1^4", Field::Q), HPoly::one(Field::Q, 2));
        assert!(!validate(&wrong, &r));
    }

    #[test]
    fn non_free_locus() {
        let f = Field::Q;
        let p = BundlePair::new(1, 0, 0, hp("x0", f), hp("x0", f), hp("x0", f));
        let (free, locus) = is_locally_free(&p);
        assert!(!free);
        assert_eq!(locus, hp("x0", f));
    }

    #[test]
    fn divisor_examples() {
        let r = elliptic();
        let f = r.field();
        let t = r.trivial_pair();
        let d = divisor_of_section(&t, &r, 0, &HPoly::one(f, 2), &HPoly::zero(f, 2, 0)).unwrap();
        assert!(d.u.is_constant());
        let d = divisor_of_section(&t, &r, 2, &HPoly::zero(f, 2, 2), &HPoly::one(f, 2)).unwrap();
        assert_eq!(d.u_form, -r.branch());
        assert!(d.v.is_zero());
        let tt = two_torsion(&r);
        let d = divisor_of_section(&tt, &r, 1, &HPoly::one(f, 2), &HPoly::zero(f, 2, 0)).unwrap();
        assert_eq!(d.u_form, hp("x0^2 - x1^2", f));
        assert!(d.v.is_zero());
    }

    #[test]
    fn group_law_on_two_torsion() {
        let r = elliptic();
        let t = r.trivial_pair();
        let tt = two_torsion(&r);
        assert!(is_isomorphic(&t, &t, &r).unwrap());
        assert!(!is_isomorphic(&t, &tt, &r).unwrap());
        let sq = tensor(&tt, &tt, &r).unwrap();
        assert!(is_isomorphic(&sq, &t, &r).unwrap());
        assert!(is_isomorphic(&tensor(&t, &t, &r).unwrap(), &t, &r).unwrap());
        assert!(is_isomorphic(&inverse(&tt, &r).unwrap(), &tt, &r).unwrap());
        assert!(is_isomorphic(&inverse(&t, &r).unwrap(), &t, &r).unwrap());
    }

    #[test]
    fn rescaled_pair_is_isomorphic() {
        let r = elliptic();
        let tt = two_torsion(&r);
        let lam = Field::Q.int(3);
        let other = BundlePair::new(2, 1, 1, tt.p.clone(), tt.f.scale(&lam.inv().unwrap()), tt.q.scale(&lam));
        assert!(validate(&other, &r));
        assert!(is_isomorphic(&tt, &other, &r).unwrap());
    }

    #[test]
    fn non_normal_ring_refuses_group_law() {
        let r = DoubleCoverRing::new(hp("x0^2*x1^2", Field::Q)).unwrap();
        let t = r.trivial_pair();
        assert!(validate(&t, &r));
        assert_eq!(tensor(&t, &t, &r), Err(Error::NonNormal));
    }
}
