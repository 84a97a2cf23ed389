//! Hypothesis checks for simple and almost-simple covers of `P^2`.

use std::fmt;

use rand::Rng;

use super::elim::{apply, eval_bi_mod, gcd_over_all, subres1_x2, BiPoly, gradient, jacobian_rank, monic_in_x2, points_above, random_change, res_x2, squarefree_part_ternary, to_bi, vanishes_on_roots};
use super::{AlmostSimpleSpec, SimpleCoverSpec};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldElem, HPoly, UPoly};

const ATTEMPTS: usize = 5;
const RESULTANT_PAIRS: usize = 3;

/// Outcome of a hypothesis check. `Pass` always carries an exact certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass(String),
    Fail(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass(_))
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass(_) => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Verdict::Pass(s) | Verdict::Fail(s) | Verdict::Inconclusive(s) => s,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label(), self.detail())
    }
}

fn fmt_point(p: &[FieldElem]) -> String {
    format!("({} : {} : {})", p[0], p[1], p[2])
}

fn combo<R: Rng + ?Sized>(gens: &[HPoly], rng: &mut R) -> HPoly {
    let field = gens[0].field();
    gens.iter().fold(HPoly::zero(field, 3, gens[0].degree()), |acc, g| &acc + &g.scale(&field.int(rng.gen_range(-10..=10))))
}

/// Whether `{p = q = 0}` is finite and reduced, certified by a squarefree `Res_{x2}`
/// of full degree `deg p · deg q` after a random change of coordinates.
pub fn transverse<R: Rng + ?Sized>(p: &HPoly, q: &HPoly, rng: &mut R) -> Verdict {
    if p.is_zero() || q.is_zero() {
        return Verdict::Fail("a form vanishes identically".into());
    }
    if p.degree() == 0 || q.degree() == 0 {
        return Verdict::Pass("empty intersection: a nonzero constant form".into());
    }
    let field = p.field();
    let bezout = p.degree() * q.degree();
    for attempt in 1..=ATTEMPTS {
        let mtx = random_change(field, rng);
        let (p2, q2) = (p.linear_substitute(&mtx), q.linear_substitute(&mtx));
        if !monic_in_x2(&p2) || !monic_in_x2(&q2) {
            continue;
        }
        let (bp, bq) = (to_bi(&p2), to_bi(&q2));
        let r = res_x2(&bp, &bq, field);
        if r.is_zero() {
            return Verdict::Fail("common component: Res_x2 vanishes identically".into());
        }
        if HPoly::homogenize(&r, bezout).is_squarefree_binary() {
            return Verdict::Pass(format!("Res_x2 squarefree of degree {bezout} in coordinate system #{attempt}"));
        }
        let repeated = r.gcd(&r.derivative());
        for x in repeated.roots() {
            for pt in points_above(&bp, &bq, &x) {
                if jacobian_rank(&p2, &q2, &pt) < 2 {
                    return Verdict::Fail(format!("non-transverse intersection at {}", fmt_point(&apply(&mtx, &pt))));
                }
            }
        }
    }
    Verdict::Inconclusive(format!("Res_x2 not squarefree in {ATTEMPTS} random coordinate systems"))
}

/// Whether every common zero of `polys` lies on `{avoid = 0}` (or, without `avoid`,
/// that there are none). `gens` are forms of one degree whose random combinations
/// are eliminated; their common zeros must contain those of `polys`.
pub fn common_zeros_inside<R: Rng + ?Sized>(polys: &[HPoly], gens: &[HPoly], avoid: Option<&HPoly>, rng: &mut R) -> Verdict {
    let polys: Vec<&HPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.degree() == 0) {
        return Verdict::Pass("a nonzero constant lies in the ideal".into());
    }
    let gens: Vec<HPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if polys.is_empty() || gens.is_empty() {
        return Verdict::Fail("the locus is all of P^2".into());
    }
    let field = gens[0].field();
    'attempt: for attempt in 1..=ATTEMPTS {
        let mtx = random_change(field, rng);
        let moved: Vec<HPoly> = polys.iter().map(|p| p.linear_substitute(&mtx)).collect();
        let moved_gens: Vec<HPoly> = gens.iter().map(|g| g.linear_substitute(&mtx)).collect();
        let at_inf = moved.iter().fold(HPoly::zero(field, 2, 0), |acc, h| acc.gcd_binary(&h.restrict_x1_zero()));
        if at_inf.is_zero() || at_inf.degree() > 0 {
            continue;
        }
        // x-coordinates of the common zeros divide every Res_x2(P, Q) for P, Q in the ideal;
        // a gcd over independent pairs keeps the modulus small
        let mut m: Option<UPoly> = None;
        let mut first: Option<(BiPoly, BiPoly)> = None;
        for _ in 0..RESULTANT_PAIRS {
            let (p, q) = (combo(&moved_gens, rng), combo(&moved_gens, rng));
            if !monic_in_x2(&p) || !monic_in_x2(&q) {
                continue 'attempt;
            }
            let (pb, qb) = (to_bi(&p), to_bi(&q));
            let r = res_x2(&pb, &qb, field);
            if r.is_zero() {
                continue 'attempt;
            }
            m = Some(match m {
                None => r.squarefree_part(),
                Some(prev) => prev.gcd(&r),
            });
            first.get_or_insert((pb, qb));
        }
        let m = m.expect("at least one resultant");
        if m.deg_i() <= 0 {
            return Verdict::Pass(format!("Res_x2 of two combinations is constant (coordinate system #{attempt})"));
        }
        let bis: Vec<BiPoly> = moved.iter().map(to_bi).collect();
        let avoid_bi = avoid.map(|f| to_bi(&f.linear_substitute(&mtx)));
        let (p1, q1) = first.expect("at least one pair");

        // where S_1 of the first pair has s1 a unit, its common root is x2 = -s0 / s1
        let (n_generic, m_rest) = match subres1_x2(&p1, &q1) {
            Some((s1, s0)) => {
                let (s1, s0) = (s1.rem(&m), s0.rem(&m));
                let bad = m.gcd(&s1);
                let good = m.div_rem(&bad).0;
                let mut common = good.clone();
                if good.deg_i() > 0 {
                    let phi = s1.div_mod(&-&s0, &good).expect("s1 is a unit mod good");
                    for h in &bis {
                        common = common.gcd(&eval_bi_mod(h, &phi, &good));
                    }
                    if common.deg_i() > 0 {
                        match &avoid_bi {
                            None => return Verdict::Fail(format!("common zeros above {} root(s) of the modulus", common.deg_i())),
                            Some(fb) => {
                                if !eval_bi_mod(fb, &phi, &common).is_zero() {
                                    return Verdict::Fail(format!("common zero off the avoided curve above {} root(s) of the modulus", common.deg_i()));
                                }
                            }
                        }
                    }
                }
                (common.deg_i().max(0), bad)
            }
            None => (0, m.clone()),
        };

        let mut nonempty = 0;
        if m_rest.deg_i() > 0 {
            for (mi, g) in &gcd_over_all(&m_rest, &bis) {
                if g.is_empty() {
                    continue 'attempt;
                }
                if g.len() == 1 {
                    continue;
                }
                nonempty += 1;
                match &avoid_bi {
                    None => return Verdict::Fail(format!("common zeros above the roots of {mi}")),
                    Some(fb) => {
                        if !vanishes_on_roots(fb, g, mi) {
                            return Verdict::Fail(format!("common zero off the avoided curve above the roots of {mi}"));
                        }
                    }
                }
            }
        }
        return Verdict::Pass(format!(
            "deg m = {}: {} common zero(s) parametrised by S_1, all inside; dynamic gcd on a factor of degree {} found {} branch(es) with common zeros, all inside (coordinate system #{attempt})",
            m.deg_i(),
            n_generic,
            m_rest.deg_i().max(0),
            nonempty
        ));
    }
    Verdict::Inconclusive(format!("no usable coordinate system in {ATTEMPTS} attempts"))
}

/// `F_p`-rational points of `{p = q = 0}` and whether the Jacobian has rank 2 at each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPointCheck {
    pub points: usize,
    pub all_transverse: bool,
}

const POINT_SEARCH_LIMIT: u64 = 2000;

fn rational_point_check(p: &HPoly, q: &HPoly) -> Option<RationalPointCheck> {
    let Field::Fp(pr) = p.field() else { return None };
    if pr > POINT_SEARCH_LIMIT {
        return None;
    }
    let f = p.field();
    let mut pts = vec![vec![f.one(), f.zero(), f.zero()]];
    for x in 0..pr {
        pts.push(vec![f.int(x as i64), f.one(), f.zero()]);
        for y in 0..pr {
            pts.push(vec![f.int(x as i64), f.int(y as i64), f.one()]);
        }
    }
    let mut out = RationalPointCheck { points: 0, all_transverse: true };
    for pt in pts.iter().filter(|pt| p.eval(pt).is_zero() && q.eval(pt).is_zero()) {
        out.points += 1;
        out.all_transverse &= jacobian_rank(p, q, pt) == 2;
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCheckReport {
    /// (i): `{a^2 - F^n = 0}` is smooth where `F != 0`.
    pub smooth_off_f: Verdict,
    /// (ii): `{a = 0}` and `{F = 0}` meet transversely.
    pub transversal: Verdict,
    /// `{a = 0} ∩ {F = 0}` is nonempty (Bézout on `P^2`).
    pub intersection_nonempty: bool,
    /// `Some(true)` once (i), (ii) pass and the intersection is nonempty.
    pub irreducible: Option<bool>,
    pub rational_points: Option<RationalPointCheck>,
}

fn require_plane(nvars: usize) -> Result<()> {
    if nvars != 3 {
        return Err(Error::Hypothesis("geometric checks are only available over P^2".into()));
    }
    Ok(())
}

fn smooth_off<R: Rng + ?Sized>(g: &HPoly, f: &HPoly, rng: &mut R) -> Verdict {
    if g.is_zero() {
        return Verdict::Fail("the branch form vanishes identically".into());
    }
    let grads = gradient(g);
    let mut polys = vec![g.clone()];
    polys.extend(grads.iter().cloned());
    common_zeros_inside(&polys, &grads, Some(f), rng)
}

pub fn check_simple<R: Rng + ?Sized>(spec: &SimpleCoverSpec, rng: &mut R) -> Result<SimpleCheckReport> {
    require_plane(spec.a.nvars())?;
    let transversal = transverse(&spec.a, &spec.f, rng);
    let g = &(&spec.a * &spec.a) - &spec.f.pow(spec.n);
    let smooth_off_f = smooth_off(&g, &spec.f, rng);
    let intersection_nonempty = spec.a.degree() > 0 && spec.f.degree() > 0;
    let irreducible = (transversal.is_pass() && smooth_off_f.is_pass() && intersection_nonempty).then_some(true);
    Ok(SimpleCheckReport { smooth_off_f, transversal, intersection_nonempty, irreducible, rational_points: rational_point_check(&spec.a, &spec.f) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostSimpleCheckReport {
    /// `A_0` meets `{F = 0}` transversely.
    pub a0_transverse_f: Verdict,
    /// `A_0 ∩ A_∞ = ∅`.
    pub a0_a_inf_disjoint: Verdict,
    pub a_inf_smooth: Verdict,
    /// `{a_0^2 - F^n a_∞^2 = 0}` is smooth where `F != 0`.
    pub smooth_off_f: Verdict,
}

impl AlmostSimpleCheckReport {
    pub fn all_pass(&self) -> bool {
        [&self.a0_transverse_f, &self.a0_a_inf_disjoint, &self.a_inf_smooth, &self.smooth_off_f].iter().all(|v| v.is_pass())
    }
}

pub fn check_almost_simple<R: Rng + ?Sized>(spec: &AlmostSimpleSpec, rng: &mut R) -> Result<AlmostSimpleCheckReport> {
    require_plane(spec.a0.nvars())?;
    let a0_transverse_f = transverse(&spec.a0, &spec.f, rng);
    let a0_a_inf_disjoint = if spec.e == 0 {
        Verdict::Pass("A_inf is empty".into())
    } else {
        match transverse(&spec.a0, &spec.a_inf, rng) {
            Verdict::Fail(s) if s.starts_with("common component") => Verdict::Fail(s),
            _ => Verdict::Fail(format!(
                "curves of degrees {} and {} in P^2 meet in {} points with multiplicity (Bézout)",
                spec.a0.degree(),
                spec.e,
                spec.a0.degree() * spec.e
            )),
        }
    };
    let a_inf_smooth = if spec.e == 0 {
        Verdict::Pass("A_inf is empty".into())
    } else {
        let grads = gradient(&spec.a_inf);
        common_zeros_inside(&grads, &grads, None, rng)
    };
    let g = &(&spec.a0 * &spec.a0) - &(&spec.f.pow(spec.n) * &(&spec.a_inf * &spec.a_inf));
    let smooth_off_f = smooth_off(&g, &spec.f, rng);
    Ok(AlmostSimpleCheckReport { a0_transverse_f, a0_a_inf_disjoint, a_inf_smooth, smooth_off_f })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDivisor {
    pub polynomial: HPoly,
    pub degree: u32,
    pub squarefree_part: HPoly,
    /// Bézout count of `{a = F = 0}` (`{a_0 = F = 0}` for almost-simple covers) on `P^2`;
    /// these are the cusps of the branch curve once (ii) holds.
    pub cusp_count: Option<u32>,
}

fn squarefree(h: &HPoly) -> HPoly {
    if h.nvars() == 2 {
        h.squarefree_part_binary()
    } else {
        squarefree_part_ternary(h)
    }
}

/// `B = {F^n - a^2 = 0}`.
pub fn branch_divisor(spec: &SimpleCoverSpec) -> BranchDivisor {
    let b = &spec.f.pow(spec.n) - &(&spec.a * &spec.a);
    BranchDivisor {
        degree: b.degree(),
        squarefree_part: squarefree(&b),
        cusp_count: (spec.a.nvars() == 3).then(|| spec.a.degree() * spec.f.degree()),
        polynomial: b,
    }
}

/// `B = {a_∞ (a_0^2 - a_∞^2 F^n) = 0}`, kept as displayed; the squarefree part is separate.
pub fn branch_divisor_almost_simple(spec: &AlmostSimpleSpec) -> BranchDivisor {
    let inner = &(&spec.a0 * &spec.a0) - &(&(&spec.a_inf * &spec.a_inf) * &spec.f.pow(spec.n));
    let b = &spec.a_inf * &inner;
    BranchDivisor {
        degree: b.degree(),
        squarefree_part: squarefree(&b),
        cusp_count: (spec.a0.nvars() == 3).then(|| spec.a0.degree() * spec.f.degree()),
        polynomial: b,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnEpimorphism {
    /// `None` when a hypothesis check was inconclusive.
    pub holds: Option<bool>,
    pub checks: SimpleCheckReport,
    pub branch: BranchDivisor,
    pub statement: String,
}

/// Whether the simple-cover hypotheses certify an epimorphism `π_1(P^2 \ B) -> D_n`.
pub fn dn_epimorphism_criterion<R: Rng + ?Sized>(spec: &SimpleCoverSpec, rng: &mut R) -> Result<DnEpimorphism> {
    let checks = check_simple(spec, rng)?;
    let branch = branch_divisor(spec);
    let verdicts = [&checks.smooth_off_f, &checks.transversal];
    let holds = if verdicts.iter().any(|v| v.is_fail()) || !checks.intersection_nonempty {
        Some(false)
    } else if verdicts.iter().all(|v| v.is_pass()) {
        Some(true)
    } else {
        None
    };
    let statement = match holds {
        Some(true) => format!(
            "the connected simple D_{} cover exists, so pi_1(P^2 minus the branch curve of degree {}) maps onto D_{} and is non-abelian",
            spec.n, branch.degree, spec.n
        ),
        Some(false) => "the simple-cover hypotheses fail; no conclusion about the fundamental group".into(),
        None => "a hypothesis check was inconclusive; no conclusion".into(),
    };
    Ok(DnEpimorphism { holds, checks, branch, statement })
}
