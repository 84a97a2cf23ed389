//! Hypothesis checks for simple covers of the plane, with a brute-force point search
//! over small prime fields as an independent oracle.

use dihedral_covers::cover_geometry::{
    branch_divisor, branch_divisor_almost_simple, check_almost_simple, check_simple, dn_epimorphism_criterion, AlmostSimpleSpec, SimpleCoverSpec,
    Verdict,
};
use dihedral_covers::exactmath::{parse::parse_hpoly, Field, FieldElem, HPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn h(s: &str, f: Field) -> HPoly {
    parse_hpoly(s, f, 3, None).unwrap()
}

fn fermat(f: Field) -> SimpleCoverSpec {
    SimpleCoverSpec::new(3, h("x0^3 + x1^3 + x2^3", f), h("x0*x1 + x0*x2 + x1*x2", f)).unwrap()
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(7)
}

/// All `F_p`-points of the projective plane.
fn plane_points(f: Field, p: u64) -> Vec<Vec<FieldElem>> {
    let mut pts = vec![vec![f.one(), f.zero(), f.zero()]];
    for x in 0..p {
        pts.push(vec![f.int(x as i64), f.one(), f.zero()]);
        for y in 0..p {
            pts.push(vec![f.int(x as i64), f.int(y as i64), f.one()]);
        }
    }
    pts
}

/// Singular points of `{a^2 - F^n = 0}` over `F_p` that lie off `{F = 0}`.
fn rational_singular_points_off_f(spec: &SimpleCoverSpec, p: u64) -> usize {
    let g = &(&spec.a * &spec.a) - &spec.f.pow(spec.n);
    let grads: Vec<HPoly> = (0..3).map(|i| g.partial(i)).collect();
    plane_points(spec.a.field(), p)
        .iter()
        .filter(|pt| g.eval(pt).is_zero() && grads.iter().all(|d| d.is_zero() || d.eval(pt).is_zero()) && !spec.f.eval(pt).is_zero())
        .count()
}

#[test]
fn fermat_cubic_and_conic_pass() {
    let r = check_simple(&fermat(Field::Q), &mut rng()).unwrap();
    assert!(r.transversal.is_pass(), "{}", r.transversal);
    assert!(r.smooth_off_f.is_pass(), "{}", r.smooth_off_f);
    assert_eq!(r.irreducible, Some(true));
    let b = branch_divisor(&fermat(Field::Q));
    assert_eq!((b.degree, b.cusp_count), (6, Some(6)));
    assert_eq!(b.squarefree_part.degree(), 6);
}

#[test]
fn fermat_over_small_prime_agrees_with_point_search() {
    let f = Field::Fp(31);
    let spec = fermat(f);
    let r = check_simple(&spec, &mut rng()).unwrap();
    assert!(r.transversal.is_pass());
    assert!(r.smooth_off_f.is_pass());
    assert_eq!(rational_singular_points_off_f(&spec, 31), 0);
    assert!(r.rational_points.unwrap().all_transverse);
}

#[test]
fn common_component_fails() {
    let spec = SimpleCoverSpec::new(3, h("x0^3", Field::Q), h("x0^2", Field::Q)).unwrap();
    let r = check_simple(&spec, &mut rng()).unwrap();
    assert!(r.transversal.is_fail());
    assert_eq!(r.irreducible, None);
}

#[test]
fn tangency_fails() {
    // the line x2 = 0 is tangent to the conic x0 x1 - x2^2 ... after replacing by x0 = 0
    let spec = SimpleCoverSpec::new(2, h("x0^2", Field::Q), h("x0*x1 + x2^2", Field::Q)).unwrap();
    assert!(check_simple(&spec, &mut rng()).unwrap().transversal.is_fail());
}

#[test]
fn singular_point_off_f_is_found() {
    // a - F = x0^2 - x0 x1 + x1^2 is a cone with vertex (0:0:1), where F = 1
    for f in [Field::Q, Field::Fp(31)] {
        let spec = SimpleCoverSpec::new(2, h("x2^2 + x0^2 + x1^2", f), h("x2^2 + x0*x1", f)).unwrap();
        let r = check_simple(&spec, &mut rng()).unwrap();
        assert!(r.smooth_off_f.is_fail(), "{}", r.smooth_off_f);
        if f == Field::Fp(31) {
            assert!(rational_singular_points_off_f(&spec, 31) > 0);
        }
    }
}

#[test]
fn random_specs_over_fp_match_point_search() {
    let f = Field::Fp(13);
    let mut r = ChaCha8Rng::seed_from_u64(99);
    let monomials = |d: u32| -> Vec<[u32; 3]> { (0..=d).flat_map(|i| (0..=d - i).map(move |j| [i, j, d - i - j])).collect() };
    for _ in 0..6 {
        let rand_form = |d: u32, r: &mut ChaCha8Rng| HPoly::from_terms(f, 3, d, monomials(d).into_iter().map(|e| (e, f.random(r, 13))));
        let a = rand_form(2, &mut r);
        let fm = rand_form(2, &mut r);
        let Ok(spec) = SimpleCoverSpec::new(2, a, fm) else { continue };
        let rep = check_simple(&spec, &mut rng()).unwrap();
        if rep.smooth_off_f.is_pass() {
            assert_eq!(rational_singular_points_off_f(&spec, 13), 0);
        }
        if rep.transversal.is_pass() {
            assert!(rep.rational_points.as_ref().unwrap().all_transverse);
        }
    }
}

#[test]
fn quartic_branch_for_double_planes() {
    let spec = SimpleCoverSpec::new(2, h("x0^2 + x1^2 + x2^2", Field::Q), h("x0*x1 + x2^2", Field::Q)).unwrap();
    assert_eq!(branch_divisor(&spec).degree, 4);
}

#[test]
fn almost_simple_reduces_to_simple() {
    let f = Field::Q;
    let s = fermat(f);
    let a = AlmostSimpleSpec::new(3, s.f.clone(), s.a.clone(), HPoly::one(f, 3)).unwrap();
    let ra = check_almost_simple(&a, &mut rng()).unwrap();
    let rs = check_simple(&s, &mut rng()).unwrap();
    assert!(ra.all_pass());
    assert_eq!(ra.a0_transverse_f.is_pass(), rs.transversal.is_pass());
    assert_eq!(ra.smooth_off_f.is_pass(), rs.smooth_off_f.is_pass());
    assert_eq!(branch_divisor_almost_simple(&a).polynomial, -&branch_divisor(&s).polynomial);
    assert_eq!(a.as_simple().unwrap(), s);
}

#[test]
fn almost_simple_meeting_curves_fail() {
    let f = Field::Q;
    let a = AlmostSimpleSpec::new(3, h("x1^2 + x2^2", f), h("x0^4", f), h("x0", f)).unwrap();
    assert!(check_almost_simple(&a, &mut rng()).unwrap().a0_a_inf_disjoint.is_fail());
}

#[test]
fn almost_simple_positive_e_meets_by_bezout() {
    let f = Field::Q;
    let a = AlmostSimpleSpec::new(3, fermat(f).f, h("x0^4 + x1^4 + x2^4 + x0*x1*x2^2", f), h("x0 + 2*x1 + 3*x2", f)).unwrap();
    let r = check_almost_simple(&a, &mut rng()).unwrap();
    assert!(matches!(r.a0_a_inf_disjoint, Verdict::Fail(_)));
    assert!(r.a_inf_smooth.is_pass());
    let b = branch_divisor_almost_simple(&a);
    assert_eq!(b.degree, 1 + 2 * (3 + 1));
}

#[test]
fn zariski_sextic_epimorphism() {
    let d = dn_epimorphism_criterion(&fermat(Field::Q), &mut rng()).unwrap();
    assert_eq!(d.holds, Some(true));
    assert_eq!(d.branch.degree, 6);
    let bad = SimpleCoverSpec::new(3, h("x0^3", Field::Q), h("x0^2", Field::Q)).unwrap();
    assert_eq!(dn_epimorphism_criterion(&bad, &mut rng()).unwrap().holds, Some(false));
}
