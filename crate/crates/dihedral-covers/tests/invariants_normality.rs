//! Surface invariants of plane covers and the normality criterion on hyperelliptic bases.

mod common;

use dihedral_covers::cover_geometry::{invariants, normality_criterion, BaseGeometry, Classification, LabelledDivisor};
use dihedral_covers::error::Error;
use dihedral_covers::exactmath::{FieldElem, UPoly};
use dihedral_covers::hyperelliptic::{enumerate_two_torsion, HECurve};

fn chi_line_p2(k: i64) -> i64 {
    (k + 1) * (k + 2) / 2
}

#[test]
fn small_plane_covers() {
    let r = invariants(2, BaseGeometry::plane(1), 0).unwrap();
    assert_eq!((r.chi, r.k2, r.omega_degree), (Some(1), Some(4), Some(-1)));
    let r = invariants(3, BaseGeometry::plane(1), 0).unwrap();
    assert_eq!((r.chi, r.k2, r.omega_degree), (Some(2), Some(0), Some(0)));
    assert_eq!(r.classification, Classification::K3);
}

#[test]
fn general_type_family() {
    for n in 4..=8i64 {
        let r = invariants(n as u32, BaseGeometry::plane(1), 0).unwrap();
        assert_eq!(r.k2, Some(2 * n * (n - 3) * (n - 3)), "n = {n}");
        assert_eq!(r.chi, Some((2 * n * n * n - 9 * n * n + 13 * n) / 6), "n = {n}");
        assert_eq!(r.classification, Classification::GeneralTypeMinimal);
    }
}

#[test]
fn chi_is_the_sum_over_eigensheaves() {
    for n in 2..=8i64 {
        for m in 1..=3i64 {
            let mut direct = chi_line_p2(0) + chi_line_p2(-n * m);
            for i in 1..n {
                direct += chi_line_p2(-i * m) + chi_line_p2(-(n - i) * m);
            }
            let r = invariants(n as u32, BaseGeometry::plane(m), 0).unwrap();
            assert_eq!(r.chi, Some(direct), "(n, m) = ({n}, {m})");
            assert_eq!(r.cusp_count, Some(2 * n * m * m));
            assert_eq!(r.branch_degree, Some(2 * n * m));
        }
    }
}

fn point_on(curve: &HECurve) -> (FieldElem, FieldElem) {
    let f = &curve.odd_model().unwrap().f;
    let field = f.field();
    (1..)
        .find_map(|i| {
            let x = field.int(i);
            let y = f.eval(&x).sqrt()?;
            (!y.is_zero()).then_some((x, y))
        })
        .unwrap()
}

fn point_divisor(curve: &HECurve, k: u32) -> LabelledDivisor {
    let (x, y) = point_on(curve);
    LabelledDivisor { k, u: UPoly::linear_root(&x), v: UPoly::constant(y) }
}

#[test]
fn kappa_one_is_normal() {
    let curve = common::split_curve(101, 1);
    let triv = curve.ring().trivial_pair();
    let r = normality_criterion(3, &triv, &[point_divisor(&curve, 1)], &curve, 1000).unwrap();
    assert_eq!((r.kappa, r.is_normal()), (1, Some(true)));
}

#[test]
fn etale_two_torsion_is_normal() {
    for g in 1..=2 {
        let curve = common::split_curve(101, g);
        for f1 in enumerate_two_torsion(&curve).unwrap() {
            let r = normality_criterion(2, &f1, &[], &curve, 1000).unwrap();
            assert_eq!((r.kappa, r.order, r.is_normal()), (2, Some(2), Some(true)));
        }
    }
}

#[test]
fn trivial_class_is_not_normal() {
    let curve = common::split_curve(101, 2);
    let r = normality_criterion(2, &curve.ring().trivial_pair(), &[], &curve, 1000).unwrap();
    assert_eq!((r.kappa, r.order, r.is_normal()), (2, Some(1), Some(false)));
}

#[test]
fn nonzero_degree_and_bad_labels() {
    let curve = common::split_curve(101, 1);
    let triv = curve.ring().trivial_pair();
    // κ = 2 from D_2 on a D_4 cover; a single non-Weierstrass point is not τ-invariant
    let d = point_divisor(&curve, 2);
    assert!(matches!(normality_criterion(4, &triv, &[d], &curve, 100), Err(Error::Hypothesis(_))));
    let d = point_divisor(&curve, 2);
    let r = normality_criterion(5, &triv, &[d], &curve, 100).unwrap();
    assert_eq!(r.kappa, 1);
    let d = point_divisor(&curve, 3);
    assert!(matches!(normality_criterion(5, &triv, &[d], &curve, 100), Err(Error::InvalidInput(_))));
    // D_2 and D_4 = τ D_2 on a D_6 cover: κ = 2, and 3 F_1 - D_2 - 2 D_4 has degree -3
    let d = point_divisor(&curve, 2);
    let r = normality_criterion(6, &triv, &[d], &curve, 100).unwrap();
    assert_eq!((r.kappa, r.is_normal()), (2, Some(false)));
}
