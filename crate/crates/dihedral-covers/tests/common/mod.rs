//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use dihedral_covers::double_cover::BundlePair;
use dihedral_covers::exactmath::{parse::parse_hpoly, Field, HPoly};
use dihedral_covers::hyperelliptic::{class_from_matrix, matrix_from_class, random_degree0_pair, scalar_mul, HECurve, MumfordClass};
use rand::Rng;

/// `z^2 = ∏ (x0 - r x1)` over `F_p` with `2g + 2` small roots, none at infinity.
pub fn split_curve(p: u64, g: u32) -> HECurve {
    let roots = [1, 2, 3, 5, 7, 11, 13, 17];
    let f = Field::prime(p).unwrap();
    let mut acc = HPoly::one(f, 2);
    for r in &roots[..2 * g as usize + 2] {
        acc = &acc * &parse_hpoly(&format!("x0 - {r}*x1"), f, 2, None).unwrap();
    }
    HECurve::new(acc).unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `F_{p^2} = F_p[t] / (t^2 - r)` with `r` a non-residue.
#[derive(Clone, Copy)]
struct Fp2 {
    a: u64,
    b: u64,
}

fn mul2(x: Fp2, y: Fp2, r: u64, p: u64) -> Fp2 {
    Fp2 { a: (x.a * y.a + x.b * y.b % p * r) % p, b: (x.a * y.b + x.b * y.a) % p }
}

fn pow2(mut x: Fp2, mut e: u64, r: u64, p: u64) -> Fp2 {
    let mut acc = Fp2 { a: 1, b: 0 };
    while e > 0 {
        if e & 1 == 1 {
            acc = mul2(acc, x, r, p);
        }
        x = mul2(x, x, r, p);
        e >>= 1;
    }
    acc
}

fn coeffs_u64(f: &HPoly, p: u64) -> Vec<u64> {
    f.to_dense()
        .iter()
        .rev()
        .map(|c| {
            let r = c.to_rational();
            let n = (r.numer() % num_bigint::BigInt::from(p) + num_bigint::BigInt::from(p)) % num_bigint::BigInt::from(p);
            n.to_string().parse().unwrap()
        })
        .collect()
}

/// Points on the smooth model of `z^2 = F` over `F_p` and `F_{p^2}`.
pub fn point_counts(curve: &HECurve) -> (i64, i64) {
    let f = curve.branch();
    let p = f.field().characteristic();
    // coefficient of x0^k x1^(d-k), indexed by k
    let c = coeffs_u64(f, p);
    let d = c.len() - 1;
    let chi1 = |v: u64| -> i64 {
        if v == 0 {
            0
        } else if pow_mod(v, (p - 1) / 2, p) == 1 {
            1
        } else {
            -1
        }
    };
    let inf = |lc: u64, chi: &dyn Fn(u64) -> i64| if lc == 0 { 1 } else { 1 + chi(lc) };
    let mut n1 = inf(c[d], &chi1);
    for x in 0..p {
        let v = c.iter().rev().fold(0, |acc, &k| (acc * x + k) % p);
        n1 += 1 + chi1(v);
    }
    let r = (2..p).find(|&r| pow_mod(r, (p - 1) / 2, p) == p - 1).unwrap();
    let chi2 = |v: Fp2| -> i64 {
        if v.a == 0 && v.b == 0 {
            0
        } else {
            let e = pow2(v, (p * p - 1) / 2, r, p);
            if e.a == 1 && e.b == 0 {
                1
            } else {
                -1
            }
        }
    };
    // a base-field leading coefficient is always a square in F_{p^2}
    let mut n2 = if c[d] == 0 { 1 } else { 2 };
    for a in 0..p {
        for b in 0..p {
            let x = Fp2 { a, b };
            let mut acc = Fp2 { a: 0, b: 0 };
            for &k in c.iter().rev() {
                acc = mul2(acc, x, r, p);
                acc.a = (acc.a + k) % p;
            }
            n2 += 1 + chi2(acc);
        }
    }
    (n1, n2)
}

/// `#J(F_p)` from the point counts, for `g <= 2`.
pub fn jacobian_order(curve: &HECurve) -> u64 {
    let p = curve.branch().field().characteristic() as i64;
    let (n1, n2) = point_counts(curve);
    match curve.genus() {
        1 => n1 as u64,
        2 => ((n1 * n1 + n2) / 2 - p) as u64,
        g => panic!("genus {g} not supported by the oracle"),
    }
}

/// Order of `c` given the group order, by stripping prime factors.
pub fn order_with_group_order(c: &MumfordClass, curve: &HECurve, n: u64) -> u64 {
    let mut ord = n;
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            while m % q == 0 {
                m /= q;
            }
            while ord % q == 0 && scalar_mul(c, (ord / q) as i64, curve).unwrap().is_identity() {
                ord /= q;
            }
        }
        q += 1;
    }
    ord
}

/// Random degree-0 pairs mixed with multiples of small order `2..=8` when the group allows it.
pub fn torsion_suite<R: Rng>(curve: &HECurve, rng: &mut R, count: usize) -> Vec<BundlePair> {
    let n = jacobian_order(curve);
    let mut out = vec![];
    while out.len() < count {
        let p = random_degree0_pair(curve, rng).unwrap();
        let c = class_from_matrix(&p, curve).unwrap();
        let ord = order_with_group_order(&c, curve, n);
        out.push(p);
        for d in 2..=8u64 {
            if ord % d == 0 && out.len() < count {
                let small = scalar_mul(&c, (ord / d) as i64, curve).unwrap();
                out.push(matrix_from_class(&small, curve).unwrap());
            }
        }
    }
    out
}
