//! Structure constants of the simple cover algebra evaluated at the points of the
//! fibre over a general `(a, F)` in `F_p`, plus the canonical-decomposition identities.

use dihedral_covers::dihedral_algebra::{epsilon, AFPoly, Basis, CMat, CharTable, Elem, SimpleCoverAlgebra};
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

const P: u64 = 2521; // 2520 = lcm(1..=10)

fn pw(b: u64, mut e: u64) -> u64 {
    let (mut acc, mut b) = (1u64, b % P);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn inv(x: u64) -> u64 {
    pw(x, P - 2)
}

fn primitive_root_of_unity(n: u64) -> u64 {
    (2..P).map(|g| pw(g, (P - 1) / n)).find(|z| (1..n).all(|k| pw(*z, k) != 1)).unwrap()
}

fn rational_mod(c: &AFPoly, a: u64, f: u64) -> u64 {
    let mut acc = 0;
    for ((i, j), coeff) in c.terms() {
        let r = coeff.as_rational().expect("structure constants are rational");
        let num = r.numer().abs().to_u64().unwrap() % P;
        let num = if r.is_negative() { (P - num) % P } else { num };
        let den = r.denom().to_u64().unwrap() % P;
        acc = (acc + num * inv(den) % P * pw(a, *i as u64) % P * pw(f, *j as u64)) % P;
    }
    acc
}

fn eval_basis(b: Basis, n: u32, u: u64, v: u64) -> u64 {
    match b {
        Basis::One => 1,
        Basis::S => (pw(u, n as u64) + P - pw(v, n as u64)) % P,
        Basis::U(i) => pw(u, i as u64),
        Basis::V(j) => pw(v, j as u64),
    }
}

fn eval_elem(alg: &SimpleCoverAlgebra, e: &Elem, a: u64, f: u64, u: u64, v: u64) -> u64 {
    alg.basis().iter().zip(&e.coeffs).fold(0, |acc, (b, c)| (acc + rational_mod(c, a, f) * eval_basis(*b, alg.n(), u, v)) % P)
}

#[test]
fn structure_constants_on_fibres() {
    for n in 2..=8u32 {
        let alg = SimpleCoverAlgebra::new(n).unwrap();
        let z = primitive_root_of_unity(n as u64);
        for (u0, v0) in [(3u64, 7u64), (11, 1234), (500, 2)] {
            let f = u0 * v0 % P;
            let a = (pw(u0, n as u64) + pw(v0, n as u64)) * inv(2) % P;
            let pts: Vec<(u64, u64)> = (0..n as u64)
                .flat_map(|i| [(u0 * pw(z, i) % P, v0 * inv(pw(z, i)) % P), (v0 * pw(z, i) % P, u0 * inv(pw(z, i)) % P)])
                .collect();
            for &(u, v) in &pts {
                assert_eq!(u * v % P, f);
                for x in alg.basis() {
                    for y in alg.basis() {
                        let lhs = eval_basis(*x, n, u, v) * eval_basis(*y, n, u, v) % P;
                        assert_eq!(eval_elem(&alg, alg.basis_product(*x, *y), a, f, u, v), lhs, "n={n} {x}*{y}");
                    }
                }
            }
        }
    }
}

#[test]
fn algebra_axioms_up_to_eight() {
    for n in 2..=8 {
        let alg = SimpleCoverAlgebra::new(n).unwrap();
        assert!(alg.check_commutative(), "n={n}");
        assert!(alg.check_associative(), "n={n}");
        assert!(alg.check_group_action(), "n={n}");
        assert!(alg.check_u3_identity(), "n={n}");
    }
}

#[test]
fn canonical_decomposition_identities() {
    for n in 2..=12 {
        let t = CharTable::new(n).unwrap();
        let size = 2 * n as usize;
        let ps: Vec<CMat> = (0..t.irreps().len()).map(|i| t.projector(i).unwrap()).collect();
        let sum = ps.iter().skip(1).fold(ps[0].clone(), |acc, p| acc.add(p));
        assert_eq!(sum, CMat::identity(n, size), "n={n}");
        for (i, p) in ps.iter().enumerate() {
            let d = t.irreps()[i].dim() as i64;
            assert!(p.trace().as_rational().is_some_and(|r| *r.numer() == (d * d).into() && r.is_integer()), "trace n={n} i={i}");
            for (j, q) in ps.iter().enumerate() {
                let pq = p.mul(q);
                if i == j {
                    assert_eq!(pq, *p, "idempotent n={n} i={i}");
                } else {
                    assert!(pq.is_zero(), "orthogonal n={n} i={i} j={j}");
                }
            }
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn epsilon_properties(n in 2u32..40, k0 in 0u32..1000, i0 in 0u32..1000, j0 in 0u32..1000) {
        let k = 1 + k0 % (n - 1);
        let (i, j) = (i0 % n, j0 % n);
        let e = epsilon(n, k, i, j).unwrap();
        prop_assert_eq!(e, epsilon(n, k, j, i).unwrap());
        prop_assert_eq!(epsilon(n, k, i, 0).unwrap(), 0);
        // ζ_n^{ik} ζ_n^{jk} = ζ_o^{ı_i + ı_j}: the carry is exactly the wrap-around in Z/o
        let o = n / gcd(n, k);
        let ii = (i * k % n) / (n / o);
        let jj = (j * k % n) / (n / o);
        prop_assert_eq!(e == 1, ii + jj >= o);
        if (2..n).all(|d| n % d != 0) {
            prop_assert_eq!(e == 1, i * k % n + j * k % n >= n);
        }
    }
}
