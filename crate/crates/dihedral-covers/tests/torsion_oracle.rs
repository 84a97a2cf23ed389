//! The torsion rank test against Cantor orders.

mod common;

use dihedral_covers::hyperelliptic::{class_from_matrix, class_order, is_n_torsion, torsion_matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sweep(p: u64, g: u32, count: usize) {
    let curve = common::split_curve(p, g);
    let mut rng = ChaCha8Rng::seed_from_u64(p + g as u64);
    let suite = common::torsion_suite(&curve, &mut rng, count);
    let mut hits = 0;
    for pair in &suite {
        let ord = class_order(&class_from_matrix(pair, &curve).unwrap(), &curve, 200).unwrap();
        for n in 2..=8u32 {
            let expected = ord.is_some_and(|k| n as u64 % k == 0);
            hits += expected as usize;
            assert_eq!(is_n_torsion(n, pair, &curve).unwrap(), expected, "{pair}, n = {n}, order {ord:?}");
        }
        if pair.a > 0 {
            let t = torsion_matrix(2, pair, &curve).unwrap();
            assert_eq!((t.rows() as i64, t.cols() as i64), (3 * pair.a + 3 * pair.b - 3, 2 * pair.a + 2 * pair.b - 1));
        }
    }
    assert!(hits > 0, "suite contains no torsion classes");
}

#[test]
fn genus_one() {
    sweep(101, 1, 12);
}

#[test]
fn genus_two() {
    sweep(101, 2, 12);
}
