//! Cross-checks of the production reduction against independent oracles:
//! dense Betti ranks, a clearing-free reduction, and the Euler identity.

mod common;

use common::{naive_barcode, random_complex, rng};
use ephom::complex::{build_rips_edges, expand_flag};
use ephom::persistence::{betti_numbers_at, compute_persistence};
use ephom::pointcloud::generate_circle;
use rand::RngExt;

#[test]
fn barcode_matches_naive_reduction_on_random_complexes() {
    let mut rng = rng(100);
    for trial in 0..60 {
        let complex = random_complex(&mut rng, 8, 3);
        let max_dim = 2;
        let fast = compute_persistence(&complex, max_dim).unwrap();
        let slow = naive_barcode(&complex, max_dim);
        assert_eq!(fast, slow, "trial {trial}");
    }
}

#[test]
fn bar_counts_match_betti_numbers_on_random_complexes() {
    let mut rng = rng(101);
    for trial in 0..60 {
        let complex = random_complex(&mut rng, 8, 3);
        let max_dim = 2;
        let barcode = compute_persistence(&complex, max_dim).unwrap();
        for _ in 0..10 {
            let eps: f64 = rng.random_range(-0.1..1.4);
            let betti = betti_numbers_at(&complex, eps, max_dim).unwrap();
            for (p, &b) in betti.iter().enumerate() {
                assert_eq!(
                    barcode.alive_at(p, eps),
                    b,
                    "trial {trial}: degree {p} at eps {eps}"
                );
            }
        }
    }
}

#[test]
fn euler_characteristic_identity_holds() {
    let mut rng = rng(102);
    for _ in 0..40 {
        let complex = random_complex(&mut rng, 8, 3);
        for _ in 0..8 {
            let eps: f64 = rng.random_range(-0.1..1.4);
            let betti = betti_numbers_at(&complex, eps, complex.dmax()).unwrap();
            let mut chi_simplices = 0i64;
            for dim in 0..=complex.dmax() {
                let count = complex.simplices_in_dim(dim).filter(|(_, v)| *v <= eps).count() as i64;
                chi_simplices += if dim % 2 == 0 { count } else { -count };
            }
            let chi_betti: i64 = betti
                .iter()
                .enumerate()
                .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(chi_simplices, chi_betti, "eps {eps}");
        }
    }
}

#[test]
fn circle_barcode_matches_naive_reduction_exactly() {
    let cloud = generate_circle(20, 1.0, 0.0, 0).unwrap();
    let complex = expand_flag(20, &build_rips_edges(&cloud, 1.2).unwrap(), 2).unwrap();
    let fast = compute_persistence(&complex, 1).unwrap();
    let slow = naive_barcode(&complex, 1);
    assert_eq!(fast, slow);
}
