//! Scratch probe for the classification harness (not part of the deliverable).

use ephom::descriptors::loo_nn_report;
use ephom::pipeline::{signatures_for_clouds, ComplexKind, SignatureConfig};
use ephom::pointcloud::*;
use ephom::tangent::RatioSpec;

fn run(
    kind: ComplexKind,
    holes: &[usize],
    per_class: usize,
    n: usize,
    k: usize,
    q: f64,
    rmax: f64,
    degrees: Option<Vec<usize>>,
    seed: u64,
) -> f64 {
    let mut clouds = Vec::new();
    let mut labels = Vec::new();
    for (ci, &h) in holes.iter().enumerate() {
        for rep in 0..per_class {
            let s = seed
                .wrapping_mul(1_000_003)
                .wrapping_add((ci * per_class + rep) as u64);
            let c = generate_disk_with_holes(n, h, s).unwrap();
            labels.push(c.label().unwrap());
            clouds.push(c);
        }
    }
    let mut cfg = SignatureConfig::new(kind);
    cfg.pipeline.k = k;
    cfg.pipeline.ratios = RatioSpec::Elongation { q, intrinsic_dim: 1 };
    cfg.pipeline.rmax = Some(rmax);
    cfg.degrees = degrees;
    let sigs = signatures_for_clouds(&clouds, &cfg).unwrap();
    loo_nn_report(&sigs, &labels).unwrap().accuracy
}

fn main() {
    let holes = [0usize, 1, 2];
    for (k, q, rmax, degrees, tag) in [
        (5, 3.0, 0.6, None, "deg 0+1"),
        (5, 3.0, 0.6, Some(vec![1]), "deg 1  "),
        (5, 3.0, 0.4, Some(vec![1]), "deg 1 rmax 0.4"),
        (10, 3.0, 0.6, Some(vec![1]), "k 10   "),
    ] {
        let mut phe_mean = 0.0;
        let mut phr_mean = 0.0;
        let seeds = [1u64, 2, 3, 4, 5];
        for &s in &seeds {
            let t0 = std::time::Instant::now();
            let phe = run(ComplexKind::Ellipsoid, &holes, 5, 100, k, q, rmax, degrees.clone(), s);
            let phr = run(ComplexKind::Rips, &holes, 5, 100, k, q, rmax, degrees.clone(), s);
            phe_mean += phe;
            phr_mean += phr;
            println!(
                "  k={k} q={q} rmax={rmax} {tag} seed {s}: phe {phe:.3} phr {phr:.3} ({:?})",
                t0.elapsed()
            );
        }
        phe_mean /= seeds.len() as f64;
        phr_mean /= seeds.len() as f64;
        println!("k={k} q={q} rmax={rmax} {tag}: PHE {phe_mean:.3} vs PHR {phr_mean:.3}\n");
    }
}
