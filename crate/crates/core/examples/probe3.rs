//! Scratch probe: classification knob grid (not part of the deliverable).

use ephom::descriptors::loo_nn_report;
use ephom::pipeline::{signatures_for_clouds, ComplexKind, SignatureConfig};
use ephom::pointcloud::*;
use ephom::tangent::RatioSpec;

fn accuracy(
    kind: ComplexKind,
    holes: &[usize],
    per_class: usize,
    n: usize,
    k: usize,
    q: f64,
    rmax: Option<f64>,
    degrees: Option<Vec<usize>>,
    seed: u64,
) -> f64 {
    let mut clouds = Vec::new();
    let mut labels = Vec::new();
    for (ci, &h) in holes.iter().enumerate() {
        for rep in 0..per_class {
            let s = seed.wrapping_mul(1_000_003).wrapping_add((ci * per_class + rep) as u64);
            let c = generate_disk_with_holes(n, h, s).unwrap();
            labels.push(c.label().unwrap());
            clouds.push(c);
        }
    }
    let mut cfg = SignatureConfig::new(kind);
    cfg.pipeline.k = k;
    cfg.pipeline.ratios = RatioSpec::Elongation { q, intrinsic_dim: 1 };
    cfg.pipeline.rmax = rmax;
    cfg.degrees = degrees;
    let sigs = signatures_for_clouds(&clouds, &cfg).unwrap();
    loo_nn_report(&sigs, &labels).unwrap().accuracy
}

fn grid(tag: &str, holes: &[usize], n: usize, k: usize, rmax: Option<f64>, degrees: Option<Vec<usize>>) {
    let seeds = [1u64, 2, 3, 4, 5];
    let mut phe = 0.0;
    let mut phr = 0.0;
    for &s in &seeds {
        phe += accuracy(ComplexKind::Ellipsoid, holes, 5, n, k, 3.0, rmax, degrees.clone(), s);
        phr += accuracy(ComplexKind::Rips, holes, 5, n, k, 3.0, rmax, degrees.clone(), s);
    }
    phe /= seeds.len() as f64;
    phr /= seeds.len() as f64;
    println!("{tag:42} PHE {phe:.3}  PHR {phr:.3}");
}

fn main() {
    let three = [0usize, 1, 2];
    let two = [0usize, 1];
    for rmax in [0.3, 0.45, 0.9] {
        grid(&format!("3cls n=100 k=5 rmax={rmax} deg[1]"), &three, 100, 5, Some(rmax), Some(vec![1]));
    }
    grid("3cls n=100 k=5 rmax=0.45 deg[0,1]", &three, 100, 5, Some(0.45), None);
    grid("2cls n=100 k=5 rmax=0.45 deg[1]", &two, 100, 5, Some(0.45), Some(vec![1]));
    grid("2cls n=100 k=5 rmax=0.6 deg[0,1]", &two, 100, 5, Some(0.6), None);
    grid("3cls n=301 k=5 rmax=0.45 deg[1]", &three, 301, 5, Some(0.45), Some(vec![1]));
}
