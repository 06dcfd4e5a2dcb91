//! Scratch probe for dominance structure (not part of the deliverable).

use ephom::pipeline::{compute_barcode, ComplexKind, PipelineConfig};
use ephom::pointcloud::*;
use ephom::tangent::RatioSpec;

fn spans(label: &str, cloud: &PointCloud, kind: ComplexKind, q: f64, rmax: f64) {
    let mut cfg = PipelineConfig::new(kind);
    cfg.ratios = RatioSpec::Elongation { q, intrinsic_dim: 1 };
    cfg.rmax = Some(rmax);
    let t0 = std::time::Instant::now();
    let out = compute_barcode(cloud, &cfg).unwrap();
    let mut h1: Vec<(f64, f64, f64)> = out
        .barcode
        .in_dim(1)
        .map(|i| (i.lifespan(rmax), i.birth, i.death))
        .collect();
    h1.sort_by(|a, b| b.0.total_cmp(&a.0));
    h1.truncate(5);
    println!(
        "{label:28} kind={kind:?} rmax={rmax:.2} edges={} simplices={} t={:?}",
        out.n_edges,
        out.complex.n_simplices(),
        t0.elapsed()
    );
    for (l, b, d) in &h1 {
        println!("    span {l:.4}  [{b:.4}, {d:.4})");
    }
}

fn main() {
    let dog = generate_dog_bone(200, 7).unwrap();
    spans("dogbone n=200 q=3", &dog, ComplexKind::Ellipsoid, 3.0, 0.6);
    spans("dogbone n=200 rips", &dog, ComplexKind::Rips, 1.0, 0.6);

    let circle = generate_circle(20, 1.0, 0.0, 0).unwrap();
    spans("circle n=20 q=3", &circle, ComplexKind::Ellipsoid, 3.0, 0.6);
    spans("circle n=20 rips", &circle, ComplexKind::Rips, 1.0, 0.6);

    let eight = generate_figure_eight(100, 1.0, 0.0, 0).unwrap();
    spans("eight n=100 q=3", &eight, ComplexKind::Ellipsoid, 3.0, 0.6);
    spans("eight n=100 rips", &eight, ComplexKind::Rips, 1.0, 0.6);

    let eight200 = generate_figure_eight(200, 1.0, 0.0, 0).unwrap();
    spans("eight n=200 rips", &eight200, ComplexKind::Rips, 1.0, 0.6);

    for holes in [0usize, 1, 2] {
        let cloud = generate_disk_with_holes(301, holes, 5).unwrap();
        spans(&format!("holes={holes} n=301 q=3"), &cloud, ComplexKind::Ellipsoid, 3.0, 0.8);
        spans(&format!("holes={holes} n=301 rips"), &cloud, ComplexKind::Rips, 1.0, 0.8);
    }
}
