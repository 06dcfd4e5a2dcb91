//! Shared test oracles, deliberately independent of the implementation
//! paths they check.

#![allow(dead_code)]

use std::collections::HashMap;

use ephom::complex::FilteredComplex;
use ephom::geometry::{ellipsoids_intersect, ShapeMatrix, SolverConfig};
use ephom::persistence::{sort_filtration, Barcode, Interval};
use ephom::pointcloud::{euclidean, seeded_rng, PointCloud, SeededRng};
use ephom::tangent::{Ellipsoid, RatioSpec};
use nalgebra::{DMatrix, DVector};
use rand::RngExt;

pub fn random_cloud(rng: &mut SeededRng, n: usize, d: usize, half_width: f64) -> PointCloud {
    let pts = (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-half_width..half_width)).collect())
        .collect();
    PointCloud::new(pts).unwrap()
}

pub fn random_ellipsoid(rng: &mut SeededRng, d: usize, q_max: f64) -> Ellipsoid {
    let raw = DMatrix::from_fn(d, d, |_, _| rng.random_range(-1.0f64..1.0));
    let axes = raw.qr().q();
    let q: f64 = rng.random_range(1.0..q_max);
    let m = rng.random_range(1..d.max(2));
    let ratios = RatioSpec::Elongation { q, intrinsic_dim: m.min(d) }.expand(d).unwrap();
    let center: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0f64..2.0)).collect();
    Ellipsoid::new(center, axes, ratios).unwrap()
}

/// Random monotone filtered complex: vertices at 0, random-valued edges,
/// higher simplices on full clique support with value bumps.
pub fn random_complex(rng: &mut SeededRng, max_vertices: usize, dmax: usize) -> FilteredComplex {
    let n = rng.random_range(2..=max_vertices);
    let mut values: HashMap<Vec<u32>, f64> = HashMap::new();
    let mut level: Vec<Vec<u32>> = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            if rng.random_range(0.0f64..1.0) < 0.5 {
                values.insert(vec![i, j], rng.random_range(0.0f64..1.0));
                level.push(vec![i, j]);
            }
        }
    }
    for _dim in 2..=dmax {
        let mut next = Vec::new();
        for verts in &level {
            let last = *verts.last().unwrap();
            'candidates: for u in (last + 1)..n as u32 {
                if rng.random_range(0.0f64..1.0) >= 0.6 {
                    continue;
                }
                let mut bigger = verts.clone();
                bigger.push(u);
                // every facet must already exist for downward closure
                let mut base = 0.0f64;
                for drop in 0..bigger.len() {
                    let facet: Vec<u32> = bigger
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    match values.get(&facet) {
                        Some(&fv) => base = base.max(fv),
                        None => continue 'candidates,
                    }
                }
                let bump: f64 = rng.random_range(0.0..0.2);
                values.insert(bigger.clone(), base + bump);
                next.push(bigger);
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    FilteredComplex::from_simplices(n, values.into_iter().collect::<Vec<_>>()).unwrap()
}

/// Plain single-pass column reduction over the whole boundary matrix in
/// filtration order: no clearing, no per-dimension processing. Used to
/// cross-check the production reduction.
pub fn naive_barcode(complex: &FilteredComplex, max_dim: usize) -> Barcode {
    let order = sort_filtration(complex).unwrap();
    let m = order.len();
    let index: HashMap<&[u32], usize> =
        order.iter().enumerate().map(|(i, (s, _))| (s.as_slice(), i)).collect();

    let mut pivot_owner: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut killed = vec![false; m];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (j, (verts, _)) in order.iter().enumerate() {
        if verts.len() == 1 {
            continue;
        }
        let mut col: Vec<usize> = (0..verts.len())
            .map(|drop| {
                let facet: Vec<u32> = verts
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != drop)
                    .map(|(_, &v)| v)
                    .collect();
                index[facet.as_slice()]
            })
            .collect();
        col.sort_unstable();
        loop {
            match col.last().copied() {
                None => break,
                Some(low) => {
                    if let Some(other) = pivot_owner.get(&low) {
                        let mut merged = Vec::with_capacity(col.len() + other.len());
                        let (mut a, mut b) = (0, 0);
                        while a < col.len() && b < other.len() {
                            match col[a].cmp(&other[b]) {
                                std::cmp::Ordering::Less => {
                                    merged.push(col[a]);
                                    a += 1;
                                }
                                std::cmp::Ordering::Greater => {
                                    merged.push(other[b]);
                                    b += 1;
                                }
                                std::cmp::Ordering::Equal => {
                                    a += 1;
                                    b += 1;
                                }
                            }
                        }
                        merged.extend_from_slice(&col[a..]);
                        merged.extend_from_slice(&other[b..]);
                        col = merged;
                    } else {
                        killed[low] = true;
                        killed[j] = true; // j is a death, not a cycle creator
                        pairs.push((low, j));
                        pivot_owner.insert(low, col);
                        break;
                    }
                }
            }
        }
    }

    let mut intervals = Vec::new();
    for (low, j) in pairs {
        let dim = order[low].0.len() - 1;
        if dim > max_dim {
            continue;
        }
        let (birth, death) = (order[low].1, order[j].1);
        if birth != death {
            intervals.push(Interval { dim, birth, death });
        }
    }
    for (j, (verts, value)) in order.iter().enumerate() {
        let dim = verts.len() - 1;
        if !killed[j] && dim <= max_dim {
            intervals.push(Interval { dim, birth: *value, death: f64::INFINITY });
        }
    }
    Barcode::new(intervals)
}

/// First-touch radius by bisection over the intersection predicate; kept as
/// an oracle for the closed-form scaling identity.
pub fn bisection_radius(e1: &Ellipsoid, e2: &Ellipsoid, cfg: &SolverConfig, rel_tol: f64) -> f64 {
    let dist = euclidean(e1.center(), e2.center());
    if dist == 0.0 {
        return 0.0;
    }
    let r_min = e1.min_ratio().min(e2.min_ratio());
    let mut lo = dist / 2.0 * 0.99;
    let mut hi = dist / (2.0 * r_min) * 1.01;
    assert!(
        ellipsoids_intersect(e1, e2, hi, cfg).unwrap(),
        "upper bracket must intersect"
    );
    if ellipsoids_intersect(e1, e2, lo, cfg).unwrap() {
        return lo; // touch radius is at the Rips bound
    }
    while (hi - lo) / hi > rel_tol {
        let mid = 0.5 * (lo + hi);
        if ellipsoids_intersect(e1, e2, mid, cfg).unwrap() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Monte-Carlo membership oracle: samples points uniformly in `e1` at scale
/// `eps` and tests them against `e2`'s quadratic form.
pub fn mc_intersects(e1: &Ellipsoid, e2: &Ellipsoid, eps: f64, samples: usize, rng: &mut SeededRng) -> bool {
    let d = e1.dim();
    let s2 = ShapeMatrix::from_ellipsoid(e2);
    let quad = s2.matrix();
    let c2 = DVector::from_column_slice(e2.center());
    let axes = e1.axes();
    let mut drawn = 0;
    while drawn < samples {
        // uniform in the unit ball by rejection
        let u: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0f64..1.0)).collect();
        if u.iter().map(|x| x * x).sum::<f64>() > 1.0 {
            continue;
        }
        drawn += 1;
        let mut x = DVector::from_column_slice(e1.center());
        for k in 0..d {
            let len = eps * e1.ratios()[k];
            x.axpy(len * u[k], &axes.column(k).into_owned(), 1.0);
        }
        let diff = &x - &c2;
        if (quad * &diff).dot(&diff) <= eps * eps {
            return true;
        }
    }
    false
}

/// Lifespans in one degree, descending, with essential deaths clipped to `cap`.
pub fn sorted_lifespans(barcode: &Barcode, dim: usize, cap: f64) -> Vec<f64> {
    let mut spans: Vec<f64> = barcode.in_dim(dim).map(|i| i.lifespan(cap)).collect();
    spans.sort_by(|a, b| b.total_cmp(a));
    spans
}

/// `spans[idx]` with zero padding past the end.
pub fn span_or_zero(spans: &[f64], idx: usize) -> f64 {
    spans.get(idx).copied().unwrap_or(0.0)
}

pub fn rng(seed: u64) -> SeededRng {
    seeded_rng(seed)
}
