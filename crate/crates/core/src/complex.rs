//! Filtered flag complexes built from point clouds: Rips edges at half the
//! pairwise distance, ellipsoid edges at the first-touch radius, then clique
//! expansion up to a chosen dimension.
//!
//! Filtration values use the radius convention throughout: a Rips edge
//! appears at `|x - y| / 2`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{intersection_radius, SolverConfig};
use crate::pointcloud::PointCloud;
use crate::tangent::Ellipsoid;

/// One weighted edge of the 1-skeleton, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilteredEdge {
    pub i: u32,
    pub j: u32,
    pub value: f64,
}

impl FilteredEdge {
    pub fn new(i: u32, j: u32, value: f64) -> Self {
        if i <= j {
            FilteredEdge { i, j, value }
        } else {
            FilteredEdge { i: j, j: i, value }
        }
    }
}

/// Default edge cap: half the cloud diameter, scaled by the elongation and a
/// 5% headroom, so every bar born below the cap is preserved.
pub fn default_rmax(cloud: &PointCloud, q: f64) -> f64 {
    cloud.diameter() / 2.0 * q.max(1.0) * 1.05
}

/// All pairs whose Rips value `|x_i - x_j| / 2` is at most `rmax`.
pub fn build_rips_edges(cloud: &PointCloud, rmax: f64) -> Result<Vec<FilteredEdge>> {
    if !(rmax > 0.0) {
        return Err(Error::invalid(format!("rmax must be positive, got {rmax}")));
    }
    let n = cloud.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let value = cloud.distance(i, j) / 2.0;
            if value <= rmax {
                edges.push(FilteredEdge { i: i as u32, j: j as u32, value });
            }
        }
    }
    Ok(edges)
}

/// All pairs whose ellipsoid first-touch radius is at most `rmax`. Pairs
/// whose Rips value already exceeds `rmax` are skipped without solving,
/// since the touch radius is never smaller.
pub fn build_ellipsoid_edges(
    cloud: &PointCloud,
    ellipsoids: &[Ellipsoid],
    rmax: f64,
    cfg: &SolverConfig,
) -> Result<Vec<FilteredEdge>> {
    if !(rmax > 0.0) {
        return Err(Error::invalid(format!("rmax must be positive, got {rmax}")));
    }
    let n = cloud.n();
    if ellipsoids.len() != n {
        return Err(Error::invalid(format!(
            "{} ellipsoids for {n} points; they must align with cloud indices",
            ellipsoids.len()
        )));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if cloud.distance(i, j) / 2.0 <= rmax {
                pairs.push((i as u32, j as u32));
            }
        }
    }
    let solve = |&(i, j): &(u32, u32)| -> Result<Option<FilteredEdge>> {
        let radius = intersection_radius(&ellipsoids[i as usize], &ellipsoids[j as usize], cfg)
            .map_err(|e| Error::Numerical(format!("pair ({i}, {j}): {e}")))?;
        Ok((radius <= rmax).then_some(FilteredEdge { i, j, value: radius }))
    };

    #[cfg(feature = "parallel")]
    let computed: Result<Vec<_>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(solve).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let computed: Result<Vec<_>> = pairs.iter().map(solve).collect();

    Ok(computed?.into_iter().flatten().collect())
}

/// Bounds `D/2 <= eps* <= D / (2 r_min)` violated by an edge.
#[derive(Debug, Clone, Copy)]
pub struct NestingViolation {
    pub i: u32,
    pub j: u32,
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Checks every edge against the Rips interleaving bounds with slack `tol`.
pub fn verify_nesting(
    cloud: &PointCloud,
    ellipsoids: &[Ellipsoid],
    edges: &[FilteredEdge],
    tol: f64,
) -> Vec<NestingViolation> {
    let mut violations = Vec::new();
    for e in edges {
        let half = cloud.distance(e.i as usize, e.j as usize) / 2.0;
        let r_min = ellipsoids[e.i as usize].min_ratio().min(ellipsoids[e.j as usize].min_ratio());
        let lower = half - tol;
        let upper = half / r_min + tol;
        if e.value < lower || e.value > upper {
            violations.push(NestingViolation { i: e.i, j: e.j, radius: e.value, lower, upper });
        }
    }
    violations
}

// ---------------------------------------------------------------------------
// Filtered complexes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
struct DimLayer {
    /// Flat vertex ids, `dim + 1` per simplex, each tuple strictly increasing.
    verts: Vec<u32>,
    values: Vec<f64>,
}

impl DimLayer {
    fn empty() -> Self {
        DimLayer { verts: Vec::new(), values: Vec::new() }
    }

    fn len(&self) -> usize {
        self.values.len()
    }

    fn simplex(&self, dim: usize, idx: usize) -> &[u32] {
        let w = dim + 1;
        &self.verts[idx * w..(idx + 1) * w]
    }

    /// Orders simplices by (value, lexicographic vertex tuple).
    fn sort(&mut self, dim: usize) {
        let w = dim + 1;
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_unstable_by(|&a, &b| {
            self.values[a]
                .total_cmp(&self.values[b])
                .then_with(|| self.verts[a * w..(a + 1) * w].cmp(&self.verts[b * w..(b + 1) * w]))
        });
        let mut verts = Vec::with_capacity(self.verts.len());
        let mut values = Vec::with_capacity(self.values.len());
        for idx in order {
            verts.extend_from_slice(&self.verts[idx * w..(idx + 1) * w]);
            values.push(self.values[idx]);
        }
        self.verts = verts;
        self.values = values;
    }
}

/// Simplices up to a maximum dimension with monotone filtration values.
/// Within each dimension, simplices are kept sorted by (value, vertex tuple).
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    n_vertices: usize,
    layers: Vec<DimLayer>,
}

impl FilteredComplex {
    /// Builds a complex from explicit simplices, validating monotonicity.
    /// Vertices are implicit at value 0 and need not be listed.
    pub fn from_simplices(
        n_vertices: usize,
        simplices: impl IntoIterator<Item = (Vec<u32>, f64)>,
    ) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::invalid("a complex needs at least one vertex"));
        }
        let mut layers: Vec<DimLayer> = vec![DimLayer::empty()];
        for (mut verts, value) in simplices {
            if verts.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            verts.sort_unstable();
            if verts.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in simplex {verts:?}")));
            }
            if verts.last().copied().unwrap() as usize >= n_vertices {
                return Err(Error::InvalidComplex(format!("vertex id out of range in {verts:?}")));
            }
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidComplex(format!("bad filtration value {value} for {verts:?}")));
            }
            let dim = verts.len() - 1;
            if dim == 0 {
                if value != 0.0 {
                    return Err(Error::InvalidComplex("vertices must have filtration value 0".into()));
                }
                continue; // vertices are implicit
            }
            while layers.len() <= dim {
                layers.push(DimLayer::empty());
            }
            layers[dim].verts.extend_from_slice(&verts);
            layers[dim].values.push(value);
        }
        // vertices at value 0
        layers[0].verts = (0..n_vertices as u32).collect();
        layers[0].values = vec![0.0; n_vertices];
        for (dim, layer) in layers.iter_mut().enumerate() {
            layer.sort(dim);
        }
        let complex = FilteredComplex { n_vertices, layers };
        complex.validate()?;
        Ok(complex)
    }

    /// Monotonicity and uniqueness across all stored simplices.
    pub(crate) fn validate(&self) -> Result<()> {
        for dim in 1..self.layers.len() {
            let layer = &self.layers[dim];
            let mut seen: HashMap<&[u32], f64> = HashMap::with_capacity(layer.len());
            for idx in 0..layer.len() {
                let s = layer.simplex(dim, idx);
                if seen.insert(s, layer.values[idx]).is_some() {
                    return Err(Error::InvalidComplex(format!("duplicate simplex {s:?}")));
                }
            }
            let lower = &self.layers[dim - 1];
            let mut lower_vals: HashMap<&[u32], f64> = HashMap::with_capacity(lower.len());
            for idx in 0..lower.len() {
                lower_vals.insert(lower.simplex(dim - 1, idx), lower.values[idx]);
            }
            let mut facet = vec![0u32; dim];
            for idx in 0..layer.len() {
                let s = layer.simplex(dim, idx);
                for drop in 0..=dim {
                    facet.clear();
                    facet.extend(s.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &v)| v));
                    match lower_vals.get(facet.as_slice()) {
                        Some(&fv) if fv <= layer.values[idx] => {}
                        Some(&fv) => {
                            return Err(Error::InvalidComplex(format!(
                                "face {facet:?} at {fv} appears after coface {s:?} at {}",
                                layer.values[idx]
                            )));
                        }
                        None => {
                            return Err(Error::InvalidComplex(format!(
                                "face {facet:?} of {s:?} is missing"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Largest dimension with stored simplices.
    pub fn dmax(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn len_dim(&self, dim: usize) -> usize {
        self.layers.get(dim).map_or(0, DimLayer::len)
    }

    pub fn n_simplices(&self) -> usize {
        self.layers.iter().map(DimLayer::len).sum()
    }

    /// Simplices of one dimension in filtration order.
    pub fn simplices_in_dim(&self, dim: usize) -> impl Iterator<Item = (&[u32], f64)> {
        let layer = self.layers.get(dim);
        let w = dim + 1;
        layer
            .map(move |l| l.verts.chunks_exact(w).zip(l.values.iter().copied()))
            .into_iter()
            .flatten()
    }

    pub fn value_of(&self, verts: &[u32]) -> Option<f64> {
        let dim = verts.len().checked_sub(1)?;
        self.simplices_in_dim(dim).find(|(s, _)| *s == verts).map(|(_, v)| v)
    }

    /// One simplex per line, "v0 v1 ... vk<TAB>value", ordered by
    /// (value, dimension, vertex tuple).
    pub fn dump(&self) -> String {
        let mut rows: Vec<(f64, usize, &[u32])> = Vec::with_capacity(self.n_simplices());
        for dim in 0..=self.dmax() {
            for (s, v) in self.simplices_in_dim(dim) {
                rows.push((v, dim, s));
            }
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(b.2)));
        let mut out = String::new();
        for (v, _, s) in rows {
            let ids: Vec<String> = s.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}\t{v:.11e}", ids.join(" "));
        }
        out
    }
}

/// Expands an edge list to the flag complex with all cliques up to `dmax`.
/// Each simplex takes the maximum of its edge values; vertices sit at 0.
pub fn expand_flag(n_vertices: usize, edges: &[FilteredEdge], dmax: usize) -> Result<FilteredComplex> {
    if n_vertices == 0 {
        return Err(Error::invalid("a complex needs at least one vertex"));
    }
    if dmax == 0 {
        return Err(Error::invalid("dmax must be at least 1"));
    }
    let mut normalized: Vec<FilteredEdge> = Vec::with_capacity(edges.len());
    for e in edges {
        if e.i == e.j {
            return Err(Error::invalid(format!("self loop at vertex {}", e.i)));
        }
        if e.i.max(e.j) as usize >= n_vertices {
            return Err(Error::invalid(format!("edge ({}, {}) out of range", e.i, e.j)));
        }
        if !e.value.is_finite() || e.value < 0.0 {
            return Err(Error::invalid(format!("bad edge value {} on ({}, {})", e.value, e.i, e.j)));
        }
        normalized.push(FilteredEdge::new(e.i, e.j, e.value));
    }
    normalized.sort_by(|a, b| (a.i, a.j).cmp(&(b.i, b.j)));
    if normalized.windows(2).any(|w| (w[0].i, w[0].j) == (w[1].i, w[1].j)) {
        return Err(Error::invalid("duplicate edge in input"));
    }

    // Upper-neighbour adjacency, sorted by neighbour id.
    let mut upper: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n_vertices];
    for e in &normalized {
        upper[e.i as usize].push((e.j, e.value));
    }

    let mut layers: Vec<DimLayer> = Vec::with_capacity(dmax + 1);
    layers.push(DimLayer {
        verts: (0..n_vertices as u32).collect(),
        values: vec![0.0; n_vertices],
    });
    let mut edge_layer = DimLayer::empty();
    for e in &normalized {
        edge_layer.verts.extend_from_slice(&[e.i, e.j]);
        edge_layer.values.push(e.value);
    }
    layers.push(edge_layer);

    for dim in 2..=dmax {
        let prev = &layers[dim - 1];
        let mut layer = DimLayer::empty();
        let mut common: Vec<(u32, f64)> = Vec::new();
        let mut next: Vec<(u32, f64)> = Vec::new();
        for idx in 0..prev.len() {
            let s = prev.simplex(dim - 1, idx);
            let base = prev.values[idx];
            // Common upper neighbours of all vertices of s, carrying the
            // largest connecting-edge value seen.
            common.clear();
            common.extend_from_slice(&upper[s[0] as usize]);
            for &v in &s[1..] {
                let other = &upper[v as usize];
                next.clear();
                let (mut a, mut b) = (0, 0);
                while a < common.len() && b < other.len() {
                    match common[a].0.cmp(&other[b].0) {
                        std::cmp::Ordering::Less => a += 1,
                        std::cmp::Ordering::Greater => b += 1,
                        std::cmp::Ordering::Equal => {
                            next.push((common[a].0, common[a].1.max(other[b].1)));
                            a += 1;
                            b += 1;
                        }
                    }
                }
                std::mem::swap(&mut common, &mut next);
                if common.is_empty() {
                    break;
                }
            }
            for &(u, edge_max) in &common {
                layer.verts.extend_from_slice(s);
                layer.verts.push(u);
                layer.values.push(base.max(edge_max));
            }
        }
        if layer.len() == 0 {
            break;
        }
        layers.push(layer);
    }

    for (dim, layer) in layers.iter_mut().enumerate() {
        layer.sort(dim);
    }
    Ok(FilteredComplex { n_vertices, layers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcloud::{generate_circle, seeded_rng, PointCloud};
    use crate::tangent::{construct_ellipsoids, RatioSpec};
    use rand::RngExt;

    fn cloud(points: &[[f64; 2]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rips_edge_value_is_half_distance() {
        let c = cloud(&[[0.0, 0.0], [2.0, 0.0]]);
        let edges = build_rips_edges(&c, 10.0).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].value, 1.0);
    }

    #[test]
    fn rips_unit_square() {
        let c = cloud(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let edges = build_rips_edges(&c, 10.0).unwrap();
        let mut sides = 0;
        let mut diagonals = 0;
        for e in &edges {
            if (e.value - 0.5).abs() < 1e-12 {
                sides += 1;
            } else if (e.value - 2.0f64.sqrt() / 2.0).abs() < 1e-12 {
                diagonals += 1;
            }
        }
        assert_eq!((sides, diagonals), (4, 2));
    }

    #[test]
    fn rips_duplicate_points_give_zero_edge() {
        let c = cloud(&[[1.0, 1.0], [1.0, 1.0]]);
        let edges = build_rips_edges(&c, 1.0).unwrap();
        assert_eq!(edges[0].value, 0.0);
    }

    #[test]
    fn rips_respects_rmax() {
        let c = cloud(&[[0.0, 0.0], [2.0, 0.0], [10.0, 0.0]]);
        let edges = build_rips_edges(&c, 1.5).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!((edges[0].i, edges[0].j), (0, 1));
    }

    #[test]
    fn ellipsoid_edges_with_unit_q_match_rips() {
        let mut rng = seeded_rng(20);
        let pts: Vec<Vec<f64>> = (0..15).map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]).collect();
        let c = PointCloud::new(pts).unwrap();
        let cfg = SolverConfig::default();
        let ellipsoids = construct_ellipsoids(&c, 4, &RatioSpec::Elongation { q: 1.0, intrinsic_dim: 1 }).unwrap();
        let rmax = default_rmax(&c, 1.0);
        let ell = build_ellipsoid_edges(&c, &ellipsoids, rmax, &cfg).unwrap();
        let rips = build_rips_edges(&c, rmax).unwrap();
        assert_eq!(ell.len(), rips.len());
        for (a, b) in ell.iter().zip(&rips) {
            assert_eq!((a.i, a.j), (b.i, b.j));
            assert!((a.value - b.value).abs() <= 10.0 * cfg.radius_rel_tol * b.value.max(1e-9));
        }
    }

    #[test]
    fn two_points_give_one_edge() {
        let c = cloud(&[[0.0, 0.0], [1.0, 0.0]]);
        let cfg = SolverConfig::default();
        let ellipsoids = construct_ellipsoids(&c, 1, &RatioSpec::Elongation { q: 3.0, intrinsic_dim: 1 }).unwrap();
        let edges = build_ellipsoid_edges(&c, &ellipsoids, 5.0, &cfg).unwrap();
        assert_eq!(edges.len(), 1);
    }

    #[test]
    fn circle_edges_sit_inside_nesting_bounds() {
        let c = generate_circle(20, 1.0, 0.0, 0).unwrap();
        let cfg = SolverConfig::default();
        let q = 3.0;
        let ellipsoids = construct_ellipsoids(&c, 5, &RatioSpec::Elongation { q, intrinsic_dim: 1 }).unwrap();
        let edges = build_ellipsoid_edges(&c, &ellipsoids, default_rmax(&c, q), &cfg).unwrap();
        assert!(!edges.is_empty());
        for e in &edges {
            let half = c.distance(e.i as usize, e.j as usize) / 2.0;
            assert!(e.value >= half - 1e-6, "edge below D/2");
            assert!(e.value <= q * half + 1e-6, "edge above qD/2");
        }
        assert!(verify_nesting(&c, &ellipsoids, &edges, 1e-6).is_empty());
    }

    #[test]
    fn nesting_check_reports_corrupted_edges() {
        let c = generate_circle(10, 1.0, 0.0, 0).unwrap();
        let cfg = SolverConfig::default();
        let ellipsoids = construct_ellipsoids(&c, 3, &RatioSpec::Elongation { q: 2.0, intrinsic_dim: 1 }).unwrap();
        let mut edges = build_ellipsoid_edges(&c, &ellipsoids, 5.0, &cfg).unwrap();
        edges[3].value = 1000.0;
        let violations = verify_nesting(&c, &ellipsoids, &edges, 1e-6);
        assert_eq!(violations.len(), 1);
        assert_eq!((violations[0].i, violations[0].j), (edges[3].i, edges[3].j));
    }

    #[test]
    fn triangle_takes_max_edge_value() {
        let edges = [
            FilteredEdge::new(0, 1, 1.0),
            FilteredEdge::new(1, 2, 2.0),
            FilteredEdge::new(0, 2, 3.0),
        ];
        let complex = expand_flag(3, &edges, 2).unwrap();
        assert_eq!(complex.value_of(&[0, 1, 2]), Some(3.0));
        assert_eq!(complex.len_dim(2), 1);
    }

    #[test]
    fn path_graph_has_no_triangles() {
        let edges = [FilteredEdge::new(0, 1, 1.0), FilteredEdge::new(1, 2, 1.0)];
        let complex = expand_flag(3, &edges, 2).unwrap();
        assert_eq!(complex.len_dim(2), 0);
        assert_eq!(complex.dmax(), 1);
    }

    #[test]
    fn duplicate_edges_rejected() {
        let edges = [FilteredEdge::new(0, 1, 1.0), FilteredEdge::new(1, 0, 2.0)];
        assert!(matches!(expand_flag(2, &edges, 2), Err(Error::InvalidArgument(_))));
    }

    /// Brute-force clique enumeration with max-edge values.
    fn brute_force_cliques(n: usize, edges: &[FilteredEdge], dmax: usize) -> Vec<(Vec<u32>, f64)> {
        let mut adj = HashMap::new();
        for e in edges {
            adj.insert((e.i, e.j), e.value);
        }
        let mut out = Vec::new();
        let mut stack: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
        while let Some(clique) = stack.pop() {
            if clique.len() >= 2 {
                let mut value = 0.0f64;
                for (a, &u) in clique.iter().enumerate() {
                    for &v in &clique[a + 1..] {
                        value = value.max(adj[&(u, v)]);
                    }
                }
                out.push((clique.clone(), value));
            }
            if clique.len() == dmax + 1 {
                continue;
            }
            let last = *clique.last().unwrap();
            for v in (last + 1)..n as u32 {
                if clique.iter().all(|&u| adj.contains_key(&(u, v))) {
                    let mut bigger = clique.clone();
                    bigger.push(v);
                    stack.push(bigger);
                }
            }
        }
        out
    }

    #[test]
    fn expansion_matches_brute_force_cliques() {
        let mut rng = seeded_rng(21);
        for trial in 0..20 {
            let n = 8;
            let mut edges = Vec::new();
            for i in 0..n as u32 {
                for j in (i + 1)..n as u32 {
                    if rng.random_range(0.0f64..1.0) < 0.55 {
                        edges.push(FilteredEdge::new(i, j, rng.random_range(0.0f64..1.0)));
                    }
                }
            }
            let complex = expand_flag(n, &edges, 3).unwrap();
            let mut expected = brute_force_cliques(n, &edges, 3);
            expected.sort_by(|a, b| a.0.cmp(&b.0));
            let mut got: Vec<(Vec<u32>, f64)> = Vec::new();
            for dim in 1..=complex.dmax() {
                for (s, v) in complex.simplices_in_dim(dim) {
                    got.push((s.to_vec(), v));
                }
            }
            got.sort_by(|a, b| a.0.cmp(&b.0));
            assert_eq!(got, expected, "trial {trial}");
        }
    }

    #[test]
    fn complexes_are_monotone_with_flag_values() {
        let mut rng = seeded_rng(22);
        let pts: Vec<Vec<f64>> = (0..12).map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]).collect();
        let c = PointCloud::new(pts).unwrap();
        let edges = build_rips_edges(&c, 0.8).unwrap();
        let complex = expand_flag(c.n(), &edges, 3).unwrap();
        complex.validate().unwrap();
        for dim in 2..=complex.dmax() {
            for (s, v) in complex.simplices_in_dim(dim) {
                let mut edge_max = 0.0f64;
                for a in 0..s.len() {
                    for b in (a + 1)..s.len() {
                        edge_max = edge_max.max(complex.value_of(&[s[a], s[b]]).unwrap());
                    }
                }
                assert_eq!(v, edge_max, "flag value mismatch on {s:?}");
            }
        }
    }

    #[test]
    fn from_simplices_validates_monotonicity() {
        // Hollow triangle with a late fill is monotone.
        let ok = FilteredComplex::from_simplices(
            3,
            vec![
                (vec![0, 1], 1.0),
                (vec![0, 2], 1.0),
                (vec![1, 2], 1.0),
                (vec![0, 1, 2], 2.0),
            ],
        );
        assert!(ok.is_ok());

        let missing_face = FilteredComplex::from_simplices(3, vec![(vec![0, 1, 2], 1.0)]);
        assert!(matches!(missing_face, Err(Error::InvalidComplex(_))));

        let late_face = FilteredComplex::from_simplices(
            3,
            vec![
                (vec![0, 1], 3.0),
                (vec![0, 2], 1.0),
                (vec![1, 2], 1.0),
                (vec![0, 1, 2], 2.0),
            ],
        );
        assert!(matches!(late_face, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn dump_is_sorted_by_value_then_dim() {
        let edges = [
            FilteredEdge::new(0, 1, 0.5),
            FilteredEdge::new(1, 2, 0.25),
            FilteredEdge::new(0, 2, 0.5),
        ];
        let complex = expand_flag(3, &edges, 2).unwrap();
        let dump = complex.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 3 + 3 + 1);
        assert!(lines[0].starts_with("0\t"));
        assert!(lines[3].starts_with("1 2\t"));
        assert!(lines[6].starts_with("0 1 2\t"));
    }
}
