//! Local frame estimation: each sample point gets an orthonormal frame from
//! PCA over its k nearest neighbours, plus user-chosen axis ratios, yielding
//! one ellipsoid per point.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::pointcloud::PointCloud;

/// Coordinates are compared exactly, so tie-breaking by point id is stable.
/// k-d trees degrade in high dimension; above this we brute-force.
const KDTREE_MAX_DIM: usize = 16;

// ---------------------------------------------------------------------------
// Nearest neighbours
// ---------------------------------------------------------------------------

mod kdtree {
    use super::*;

    struct Node {
        point: u32,
        split_dim: u32,
        left: i32,
        right: i32,
    }

    pub(super) struct KdTree {
        nodes: Vec<Node>,
        root: i32,
    }

    impl KdTree {
        pub(super) fn build(cloud: &PointCloud) -> Self {
            let mut ids: Vec<u32> = (0..cloud.n() as u32).collect();
            let mut nodes = Vec::with_capacity(cloud.n());
            let root = build_rec(cloud, &mut ids, &mut nodes);
            KdTree { nodes, root }
        }

        /// The `k` ids nearest to `query` under (distance, id) order,
        /// excluding `skip`. Returns (dist^2, id) pairs, best first.
        pub(super) fn k_nearest(
            &self,
            cloud: &PointCloud,
            query: &[f64],
            skip: u32,
            k: usize,
        ) -> Vec<(f64, u32)> {
            let mut heap: Vec<(f64, u32)> = Vec::with_capacity(k + 1);
            self.search(cloud, query, skip, k, self.root, &mut heap);
            heap.sort_unstable_by(cmp_entry);
            heap
        }

        fn search(
            &self,
            cloud: &PointCloud,
            query: &[f64],
            skip: u32,
            k: usize,
            node_idx: i32,
            heap: &mut Vec<(f64, u32)>,
        ) {
            if node_idx < 0 {
                return;
            }
            let node = &self.nodes[node_idx as usize];
            let p = cloud.point(node.point as usize);
            if node.point != skip {
                let d2 = dist2(query, p);
                offer(heap, k, (d2, node.point));
            }
            let diff = query[node.split_dim as usize] - p[node.split_dim as usize];
            let (near, far) = if diff < 0.0 { (node.left, node.right) } else { (node.right, node.left) };
            self.search(cloud, query, skip, k, near, heap);
            // The far side can still hold an equal-distance, smaller-id point,
            // so only prune on strict inequality.
            if heap.len() < k || diff * diff <= heap[heap.len() - 1].0 {
                self.search(cloud, query, skip, k, far, heap);
            }
        }
    }

    fn cmp_entry(a: &(f64, u32), b: &(f64, u32)) -> std::cmp::Ordering {
        a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
    }

    /// Keeps `heap` as the k best entries, sorted worst-last.
    fn offer(heap: &mut Vec<(f64, u32)>, k: usize, entry: (f64, u32)) {
        let pos = heap.partition_point(|e| cmp_entry(e, &entry) == std::cmp::Ordering::Less);
        if heap.len() < k {
            heap.insert(pos, entry);
        } else if pos < heap.len() {
            heap.insert(pos, entry);
            heap.pop();
        }
    }

    fn dist2(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    }

    fn build_rec(cloud: &PointCloud, ids: &mut [u32], nodes: &mut Vec<Node>) -> i32 {
        if ids.is_empty() {
            return -1;
        }
        let split_dim = widest_dim(cloud, ids);
        let mid = ids.len() / 2;
        ids.select_nth_unstable_by(mid, |&a, &b| {
            let ca = cloud.point(a as usize)[split_dim];
            let cb = cloud.point(b as usize)[split_dim];
            ca.total_cmp(&cb).then(a.cmp(&b))
        });
        let point = ids[mid];
        let (lo, rest) = ids.split_at_mut(mid);
        let hi = &mut rest[1..];
        let left = build_rec(cloud, lo, nodes);
        let right = build_rec(cloud, hi, nodes);
        nodes.push(Node { point, split_dim: split_dim as u32, left, right });
        (nodes.len() - 1) as i32
    }

    fn widest_dim(cloud: &PointCloud, ids: &[u32]) -> usize {
        let d = cloud.dim();
        let mut best = (0usize, f64::NEG_INFINITY);
        for k in 0..d {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &i in ids {
                let c = cloud.point(i as usize)[k];
                lo = lo.min(c);
                hi = hi.max(c);
            }
            if hi - lo > best.1 {
                best = (k, hi - lo);
            }
        }
        best.0
    }
}

/// Spatial index over a cloud; k-d tree for low ambient dimension, brute
/// force above [`KDTREE_MAX_DIM`]. Both paths return identical results.
pub struct NeighbourIndex<'a> {
    cloud: &'a PointCloud,
    tree: Option<kdtree::KdTree>,
}

impl<'a> NeighbourIndex<'a> {
    pub fn new(cloud: &'a PointCloud) -> Self {
        let tree = (cloud.dim() <= KDTREE_MAX_DIM).then(|| kdtree::KdTree::build(cloud));
        NeighbourIndex { cloud, tree }
    }

    /// Ids of the `k` points closest to point `index`, excluding itself,
    /// ordered by (distance, id). Ties go to the smaller id.
    pub fn k_nearest(&self, index: usize, k: usize) -> Result<Vec<usize>> {
        let n = self.cloud.n();
        if index >= n {
            return Err(Error::invalid(format!("point index {index} out of range ({n} points)")));
        }
        if k == 0 || k >= n {
            return Err(Error::invalid(format!("k must satisfy 1 <= k <= {}, got {k}", n - 1)));
        }
        let query = self.cloud.point(index);
        let found = match &self.tree {
            Some(tree) => tree.k_nearest(self.cloud, query, index as u32, k),
            None => {
                let mut all: Vec<(f64, u32)> = (0..n)
                    .filter(|&j| j != index)
                    .map(|j| {
                        let d = self.cloud.distance(index, j);
                        (d * d, j as u32)
                    })
                    .collect();
                all.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                all.truncate(k);
                all
            }
        };
        Ok(found.into_iter().map(|(_, id)| id as usize).collect())
    }
}

/// One-shot form of [`NeighbourIndex::k_nearest`].
pub fn k_nearest_neighbours(cloud: &PointCloud, index: usize, k: usize) -> Result<Vec<usize>> {
    NeighbourIndex::new(cloud).k_nearest(index, k)
}

// ---------------------------------------------------------------------------
// PCA frames
// ---------------------------------------------------------------------------

/// Orthonormal frame with columns ordered by descending eigenvalue.
pub struct PcaFrame {
    pub axes: DMatrix<f64>,
    pub eigenvalues: Vec<f64>,
}

/// Relative eigenvalue threshold below which a direction is treated as
/// degenerate and replaced by Gram-Schmidt completion.
const RANK_TOL: f64 = 1e-10;

/// Eigen-decomposition of the covariance of `points` centered at their mean.
///
/// Axes carry a deterministic sign: the first coordinate of each axis larger
/// than 1e-12 in magnitude is made positive. Rank-deficient covariance is
/// completed to a full frame by Gram-Schmidt against the standard basis in
/// index order.
pub fn pca_frame(points: &[&[f64]]) -> Result<PcaFrame> {
    if points.is_empty() {
        return Err(Error::invalid("pca_frame needs a non-empty neighbourhood"));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::invalid("pca_frame points must share one dimension"));
    }
    let len = points.len() as f64;
    let mut mean = vec![0.0; d];
    for p in points {
        for (m, &c) in mean.iter_mut().zip(*p) {
            *m += c;
        }
    }
    for m in &mut mean {
        *m /= len;
    }
    let mut cov = DMatrix::zeros(d, d);
    for p in points {
        for i in 0..d {
            let ci = p[i] - mean[i];
            for j in i..d {
                cov[(i, j)] += ci * (p[j] - mean[j]);
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            cov[(i, j)] /= len;
            cov[(j, i)] = cov[(i, j)];
        }
    }

    let eigen = cov.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        let (va, vb): (f64, f64) = (eigen.eigenvalues[a], eigen.eigenvalues[b]);
        vb.total_cmp(&va).then(a.cmp(&b))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();

    let lambda_max = eigenvalues[0].max(0.0);
    let threshold = lambda_max * RANK_TOL;
    let mut axes: Vec<DVector<f64>> = Vec::with_capacity(d);
    for (rank, &col) in order.iter().enumerate() {
        if eigenvalues[rank] <= threshold {
            break;
        }
        let mut v = eigen.eigenvectors.column(col).into_owned();
        fix_sign(&mut v);
        axes.push(v);
    }
    // Complete a rank-deficient frame from the standard basis.
    let mut basis = 0;
    while axes.len() < d && basis < d {
        let mut v = DVector::zeros(d);
        v[basis] = 1.0;
        basis += 1;
        for _ in 0..2 {
            for a in &axes {
                let proj = a.dot(&v);
                v.axpy(-proj, a, 1.0);
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            v /= norm;
            fix_sign(&mut v);
            axes.push(v);
        }
    }
    debug_assert_eq!(axes.len(), d);
    Ok(PcaFrame { axes: DMatrix::from_columns(&axes), eigenvalues })
}

fn fix_sign(v: &mut DVector<f64>) {
    for i in 0..v.len() {
        if v[i].abs() > 1e-12 {
            if v[i] < 0.0 {
                *v = -&*v;
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Ellipsoids
// ---------------------------------------------------------------------------

/// A PCA-aligned ellipsoid attached to one sample point. At filtration scale
/// `eps` its i-th semi-axis has length `eps * ratios[i]`.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    center: Vec<f64>,
    axes: DMatrix<f64>,
    ratios: Vec<f64>,
}

impl Ellipsoid {
    pub fn new(center: Vec<f64>, axes: DMatrix<f64>, ratios: Vec<f64>) -> Result<Self> {
        let d = center.len();
        if axes.nrows() != d || axes.ncols() != d || ratios.len() != d {
            return Err(Error::invalid("ellipsoid center, axes and ratios must share one dimension"));
        }
        let gram = axes.transpose() * &axes;
        let mut residual = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let expect = if i == j { 1.0 } else { 0.0 };
                residual = residual.max((gram[(i, j)] - expect).abs());
            }
        }
        if residual > 1e-9 {
            return Err(Error::invalid(format!("axes are not orthonormal (residual {residual:.2e})")));
        }
        if ratios[0] != 1.0 {
            return Err(Error::invalid("largest axis ratio must be exactly 1"));
        }
        for w in ratios.windows(2) {
            if !(w[1] > 0.0 && w[1] <= w[0]) {
                return Err(Error::invalid("ratios must be non-increasing and in (0, 1]"));
            }
        }
        Ok(Ellipsoid { center, axes, ratios })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn axes(&self) -> &DMatrix<f64> {
        &self.axes
    }

    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn min_ratio(&self) -> f64 {
        *self.ratios.last().unwrap()
    }
}

/// How to assign semi-axis ratios to a PCA frame.
#[derive(Debug, Clone, PartialEq)]
pub enum RatioSpec {
    /// `intrinsic_dim` tangent axes at ratio 1, the rest at `1/q`.
    Elongation { q: f64, intrinsic_dim: usize },
    /// Explicit non-increasing positive ratios, normalised by the maximum.
    Explicit(Vec<f64>),
}

impl RatioSpec {
    pub fn expand(&self, d: usize) -> Result<Vec<f64>> {
        match self {
            RatioSpec::Elongation { q, intrinsic_dim } => {
                if !(*q >= 1.0 && q.is_finite()) {
                    return Err(Error::invalid(format!("axis ratio q must be >= 1, got {q}")));
                }
                let m = *intrinsic_dim;
                if m == 0 || m > d {
                    return Err(Error::invalid(format!("intrinsic dimension {m} not in 1..={d}")));
                }
                let mut ratios = vec![1.0; d];
                for r in ratios.iter_mut().skip(m) {
                    *r = 1.0 / q;
                }
                Ok(ratios)
            }
            RatioSpec::Explicit(list) => {
                if list.len() != d {
                    return Err(Error::invalid(format!(
                        "ratio list has {} entries, ambient dimension is {d}",
                        list.len()
                    )));
                }
                if list.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                    return Err(Error::invalid("ratios must be positive and finite"));
                }
                if list.windows(2).any(|w| w[1] > w[0]) {
                    return Err(Error::invalid("ratios must be non-increasing"));
                }
                let max = list[0];
                Ok(list.iter().map(|r| r / max).collect())
            }
        }
    }
}

/// One ellipsoid per point: frame from PCA over the point and its `k`
/// nearest neighbours, ratios from `spec`.
pub fn construct_ellipsoids(cloud: &PointCloud, k: usize, spec: &RatioSpec) -> Result<Vec<Ellipsoid>> {
    let ratios = spec.expand(cloud.dim())?;
    let index = NeighbourIndex::new(cloud);
    let build_one = |i: usize| -> Result<Ellipsoid> {
        let neighbours = index.k_nearest(i, k)?;
        let mut pts: Vec<&[f64]> = Vec::with_capacity(k + 1);
        pts.push(cloud.point(i));
        pts.extend(neighbours.iter().map(|&j| cloud.point(j)));
        let frame = pca_frame(&pts)?;
        Ellipsoid::new(cloud.point(i).to_vec(), frame.axes, ratios.clone())
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..cloud.n()).into_par_iter().map(build_one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..cloud.n()).map(build_one).collect()
    }
}
