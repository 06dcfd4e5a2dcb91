//! Point-cloud loading, generation, transformation and persistence.
//!
//! All stochastic operations take an explicit 64-bit seed and are driven by
//! ChaCha12, so identical arguments produce bit-identical clouds on every
//! platform.

use std::fmt::Write as _;
use std::path::Path;

use rand::{RngExt, SeedableRng};
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// The portable generator behind every seeded operation in this crate.
pub type SeededRng = rand::rngs::ChaCha12Rng;

/// Builds the crate-wide RNG from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// A finite list of points in `R^d`. Point order is stable: indices are the
/// identities used by every downstream module.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    coords: Vec<f64>,
    dim: usize,
    label: Option<u32>,
}

impl PointCloud {
    /// Builds a cloud from per-point coordinate rows, validating that every
    /// row has the same nonzero length and every coordinate is finite.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::invalid("points must have at least one coordinate"));
        }
        let mut coords = Vec::with_capacity(n * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::invalid(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            for &c in p {
                if !c.is_finite() {
                    return Err(Error::invalid(format!("point {i} has a non-finite coordinate")));
                }
                coords.push(c);
            }
        }
        Ok(PointCloud { coords, dim, label: None })
    }

    pub(crate) fn from_flat(coords: Vec<f64>, dim: usize) -> Self {
        debug_assert!(dim > 0 && !coords.is_empty() && coords.len() % dim == 0);
        PointCloud { coords, dim, label: None }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn label(&self) -> Option<u32> {
        self.label
    }

    pub fn with_label(mut self, label: u32) -> Self {
        self.label = Some(label);
        self
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean(self.point(i), self.point(j))
    }

    /// Largest pairwise distance. O(n^2); fine at the scales this crate targets.
    pub fn diameter(&self) -> f64 {
        let n = self.n();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(self.distance(i, j));
            }
        }
        best
    }

    /// Per-coordinate (min, max) over all points.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for p in self.iter() {
            for (k, &c) in p.iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        (lo, hi)
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

// ---------------------------------------------------------------------------
// File format: one point per line, fields split on ',' or whitespace,
// '#'-prefixed comment lines. Written files use ',' with 17 significant digits.
// ---------------------------------------------------------------------------

/// Parses the point-cloud text format.
pub fn parse_point_cloud(text: &str) -> Result<PointCloud> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut dim = None;
    for (lineno, line) in text.lines().enumerate() {
        let row = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut coords = Vec::new();
        for field in trimmed.split(',').flat_map(str::split_whitespace) {
            let v: f64 = field
                .parse()
                .map_err(|_| Error::parse(row, format!("non-numeric field {field:?}")))?;
            coords.push(v);
        }
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(Error::parse(
                    row,
                    format!("row has {} fields, expected {d}", coords.len()),
                ))
            }
            _ => {}
        }
        points.push(coords);
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    PointCloud::new(points)
}

pub fn load_point_cloud(path: impl AsRef<Path>) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path)?;
    parse_point_cloud(&text)
}

/// Renders the cloud in the standard file format; `header` lines are written
/// as '#' comments first.
pub fn format_point_cloud(cloud: &PointCloud, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "# {line}");
    }
    for p in cloud.iter() {
        let row: Vec<String> = p.iter().map(|c| format!("{c:.16e}")).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

pub fn save_point_cloud(cloud: &PointCloud, path: impl AsRef<Path>, header: &[String]) -> Result<()> {
    std::fs::write(path, format_point_cloud(cloud, header))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Synthetic generators
// ---------------------------------------------------------------------------

fn add_noise(coords: &mut [f64], sigma: f64, rng: &mut SeededRng) -> Result<()> {
    if sigma == 0.0 {
        return Ok(());
    }
    let normal = Normal::new(0.0, sigma)
        .map_err(|e| Error::invalid(format!("bad noise sigma {sigma}: {e}")))?;
    for c in coords.iter_mut() {
        *c += normal.sample(rng);
    }
    Ok(())
}

/// `n` points at uniformly spaced angles on a circle of the given radius,
/// plus isotropic Gaussian noise.
pub fn generate_circle(n: usize, radius: f64, noise_sigma: f64, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(radius > 0.0) {
        return Err(Error::invalid(format!("radius must be positive, got {radius}")));
    }
    if noise_sigma < 0.0 {
        return Err(Error::invalid("noise sigma must be non-negative"));
    }
    let mut rng = seeded_rng(seed);
    let mut coords = Vec::with_capacity(2 * n);
    for i in 0..n {
        let theta = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
        coords.push(radius * theta.cos());
        coords.push(radius * theta.sin());
    }
    add_noise(&mut coords, noise_sigma, &mut rng)?;
    Ok(PointCloud::from_flat(coords, 2))
}

/// Lemniscate `(scale sin t, scale sin t cos t)` sampled at uniformly spaced
/// parameters in `[0, 2pi)`, plus Gaussian noise.
pub fn generate_figure_eight(n: usize, scale: f64, noise_sigma: f64, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(scale > 0.0) {
        return Err(Error::invalid(format!("scale must be positive, got {scale}")));
    }
    if noise_sigma < 0.0 {
        return Err(Error::invalid("noise sigma must be non-negative"));
    }
    let mut rng = seeded_rng(seed);
    let mut coords = Vec::with_capacity(2 * n);
    for i in 0..n {
        let t = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
        coords.push(scale * t.sin());
        coords.push(scale * t.sin() * t.cos());
    }
    add_noise(&mut coords, noise_sigma, &mut rng)?;
    Ok(PointCloud::from_flat(coords, 2))
}

// Dog-bone outline: boundary of (disk r=1 at (-2,0)) u (disk r=1 at (+2,0))
// u ([-2,2] x [-h,h]) with neck half-width h = 0.25. Four pieces: right arc,
// bottom edge, left arc, top edge, parametrised by arc length.
const DOG_BONE_NECK: f64 = 0.25;

struct DogBoneCurve {
    beta: f64,    // asin(h): junction angle above the horizontal
    x_j: f64,     // junction |x|: 2 - cos(beta)
    arc: f64,     // arc length of each circular piece: 2*pi - 2*beta
    edge: f64,    // length of each straight edge: 2*x_j
    total: f64,
}

impl DogBoneCurve {
    fn new() -> Self {
        let h = DOG_BONE_NECK;
        let beta = h.asin();
        let x_j = 2.0 - beta.cos();
        let arc = 2.0 * std::f64::consts::PI - 2.0 * beta;
        let edge = 2.0 * x_j;
        DogBoneCurve { beta, x_j, arc, edge, total: 2.0 * arc + 2.0 * edge }
    }

    /// Point at arc length `s` from the top-right junction, traversing
    /// right arc, bottom edge, left arc, top edge in that order.
    fn at(&self, s: f64) -> [f64; 2] {
        let h = DOG_BONE_NECK;
        let phi1 = std::f64::consts::PI - self.beta;
        if s < self.arc {
            let phi = phi1 - s;
            [2.0 + phi.cos(), phi.sin()]
        } else if s < self.arc + self.edge {
            [self.x_j - (s - self.arc), -h]
        } else if s < 2.0 * self.arc + self.edge {
            let psi = -self.beta - (s - self.arc - self.edge);
            [-2.0 + psi.cos(), psi.sin()]
        } else {
            [-self.x_j + (s - 2.0 * self.arc - self.edge), h]
        }
    }
}

/// `n` points spaced equally by arc length along the dog-bone outline, with a
/// seed-chosen phase offset within one spacing.
pub fn generate_dog_bone(n: usize, seed: u64) -> Result<PointCloud> {
    if n < 8 {
        return Err(Error::invalid("dog bone needs n >= 8"));
    }
    let curve = DogBoneCurve::new();
    let mut rng = seeded_rng(seed);
    let step = curve.total / (n as f64);
    let offset: f64 = rng.random_range(0.0..step);
    let mut coords = Vec::with_capacity(2 * n);
    for i in 0..n {
        let p = curve.at(offset + step * (i as f64));
        coords.extend_from_slice(&p);
    }
    Ok(PointCloud::from_flat(coords, 2))
}

/// Radius of each hole in the holes dataset.
pub const HOLE_RADIUS: f64 = 0.18;

/// Supported hole counts, in label order.
pub const HOLE_COUNTS: [usize; 5] = [0, 1, 2, 4, 9];

fn hole_centers(holes: usize) -> Result<Vec<[f64; 2]>> {
    let centers = match holes {
        0 => vec![],
        1 => vec![[0.0, 0.0]],
        2 => vec![[-0.45, 0.0], [0.45, 0.0]],
        4 => vec![[-0.45, -0.45], [-0.45, 0.45], [0.45, -0.45], [0.45, 0.45]],
        9 => {
            let g = [-0.55, 0.0, 0.55];
            g.iter().flat_map(|&x| g.iter().map(move |&y| [x, y])).collect()
        }
        _ => return Err(Error::invalid(format!("holes must be one of {HOLE_COUNTS:?}, got {holes}"))),
    };
    Ok(centers)
}

/// Uniform rejection sample of the unit disk minus `holes` round holes of
/// radius [`HOLE_RADIUS`] on a fixed grid. The label records the index of the
/// hole count within [`HOLE_COUNTS`].
pub fn generate_disk_with_holes(n: usize, holes: usize, seed: u64) -> Result<PointCloud> {
    if n < 50 {
        return Err(Error::invalid("holes dataset needs n >= 50"));
    }
    let centers = hole_centers(holes)?;
    let label = HOLE_COUNTS.iter().position(|&h| h == holes).unwrap() as u32;
    let mut rng = seeded_rng(seed);
    let mut coords = Vec::with_capacity(2 * n);
    let mut produced = 0;
    let mut attempts = 0usize;
    while produced < n {
        attempts += 1;
        if attempts > 10_000 * n {
            return Err(Error::Internal("rejection sampling failed to converge".into()));
        }
        let theta: f64 = rng.random_range(0.0..2.0 * std::f64::consts::PI);
        let r: f64 = rng.random_range(0.0f64..1.0).sqrt();
        let p = [r * theta.cos(), r * theta.sin()];
        if centers.iter().any(|c| euclidean(&p, c) < HOLE_RADIUS) {
            continue;
        }
        coords.extend_from_slice(&p);
        produced += 1;
    }
    Ok(PointCloud::from_flat(coords, 2).with_label(label))
}

/// Uniform subsample without replacement; selected indices are kept in their
/// original order, so `m = n` returns the cloud unchanged.
pub fn subsample(cloud: &PointCloud, m: usize, seed: u64) -> Result<PointCloud> {
    let n = cloud.n();
    if m == 0 || m > n {
        return Err(Error::invalid(format!("subsample size {m} not in 1..={n}")));
    }
    let mut rng = seeded_rng(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = rng.random_range(i..n);
        idx.swap(i, j);
    }
    let mut chosen = idx[..m].to_vec();
    chosen.sort_unstable();
    let mut coords = Vec::with_capacity(m * cloud.dim());
    for &i in &chosen {
        coords.extend_from_slice(cloud.point(i));
    }
    let mut out = PointCloud::from_flat(coords, cloud.dim());
    out.label = cloud.label;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Translation,
    Rotation,
    Stretch,
    Shear,
    GaussianNoise,
    Outliers,
}

impl TransformKind {
    /// Parameter range from the experiment table; rotation is in degrees.
    pub fn default_range(self) -> (f64, f64) {
        match self {
            TransformKind::Translation => (-1.0, 1.0),
            TransformKind::Rotation => (-20.0, 20.0),
            TransformKind::Stretch => (0.8, 1.2),
            TransformKind::Shear => (-0.2, 0.2),
            TransformKind::GaussianNoise => (0.0, 0.1),
            TransformKind::Outliers => (0.0, 0.1),
        }
    }
}

impl std::str::FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "translation" => Ok(TransformKind::Translation),
            "rotation" => Ok(TransformKind::Rotation),
            "stretch" => Ok(TransformKind::Stretch),
            "shear" => Ok(TransformKind::Shear),
            "gaussian_noise" | "noise" => Ok(TransformKind::GaussianNoise),
            "outliers" => Ok(TransformKind::Outliers),
            _ => Err(Error::invalid(format!("unknown transformation {s:?}"))),
        }
    }
}

/// A transformation kind plus the range its parameter is drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSpec {
    pub kind: TransformKind,
    pub range: (f64, f64),
    pub seed: u64,
}

impl TransformSpec {
    pub fn new(kind: TransformKind, seed: u64) -> Self {
        TransformSpec { kind, range: kind.default_range(), seed }
    }

    pub fn with_range(kind: TransformKind, range: (f64, f64), seed: u64) -> Result<Self> {
        if !(range.0.is_finite() && range.1.is_finite() && range.0 <= range.1) {
            return Err(Error::invalid(format!("bad parameter range {range:?}")));
        }
        match kind {
            TransformKind::GaussianNoise if range.0 < 0.0 => {
                return Err(Error::invalid("noise sigma range must be non-negative"));
            }
            TransformKind::Outliers if range.0 < 0.0 || range.1 > 1.0 => {
                return Err(Error::invalid("outlier fraction range must lie in [0, 1]"));
            }
            _ => {}
        }
        Ok(TransformSpec { kind, range, seed })
    }
}

fn draw(rng: &mut SeededRng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

/// Applies one transformation from the experiment table. Rotation and shear
/// act on the first two coordinates and require `d >= 2`.
pub fn apply_transformation(cloud: &PointCloud, spec: &TransformSpec) -> Result<PointCloud> {
    let mut rng = seeded_rng(spec.seed);
    let d = cloud.dim();
    let mut out = cloud.clone();
    match spec.kind {
        TransformKind::Translation => {
            let offsets: Vec<f64> = (0..d).map(|_| draw(&mut rng, spec.range)).collect();
            for p in out.coords.chunks_exact_mut(d) {
                for (c, o) in p.iter_mut().zip(&offsets) {
                    *c += o;
                }
            }
        }
        TransformKind::Rotation => {
            if d < 2 {
                return Err(Error::invalid("rotation needs ambient dimension >= 2"));
            }
            let angle = draw(&mut rng, spec.range).to_radians();
            let (sin, cos) = angle.sin_cos();
            for p in out.coords.chunks_exact_mut(d) {
                let (x, y) = (p[0], p[1]);
                // clockwise convention
                p[0] = x * cos + y * sin;
                p[1] = -x * sin + y * cos;
            }
        }
        TransformKind::Stretch => {
            let factor = draw(&mut rng, spec.range);
            for p in out.coords.chunks_exact_mut(d) {
                p[0] *= factor;
            }
        }
        TransformKind::Shear => {
            if d < 2 {
                return Err(Error::invalid("shear needs ambient dimension >= 2"));
            }
            let factor = draw(&mut rng, spec.range);
            for p in out.coords.chunks_exact_mut(d) {
                p[1] += factor * p[0];
            }
        }
        TransformKind::GaussianNoise => {
            let sigma = draw(&mut rng, spec.range);
            add_noise(&mut out.coords, sigma, &mut rng)?;
        }
        TransformKind::Outliers => {
            let fraction = draw(&mut rng, spec.range);
            let n = cloud.n();
            let m = (fraction * n as f64).floor() as usize;
            if m == 0 {
                return Ok(out);
            }
            let (lo, hi) = cloud.bounding_box();
            let mut idx: Vec<usize> = (0..n).collect();
            for i in 0..m {
                let j = rng.random_range(i..n);
                idx.swap(i, j);
            }
            for &i in &idx[..m] {
                for k in 0..d {
                    out.coords[i * d + k] = draw(&mut rng, (lo[k], hi[k]));
                }
            }
        }
    }
    Ok(out)
}
