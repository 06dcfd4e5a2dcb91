//! End-to-end plumbing: point cloud -> edges -> flag complex -> barcode,
//! for both the ellipsoid and the Rips filtration, plus the signature
//! harness used by the classification experiments.

use crate::complex::{build_ellipsoid_edges, build_rips_edges, default_rmax, expand_flag, FilteredComplex};
use crate::descriptors::{top_lifespans, SignatureVector};
use crate::error::{Error, Result};
use crate::geometry::SolverConfig;
use crate::persistence::{compute_persistence, Barcode};
use crate::pointcloud::PointCloud;
use crate::tangent::{construct_ellipsoids, RatioSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    Ellipsoid,
    Rips,
}

impl std::str::FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ellipsoid" | "phe" => Ok(ComplexKind::Ellipsoid),
            "rips" | "phr" => Ok(ComplexKind::Rips),
            _ => Err(Error::invalid(format!("unknown complex kind {s:?}"))),
        }
    }
}

impl std::fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ComplexKind::Ellipsoid => "ellipsoid",
            ComplexKind::Rips => "rips",
        })
    }
}

/// Everything needed to turn a cloud into a barcode.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub kind: ComplexKind,
    /// Neighbours for the PCA frames (ellipsoid kind only).
    pub k: usize,
    pub ratios: RatioSpec,
    /// Edge cap; `None` picks [`default_rmax`] for the cloud.
    pub rmax: Option<f64>,
    /// Expansion dimension; `None` picks `max_degree + 1`.
    pub dmax: Option<usize>,
    pub max_degree: usize,
    pub solver: SolverConfig,
}

impl PipelineConfig {
    pub fn new(kind: ComplexKind) -> Self {
        PipelineConfig {
            kind,
            k: 5,
            ratios: RatioSpec::Elongation { q: 3.0, intrinsic_dim: 1 },
            rmax: None,
            dmax: None,
            max_degree: 1,
            solver: SolverConfig::default(),
        }
    }

    /// Elongation implied by the ratio spec in dimension `d`, used for the
    /// default edge cap.
    fn effective_q(&self, d: usize) -> Result<f64> {
        if self.kind == ComplexKind::Rips {
            return Ok(1.0);
        }
        let ratios = self.ratios.expand(d)?;
        Ok(1.0 / ratios.last().copied().unwrap())
    }
}

/// A computed barcode plus the parameters that shaped it.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub barcode: Barcode,
    pub complex: FilteredComplex,
    pub rmax: f64,
    pub dmax: usize,
    pub n_edges: usize,
}

/// Runs the full pipeline on one cloud.
pub fn compute_barcode(cloud: &PointCloud, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let rmax = match cfg.rmax {
        Some(r) if r > 0.0 => r,
        Some(r) => return Err(Error::invalid(format!("rmax must be positive, got {r}"))),
        None => default_rmax(cloud, cfg.effective_q(cloud.dim())?),
    };
    let dmax = cfg.dmax.unwrap_or(cfg.max_degree + 1).max(1);
    let edges = match cfg.kind {
        ComplexKind::Rips => build_rips_edges(cloud, rmax)?,
        ComplexKind::Ellipsoid => {
            let ellipsoids = construct_ellipsoids(cloud, cfg.k, &cfg.ratios)?;
            build_ellipsoid_edges(cloud, &ellipsoids, rmax, &cfg.solver)?
        }
    };
    let n_edges = edges.len();
    let complex = expand_flag(cloud.n(), &edges, dmax)?;
    let barcode = compute_persistence(&complex, cfg.max_degree)?;
    Ok(PipelineOutput { barcode, complex, rmax, dmax, n_edges })
}

/// Signature harness configuration for a labelled set of clouds.
#[derive(Debug, Clone)]
pub struct SignatureConfig {
    pub pipeline: PipelineConfig,
    /// Lifespans kept per degree.
    pub signature_len: usize,
    /// Degrees included in the signature; `None` means `0..=max_degree`.
    pub degrees: Option<Vec<usize>>,
}

impl SignatureConfig {
    pub fn new(kind: ComplexKind) -> Self {
        SignatureConfig { pipeline: PipelineConfig::new(kind), signature_len: 10, degrees: None }
    }
}

/// One signature per cloud. All clouds share a single cap (the largest
/// default rmax across the set, unless the config pins one), so lifespans
/// are comparable between samples.
pub fn signatures_for_clouds(clouds: &[PointCloud], cfg: &SignatureConfig) -> Result<Vec<SignatureVector>> {
    if clouds.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut shared = cfg.pipeline.clone();
    if shared.rmax.is_none() {
        let mut cap = 0.0f64;
        for cloud in clouds {
            cap = cap.max(default_rmax(cloud, shared.effective_q(cloud.dim())?));
        }
        shared.rmax = Some(cap);
    }
    let degrees: Vec<usize> = match &cfg.degrees {
        Some(d) => d.clone(),
        None => (0..=shared.max_degree).collect(),
    };
    if let Some(&too_big) = degrees.iter().find(|&&d| d > shared.max_degree) {
        return Err(Error::invalid(format!(
            "signature degree {too_big} exceeds max homology degree {}",
            shared.max_degree
        )));
    }
    let cap = shared.rmax.unwrap();
    clouds
        .iter()
        .map(|cloud| {
            let out = compute_barcode(cloud, &shared)?;
            top_lifespans(&out.barcode, &degrees, cfg.signature_len, cap)
        })
        .collect()
}
