//! Persistent homology of point clouds via ellipsoid complexes.
//!
//! An ellipsoid complex is a flag complex whose edge `{x, y}` appears at the
//! first scale at which PCA-aligned ellipsoids centered at `x` and `y`
//! intersect. Elongating the ellipsoids along estimated tangent directions
//! makes barcodes of manifold-like and bottlenecked data cleaner than the
//! Rips baseline, which this crate computes alongside for comparison.
//!
//! Pipeline stages, each its own module:
//!
//! * [`pointcloud`] - loading, synthetic generators, transformations
//! * [`tangent`] - k-nearest neighbours, PCA frames, ellipsoid construction
//! * [`geometry`] - ellipsoid intersection test and first-touch radius
//! * [`complex`] - edge builders and flag expansion
//! * [`persistence`] - barcode computation over GF(2)
//! * [`descriptors`] - lifespan signatures and LOO 1-NN classification
//! * [`render`] - SVG barcode plots
//! * [`pipeline`] - one-call cloud-to-barcode orchestration

pub mod complex;
pub mod descriptors;
pub mod error;
pub mod geometry;
pub mod persistence;
pub mod pipeline;
pub mod pointcloud;
pub mod render;
pub mod tangent;

pub use error::{Error, Result};
