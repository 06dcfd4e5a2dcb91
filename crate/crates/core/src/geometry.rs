//! Ellipsoid intersection predicate and first-touch radius.
//!
//! Two ellipsoids `E(A, c)` and `E(B, d)` intersect iff
//! `K(lambda) = 1 - v^T ((1/(1-lambda)) B^-1 + (1/lambda) A^-1)^-1 v >= 0`
//! for all `lambda` in (0,1), with `v = d - c`. `K` is convex, so one
//! golden-section minimisation decides the predicate.
//!
//! Both ellipsoids of a pair scale linearly with the filtration parameter,
//! so `K_eps(lambda) = 1 - g(lambda)/eps^2` with `g` evaluated at unit scale.
//! The least intersecting scale is therefore `eps* = sqrt(max_lambda g)`,
//! one 1-D concave maximisation per pair instead of a bisection over scales.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tangent::Ellipsoid;

/// |min K| below this counts as tangency, which closed ellipsoids treat as
/// intersecting.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Tolerances for the 1-D searches.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Interval width at which golden-section search stops.
    pub lambda_tol: f64,
    /// The search domain is `[margin, 1 - margin]`.
    pub margin: f64,
    /// Relative tolerance on first-touch radii (used by consumers comparing
    /// radii, e.g. the nesting checks).
    pub radius_rel_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { lambda_tol: 1e-9, margin: 1e-12, radius_rel_tol: 1e-7 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambda_tol <= 0.0 || self.margin <= 0.0 || self.radius_rel_tol <= 0.0 {
            return Err(Error::invalid("solver tolerances must be positive"));
        }
        Ok(())
    }
}

/// Symmetric positive-definite quadratic form of an ellipsoid, kept together
/// with its inverse. For unit scale `S = P diag(1/r_i^2) P^T`, so the
/// ellipsoid at scale `eps` is `{x : (x-c)^T S (x-c) <= eps^2}`.
#[derive(Debug, Clone)]
pub struct ShapeMatrix {
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

impl ShapeMatrix {
    /// Unit-scale form of an ellipsoid. The inverse is assembled from the
    /// frame directly, not by numeric inversion.
    pub fn from_ellipsoid(e: &Ellipsoid) -> Self {
        let d = e.dim();
        let p = e.axes();
        let mut matrix = DMatrix::zeros(d, d);
        let mut inverse = DMatrix::zeros(d, d);
        for k in 0..d {
            let r2 = e.ratios()[k] * e.ratios()[k];
            let col = p.column(k);
            for i in 0..d {
                for j in 0..d {
                    matrix[(i, j)] += col[i] * col[j] / r2;
                    inverse[(i, j)] += col[i] * col[j] * r2;
                }
            }
        }
        ShapeMatrix { matrix, inverse }
    }

    /// The form at filtration scale `eps`: `S / eps^2`.
    pub fn at_scale(&self, eps: f64) -> Result<ShapeMatrix> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::invalid(format!("scale must be positive, got {eps}")));
        }
        let e2 = eps * eps;
        Ok(ShapeMatrix { matrix: &self.matrix / e2, inverse: &self.inverse * e2 })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

fn separation(c: &[f64], d: &[f64]) -> DVector<f64> {
    DVector::from_iterator(c.len(), d.iter().zip(c).map(|(x, y)| x - y))
}

/// `v^T M(lambda)^-1 v` via an SPD solve of `M(lambda) w = v`, where
/// `M(lambda) = (1/(1-lambda)) B^-1 + (1/lambda) A^-1`.
fn quadratic_term(
    a_inv: &DMatrix<f64>,
    b_inv: &DMatrix<f64>,
    v: &DVector<f64>,
    lambda: f64,
) -> Result<f64> {
    let m = b_inv / (1.0 - lambda) + a_inv / lambda;
    let chol = Cholesky::new(m)
        .ok_or_else(|| Error::Numerical(format!("combined form not SPD at lambda {lambda}")))?;
    let w = chol.solve(v);
    Ok(v.dot(&w))
}

/// The objective of the intersection criterion at one `lambda` in (0,1).
pub fn k_value(a: &ShapeMatrix, c: &[f64], b: &ShapeMatrix, d: &[f64], lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid(format!("lambda must be in (0,1), got {lambda}")));
    }
    if a.dim() != c.len() || b.dim() != d.len() || c.len() != d.len() {
        return Err(Error::invalid("mismatched dimensions in k_value"));
    }
    let v = separation(c, d);
    Ok(1.0 - quadratic_term(a.inverse(), b.inverse(), &v, lambda)?)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimum of `f` on `[lo, hi]` to interval width `tol`.
fn golden_min(mut f: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) })
}

/// Minimises the convex `K` over `(0,1)`; returns `(lambda*, K*)`.
pub fn min_k(a: &ShapeMatrix, c: &[f64], b: &ShapeMatrix, d: &[f64], cfg: &SolverConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    if a.dim() != c.len() || b.dim() != d.len() || c.len() != d.len() {
        return Err(Error::invalid("mismatched dimensions in min_k"));
    }
    let v = separation(c, d);
    if v.iter().all(|&x| x == 0.0) {
        return Ok((0.5, 1.0));
    }
    let a_inv = a.inverse();
    let b_inv = b.inverse();
    let (lambda, value) = golden_min(
        |l| Ok(1.0 - quadratic_term(a_inv, b_inv, &v, l)?),
        cfg.margin,
        1.0 - cfg.margin,
        cfg.lambda_tol,
    )?;
    Ok((lambda, value))
}

/// Whether the two ellipsoids, both at scale `eps`, share a point. Tangency
/// counts as intersection.
pub fn ellipsoids_intersect(e1: &Ellipsoid, e2: &Ellipsoid, eps: f64, cfg: &SolverConfig) -> Result<bool> {
    if e1.dim() != e2.dim() {
        return Err(Error::invalid("ellipsoids must share one ambient dimension"));
    }
    let a = ShapeMatrix::from_ellipsoid(e1).at_scale(eps)?;
    let b = ShapeMatrix::from_ellipsoid(e2).at_scale(eps)?;
    let (_, k_min) = min_k(&a, e1.center(), &b, e2.center(), cfg)?;
    Ok(k_min >= -BOUNDARY_TOL)
}

/// Least `eps` at which the co-scaling ellipsoids intersect:
/// `eps* = sqrt(max_lambda g(lambda))` with `g` at unit scale. The result
/// always lies in `[D/2, D/(2 r_min)]` for center distance `D`.
pub fn intersection_radius(e1: &Ellipsoid, e2: &Ellipsoid, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    if e1.dim() != e2.dim() {
        return Err(Error::invalid("ellipsoids must share one ambient dimension"));
    }
    let v = separation(e1.center(), e2.center());
    if v.iter().all(|&x| x == 0.0) {
        return Ok(0.0);
    }
    let a_inv = ShapeMatrix::from_ellipsoid(e1).inverse().clone();
    let b_inv = ShapeMatrix::from_ellipsoid(e2).inverse().clone();
    let (_, neg_g_max) = golden_min(
        |l| Ok(-quadratic_term(&a_inv, &b_inv, &v, l)?),
        cfg.margin,
        1.0 - cfg.margin,
        cfg.lambda_tol,
    )?;
    let g_max = (-neg_g_max).max(0.0);
    Ok(g_max.sqrt())
}
