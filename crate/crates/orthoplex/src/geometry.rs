//! Core types and predicates for point configurations in the unit ball.
//!
//! Everything downstream (enclosing balls, certificates, the optimizer)
//! builds on the `Vector`/`PointSet` types defined here and on a small set
//! of exact-arithmetic-in-spirit predicates whose slack is controlled by a
//! shared [`Tolerance`].

use std::f64::consts::SQRT_2;
use std::ops::{Add, Index, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};

/// Relative singular-value cutoff for machine-precision rank decisions,
/// used where the caller's certification tolerance would be too coarse.
pub(crate) const SPAN_CUTOFF: f64 = 1e-12;

const DEFAULT_EPS_GEOM: f64 = 1e-9;
const DEFAULT_EPS_CERT: f64 = 1e-6;

/// Paired slack bounds: `eps_geom` absorbs floating-point noise in geometric
/// predicates, `eps_cert` is the coarser bound at which certificates accept.
///
/// Invariant: `0 < eps_geom <= eps_cert < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps_geom: f64,
    eps_cert: f64,
}

impl Tolerance {
    pub fn new(eps_geom: f64, eps_cert: f64) -> Result<Self> {
        let ok = eps_geom.is_finite()
            && eps_cert.is_finite()
            && eps_geom > 0.0
            && eps_geom <= eps_cert
            && eps_cert < 1.0;
        if !ok {
            return Err(Error::InvalidTolerance);
        }
        Ok(Self { eps_geom, eps_cert })
    }

    /// Default geometric slack with a caller-chosen certification bound.
    /// If the bound is tighter than the default geometric slack, both shrink.
    pub fn with_eps_cert(eps_cert: f64) -> Result<Self> {
        if !eps_cert.is_finite() || eps_cert <= 0.0 {
            return Err(Error::InvalidTolerance);
        }
        Self::new(DEFAULT_EPS_GEOM.min(eps_cert), eps_cert)
    }

    pub fn eps_geom(self) -> f64 {
        self.eps_geom
    }

    pub fn eps_cert(self) -> f64 {
        self.eps_cert
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_geom: DEFAULT_EPS_GEOM,
            eps_cert: DEFAULT_EPS_CERT,
        }
    }
}

/// A point of R^n with finite coordinates, n >= 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        Ok(Self { coords })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "a vector must have dimension >= 1");
        Self {
            coords: vec![0.0; dim],
        }
    }

    /// The standard basis vector `e_axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        assert!(axis < dim, "axis {axis} out of range for dimension {dim}");
        let mut coords = vec![0.0; dim];
        coords[axis] = 1.0;
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm_squared(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self.dot_unchecked(other))
    }

    /// Euclidean distance to `other`.
    pub fn dist(&self, other: &Vector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self.dist_unchecked(other))
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Vector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn dot_unchecked(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub(crate) fn dist_unchecked(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;

    fn mul(self, rhs: f64) -> Vector {
        self.scale(rhs)
    }
}

/// A non-empty list of points sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vector>,
}

impl PointSet {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let dim = first.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        Ok(Self { dim, points })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let points = rows.into_iter().map(Vector::new).collect::<Result<_>>()?;
        Self::new(points)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.coords.clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a point set holds at least one point by construction
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector> {
        self.points.iter()
    }

    pub fn centroid(&self) -> Vector {
        let mut acc = Vector::zeros(self.dim);
        for p in &self.points {
            acc = &acc + p;
        }
        acc.scale(1.0 / self.points.len() as f64)
    }

    /// Smallest distance over unordered pairs together with the
    /// lexicographically smallest index pair attaining it.
    pub fn min_pairwise_distance(&self) -> Result<(f64, (usize, usize))> {
        self.pairwise_extreme(true)
    }

    /// Largest distance over unordered pairs together with the
    /// lexicographically smallest index pair attaining it.
    pub fn max_pairwise_distance(&self) -> Result<(f64, (usize, usize))> {
        self.pairwise_extreme(false)
    }

    fn pairwise_extreme(&self, take_min: bool) -> Result<(f64, (usize, usize))> {
        if self.len() < 2 {
            return Err(Error::TooFewPoints {
                needed: 2,
                got: self.len(),
            });
        }
        let mut best = if take_min { f64::INFINITY } else { f64::NEG_INFINITY };
        let mut pair = (0, 1);
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let d = self.points[i].dist_unchecked(&self.points[j]);
                let better = if take_min { d < best } else { d > best };
                if better {
                    best = d;
                    pair = (i, j);
                }
            }
        }
        Ok((best, pair))
    }

    pub fn translated(&self, offset: &Vector) -> Result<PointSet> {
        if offset.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: offset.dim(),
            });
        }
        Ok(PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p + offset).collect(),
        })
    }

    pub fn scaled(&self, factor: f64) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.scale(factor)).collect(),
        }
    }

    /// The sub-configuration at the given indices (panics on out-of-range).
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        assert!(!indices.is_empty(), "subset needs at least one index");
        PointSet {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }
}

impl Index<usize> for PointSet {
    type Output = Vector;

    fn index(&self, i: usize) -> &Vector {
        &self.points[i]
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Vector;
    type IntoIter = std::slice::Iter<'a, Vector>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A closed Euclidean ball.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ball {
    center: Vector,
    radius: f64,
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be finite and nonnegative, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Membership with additive slack on the radius.
    pub fn contains(&self, point: &Vector, slack: f64) -> Result<bool> {
        Ok(self.center.dist(point)? <= self.radius + slack)
    }
}

/// Is `query` in the closed half-space `{ y : anchor . y <= 0 }`?
///
/// `anchor` must be a unit vector within `eps_geom`; the comparison itself
/// also carries `eps_geom` slack.
pub fn in_half_space(anchor: &Vector, query: &Vector, tol: Tolerance) -> Result<bool> {
    require_unit(anchor, tol)?;
    Ok(anchor.dot(query)? <= tol.eps_geom())
}

/// Is `query` in the crescent of `anchor`: the part of the unit ball at
/// distance at least sqrt(2) from `anchor`?
///
/// Both membership conditions are relaxed by `eps_geom`, so the closed
/// boundary (distance exactly sqrt(2), or norm exactly 1) is included.
pub fn in_crescent(anchor: &Vector, query: &Vector, tol: Tolerance) -> Result<bool> {
    require_unit(anchor, tol)?;
    let d = anchor.dist(query)?;
    Ok(query.norm() <= 1.0 + tol.eps_geom() && d >= SQRT_2 - tol.eps_geom())
}

fn require_unit(v: &Vector, tol: Tolerance) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > tol.eps_geom() {
        return Err(Error::NotUnitLength { norm });
    }
    Ok(())
}

/// Dimension of the linear span of the points, with singular values below
/// `eps_cert` times the largest treated as zero.
pub fn linear_hull_rank(points: &PointSet, tol: Tolerance) -> usize {
    linear_span(points.points(), tol.eps_cert()).rank
}

/// Does the origin lie in the relative interior of the convex hull of the
/// points? Decided by maximizing the smallest convex-combination
/// coefficient; the optimum must reach `eps_cert`.
pub fn origin_in_relative_interior(points: &PointSet, tol: Tolerance) -> bool {
    let origin = Vector::zeros(points.dim());
    match max_min_convex_combination(points.points(), &origin) {
        Some((_, depth)) => depth >= tol.eps_cert(),
        None => false,
    }
}

/// Orthonormal basis of the orthogonal complement of the linear span of
/// `points`.
///
/// Preconditions: every point is a unit vector (within `eps_geom`) and the
/// origin lies in the relative interior of their convex hull. Under those
/// conditions every returned basis vector is at distance sqrt(2) from every
/// input point, so the returned set spans the locus where all the points'
/// crescents meet the unit sphere.
pub fn crescent_intersection_basis(points: &PointSet, tol: Tolerance) -> Result<Vec<Vector>> {
    for p in points {
        require_unit(p, tol)?;
    }
    if !origin_in_relative_interior(points, tol) {
        return Err(Error::OriginNotInRelativeInterior);
    }
    Ok(linear_span(points.points(), tol.eps_cert()).complement)
}

pub(crate) struct SpanBasis {
    pub rank: usize,
    /// Orthonormal basis of the span, leading singular directions first.
    pub basis: Vec<Vector>,
    /// Orthonormal basis of the orthogonal complement.
    pub complement: Vec<Vector>,
}

/// Spectral span of a family of vectors via the n x n Gram matrix
/// `sum_i v_i v_i^T`; singular values below `rel_cutoff` times the largest
/// count as zero.
pub(crate) fn linear_span(vectors: &[Vector], rel_cutoff: f64) -> SpanBasis {
    let n = vectors[0].dim();
    let mut gram = DMatrix::<f64>::zeros(n, n);
    for v in vectors {
        for a in 0..n {
            for b in a..n {
                let add = v[a] * v[b];
                gram[(a, b)] += add;
                if a != b {
                    gram[(b, a)] += add;
                }
            }
        }
    }
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues of a finite symmetric matrix are finite")
            .then(a.cmp(&b))
    });
    let singular: Vec<f64> = order
        .iter()
        .map(|&i| eig.eigenvalues[i].max(0.0).sqrt())
        .collect();
    let sigma_max = singular[0];
    let rank = if sigma_max <= 0.0 {
        0
    } else {
        singular.iter().filter(|&&s| s >= rel_cutoff * sigma_max).count()
    };
    let column = |&i: &usize| Vector {
        coords: eig.eigenvectors.column(i).iter().copied().collect(),
    };
    SpanBasis {
        rank,
        basis: order[..rank].iter().map(column).collect(),
        complement: order[rank..].iter().map(column).collect(),
    }
}

/// Convex-combination coefficients for `target` that maximize the smallest
/// coefficient.
///
/// Returns `None` when `target` is outside the affine hull of the points.
/// Otherwise returns `(lambda, depth)` where `sum lambda_i p_i = target`,
/// `sum lambda_i = 1`, and `depth = min_i lambda_i` is the best achievable.
/// A nonnegative `depth` means `target` is in the convex hull; `depth >=
/// eps` certifies relative-interior membership at depth `eps`.
pub(crate) fn max_min_convex_combination(
    points: &[Vector],
    target: &Vector,
) -> Option<(Vec<f64>, f64)> {
    let m = points.len();
    let shifted: Vec<Vector> = points.iter().map(|p| p - target).collect();
    let span = linear_span(&shifted, SPAN_CUTOFF);

    // Variables: mu_1..mu_m >= 0 and t = tp - tm (free); lambda = mu + t.
    // Equality rows are expressed in the span's orthonormal coordinates so
    // the constraint matrix has full row rank.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(span.rank + 1);
    for basis_vec in &span.basis {
        let coords: Vec<f64> = shifted.iter().map(|q| q.dot_unchecked(basis_vec)).collect();
        let total: f64 = coords.iter().sum();
        let mut row = coords;
        row.push(total);
        row.push(-total);
        rows.push(row);
    }
    let mut sum_row = vec![1.0; m];
    sum_row.push(m as f64);
    sum_row.push(-(m as f64));
    rows.push(sum_row);

    let mut rhs = vec![0.0; span.rank];
    rhs.push(1.0);
    let mut objective = vec![0.0; m];
    objective.push(1.0);
    objective.push(-1.0);

    match lp::maximize(&rows, &rhs, &objective) {
        LpOutcome::Optimal { x, objective } => {
            let depth = objective;
            let lambda = x[..m].iter().map(|&mu| mu + depth).collect();
            Some((lambda, depth))
        }
        // The depth is bounded above by 1/m, so an unbounded verdict can
        // only arise from numerical breakdown; treat it as out-of-hull.
        LpOutcome::Infeasible | LpOutcome::Unbounded => None,
    }
}
