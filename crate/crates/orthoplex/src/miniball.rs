//! Smallest enclosing balls and convex-combination witnesses.
//!
//! The solver is Welzl's move-to-front algorithm run deterministically in
//! input order (no shuffle), so identical inputs always produce identical
//! decompositions. On top of the raw ball this module recovers the support
//! set: which input points pin the ball, with convex coefficients expressing
//! the center, trimmed to at most `dim + 1` points.

use nalgebra::{Cholesky, DMatrix, DVector, SVD};

use crate::error::{Error, Result};
use crate::geometry::{max_min_convex_combination, Ball, PointSet, Tolerance, Vector};

/// Additive slack (relative to 1 + r^2) when testing membership during the
/// Welzl recursion; keeps boundary points from triggering pointless re-solves.
const CONTAIN_EPS: f64 = 1e-13;

/// Convex coefficients at or below this are treated as zero and dropped.
const COEFF_DROP: f64 = 1e-10;

/// A smallest enclosing ball together with the input points that pin it.
///
/// Invariants: coefficients are positive, sum to 1, and express the center
/// as a convex combination of the support points; every support point lies
/// on the boundary sphere; the support has at most `dim + 1` members and its
/// indices are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportDecomposition {
    ball: Ball,
    support_indices: Vec<usize>,
    coefficients: Vec<f64>,
}

impl SupportDecomposition {
    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn support_indices(&self) -> &[usize] {
        &self.support_indices
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Norm of `sum_i lambda_i p_i - center` over the original point set.
    pub fn reconstruction_error(&self, points: &PointSet) -> f64 {
        let mut acc = Vector::zeros(points.dim());
        for (&i, &l) in self.support_indices.iter().zip(&self.coefficients) {
            acc = &acc + &points[i].scale(l);
        }
        acc.dist_unchecked(self.ball.center())
    }
}

/// Smallest ball enclosing all points, with its support decomposition.
pub fn min_enclosing_ball(points: &PointSet, tol: Tolerance) -> Result<SupportDecomposition> {
    let ball = enclosing_ball(points);
    let r = ball.radius();

    let boundary_slack = tol.eps_geom() * (1.0 + r);
    let mut candidates: Vec<usize> = (0..points.len())
        .filter(|&i| (points[i].dist_unchecked(ball.center()) - r).abs() <= boundary_slack)
        .collect();
    if candidates.is_empty() {
        // The welzl solve keeps at least one point on the boundary up to
        // rounding; reaching here means the slack was too tight.
        candidates = (0..points.len()).collect();
    }

    let candidate_points: Vec<Vector> = candidates.iter().map(|&i| points[i].clone()).collect();
    let lambda = match max_min_convex_combination(&candidate_points, ball.center()) {
        Some((lambda, _)) => lambda,
        None => {
            // Numerical breakdown; fall back to the nearest point alone.
            let nearest = (0..points.len())
                .min_by(|&a, &b| {
                    points[a]
                        .dist_unchecked(ball.center())
                        .total_cmp(&points[b].dist_unchecked(ball.center()))
                })
                .expect("point sets are non-empty");
            return Ok(SupportDecomposition {
                ball,
                support_indices: vec![nearest],
                coefficients: vec![1.0],
            });
        }
    };

    let lambda: Vec<f64> = lambda.into_iter().map(|l| l.max(0.0)).collect();
    let (kept, coeffs) = reduce_support(&candidate_points, candidates.clone(), lambda, points.dim());

    Ok(SupportDecomposition {
        ball,
        support_indices: kept,
        coefficients: coeffs,
    })
}

/// Radius of the smallest enclosing ball.
pub fn circumradius(points: &PointSet) -> Result<f64> {
    Ok(enclosing_ball(points).radius())
}

/// Inclusion-minimal subset of the enclosing ball's support that still has
/// the same circumradius, found by enumerating support subsets in increasing
/// size (lexicographically within a size).
///
/// Near-duplicate support points (within `eps_geom`) are merged onto their
/// smallest index first. Errors with [`Error::AllPointsCoincident`] when the
/// enclosing ball has radius ~0, since every singleton then ties trivially.
pub fn minimal_support_subset(points: &PointSet, tol: Tolerance) -> Result<SupportDecomposition> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let full = min_enclosing_ball(points, tol)?;
    let r = full.ball.radius();
    if r <= tol.eps_geom() {
        return Err(Error::AllPointsCoincident);
    }

    // Merge near-duplicates so antipodal degeneracies cannot hide a smaller
    // subset behind repeated coordinates.
    let mut pool: Vec<usize> = Vec::with_capacity(full.support_indices.len());
    for &i in &full.support_indices {
        if pool
            .iter()
            .all(|&j| points[i].dist_unchecked(&points[j]) > tol.eps_geom())
        {
            pool.push(i);
        }
    }

    for size in 2..=pool.len() {
        for combo in Combinations::new(pool.len(), size) {
            let chosen: Vec<usize> = combo.iter().map(|&c| pool[c]).collect();
            let sub_points = points.subset(&chosen);
            if (enclosing_ball(&sub_points).radius() - r).abs() <= tol.eps_cert() {
                let sub = min_enclosing_ball(&sub_points, tol)?;
                return Ok(SupportDecomposition {
                    ball: sub.ball,
                    support_indices: sub.support_indices.iter().map(|&s| chosen[s]).collect(),
                    coefficients: sub.coefficients,
                });
            }
        }
    }
    // The full pool always achieves the radius; reaching here means slack
    // starvation, so return the unreduced decomposition.
    Ok(full)
}

/// Convex-combination witness: at most `dim + 1` support indices with
/// positive coefficients summing to 1 whose weighted points reproduce
/// `target`. Errors with [`Error::TargetNotInHull`] when no such combination
/// exists at depth `-eps_cert`.
pub fn caratheodory_witness(
    points: &PointSet,
    target: &Vector,
    tol: Tolerance,
) -> Result<(Vec<usize>, Vec<f64>)> {
    if target.dim() != points.dim() {
        return Err(Error::DimensionMismatch {
            left: points.dim(),
            right: target.dim(),
        });
    }

    // When the target is the enclosing ball's center the minimal support is
    // already a Caratheodory witness; reuse it.
    let ball = enclosing_ball(points);
    if target.dist_unchecked(ball.center()) <= tol.eps_geom() {
        if ball.radius() <= tol.eps_geom() {
            return Ok((vec![0], vec![1.0]));
        }
        if points.len() >= 2 {
            let minimal = minimal_support_subset(points, tol)?;
            return Ok((minimal.support_indices, minimal.coefficients));
        }
    }

    let (lambda, depth) = max_min_convex_combination(points.points(), target)
        .ok_or(Error::TargetNotInHull)?;
    if depth < -tol.eps_cert() {
        return Err(Error::TargetNotInHull);
    }
    let lambda: Vec<f64> = lambda.into_iter().map(|l| l.max(0.0)).collect();
    let indices: Vec<usize> = (0..points.len()).collect();
    let reduced = reduce_support_toward(points.points(), indices, lambda, points.dim());
    Ok(reduced)
}

/// Raw Welzl solve, shared by the public entry points and `find_close_pair`.
pub(crate) fn enclosing_ball(points: &PointSet) -> Ball {
    let dim = points.dim();
    let pts = points.points();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let mut boundary: Vec<usize> = Vec::with_capacity(dim + 2);
    welzl(pts, &mut order, pts.len(), &mut boundary, dim)
        .unwrap_or_else(|| Ball::new(pts[0].clone(), 0.0).expect("radius 0 is valid"))
}

fn welzl(
    points: &[Vector],
    order: &mut Vec<usize>,
    end: usize,
    boundary: &mut Vec<usize>,
    dim: usize,
) -> Option<Ball> {
    let mut ball = ball_on_boundary(points, boundary);
    if boundary.len() >= dim + 1 {
        return ball;
    }
    for i in 0..end {
        let idx = order[i];
        let inside = ball
            .as_ref()
            .map_or(false, |b| welzl_contains(b, &points[idx]));
        if !inside {
            boundary.push(idx);
            ball = welzl(points, order, i, boundary, dim);
            boundary.pop();
            order[..=i].rotate_right(1);
        }
    }
    ball
}

fn welzl_contains(ball: &Ball, p: &Vector) -> bool {
    let d2 = p
        .coords()
        .iter()
        .zip(ball.center().coords())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>();
    let r2 = ball.radius() * ball.radius();
    d2 <= r2 + CONTAIN_EPS * (1.0 + r2)
}

/// The smallest ball with all `boundary` points on its sphere: solve
/// `2 G x = v` for the center offsets in the affine frame of the first
/// boundary point, where `G` is the Gram matrix of the edge vectors.
fn ball_on_boundary(points: &[Vector], boundary: &[usize]) -> Option<Ball> {
    let k = boundary.len();
    if k == 0 {
        return None;
    }
    let q0 = &points[boundary[0]];
    if k == 1 {
        return Some(Ball::new(q0.clone(), 0.0).expect("radius 0 is valid"));
    }
    let dirs: Vec<Vector> = boundary[1..].iter().map(|&i| &points[i] - q0).collect();
    let s = k - 1;
    let mut gram = DMatrix::<f64>::zeros(s, s);
    for i in 0..s {
        for j in i..s {
            let v = 2.0 * dirs[i].dot_unchecked(&dirs[j]);
            gram[(i, j)] = v;
            if i != j {
                gram[(j, i)] = v;
            }
        }
    }
    let rhs = DVector::from_iterator(s, dirs.iter().map(|d| d.norm_squared()));
    let x = match Cholesky::new(gram.clone()) {
        Some(ch) => ch.solve(&rhs),
        None => {
            // Degenerate boundary (affinely dependent points): take the
            // minimum-norm solution so the center stays in the affine hull.
            let svd = SVD::new(gram, true, true);
            svd.solve(&rhs, 1e-12).ok()?
        }
    };
    let mut center = q0.clone();
    for (j, d) in dirs.iter().enumerate() {
        center = &center + &d.scale(x[j]);
    }
    let radius = boundary
        .iter()
        .map(|&i| center.dist_unchecked(&points[i]))
        .fold(0.0, f64::max);
    Some(Ball::new(center, radius).expect("finite radius"))
}

/// Drops zero coefficients and, while more than `dim + 1` points remain,
/// walks along an affine-dependence direction until another coefficient
/// hits zero (Caratheodory reduction). Returns sorted (indices, coefficients).
fn reduce_support(
    candidate_points: &[Vector],
    candidate_indices: Vec<usize>,
    lambda: Vec<f64>,
    dim: usize,
) -> (Vec<usize>, Vec<f64>) {
    let local: Vec<usize> = (0..candidate_points.len()).collect();
    let (kept_local, coeffs) =
        reduce_support_toward(candidate_points, local, lambda, dim);
    let kept: Vec<usize> = kept_local.iter().map(|&i| candidate_indices[i]).collect();
    (kept, coeffs)
}

fn reduce_support_toward(
    points: &[Vector],
    indices: Vec<usize>,
    lambda: Vec<f64>,
    dim: usize,
) -> (Vec<usize>, Vec<f64>) {
    let mut idx = indices;
    let mut lam = lambda;
    loop {
        // Drop (numerically) zero coefficients and renormalize.
        let mut kept_idx = Vec::with_capacity(idx.len());
        let mut kept_lam = Vec::with_capacity(lam.len());
        for (&i, &l) in idx.iter().zip(&lam) {
            if l > COEFF_DROP {
                kept_idx.push(i);
                kept_lam.push(l);
            }
        }
        if kept_idx.is_empty() {
            // All weight vanished to rounding; keep the largest coefficient.
            let best = lam
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap_or(0);
            return (vec![idx[best]], vec![1.0]);
        }
        let total: f64 = kept_lam.iter().sum();
        for l in kept_lam.iter_mut() {
            *l /= total;
        }
        idx = kept_idx;
        lam = kept_lam;

        if idx.len() <= dim + 1 {
            let mut order: Vec<usize> = (0..idx.len()).collect();
            order.sort_by_key(|&i| idx[i]);
            let sorted_idx = order.iter().map(|&i| idx[i]).collect();
            let sorted_lam = order.iter().map(|&i| lam[i]).collect();
            return (sorted_idx, sorted_lam);
        }

        // More than dim + 1 points are always affinely dependent; retire one.
        let chosen: Vec<&Vector> = idx.iter().map(|&i| &points[i]).collect();
        let mut dir = affine_null_vector(&chosen);
        if !dir.iter().any(|&d| d > 1e-14) {
            for d in dir.iter_mut() {
                *d = -*d;
            }
        }
        let mut theta = f64::INFINITY;
        let mut arg = None;
        for (i, &d) in dir.iter().enumerate() {
            if d > 1e-14 {
                let step = lam[i] / d;
                if step < theta {
                    theta = step;
                    arg = Some(i);
                }
            }
        }
        let Some(arg) = arg else {
            // Dependence direction degenerated to zero; stop reducing.
            let mut order: Vec<usize> = (0..idx.len()).collect();
            order.sort_by_key(|&i| idx[i]);
            let sorted_idx = order.iter().map(|&i| idx[i]).collect();
            let sorted_lam = order.iter().map(|&i| lam[i]).collect();
            return (sorted_idx, sorted_lam);
        };
        for (l, &d) in lam.iter_mut().zip(&dir) {
            *l -= theta * d;
        }
        lam[arg] = 0.0;
    }
}

/// A direction `d` with `sum d_i = 0` and `sum d_i p_i ~ 0`: the eigenvector
/// of the smallest eigenvalue of `A^T A` where `A` stacks `(p_i, 1)` columns.
/// Callers only invoke this with more points than `dim + 1`, where exact
/// dependence is guaranteed.
fn affine_null_vector(points: &[&Vector]) -> Vec<f64> {
    let s = points.len();
    let mut m = DMatrix::<f64>::zeros(s, s);
    for i in 0..s {
        for j in i..s {
            let v = points[i].dot_unchecked(points[j]) + 1.0;
            m[(i, j)] = v;
            if i != j {
                m[(j, i)] = v;
            }
        }
    }
    let eig = nalgebra::SymmetricEigen::new(m);
    let mut k = 0;
    for i in 1..s {
        if eig.eigenvalues[i] < eig.eigenvalues[k] {
            k = i;
        }
    }
    eig.eigenvectors.column(k).iter().copied().collect()
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + self.n - self.k {
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
