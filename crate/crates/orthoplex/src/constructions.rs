//! Closed-form optimal configurations: cross-polytope and regular-simplex
//! vertex sets, and the minimum container radius for packing `k` unit balls
//! into a larger ball.
//!
//! Container radii follow the two regimes
//!
//! * `k <= dim + 1`: `1 + sqrt(2 - 2/k)` (regular simplex of touching balls),
//! * `dim + 2 <= k <= 2 dim`: `1 + sqrt(2)` (cross-polytope vertices),
//!
//! and `k >= 2 dim + 1` is rejected: past one ball per cross-polytope vertex
//! the radius is strictly larger than `1 + sqrt(2)` but has no closed form.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::geometry::{Ball, PointSet, Vector};

/// Vertices `+r e_1, -r e_1, +r e_2, -r e_2, ...` in that order.
pub fn cross_polytope_vertices(dim: usize, radius: f64) -> Result<PointSet> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    require_positive(radius)?;
    let mut points = Vec::with_capacity(2 * dim);
    for axis in 0..dim {
        points.push(Vector::unit(dim, axis).scale(radius));
        points.push(Vector::unit(dim, axis).scale(-radius));
    }
    PointSet::new(points)
}

/// Vertices of a regular simplex with `k` vertices on the sphere of the
/// given radius, centroid at the origin, occupying the first `k - 1`
/// coordinates, first vertex on the positive first axis.
///
/// The edge length is `radius * sqrt(2k / (k - 1))`.
pub fn simplex_vertices(k: usize, dim: usize, radius: f64) -> Result<PointSet> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if k < 2 || k > dim + 1 {
        return Err(Error::InvalidParameter(format!(
            "a regular simplex in dimension {dim} needs 2 <= k <= {}, got {k}",
            dim + 1
        )));
    }
    require_positive(radius)?;

    // Peel one vertex per axis: place it at the current circumradius, push
    // the remaining ones to the opposite cap, and recurse into the
    // orthogonal hyperplane where they again form a regular simplex.
    let mut rows = vec![vec![0.0; dim]; k];
    let mut r = radius;
    for (axis, lead) in (0..k - 1).enumerate() {
        let m = k - lead;
        rows[lead][axis] = r;
        let opposite = -r / (m as f64 - 1.0);
        for row in rows.iter_mut().skip(lead + 1) {
            row[axis] = opposite;
        }
        r *= (1.0 - 1.0 / ((m as f64 - 1.0) * (m as f64 - 1.0))).max(0.0).sqrt();
    }
    PointSet::from_rows(rows)
}

/// Radius of the smallest ball containing `k` non-overlapping unit balls.
///
/// Supported for `2 <= k <= 2 * dim`; beyond that only a strict lower bound
/// (`> 1 + sqrt(2)`) is known, so [`Error::Unsupported`] is returned.
pub fn packing_radius(k: usize, dim: usize) -> Result<f64> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "a packing needs at least 2 balls, got {k}"
        )));
    }
    if k <= dim + 1 {
        Ok(1.0 + (2.0 - 2.0 / k as f64).sqrt())
    } else if k <= 2 * dim {
        Ok(1.0 + SQRT_2)
    } else {
        Err(Error::Unsupported(format!(
            "k = {k} exceeds 2 * dim = {}: the optimal radius is strictly above 1 + sqrt(2) \
             and has no known closed form",
            2 * dim
        )))
    }
}

/// A container ball together with the centers of the unit balls placed in
/// it. Construction only checks structural validity (matching dimensions);
/// geometric validity is the certifier's job, so infeasible packings can be
/// represented and diagnosed.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingSpec {
    container: Ball,
    unit_ball_centers: PointSet,
}

impl PackingSpec {
    pub fn new(container: Ball, unit_ball_centers: PointSet) -> Result<Self> {
        if container.dim() != unit_ball_centers.dim() {
            return Err(Error::DimensionMismatch {
                left: container.dim(),
                right: unit_ball_centers.dim(),
            });
        }
        Ok(Self {
            container,
            unit_ball_centers,
        })
    }

    pub fn container(&self) -> &Ball {
        &self.container
    }

    pub fn unit_ball_centers(&self) -> &PointSet {
        &self.unit_ball_centers
    }
}

/// The optimal packing of `k` unit balls attaining [`packing_radius`]:
/// centers on a regular simplex of circumradius `sqrt(2 - 2/k)` when
/// `k <= dim + 1`, otherwise the first `k` cross-polytope vertices at
/// circumradius `sqrt(2)`.
pub fn optimal_packing(k: usize, dim: usize) -> Result<PackingSpec> {
    let radius = packing_radius(k, dim)?;
    let container = Ball::new(Vector::zeros(dim), radius)?;
    let centers = if k <= dim + 1 {
        simplex_vertices(k, dim, (2.0 - 2.0 / k as f64).sqrt())?
    } else {
        let all = cross_polytope_vertices(dim, SQRT_2)?;
        PointSet::new(all.points()[..k].to_vec())?
    };
    PackingSpec::new(container, centers)
}

fn require_positive(radius: f64) -> Result<()> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "radius must be finite and positive, got {radius}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const ANALYTIC_EPS: f64 = 1e-12;

    #[test]
    fn cross_polytope_layout() {
        let ps = cross_polytope_vertices(3, SQRT_2).unwrap();
        assert_eq!(ps.len(), 6);
        // Interleaved plus/minus ordering along the axes.
        assert_eq!(ps[0].coords(), &[SQRT_2, 0.0, 0.0]);
        assert_eq!(ps[1].coords(), &[-SQRT_2, 0.0, 0.0]);
        assert_eq!(ps[4].coords(), &[0.0, 0.0, SQRT_2]);
        for p in &ps {
            assert_abs_diff_eq!(p.norm(), SQRT_2, epsilon = ANALYTIC_EPS);
        }
        let (min_d, _) = ps.min_pairwise_distance().unwrap();
        assert_abs_diff_eq!(min_d, 2.0, epsilon = ANALYTIC_EPS);
    }

    #[test]
    fn unit_cross_polytope_min_distance_is_sqrt2() {
        let ps = cross_polytope_vertices(4, 1.0).unwrap();
        let (min_d, _) = ps.min_pairwise_distance().unwrap();
        assert_abs_diff_eq!(min_d, SQRT_2, epsilon = ANALYTIC_EPS);
        let (max_d, _) = ps.max_pairwise_distance().unwrap();
        assert_abs_diff_eq!(max_d, 2.0, epsilon = ANALYTIC_EPS);
    }

    #[test]
    fn triangle_simplex() {
        let ps = simplex_vertices(3, 2, 1.0).unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps[0].coords(), &[1.0, 0.0]);
        for p in &ps {
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = ANALYTIC_EPS);
        }
        assert!(ps.centroid().norm() <= ANALYTIC_EPS);
        let expected_edge = 3f64.sqrt();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert_abs_diff_eq!(
                    ps[i].dist(&ps[j]).unwrap(),
                    expected_edge,
                    epsilon = ANALYTIC_EPS
                );
            }
        }
    }

    #[test]
    fn tetrahedron_simplex_in_higher_dimension() {
        // k = 4 in dimension 5: lives in the first three coordinates.
        let ps = simplex_vertices(4, 5, 1.0).unwrap();
        let expected_edge = (8.0f64 / 3.0).sqrt();
        for i in 0..4 {
            assert_abs_diff_eq!(ps[i].norm(), 1.0, epsilon = ANALYTIC_EPS);
            assert_abs_diff_eq!(ps[i][3], 0.0);
            assert_abs_diff_eq!(ps[i][4], 0.0);
            for j in (i + 1)..4 {
                assert_abs_diff_eq!(
                    ps[i].dist(&ps[j]).unwrap(),
                    expected_edge,
                    epsilon = ANALYTIC_EPS
                );
            }
        }
        assert!(ps.centroid().norm() <= ANALYTIC_EPS);
    }

    #[test]
    fn simplex_parameter_validation() {
        assert!(matches!(
            simplex_vertices(1, 3, 1.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            simplex_vertices(5, 3, 1.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            simplex_vertices(3, 3, 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn packing_radius_table() {
        assert_eq!(packing_radius(2, 5).unwrap(), 2.0);
        assert_abs_diff_eq!(
            packing_radius(3, 2).unwrap(),
            1.0 + (4.0f64 / 3.0).sqrt(),
            epsilon = 0.0
        );
        assert_abs_diff_eq!(
            packing_radius(4, 3).unwrap(),
            1.0 + 1.5f64.sqrt(),
            epsilon = 0.0
        );
        assert_eq!(packing_radius(5, 3).unwrap(), 1.0 + SQRT_2);
        assert_eq!(packing_radius(6, 3).unwrap(), 1.0 + SQRT_2);
        assert!(matches!(packing_radius(7, 3), Err(Error::Unsupported(_))));
        assert!(matches!(
            packing_radius(1, 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn optimal_packing_invariants_hold_analytically() {
        for dim in 2..=6usize {
            for k in 2..=(2 * dim) {
                let packing = optimal_packing(k, dim).unwrap();
                let big_r = packing.container().radius();
                assert_eq!(packing.unit_ball_centers().len(), k);
                for c in packing.unit_ball_centers() {
                    assert!(
                        c.norm() <= big_r - 1.0 + ANALYTIC_EPS,
                        "center sticks out for k={k}, dim={dim}"
                    );
                }
                if k >= 2 {
                    let (min_d, _) = packing.unit_ball_centers().min_pairwise_distance().unwrap();
                    assert!(
                        min_d >= 2.0 - ANALYTIC_EPS,
                        "balls overlap for k={k}, dim={dim}: min center distance {min_d}"
                    );
                }
            }
        }
    }

    #[test]
    fn oversubscribed_packings_are_rejected() {
        assert!(matches!(optimal_packing(5, 2), Err(Error::Unsupported(_))));
        assert!(matches!(optimal_packing(7, 3), Err(Error::Unsupported(_))));
    }
}
