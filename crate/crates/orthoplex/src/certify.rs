//! Certificates: machine-checkable verdicts about a configuration's shape,
//! with named residuals quantifying how far each defining condition is from
//! holding.
//!
//! A `true` verdict guarantees every reported residual is at most
//! `eps_cert` and comes with a witness describing the certified structure.
//! A `false` verdict keeps the residuals (or a named defect) for diagnosis
//! and carries no witness.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt;

use serde::Serialize;

use crate::constructions::PackingSpec;
use crate::error::{Error, Result};
use crate::geometry::{PointSet, Tolerance, Vector};
use crate::miniball::{self, caratheodory_witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeTag {
    CrossPolytope,
    Simplex,
    Packing,
    ClosePair,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ShapeTag::CrossPolytope => "cross-polytope",
            ShapeTag::Simplex => "simplex",
            ShapeTag::Packing => "packing",
            ShapeTag::ClosePair => "close-pair",
        };
        f.write_str(name)
    }
}

/// Structure extracted by a successful certification.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    CrossPolytope {
        center: Vector,
        /// Antipodal index pairs, one per axis.
        pairing: Vec<[usize; 2]>,
    },
    Simplex {
        centroid: Vector,
        edge_length: f64,
    },
    Packing {
        ball_count: usize,
        container_radius: f64,
    },
    ClosePair {
        pair: [usize; 2],
        distance: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub verdict: bool,
    pub shape_tag: ShapeTag,
    /// Named deviations; every one is at most `eps_cert` when the verdict
    /// is true.
    pub residuals: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Certificate {
    fn failed(shape_tag: ShapeTag, residuals: BTreeMap<String, f64>) -> Self {
        Self {
            verdict: false,
            shape_tag,
            residuals,
            witness: None,
        }
    }
}

/// Checks that `2 * dim` points form the vertex set of a regular
/// cross-polytope: each point has a unique farthest partner, the partnering
/// is a perfect matching, all partner pairs share one midpoint and one
/// half-diameter, and every non-partner distance equals `diameter / sqrt(2)`.
pub fn certify_cross_polytope(points: &PointSet, tol: Tolerance) -> Result<Certificate> {
    let n = points.dim();
    let m = points.len();
    if m != 2 * n {
        return Err(Error::CardinalityMismatch {
            expected: 2 * n,
            got: m,
        });
    }

    let mut residuals = BTreeMap::new();
    let d = distance_matrix(points);
    let d_max = d
        .iter()
        .flatten()
        .copied()
        .fold(0.0f64, f64::max);
    if d_max <= tol.eps_geom() {
        residuals.insert("degenerate_diameter".to_string(), d_max);
        return Ok(Certificate::failed(ShapeTag::CrossPolytope, residuals));
    }

    // Farthest-partner matching. Ties go to the smallest index, but a tie
    // (or near-tie) on the farthest distance means the matching itself is
    // ill-defined, which already rules the shape out.
    let mut partner = vec![0usize; m];
    let mut ambiguity = f64::INFINITY;
    for i in 0..m {
        let mut best = 0.0f64;
        let mut best_j = usize::MAX;
        let mut second = 0.0f64;
        for j in 0..m {
            if j == i {
                continue;
            }
            if d[i][j] > best {
                second = best;
                best = d[i][j];
                best_j = j;
            } else if d[i][j] > second {
                second = d[i][j];
            }
        }
        partner[i] = best_j;
        if m > 2 {
            ambiguity = ambiguity.min(best - second);
        }
    }
    if m > 2 && ambiguity <= tol.eps_cert() {
        residuals.insert("pairing_ambiguity".to_string(), ambiguity);
        return Ok(Certificate::failed(ShapeTag::CrossPolytope, residuals));
    }
    let broken = (0..m).filter(|&i| partner[partner[i]] != i).count();
    if broken > 0 {
        residuals.insert(
            "pairing_defect".to_string(),
            broken as f64 / m as f64,
        );
        return Ok(Certificate::failed(ShapeTag::CrossPolytope, residuals));
    }
    let pairing: Vec<[usize; 2]> = (0..m)
        .filter(|&i| i < partner[i])
        .map(|i| [i, partner[i]])
        .collect();
    debug_assert_eq!(pairing.len(), n);

    // (a) Every partner pair spans the same diameter.
    let pair_spread = pairing
        .iter()
        .map(|&[i, j]| (d[i][j] - d_max).abs())
        .fold(0.0f64, f64::max);

    // (b) All pair midpoints coincide (at the common center).
    let midpoints: Vec<Vector> = pairing
        .iter()
        .map(|&[i, j]| (&points[i] + &points[j]).scale(0.5))
        .collect();
    let mut center = Vector::zeros(n);
    for mid in &midpoints {
        center = &center + mid;
    }
    center = center.scale(1.0 / midpoints.len() as f64);
    let midpoint_spread = midpoints
        .iter()
        .map(|mid| mid.dist_unchecked(&center))
        .fold(0.0f64, f64::max);

    // (c) Every vertex sits at half the diameter from the center.
    let radius = d_max / 2.0;
    let radius_spread = points
        .iter()
        .map(|p| (p.dist_unchecked(&center) - radius).abs())
        .fold(0.0f64, f64::max);

    // (d) Every non-partner distance equals diameter / sqrt(2).
    let edge_target = d_max / SQRT_2;
    let mut edge_spread = 0.0f64;
    for i in 0..m {
        for j in (i + 1)..m {
            if partner[i] != j {
                edge_spread = edge_spread.max((d[i][j] - edge_target).abs());
            }
        }
    }

    residuals.insert("pair_distance_spread".to_string(), pair_spread);
    residuals.insert("midpoint_spread".to_string(), midpoint_spread);
    residuals.insert("radius_spread".to_string(), radius_spread);
    residuals.insert("edge_spread".to_string(), edge_spread);

    let verdict = residuals.values().all(|&v| v <= tol.eps_cert());
    Ok(Certificate {
        verdict,
        shape_tag: ShapeTag::CrossPolytope,
        witness: verdict.then(|| Witness::CrossPolytope {
            center: center.clone(),
            pairing: pairing.clone(),
        }),
        residuals,
    })
}

/// Checks that all pairwise distances agree, i.e. the points are the
/// vertices of a regular simplex (of any scale, possibly degenerate).
pub fn certify_simplex(points: &PointSet, tol: Tolerance) -> Result<Certificate> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let (d_min, _) = points.min_pairwise_distance()?;
    let (d_max, _) = points.max_pairwise_distance()?;
    let edge_spread = d_max - d_min;
    let mut residuals = BTreeMap::new();
    residuals.insert("edge_spread".to_string(), edge_spread);
    let verdict = edge_spread <= tol.eps_cert();
    Ok(Certificate {
        verdict,
        shape_tag: ShapeTag::Simplex,
        witness: verdict.then(|| Witness::Simplex {
            centroid: points.centroid(),
            edge_length: (d_min + d_max) / 2.0,
        }),
        residuals,
    })
}

/// Checks that every unit ball fits inside the container and no two unit
/// balls overlap. Residuals report the worst protrusion past the container
/// wall and the deepest pairwise overlap, both clamped at zero.
pub fn certify_packing(packing: &PackingSpec, tol: Tolerance) -> Result<Certificate> {
    let big_r = packing.container().radius();
    let hub = packing.container().center();
    let centers = packing.unit_ball_centers();

    let containment_excess = centers
        .iter()
        .map(|c| (c.dist_unchecked(hub) - (big_r - 1.0)).max(0.0))
        .fold(0.0f64, f64::max);

    let mut overlap_depth = 0.0f64;
    for i in 0..centers.len() {
        for j in (i + 1)..centers.len() {
            overlap_depth =
                overlap_depth.max((2.0 - centers[i].dist_unchecked(&centers[j])).max(0.0));
        }
    }

    let mut residuals = BTreeMap::new();
    residuals.insert("containment_excess".to_string(), containment_excess);
    residuals.insert("overlap_depth".to_string(), overlap_depth);
    let verdict = containment_excess <= tol.eps_cert() && overlap_depth <= tol.eps_cert();
    Ok(Certificate {
        verdict,
        shape_tag: ShapeTag::Packing,
        witness: verdict.then(|| Witness::Packing {
            ball_count: centers.len(),
            container_radius: big_r,
        }),
        residuals,
    })
}

/// Result of [`find_close_pair`]: two input points no farther apart than
/// `sqrt(2)` times the configuration's circumradius.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosePairOutcome {
    pub pair: (usize, usize),
    pub distance: f64,
    pub circumradius: f64,
    pub certificate: Certificate,
}

/// For any `dim + 2` or more points, produces a pair at distance at most
/// `sqrt(2)` times their circumradius.
///
/// After recentering on the enclosing-ball center and rescaling to
/// circumradius one, the center is a convex combination of at most
/// `dim + 1` points; any left-out point then has nonnegative dot product
/// with some combination member, and two points of norm at most one with
/// nonnegative dot product are within `sqrt(2)` of each other.
pub fn find_close_pair(points: &PointSet, tol: Tolerance) -> Result<ClosePairOutcome> {
    let n = points.dim();
    let m = points.len();
    if m < n + 2 {
        return Err(Error::TooFewPoints {
            needed: n + 2,
            got: m,
        });
    }

    let ball = miniball::enclosing_ball(points);
    let r = ball.radius();

    let pair = if r <= tol.eps_geom() {
        (0, 1) // everything coincides, any pair works
    } else {
        let recentered = points
            .translated(&ball.center().scale(-1.0))
            .expect("center has matching dimension")
            .scaled(1.0 / r);
        let origin = Vector::zeros(n);
        let picked = caratheodory_witness(&recentered, &origin, tol)
            .ok()
            .and_then(|(support, _)| {
                let mut in_support = vec![false; m];
                for &i in &support {
                    in_support[i] = true;
                }
                let outsider = (0..m).find(|&i| !in_support[i])?;
                let mut best_dot = f64::NEG_INFINITY;
                let mut mate = None;
                for &w in &support {
                    let dot = recentered[outsider].dot_unchecked(&recentered[w]);
                    if dot > best_dot {
                        best_dot = dot;
                        mate = Some(w);
                    }
                }
                mate.map(|w| (outsider.min(w), outsider.max(w)))
            });
        match picked {
            Some((i, j))
                if points[i].dist_unchecked(&points[j]) <= SQRT_2 * r + tol.eps_cert() =>
            {
                (i, j)
            }
            // Degenerate hull or a rounding-starved witness: fall back to
            // the pair with the largest dot product, which is nonnegative
            // whenever the center lies in the hull.
            _ => widest_dot_pair(&recentered),
        }
    };

    let distance = points[pair.0].dist_unchecked(&points[pair.1]);
    let bound_excess = (distance - SQRT_2 * r).max(0.0);
    let mut residuals = BTreeMap::new();
    residuals.insert("bound_excess".to_string(), bound_excess);
    let verdict = bound_excess <= tol.eps_cert();
    let certificate = Certificate {
        verdict,
        shape_tag: ShapeTag::ClosePair,
        witness: verdict.then(|| Witness::ClosePair {
            pair: [pair.0, pair.1],
            distance,
        }),
        residuals,
    };
    Ok(ClosePairOutcome {
        pair,
        distance,
        circumradius: r,
        certificate,
    })
}

fn widest_dot_pair(points: &PointSet) -> (usize, usize) {
    let mut best = f64::NEG_INFINITY;
    let mut pair = (0, 1);
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let dot = points[i].dot_unchecked(&points[j]);
            if dot > best {
                best = dot;
                pair = (i, j);
            }
        }
    }
    pair
}

fn distance_matrix(points: &PointSet) -> Vec<Vec<f64>> {
    let m = points.len();
    let mut d = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let v = points[i].dist_unchecked(&points[j]);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cross_polytope_vertices, optimal_packing, simplex_vertices};
    use crate::geometry::Ball;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rotate_2d(points: &PointSet, angle: f64) -> PointSet {
        let (s, c) = angle.sin_cos();
        PointSet::from_rows(
            points
                .iter()
                .map(|p| vec![c * p[0] - s * p[1], s * p[0] + c * p[1]])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn exact_cross_polytopes_pass() {
        let tol = Tolerance::default();
        for dim in 1..=4 {
            let ps = cross_polytope_vertices(dim, 1.0).unwrap();
            let cert = certify_cross_polytope(&ps, tol).unwrap();
            assert!(cert.verdict, "dim {dim}: {:?}", cert.residuals);
            assert!(cert.residuals.values().all(|&v| v <= tol.eps_cert()));
            match cert.witness {
                Some(Witness::CrossPolytope { center, pairing }) => {
                    assert!(center.norm() < 1e-12);
                    assert_eq!(pairing.len(), dim);
                }
                other => panic!("unexpected witness {other:?}"),
            }
        }
    }

    #[test]
    fn rotated_translated_cross_polytope_passes() {
        let tol = Tolerance::default();
        let base = cross_polytope_vertices(2, 0.7).unwrap();
        let rotated = rotate_2d(&base, 0.83);
        let offset = Vector::new(vec![0.2, -0.1]).unwrap();
        let moved = rotated.translated(&offset).unwrap();
        let cert = certify_cross_polytope(&moved, tol).unwrap();
        assert!(cert.verdict, "{:?}", cert.residuals);
        match cert.witness {
            Some(Witness::CrossPolytope { center, .. }) => {
                assert!(center.dist(&offset).unwrap() < 1e-9);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn perturbed_cross_polytope_fails_and_small_noise_passes() {
        let tol = Tolerance::default();
        let mut rows = cross_polytope_vertices(3, 1.0).unwrap().to_rows();
        rows[2][1] += 1e-3;
        let bumped = PointSet::from_rows(rows).unwrap();
        let cert = certify_cross_polytope(&bumped, tol).unwrap();
        assert!(!cert.verdict);
        assert!(cert.witness.is_none());
        assert!(cert.residuals.values().any(|&v| v > tol.eps_cert()));

        let mut rows = cross_polytope_vertices(3, 1.0).unwrap().to_rows();
        rows[2][1] += 1e-9;
        let nudged = PointSet::from_rows(rows).unwrap();
        assert!(certify_cross_polytope(&nudged, tol).unwrap().verdict);
    }

    #[test]
    fn square_with_a_point_pulled_in_reports_ambiguity_or_spread() {
        let tol = Tolerance::default();
        // Pull one vertex toward the center: its antipode's farthest partner
        // flips, or distances smear, depending on how far.
        let mut rows = cross_polytope_vertices(2, 1.0).unwrap().to_rows();
        rows[0][0] = 0.1;
        let ps = PointSet::from_rows(rows).unwrap();
        let cert = certify_cross_polytope(&ps, tol).unwrap();
        assert!(!cert.verdict);
    }

    #[test]
    fn cross_polytope_cardinality_is_enforced() {
        let ps = PointSet::from_rows(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        assert_eq!(
            certify_cross_polytope(&ps, Tolerance::default()),
            Err(Error::CardinalityMismatch {
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn coincident_points_are_not_a_cross_polytope() {
        let ps = PointSet::from_rows(vec![vec![0.0, 0.0]; 4]).unwrap();
        let cert = certify_cross_polytope(&ps, Tolerance::default()).unwrap();
        assert!(!cert.verdict);
    }

    #[test]
    fn simplex_certification() {
        let tol = Tolerance::default();
        for (k, dim) in [(3usize, 2usize), (4, 3), (5, 6)] {
            let ps = simplex_vertices(k, dim, 1.0).unwrap();
            let cert = certify_simplex(&ps, tol).unwrap();
            assert!(cert.verdict, "k={k} dim={dim}: {:?}", cert.residuals);
            match cert.witness {
                Some(Witness::Simplex { edge_length, .. }) => {
                    let expected = (2.0 * k as f64 / (k as f64 - 1.0)).sqrt();
                    assert_abs_diff_eq!(edge_length, expected, epsilon = 1e-9);
                }
                other => panic!("unexpected witness {other:?}"),
            }
        }

        let skewed = PointSet::from_rows(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.1],
        ])
        .unwrap();
        let cert = certify_simplex(&skewed, tol).unwrap();
        assert!(!cert.verdict);
        assert!(cert.residuals["edge_spread"] > 0.09);
    }

    #[test]
    fn optimal_packings_certify() {
        let tol = Tolerance::default();
        for dim in 2..=5usize {
            for k in 2..=(2 * dim) {
                let packing = optimal_packing(k, dim).unwrap();
                let cert = certify_packing(&packing, tol).unwrap();
                assert!(cert.verdict, "k={k} dim={dim}: {:?}", cert.residuals);
                assert!(cert.residuals.values().all(|&v| v <= 1e-12));
            }
        }
    }

    #[test]
    fn shrunken_container_reports_protrusion() {
        let tol = Tolerance::default();
        let good = optimal_packing(5, 3).unwrap();
        let tight = PackingSpec::new(
            Ball::new(
                good.container().center().clone(),
                good.container().radius() - 0.01,
            )
            .unwrap(),
            good.unit_ball_centers().clone(),
        )
        .unwrap();
        let cert = certify_packing(&tight, tol).unwrap();
        assert!(!cert.verdict);
        assert_abs_diff_eq!(cert.residuals["containment_excess"], 0.01, epsilon = 1e-9);
    }

    #[test]
    fn overlapping_balls_report_depth() {
        let tol = Tolerance::default();
        let centers = PointSet::from_rows(vec![
            vec![-0.95, 0.0],
            vec![0.95, 0.0],
        ])
        .unwrap();
        let packing =
            PackingSpec::new(Ball::new(Vector::zeros(2), 2.0).unwrap(), centers).unwrap();
        let cert = certify_packing(&packing, tol).unwrap();
        assert!(!cert.verdict);
        assert_abs_diff_eq!(cert.residuals["overlap_depth"], 0.1, epsilon = 1e-9);
        assert_abs_diff_eq!(cert.residuals["containment_excess"], 0.0);
    }

    #[test]
    fn close_pair_on_unit_cross_polytope() {
        let tol = Tolerance::default();
        let ps = cross_polytope_vertices(3, 1.0).unwrap();
        let out = find_close_pair(&ps, tol).unwrap();
        assert!(out.certificate.verdict);
        assert_abs_diff_eq!(out.circumradius, 1.0, epsilon = 1e-9);
        assert!(out.distance <= SQRT_2 * out.circumradius + 1e-12);
        // On a unit cross-polytope the guaranteed pair is tight.
        assert_abs_diff_eq!(out.distance, SQRT_2, epsilon = 1e-9);
    }

    #[test]
    fn close_pair_needs_dim_plus_two_points() {
        let ps = cross_polytope_vertices(3, 1.0).unwrap();
        let too_few = PointSet::new(ps.points()[..4].to_vec()).unwrap();
        assert!(matches!(
            find_close_pair(&too_few, Tolerance::default()),
            Err(Error::TooFewPoints { needed: 5, got: 4 })
        ));
    }

    #[test]
    fn close_pair_on_coincident_points() {
        let ps = PointSet::from_rows(vec![vec![0.25, -0.5]; 5]).unwrap();
        let out = find_close_pair(&ps, Tolerance::default()).unwrap();
        assert!(out.certificate.verdict);
        assert_eq!(out.pair, (0, 1));
        assert_eq!(out.distance, 0.0);
    }

    #[test]
    fn close_pair_holds_on_random_configurations() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let tol = Tolerance::default();
        for _ in 0..200 {
            let dim = rng.gen_range(2..=4usize);
            let count = dim + 2 + rng.gen_range(0..3usize);
            let rows: Vec<Vec<f64>> = (0..count)
                .map(|_| {
                    // Uniform direction, radius biased toward the boundary.
                    let mut v: Vec<f64> =
                        (0..dim).map(|_| rng.gen_range(-1.0..1.0f64)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
                    let target: f64 = rng.gen_range(0.0..1.0f64);
                    let scale = target.powf(1.0 / dim as f64) / norm;
                    for x in v.iter_mut() {
                        *x *= scale;
                    }
                    v
                })
                .collect();
            let ps = PointSet::from_rows(rows).unwrap();
            let out = find_close_pair(&ps, tol).unwrap();
            assert!(
                out.distance <= SQRT_2 * out.circumradius + 1e-12,
                "distance {} exceeds sqrt(2) * {}",
                out.distance,
                out.circumradius
            );
            assert!(out.certificate.verdict);
            assert!(out.pair.0 < out.pair.1);
        }
    }

    #[test]
    fn close_pair_is_translation_covariant() {
        let tol = Tolerance::default();
        let ps = cross_polytope_vertices(2, 0.9).unwrap();
        let shifted = ps
            .translated(&Vector::new(vec![5.0, -3.0]).unwrap())
            .unwrap();
        let a = find_close_pair(&ps, tol).unwrap();
        let b = find_close_pair(&shifted, tol).unwrap();
        assert_eq!(a.pair, b.pair);
        assert_abs_diff_eq!(a.distance, b.distance, epsilon = 1e-9);
    }
}
