//! Randomized invariants over the public API, via proptest.

use orthoplex::certify::{certify_cross_polytope, find_close_pair};
use orthoplex::constructions::{cross_polytope_vertices, packing_radius, simplex_vertices};
use orthoplex::geometry::{crescent_intersection_basis, in_crescent, in_half_space};
use orthoplex::miniball::{caratheodory_witness, min_enclosing_ball};
use orthoplex::{PointSet, Tolerance, Vector};
use proptest::prelude::*;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim)
}

fn point_rows(dim: usize, len: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(coords(dim), len)
}

fn norm_of(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn into_ball(mut v: Vec<f64>) -> Vec<f64> {
    let norm = norm_of(&v);
    if norm > 1.0 {
        for x in &mut v {
            *x /= norm;
        }
    }
    v
}

proptest! {
    #[test]
    fn distance_is_symmetric_and_triangular(
        (a, b, c) in (2usize..=6).prop_flat_map(|d| (coords(d), coords(d), coords(d)))
    ) {
        let a = Vector::new(a).unwrap();
        let b = Vector::new(b).unwrap();
        let c = Vector::new(c).unwrap();
        prop_assert_eq!(a.dist(&b).unwrap(), b.dist(&a).unwrap());
        prop_assert!(a.dist(&c).unwrap() <= a.dist(&b).unwrap() + b.dist(&c).unwrap() + 1e-12);
    }

    #[test]
    fn crescent_membership_implies_half_space(
        (anchor, query) in (2usize..=6).prop_flat_map(|d| (coords(d), coords(d)))
    ) {
        let scale = norm_of(&anchor);
        prop_assume!(scale > 1e-3);
        let anchor = Vector::new(anchor.iter().map(|x| x / scale).collect()).unwrap();
        let query = Vector::new(into_ball(query)).unwrap();
        let tol = Tolerance::default();
        if in_crescent(&anchor, &query, tol).unwrap() {
            prop_assert!(in_half_space(&anchor, &query, tol).unwrap());
        }
    }

    #[test]
    fn anchor_side_half_ball_stays_within_sqrt_2(
        (anchor, query) in (2usize..=6).prop_flat_map(|d| (coords(d), coords(d)))
    ) {
        let scale = norm_of(&anchor);
        prop_assume!(scale > 1e-3);
        let anchor = Vector::new(anchor.iter().map(|x| x / scale).collect()).unwrap();
        let query = Vector::new(into_ball(query)).unwrap();
        let near = if anchor.dot(&query).unwrap() >= 0.0 { query } else { query.scale(-1.0) };
        prop_assert!(anchor.dist(&near).unwrap() <= SQRT_2 + 1e-12);
    }

    #[test]
    fn min_pairwise_distance_ignores_point_order(
        rows in (2usize..=5).prop_flat_map(|d| (2usize..=9).prop_flat_map(move |k| point_rows(d, k)))
    ) {
        let forward = PointSet::from_rows(rows.clone()).unwrap();
        let backward = PointSet::from_rows(rows.into_iter().rev().collect()).unwrap();
        let (d_fwd, _) = forward.min_pairwise_distance().unwrap();
        let (d_bwd, _) = backward.min_pairwise_distance().unwrap();
        prop_assert_eq!(d_fwd, d_bwd);
    }

    #[test]
    fn axis_generators_have_exact_complement_basis(
        (dim, mask) in (2usize..=6).prop_flat_map(|d| (Just(d), 1u32..(1u32 << d)))
    ) {
        let axes: Vec<usize> = (0..dim).filter(|i| mask & (1 << i) != 0).collect();
        let mut generators = Vec::with_capacity(2 * axes.len());
        for &axis in &axes {
            generators.push(Vector::unit(dim, axis).scale(-1.0));
            generators.push(Vector::unit(dim, axis));
        }
        let set = PointSet::new(generators).unwrap();
        let basis = crescent_intersection_basis(&set, Tolerance::default()).unwrap();
        prop_assert_eq!(basis.len(), dim - axes.len());
        for (i, b) in basis.iter().enumerate() {
            for g in &set {
                prop_assert!((b.dist(g).unwrap() - SQRT_2).abs() <= 1e-12);
            }
            for other in &basis[i + 1..] {
                prop_assert!(b.dot(other).unwrap().abs() <= 1e-9);
            }
            prop_assert!((b.norm() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn container_radius_grows_with_count_and_stays_bracketed(dim in 2usize..=8) {
        let radii: Vec<f64> = (2..=2 * dim).map(|k| packing_radius(k, dim).unwrap()).collect();
        for pair in radii.windows(2) {
            prop_assert!(pair[0] <= pair[1] + 1e-15);
        }
        for r in &radii {
            prop_assert!(*r >= 2.0 && *r <= 1.0 + SQRT_2 + 1e-15);
        }
    }

    #[test]
    fn simplex_vertices_are_equidistant_on_the_sphere(
        (dim, k, radius) in (2usize..=6)
            .prop_flat_map(|d| (Just(d), 2..=d + 1, 0.2f64..3.0))
    ) {
        let simplex = simplex_vertices(k, dim, radius).unwrap();
        prop_assert_eq!(simplex.len(), k);
        for p in &simplex {
            prop_assert!((p.norm() - radius).abs() <= 1e-12 * (1.0 + radius));
        }
        let expected_edge = radius * (2.0 * k as f64 / (k as f64 - 1.0)).sqrt();
        let (d_min, _) = simplex.min_pairwise_distance().unwrap();
        let (d_max, _) = simplex.max_pairwise_distance().unwrap();
        prop_assert!((d_min - expected_edge).abs() <= 1e-9 * (1.0 + radius));
        prop_assert!((d_max - expected_edge).abs() <= 1e-9 * (1.0 + radius));
    }

    #[test]
    fn scaled_and_shifted_cross_polytopes_still_certify(
        (dim, radius, offset) in (2usize..=6)
            .prop_flat_map(|d| (Just(d), 0.1f64..10.0, coords(d)))
    ) {
        let vertices = cross_polytope_vertices(dim, radius).unwrap();
        let shifted = vertices.translated(&Vector::new(offset).unwrap()).unwrap();
        let cert = certify_cross_polytope(&shifted, Tolerance::default()).unwrap();
        prop_assert!(cert.verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn miniball_covers_points_and_never_shrinks(
        (rows, extra) in (2usize..=5)
            .prop_flat_map(|d| ((2usize..=9).prop_flat_map(move |k| point_rows(d, k)), coords(d)))
    ) {
        let tol = Tolerance::default();
        let set = PointSet::from_rows(rows.clone()).unwrap();
        let found = min_enclosing_ball(&set, tol).unwrap();
        let ball = found.ball();
        let slack = 1e-9 * (1.0 + ball.radius());
        for p in &set {
            prop_assert!(ball.contains(p, slack).unwrap());
        }

        let mut grown = rows;
        grown.push(extra);
        let bigger = min_enclosing_ball(&PointSet::from_rows(grown).unwrap(), tol).unwrap();
        prop_assert!(bigger.ball().radius() >= ball.radius() - 1e-10);
    }

    #[test]
    fn caratheodory_witness_is_small_nonnegative_and_accurate(
        (rows, weights) in (2usize..=5).prop_flat_map(|d| {
            (d + 2..=d + 4).prop_flat_map(move |k| {
                (point_rows(d, k), prop::collection::vec(0.01f64..1.0, k))
            })
        })
    ) {
        let set = PointSet::from_rows(rows.clone()).unwrap();
        let total: f64 = weights.iter().sum();
        let mut target = vec![0.0; set.dim()];
        for (row, w) in rows.iter().zip(&weights) {
            for (t, x) in target.iter_mut().zip(row) {
                *t += x * w / total;
            }
        }
        let target = Vector::new(target).unwrap();

        let (indices, coeffs) = caratheodory_witness(&set, &target, Tolerance::default()).unwrap();
        prop_assert!(indices.len() <= set.dim() + 1);
        prop_assert_eq!(indices.len(), coeffs.len());
        prop_assert!(coeffs.iter().all(|&c| c >= 0.0));
        prop_assert!((coeffs.iter().sum::<f64>() - 1.0).abs() <= 1e-9);

        let mut rebuilt = vec![0.0; set.dim()];
        for (&i, &c) in indices.iter().zip(&coeffs) {
            for (r, x) in rebuilt.iter_mut().zip(set[i].coords()) {
                *r += c * x;
            }
        }
        let rebuilt = Vector::new(rebuilt).unwrap();
        prop_assert!(rebuilt.dist(&target).unwrap() <= 1e-6);
    }

    #[test]
    fn close_pair_respects_the_scaled_bound(
        (rows, scale, offset) in (2usize..=4).prop_flat_map(|d| {
            (d + 2..=d + 4).prop_flat_map(move |k| {
                (point_rows(d, k), 0.3f64..2.0, coords(d))
            })
        })
    ) {
        let offset = Vector::new(offset).unwrap();
        let ball_rows: Vec<Vec<f64>> = rows.into_iter().map(into_ball).collect();
        let set = PointSet::from_rows(ball_rows)
            .unwrap()
            .scaled(scale)
            .translated(&offset)
            .unwrap();
        let outcome = find_close_pair(&set, Tolerance::default()).unwrap();
        prop_assert!(outcome.distance <= SQRT_2 * outcome.circumradius + 1e-9);
        let (i, j) = outcome.pair;
        prop_assert_eq!(set[i].dist(&set[j]).unwrap(), outcome.distance);
    }
}
