//! Minimum enclosing balls and their structure: which points pin the ball,
//! with what convex weights, and how a target inside the hull gets its own
//! small witness subset.

use orthoplex::miniball::{caratheodory_witness, min_enclosing_ball, minimal_support_subset};
use orthoplex::optimizer::sample_unit_ball;
use orthoplex::{PointSet, Tolerance, Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let points: Vec<_> = (0..7).map(|_| sample_unit_ball(3, &mut rng)).collect();
    let set = PointSet::new(points).unwrap();

    let found = min_enclosing_ball(&set, tol).unwrap();
    let ball = found.ball();
    println!("7 random points in the 3-ball");
    println!("enclosing ball: center {:?}", ball.center().coords());
    println!("radius {:.15}", ball.radius());
    println!(
        "support {:?} with weights {:?}",
        found.support_indices(),
        found.coefficients()
    );
    println!("center reconstruction error: {:.3e}", found.reconstruction_error(&set));

    // the smallest subset of points that already forces the same ball
    let minimal = minimal_support_subset(&set, tol).unwrap();
    println!(
        "\nminimal support: {:?} (radius {:.15})",
        minimal.support_indices(),
        minimal.ball().radius()
    );
    for (&i, &w) in minimal.support_indices().iter().zip(minimal.coefficients()) {
        let gap = ball.radius() - set[i].dist(ball.center()).unwrap();
        println!("  point {i}: weight {w:.6}, distance from sphere {gap:.3e}");
    }

    // any point of the hull is a combination of at most dim+1 of the inputs
    let target = set.centroid();
    let (indices, coeffs) = caratheodory_witness(&set, &target, tol).unwrap();
    println!("\ncentroid witness uses points {indices:?}");
    let mut rebuilt = Vector::zeros(set.dim());
    for (&i, &c) in indices.iter().zip(&coeffs) {
        rebuilt = &rebuilt + &set[i].scale(c);
    }
    println!("coefficients {coeffs:?}");
    println!("reconstruction error {:.3e}", rebuilt.dist(&target).unwrap());
}
