//! However you place dim+2 points in a ball, two of them end up within
//! sqrt(2) times its circumradius. find_close_pair names such a pair along
//! with the radius and a checkable certificate.

use orthoplex::certify::find_close_pair;
use orthoplex::optimizer::sample_unit_ball;
use orthoplex::{PointSet, Tolerance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let dim = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for trial in 0..5 {
        let points: Vec<_> = (0..dim + 2).map(|_| sample_unit_ball(dim, &mut rng)).collect();
        let set = PointSet::new(points).unwrap();
        let outcome = find_close_pair(&set, Tolerance::default()).unwrap();
        let bound = 2f64.sqrt() * outcome.circumradius;
        println!(
            "trial {trial}: pair {:?} at distance {:.12}, bound {:.12} (circumradius {:.12})",
            outcome.pair, outcome.distance, bound, outcome.circumradius
        );
        worst = worst.max(outcome.distance / outcome.circumradius);
    }
    println!("\nworst distance/circumradius ratio: {:.12} <= sqrt(2) = {:.12}", worst, 2f64.sqrt());

    // the bound is tight: cross-polytope vertices have no pair closer than
    // sqrt(2), so dim+2 of them realize equality
    let vertices = orthoplex::constructions::cross_polytope_vertices(dim, 1.0).unwrap();
    let subset = vertices.subset(&[0, 1, 2, 4, 6, 7]);
    let outcome = find_close_pair(&subset, Tolerance::default()).unwrap();
    println!(
        "six cross-polytope vertices in dim 4: closest admissible pair at {:.15}",
        outcome.distance
    );
}
