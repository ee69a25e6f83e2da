//! The crescent of a boundary point x: everything in the unit ball at least
//! sqrt(2) away from x. It fits inside the half-space x.y <= 0, and when
//! several points' crescents are intersected, the far locus on the sphere is
//! the great subsphere orthogonal to all of them.

use orthoplex::geometry::{crescent_intersection_basis, in_crescent, in_half_space};
use orthoplex::optimizer::{sample_unit_ball, sample_unit_sphere};
use orthoplex::{PointSet, Tolerance, Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();
    let dim = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let anchor = sample_unit_sphere(dim, &mut rng);
    let mut in_c = 0usize;
    let mut in_h = 0usize;
    let samples = 100_000;
    for _ in 0..samples {
        let q = sample_unit_ball(dim, &mut rng);
        let c = in_crescent(&anchor, &q, tol).unwrap();
        let h = in_half_space(&anchor, &q, tol).unwrap();
        assert!(!c || h, "crescent point escaped the half-space");
        in_c += c as usize;
        in_h += h as usize;
    }
    println!("dim {dim}, {samples} uniform samples from the ball:");
    println!("  in the crescent:   {in_c:>6} ({:.2}%)", 100.0 * in_c as f64 / samples as f64);
    println!("  in the half-space: {in_h:>6} ({:.2}%)", 100.0 * in_h as f64 / samples as f64);
    println!("  every crescent point stayed inside the half-space");

    // two orthogonal axis pairs leave a 2-dimensional far locus in dim 4
    let generators = PointSet::new(vec![
        Vector::unit(dim, 0),
        Vector::unit(dim, 0).scale(-1.0),
        Vector::unit(dim, 1),
        Vector::unit(dim, 1).scale(-1.0),
    ])
    .unwrap();
    let basis = crescent_intersection_basis(&generators, tol).unwrap();
    println!("\ngenerators: +/- e1, +/- e2 in dim {dim}");
    println!("common far locus on the sphere has dimension {}", basis.len() - 1);
    for b in &basis {
        println!("  basis vector {:?}", b.coords());
        for g in &generators {
            assert!((b.dist(g).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        }
    }
    println!("each basis vector is exactly sqrt(2) from every generator");
}
