//! Build cross-polytope vertex sets and check what makes them special:
//! 2*dim points in the unit ball, sqrt(2) apart except for antipodal pairs.

use orthoplex::certify::certify_cross_polytope;
use orthoplex::constructions::cross_polytope_vertices;
use orthoplex::Tolerance;

fn main() {
    for dim in [2, 3, 4, 8] {
        let vertices = cross_polytope_vertices(dim, 1.0).unwrap();
        let (min_d, closest) = vertices.min_pairwise_distance().unwrap();
        let (max_d, farthest) = vertices.max_pairwise_distance().unwrap();
        println!("dim {dim}: {} vertices", vertices.len());
        println!("  closest pair {closest:?} at {min_d:.15}  (sqrt(2) = {:.15})", 2f64.sqrt());
        println!("  farthest pair {farthest:?} at {max_d:.15}  (the antipodal diameter)");

        let cert = certify_cross_polytope(&vertices, Tolerance::default()).unwrap();
        println!("  certified: {}", cert.verdict);
        for (name, value) in &cert.residuals {
            println!("    {name}: {value:.3e}");
        }
    }
}
