//! Regular simplexes inscribed in a sphere: k vertices, all pairwise
//! distances equal to radius * sqrt(2k/(k-1)).

use orthoplex::certify::certify_simplex;
use orthoplex::constructions::simplex_vertices;
use orthoplex::Tolerance;

fn main() {
    let dim = 3;
    for k in 2..=dim + 1 {
        let simplex = simplex_vertices(k, dim, 1.0).unwrap();
        let (edge, _) = simplex.min_pairwise_distance().unwrap();
        let expected = (2.0 * k as f64 / (k as f64 - 1.0)).sqrt();
        println!("k = {k} in dim {dim}: edge {edge:.15}, closed form {expected:.15}");
        for (i, p) in simplex.iter().enumerate() {
            println!("  v{i} = {:?}  |v{i}| = {:.12}", p.coords(), p.norm());
        }
        let cert = certify_simplex(&simplex, Tolerance::default()).unwrap();
        println!("  certified: {}", cert.verdict);
    }

    // more vertices than dim+1 cannot all be equidistant on the sphere
    match simplex_vertices(5, 3, 1.0) {
        Err(err) => println!("\nk = 5 in dim 3 -> {err}"),
        Ok(_) => unreachable!(),
    }
}
