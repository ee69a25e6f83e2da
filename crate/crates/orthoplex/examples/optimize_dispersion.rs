//! Spread 2*dim points in the unit ball so the smallest pairwise distance is
//! as large as possible. The search recovers sqrt(2), and the certifier
//! recognizes the result as a cross-polytope in some rotated frame.

use orthoplex::certify::certify_cross_polytope;
use orthoplex::optimizer::{maximin_optimize, OptimizerConfig};
use orthoplex::Tolerance;

fn main() {
    let dim = 3;
    let cfg = OptimizerConfig::new(2 * dim, dim).with_seed(42).with_restarts(32);
    let result = maximin_optimize(&cfg).unwrap();

    println!("k = {} points in the {dim}-ball, {} restarts", cfg.k, cfg.restarts);
    println!("achieved min distance: {:.15}", result.achieved_min_distance);
    println!("target sqrt(2):        {:.15}", 2f64.sqrt());
    println!("gap: {:.3e}", 2f64.sqrt() - result.achieved_min_distance);

    let mut sorted = result.per_restart_values.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    println!(
        "restart spread: best {:.12}, median {:.12}, worst {:.12}",
        sorted[0],
        sorted[sorted.len() / 2],
        sorted[sorted.len() - 1]
    );

    let cert = certify_cross_polytope(&result.best, Tolerance::with_eps_cert(1e-5).unwrap()).unwrap();
    println!("\ncross-polytope certificate: {}", cert.verdict);
    for (name, value) in &cert.residuals {
        println!("  {name}: {value:.3e}");
    }
    println!("\nbest configuration:");
    for p in &result.best {
        println!("  {:?}", p.coords());
    }
}
