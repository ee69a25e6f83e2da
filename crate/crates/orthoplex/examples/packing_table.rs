//! The minimum spherical container for k unit balls in dimension n.
//!
//! Two regimes: up to n+1 balls the centers form a regular simplex and the
//! container grows with k; from n+2 through 2n balls the answer is flat at
//! 1 + sqrt(2) because the centers sit on cross-polytope vertices. One more
//! ball (k = 2n+1) no longer fits in that radius, so the table stops there.

use orthoplex::certify::certify_packing;
use orthoplex::constructions::{optimal_packing, packing_radius};
use orthoplex::Tolerance;

fn main() {
    println!("container radius r(k, n), unit balls:\n");
    print!("{:>4}", "k\\n");
    for n in 2..=6 {
        print!("{n:>12}");
    }
    println!();
    for k in 2..=12 {
        print!("{k:>4}");
        for n in 2..=6 {
            match packing_radius(k, n) {
                Ok(r) => print!("{r:>12.8}"),
                Err(_) => print!("{:>12}", "-"),
            }
        }
        println!();
    }

    println!("\nflat stretch for n = 4: r = 1 + sqrt(2) = {:.15}", 1.0 + 2f64.sqrt());
    for k in 6..=8 {
        let packing = optimal_packing(k, 4).unwrap();
        let cert = certify_packing(&packing, Tolerance::new(1e-13, 1e-12).unwrap()).unwrap();
        println!(
            "  k = {k}: container radius {:.15}, certified {} (worst residual {:.2e})",
            packing.container().radius(),
            cert.verdict,
            cert.residuals.values().cloned().fold(0.0, f64::max),
        );
    }

    println!("\nk = 9 = 2*4+1 in dim 4:");
    match packing_radius(9, 4) {
        Err(err) => println!("  {err}"),
        Ok(_) => unreachable!(),
    }
}
