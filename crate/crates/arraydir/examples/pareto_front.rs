//! Directivity-versus-area tradeoff of designed grids: one row per
//! (n1, n2) combination, CSV on stdout. Feed it to a plotting tool to see
//! the Pareto front.
//!
//! Usage: cargo run --release -p arraydir --example pareto_front

use arraydir::oupa::{oupa, SevConfig};
use arraydir::DirectionSpec;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);
    let cfg = SevConfig::for_direction(&dir);

    println!("N,n1,n2,d_min_star,directivity_dbi,area");
    for n1 in 2..=6usize {
        for n2 in n1..=8usize {
            let res = oupa(&dir, n1, n2, &cfg).expect("design");
            println!(
                "{},{},{},{},{},{}",
                n1 * n2,
                n1,
                n2,
                res.d_min_star,
                res.directivity.dbi,
                res.area
            );
        }
    }
}
