//! Design optimal uniform planar arrays and print the resulting spacing,
//! directivity and footprint for a range of grid sizes.
//!
//! Usage: cargo run --release -p arraydir --example oupa_design

use arraydir::oupa::{oupa, SevConfig};
use arraydir::DirectionSpec;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);
    let cfg = SevConfig::for_direction(&dir);

    println!("look direction: theta0 = phi0 = 45 deg, k = 1\n");
    println!(
        "{:>6} {:>6} {:>10} {:>14} {:>12} {:>12}",
        "n1", "n2", "d_min*", "directivity", "area", "objective G"
    );
    for (n1, n2) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4), (5, 5)] {
        let res = oupa(&dir, n1, n2, &cfg).expect("design");
        println!(
            "{n1:>6} {n2:>6} {:>10.3} {:>10.2} dBi {:>12.2} {:>12.4}",
            res.d_min_star, res.directivity.dbi, res.area, res.g_at_optimum
        );
    }

    // The first few designed positions for the 3x3 case.
    let res = oupa(&dir, 3, 3, &cfg).expect("design");
    println!("\n3x3 on-plane element positions (x, y, z):");
    for p in &res.layout.positions {
        println!("  ({:>8.3}, {:>8.3}, {:>8.3})", p.x, p.y, p.z);
    }
}
