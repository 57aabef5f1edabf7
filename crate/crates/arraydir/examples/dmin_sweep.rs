//! Spacing sweep for the three plane-constrained geometries, printing the
//! directivity curve as CSV plus a summary of each geometry's optimum.
//!
//! Usage: cargo run --release -p arraydir --example dmin_sweep -- [N]

use arraydir::baselines::{dmin_sweep, sweep_argmax, GeometryKind};
use arraydir::DirectionSpec;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().unwrap())
        .unwrap_or(16);
    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);
    let range = (1.0, 7.3);
    let step = 0.05;

    println!("d_min,upa_dbi,uhpa_dbi,uca_dbi");
    let upa = dmin_sweep(GeometryKind::Upa, n, &dir, range, step).unwrap();
    let uhpa = dmin_sweep(GeometryKind::Uhpa, n, &dir, range, step).unwrap();
    let uca = dmin_sweep(GeometryKind::Uca, n, &dir, range, step).unwrap();
    for ((a, b), c) in upa.iter().zip(&uhpa).zip(&uca) {
        println!(
            "{},{},{},{}",
            a.d_min, a.directivity_dbi, b.directivity_dbi, c.directivity_dbi
        );
    }

    eprintln!("\nN = {n} optima:");
    for (name, curve) in [("upa", &upa), ("uhpa", &uhpa), ("uca", &uca)] {
        let best = sweep_argmax(curve).unwrap();
        eprintln!(
            "  {name:>5}: {:.3} dBi at d_min = {:.3} (hull area {:.2})",
            best.directivity_dbi, best.d_min, best.area
        );
    }
}
