//! Evaluate directivity two independent ways.
//!
//! Builds a few small arrays, computes the closed-form directivity and the
//! quadrature value, and prints both with their relative difference.
//!
//! Usage: cargo run --release -p arraydir --example eval_directivity

use arraydir::{
    directivity_analytic, directivity_quadrature, ArrayLayout, DirectionSpec, ElementPattern, Vec3,
};
use std::f64::consts::{FRAC_PI_4, PI};

fn main() {
    let k = 1.0;
    let lambda = 2.0 * PI / k;
    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, k);

    let cases: Vec<(&str, ArrayLayout, ElementPattern)> = vec![
        (
            "single omnidirectional element",
            ArrayLayout::uniform(vec![Vec3::new(0.0, 0.0, 0.0)]),
            ElementPattern::OMNI,
        ),
        (
            "half-wave pair along x",
            ArrayLayout::uniform(vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(lambda / 2.0, 0.0, 0.0),
            ]),
            ElementPattern::OMNI,
        ),
        (
            "2x2 grid, isotropic elements",
            ArrayLayout::uniform(vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(lambda / 2.0, 0.0, 0.0),
                Vec3::new(0.0, lambda / 2.0, 0.0),
                Vec3::new(lambda / 2.0, lambda / 2.0, 0.0),
            ]),
            ElementPattern::ISOTROPIC,
        ),
        (
            "scattered 5 elements, sin*cos pattern",
            ArrayLayout::uniform(vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(2.5, -1.0, 0.7),
                Vec3::new(-1.2, 3.1, -0.4),
                Vec3::new(4.0, 1.5, 2.0),
                Vec3::new(-2.0, -2.0, 1.0),
            ]),
            ElementPattern { u: 1, v: 1 },
        ),
    ];

    println!("look direction: theta0 = phi0 = 45 deg, k = {k} 1/m\n");
    println!(
        "{:<40} {:>12} {:>12} {:>10}",
        "array", "analytic dBi", "quadrature", "rel diff"
    );
    for (name, layout, pattern) in cases {
        let ana = directivity_analytic(&layout, pattern, &dir).expect("analytic");
        let qua = directivity_quadrature(&layout, pattern, &dir).expect("quadrature");
        let rel = (ana.linear - qua.linear).abs() / qua.linear;
        println!(
            "{name:<40} {:>12.4} {:>12.4} {:>10.2e}",
            ana.dbi, qua.dbi, rel
        );
    }
}
