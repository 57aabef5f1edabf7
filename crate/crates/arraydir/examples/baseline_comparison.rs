//! Side-by-side directivity of the design methods and the classical
//! steered references for small element counts.
//!
//! Usage: cargo run --release -p arraydir --example baseline_comparison

use arraydir::baselines::{uca_steered, ula_steered, IMPROVED_UCA_N8_DBI};
use arraydir::directivity::{directivity_analytic, ElementPattern};
use arraydir::ga::{ga_stall, GaConfig, GaProblem, GaVariant};
use arraydir::oupa::{oupa, quasi_square_factors, SevConfig};
use arraydir::DirectionSpec;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);
    let sev_cfg = SevConfig::for_direction(&dir);
    let half_wave = dir.wavelength() / 2.0;

    println!("directivity comparison at theta0 = phi0 = 45 deg (dBi)\n");
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>10}",
        "N", "grid", "ga-stall", "ula", "uca"
    );
    for n in [6usize, 8, 9] {
        let (n1, n2) = quasi_square_factors(n);
        let grid = oupa(&dir, n1, n2, &sev_cfg).expect("design");

        let problem = GaProblem::uniform(dir, n);
        let (_, _, p_max) = arraydir::ga::planar_chart_of(&grid);
        let cfg = GaConfig::refined(n, p_max, 1, GaVariant::Stall);
        let stall = ga_stall(&grid, &problem, &cfg).expect("stall");

        let ula = ula_steered(n, half_wave, &dir);
        let ula_rep = directivity_analytic(&ula.layout, ElementPattern::OMNI, &dir).unwrap();
        let uca = uca_steered(n, &dir);
        let uca_rep = directivity_analytic(&uca.layout, ElementPattern::OMNI, &dir).unwrap();

        println!(
            "{n:>4} {:>10.2} {:>10.2} {:>10.2} {:>10.2}",
            grid.directivity.dbi, stall.best_directivity_dbi, ula_rep.dbi, uca_rep.dbi
        );
    }
    println!(
        "\npublished subspace-improved circular array, N = 8: {IMPROVED_UCA_N8_DBI:.2} dBi (comparison fixture)"
    );
}
