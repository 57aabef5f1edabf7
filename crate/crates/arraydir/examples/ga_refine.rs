//! Refine a grid design with the seeded GA variants.
//!
//! Designs an optimal uniform planar array for N elements, then runs the
//! stall-stopping GA seeded near it and reports the improvement.
//!
//! Usage: cargo run --release -p arraydir --example ga_refine -- [N] [seed] [cf] [mr] [perturb]

use arraydir::ga::{ga_stall, GaConfig, GaProblem, GaVariant};
use arraydir::oupa::{oupa, quasi_square_factors, SevConfig};
use arraydir::DirectionSpec;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(8);
    let seed: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1);
    let cf: Option<f64> = args.get(3).map(|s| s.parse().unwrap());
    let mr: Option<f64> = args.get(4).map(|s| s.parse().unwrap());
    let perturb: Option<f64> = args.get(5).map(|s| s.parse().unwrap());

    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);
    let (n1, n2) = quasi_square_factors(n);
    let sev_cfg = SevConfig::for_direction(&dir);
    let reference = oupa(&dir, n1, n2, &sev_cfg).expect("grid design");
    println!(
        "reference {}x{} grid: d* = {:.3}, {:.3} dBi",
        n1, n2, reference.d_min_star, reference.directivity.dbi
    );

    let problem = GaProblem::uniform(dir, n);
    let (_, _, p_max) = arraydir::ga::planar_chart_of(&reference);
    let mut cfg = GaConfig::refined(n, p_max, seed, GaVariant::Stall);
    if let Some(cf) = cf {
        cfg.crossover_fraction = cf;
    }
    if let Some(mr) = mr {
        cfg.mutation_rate = mr;
    }
    if let Some(p) = perturb {
        cfg.seed_perturbation = Some(p * reference.d_min_star);
    }
    let report = ga_stall(&reference, &problem, &cfg).expect("stall run");
    println!(
        "stall run: {:.3} dBi after {} generations ({:.2} s), gain {:+.3} dB",
        report.best_directivity_dbi,
        report.generations_run,
        report.wall_time_s,
        report.best_directivity_dbi - reference.directivity.dbi
    );
}
