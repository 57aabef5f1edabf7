//! Plain genetic run over random starts, printing the per-generation
//! trajectory of the objective and directivity.
//!
//! Usage: cargo run --release -p arraydir --example ga_optimize -- [N] [seed]

use arraydir::ga::{ga_optimize, GaConfig, GaProblem};
use arraydir::DirectionSpec;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(6);
    let seed: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1);

    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);
    let problem = GaProblem::uniform(dir, n);
    let cfg = GaConfig::base(n, seed);
    println!(
        "N = {n}, population {}, crossover {}, mutation {}, {} generations, seed {seed}\n",
        cfg.population_size,
        cfg.crossover_fraction,
        cfg.mutation_rate,
        cfg.max_generations.unwrap()
    );

    let report = ga_optimize(&problem, &cfg).expect("run");
    println!("{:>5} {:>14} {:>12}", "gen", "best G", "best dBi");
    for (t, stat) in report.history.iter().enumerate() {
        println!("{t:>5} {:>14.6} {:>12.3}", stat.best_g, stat.best_dbi);
    }
    println!(
        "\nfinal: {:.3} dBi, G = {:.6} (bound {:.4}), {:.2} s",
        report.best_directivity_dbi,
        report.best_g,
        -(n as f64) / 12.0,
        report.wall_time_s
    );
    println!("best coordinates (x, y):");
    for (x, y) in report
        .best_solution
        .xs
        .iter()
        .zip(&report.best_solution.ys)
    {
        println!("  ({x:>7.3}, {y:>7.3})");
    }
}
