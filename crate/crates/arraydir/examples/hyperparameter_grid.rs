//! Pick crossover/mutation rates by running a fixed-budget GA per grid
//! cell and keeping the best-directivity cell.
//!
//! The full 10x10 percentage grid takes a while; this demo uses a coarse
//! subset. Pass a size to change the problem.
//!
//! Usage: cargo run --release -p arraydir --example hyperparameter_grid -- [N]

use arraydir::ga::hyperparameter_select;
use arraydir::DirectionSpec;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().unwrap())
        .unwrap_or(6);
    let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);

    let mut grid = Vec::new();
    for cf in [0.2, 0.5, 0.8] {
        for mr in [0.05, 0.1, 0.3] {
            grid.push((cf, mr));
        }
    }
    println!("N = {n}, {} cells, 100 generations each...", grid.len());
    let (cf, mr) = hyperparameter_select(n, &dir, &grid, 7).expect("grid run");
    println!("selected crossover fraction = {cf}, mutation rate = {mr}");
}
