//! Prints the liquidation-probability grid for the jupiter preset.
//!
//!     cargo run --release -p derivsim-core --example jupiter_grid [seed] [replications]

use derivsim_core::load_preset;
use derivsim_core::mc::{grid_sweep, solana_long};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let reps = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let base = solana_long(10.0, load_preset("jupiter").expect("preset"), 0.02, reps, seed);
    let sigmas = [0.02, 0.04, 0.06, 0.08];
    let leverages = [2.0, 5.0, 10.0, 15.0, 20.0, 50.0, 100.0];
    let grid = grid_sweep(&base, &sigmas, &leverages).expect("grid");
    print!("sigma");
    for l in leverages {
        print!("\tL={l}");
    }
    println!();
    for (i, s) in sigmas.iter().enumerate() {
        print!("{s}");
        for j in 0..leverages.len() {
            print!("\t{:.1}", 100.0 * grid.cell(i, j).liquidation_probability);
        }
        println!();
    }
}
