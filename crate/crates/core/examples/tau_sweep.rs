//! Mean iteration count of the graph-aware iteration across τ = 0, 0.1, …, 1.
//!
//! ```bash
//! cargo run --release --example tau_sweep -- cube_q3 10
//! ```

use qsinkhorn::cli::parse_tau_grid;
use qsinkhorn::detector::run_batch;
use qsinkhorn::graphs::catalog;
use qsinkhorn::sinkhorn_core::RunConfig;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "cube_q3".into());
    let runs: usize = args.next().map_or(10, |s| s.parse().expect("runs"));
    let g = catalog(&name).expect("catalog graph");

    println!("tau,successes,mean_iterations");
    for tau in parse_tau_grid("0:1:0.1").unwrap() {
        let config = RunConfig::new(1e-3, 2000).with_tau(tau).with_seed(1);
        let s = run_batch(Some(&g), g.n(), &config, runs).summary;
        let mean = s
            .mean_iterations
            .map_or(String::new(), |m| format!("{m:.1}"));
        println!("{tau},{},{mean}", s.successes);
    }
}
