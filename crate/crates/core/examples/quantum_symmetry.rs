//! Predict whether a catalog graph has quantum symmetry from a batch of
//! graph-aware runs.
//!
//! ```bash
//! cargo run --release --example quantum_symmetry -- cube_q3 20
//! cargo run --release --example quantum_symmetry -- petersen 30
//! ```

use qsinkhorn::detector::run_batch;
use qsinkhorn::graphs::catalog;
use qsinkhorn::sinkhorn_core::RunConfig;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "cube_q3".into());
    let runs: usize = args.next().map_or(20, |s| s.parse().expect("runs"));

    let g = catalog(&name).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(3);
    });
    let config = RunConfig::new(1e-3, 2000).with_tau(0.5).with_seed(1);
    let batch = run_batch(Some(&g), g.n(), &config, runs);

    for o in &batch.outcomes {
        let r = &o.report;
        println!(
            "seed {:>3}: {:?} in {:>4} iterations, max commutator {:.4}, {:?}",
            o.seed,
            r.status,
            r.iterations,
            r.max_commutator.unwrap_or(0.0),
            r.classification
        );
    }
    let s = &batch.summary;
    println!(
        "{name}: {}/{} successes, {} noncommutative, prediction {}",
        s.successes, s.runs, s.noncommutative_successes, s.prediction
    );
}
