//! Failure rate and iteration histogram of the plain iteration.
//!
//! ```bash
//! cargo run --release --example failure_rates -- 4 500 1000
//! ```

use qsinkhorn::detector::run_batch;
use qsinkhorn::sinkhorn_core::RunConfig;

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(4, |s| s.parse().expect("n"));
    let n_max: usize = args.next().map_or(500, |s| s.parse().expect("n_max"));
    let runs: usize = args.next().map_or(300, |s| s.parse().expect("runs"));

    let config = RunConfig::new(1e-6, n_max).with_seed(1);
    let s = run_batch(None, n, &config, runs).summary;
    println!(
        "n = {n}, N_max = {n_max}: {} failures in {} runs ({:.1}%)",
        s.failures,
        s.runs,
        100.0 * s.failure_rate
    );

    let widest = s
        .histogram
        .iter()
        .map(|b| b.count)
        .max()
        .unwrap_or(1)
        .max(1);
    for b in &s.histogram {
        let label = if b.bucket_start == n_max {
            format!("{n_max:>5}+")
        } else {
            format!("{:>6}", b.bucket_start)
        };
        println!(
            "{label} {:>5} {}",
            b.count,
            "#".repeat(60 * b.count / widest)
        );
    }
}
