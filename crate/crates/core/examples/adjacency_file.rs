//! Round-trip a graph through the adjacency text format and run the
//! graph-aware iteration on the parsed copy.
//!
//! ```bash
//! cargo run --release --example adjacency_file
//! ```

use qsinkhorn::detector::run_single;
use qsinkhorn::graphs::{cycle, parse_adjacency};
use qsinkhorn::sinkhorn_core::RunConfig;

fn main() {
    let text = cycle(4).unwrap().to_adjacency_text();
    print!("{text}");

    let g = parse_adjacency(&format!("# the 4-cycle\n{text}")).unwrap();
    let config = RunConfig::new(1e-6, 2000).with_tau(0.5).with_seed(3);
    let report = run_single(Some(&g), g.n(), &config);
    println!(
        "{:?} after {} iterations; commutant error {:.1e}; max commutator {:.4} -> {:?}",
        report.status,
        report.iterations,
        report.error_comm.unwrap_or(f64::NAN),
        report.max_commutator.unwrap_or(0.0),
        report.classification
    );
}
