//! Generate one approximate magic unitary with the plain iteration and show
//! which pair of its blocks fails to commute.
//!
//! ```bash
//! cargo run --release --example magic_unitary -- 5 42
//! ```

use qsinkhorn::detector::max_commutator;
use qsinkhorn::random::seeded_rng;
use qsinkhorn::sinkhorn_core::{col_error, generate_magic_unitary, row_error, RunConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(4, |s| s.parse().expect("n"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    let config = RunConfig::new(1e-8, 5000).with_seed(seed);
    let mut rng = seeded_rng(seed);
    let (x, report) = generate_magic_unitary(n, &config, &mut rng);

    println!(
        "n = {n}, seed = {seed}: {:?} after {} iterations",
        report.status, report.iterations
    );
    println!(
        "row error {:.3e}, column error {:.3e}",
        row_error(&x),
        col_error(&x)
    );
    println!(
        "entries deviate from unit norm by {:.1e}",
        x.max_unit_norm_deviation()
    );

    let (value, ((i, j), (k, l))) = max_commutator(&x);
    println!(
        "largest commutator ‖[X_{}{}, X_{}{}]‖ = {value:.4}",
        i + 1,
        j + 1,
        k + 1,
        l + 1
    );
    if n <= 3 {
        println!("(for n <= 3 every magic unitary is commutative)");
    }

    // the block Gram matrix of row 1: orthogonal rank-one projections
    for a in 0..n {
        let line: Vec<String> = (0..n)
            .map(|b| {
                let dot: qsinkhorn::cmatrix::C64 = x
                    .vector(0, a)
                    .iter()
                    .zip(x.vector(0, b))
                    .map(|(p, q)| p.conj() * q)
                    .sum();
                format!("{:6.3}", dot.norm())
            })
            .collect();
        println!("  |<x_1{}, x_1*>| {}", a + 1, line.join(" "));
    }
}
