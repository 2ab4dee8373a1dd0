//! The least-disturbing map sending a PSD matrix onto a projection of the
//! same rank, compared with other maps that do the same job.
//!
//! ```bash
//! cargo run --release --example optimal_transform
//! ```

use qsinkhorn::cmatrix::{hermitian_eig, hs_norm, support_projection, ComplexMatrix};
use qsinkhorn::random::{random_projection, random_psd, random_unitary, seeded_rng};
use qsinkhorn::sinkhorn_graph::optimal_transformation;

fn main() {
    let (n, r) = (6, 3);
    let mut rng = seeded_rng(7);
    let a = random_psd(n, r, &mut rng);
    let b = random_projection(n, r, &mut rng);

    let f = optimal_transformation(&a, &b, 1e-10).expect("ranks agree");
    let fafs = &(&f * &a) * &f.adjoint();
    println!("‖F A F* − B‖ = {:.2e}", hs_norm(&(&fafs - &b)));

    let p_a = support_projection(&a, 1e-10).unwrap();
    let best = hs_norm(&(&f - &p_a));
    println!("‖F − P_A‖ = {best:.6}");

    // every other solution is V_B W Σ V_A* for some unitary W
    let ea = hermitian_eig(&a).unwrap();
    let eb = hermitian_eig(&b).unwrap();
    let v_a = ea.top_vectors(r);
    let v_b = eb.top_vectors(r);
    let sigma = ComplexMatrix::from_real_diagonal(
        &ea.values[..r]
            .iter()
            .map(|l| l.sqrt().recip())
            .collect::<Vec<_>>(),
    );
    let mut worse = 0;
    for _ in 0..1000 {
        let w = random_unitary(r, &mut rng);
        let g = &(&(&v_b * &w) * &sigma) * &v_a.adjoint();
        if hs_norm(&(&g - &p_a)) >= best - 1e-12 {
            worse += 1;
        }
    }
    println!("{worse} of 1000 random alternatives are no closer to P_A");
}
