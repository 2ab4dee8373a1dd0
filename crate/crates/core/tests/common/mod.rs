//! Independent checks shared by the integration tests. Nothing here calls
//! into the iteration code: sums, norms and commutators are recomputed with
//! plain loops over the tensor's raw vectors.

#![allow(dead_code)]

use qsinkhorn::cmatrix::C64;
use qsinkhorn::graphs::Graph;
use qsinkhorn::sinkhorn_core::CandidateTensor;

pub type Dense = Vec<Vec<C64>>;

fn zero(n: usize) -> Dense {
    vec![vec![C64::new(0.0, 0.0); n]; n]
}

fn add_outer(m: &mut Dense, v: &[C64], sign: f64) {
    for (a, va) in v.iter().enumerate() {
        for (b, vb) in v.iter().enumerate() {
            m[a][b] += *va * vb.conj() * sign;
        }
    }
}

fn frobenius(m: &Dense) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn minus_identity(mut m: Dense) -> Dense {
    for (a, row) in m.iter_mut().enumerate() {
        row[a] -= C64::new(1.0, 0.0);
    }
    m
}

/// `max` over rows and columns of `‖Σ x x* − I‖_F`.
pub fn magic_residual(x: &CandidateTensor) -> f64 {
    let n = x.n();
    let mut worst: f64 = 0.0;
    for line in 0..n {
        let mut row = zero(n);
        let mut col = zero(n);
        for k in 0..n {
            add_outer(&mut row, x.vector(line, k), 1.0);
            add_outer(&mut col, x.vector(k, line), 1.0);
        }
        worst = worst
            .max(frobenius(&minus_identity(row)))
            .max(frobenius(&minus_identity(col)));
    }
    worst
}

/// Largest `|‖x_ij‖ − 1|`.
pub fn unit_norm_residual(x: &CandidateTensor) -> f64 {
    let n = x.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let norm = x
                .vector(i, j)
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max((norm - 1.0).abs());
        }
    }
    worst
}

/// `max_{ij} ‖(X(A⊗I) − (A⊗I)X)_ij‖_F`, block `(i, j)` of `X·A` being
/// `Σ_k X_ik A_kj` and of `A·X` being `Σ_l A_il X_lj`.
pub fn commutant_residual(x: &CandidateTensor, g: &Graph) -> f64 {
    let n = x.n();
    let a = g.adjacency_matrix();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut d = zero(n);
            for k in 0..n {
                if a[k][j] == 1 {
                    add_outer(&mut d, x.vector(i, k), 1.0);
                }
                if a[i][k] == 1 {
                    add_outer(&mut d, x.vector(k, j), -1.0);
                }
            }
            worst = worst.max(frobenius(&d));
        }
    }
    worst
}

pub fn outer(v: &[C64]) -> Dense {
    let mut m = zero(v.len());
    add_outer(&mut m, v, 1.0);
    m
}

pub fn matmul(p: &Dense, q: &Dense) -> Dense {
    let n = p.len();
    let mut out = zero(n);
    for a in 0..n {
        for b in 0..n {
            out[a][b] = (0..n).map(|c| p[a][c] * q[c][b]).sum();
        }
    }
    out
}

/// `‖PQ − QP‖_F` by explicit multiplication.
pub fn commutator_norm(p: &Dense, q: &Dense) -> f64 {
    let pq = matmul(p, q);
    let qp = matmul(q, p);
    let n = p.len();
    let mut d = zero(n);
    for a in 0..n {
        for b in 0..n {
            d[a][b] = pq[a][b] - qp[a][b];
        }
    }
    frobenius(&d)
}

/// Largest block commutator by brute force.
pub fn max_commutator_direct(x: &CandidateTensor) -> f64 {
    let n = x.n();
    let blocks: Vec<Dense> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| outer(x.vector(i, j)))
        .collect();
    let mut worst: f64 = 0.0;
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            worst = worst.max(commutator_norm(&blocks[a], &blocks[b]));
        }
    }
    worst
}
