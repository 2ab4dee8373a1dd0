//! Seeded random sources.
//!
//! Every run owns a [`RunRng`] built from a 64-bit seed, so a seed fully
//! determines the initial tensor and every random pivot drawn afterwards.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cmatrix::{ComplexMatrix, C64};

pub type RunRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Circularly symmetric complex normal: real and imaginary parts are
/// independent `N(0, 1/2)`, so `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

pub fn complex_gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let entries = complex_gaussian_vector(n * n, rng);
    ComplexMatrix::from_fn(n, |i, j| entries[i * n + j])
}

/// Haar-random unitary, by Gram–Schmidt on the columns of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = complex_gaussian_vector(n, rng);
        for q in &cols {
            let dot: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(q).for_each(|(x, qi)| *x -= qi * dot);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Uniformly random rank-`r` orthogonal projection in dimension `n`.
pub fn random_projection<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(n, rng);
    let mut p = ComplexMatrix::zeros(n);
    for k in 0..r {
        let col: Vec<C64> = (0..n).map(|i| u.get(i, k)).collect();
        p.add_outer(&col);
    }
    p
}

/// Random positive semidefinite matrix of rank `r` with eigenvalues in `[0.1, 3.1)`.
pub fn random_psd<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(n, rng);
    let mut p = ComplexMatrix::zeros(n);
    for k in 0..r {
        let weight: f64 = 0.1 + 3.0 * rng.random::<f64>();
        let col: Vec<C64> = (0..n).map(|i| u.get(i, k) * weight.sqrt()).collect();
        p.add_outer(&col);
    }
    p
}

/// Random Hermitian matrix `(G + G*) / 2` with Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    complex_gaussian_matrix(n, rng).symmetrized()
}
