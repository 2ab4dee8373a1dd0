//! Alternating row/column orthonormalization of an `n × n` grid of vectors in
//! `ℂⁿ` until the induced rank-one projections form an approximate magic
//! unitary.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cmatrix::{self, hs_norm, ComplexMatrix, C64, DEFAULT_RTOL};
use crate::random::complex_gaussian;

/// `n × n` grid of vectors `x_ij ∈ ℂⁿ`; entry `(i, j)` stands for the rank-one
/// block `X_ij = x_ij x_ij*`.
#[derive(Clone, PartialEq)]
pub struct CandidateTensor {
    n: usize,
    data: Vec<C64>,
}

impl CandidateTensor {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::new(0.0, 0.0); n * n * n],
        }
    }

    /// Builds a tensor from a function returning the vector at `(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vec<C64>) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert_eq!(v.len(), n, "vector at ({i}, {j}) has wrong length");
                data.extend(v);
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vector(&self, i: usize, j: usize) -> &[C64] {
        let start = (i * self.n + j) * self.n;
        &self.data[start..start + self.n]
    }

    #[inline]
    pub fn vector_mut(&mut self, i: usize, j: usize) -> &mut [C64] {
        let start = (i * self.n + j) * self.n;
        &mut self.data[start..start + self.n]
    }

    /// The block `X_ij = x_ij x_ij*`.
    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::outer(self.vector(i, j))
    }

    pub fn row_sum(&self, i: usize) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.n);
        for j in 0..self.n {
            s.add_outer(self.vector(i, j));
        }
        s
    }

    pub fn col_sum(&self, j: usize) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.n);
        for i in 0..self.n {
            s.add_outer(self.vector(i, j));
        }
        s
    }

    /// Swaps the roles of rows and columns: `y_ij = x_ji`.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.vector(j, i).to_vec())
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest deviation of any `‖x_ij‖` from one.
    pub fn max_unit_norm_deviation(&self) -> f64 {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| (vector_norm(self.vector(i, j)) - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

impl std::fmt::Debug for CandidateTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CandidateTensor(n = {})", self.n)
    }
}

pub(crate) fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("epsilon must be positive and finite, got {0}")]
    Epsilon(f64),
    #[error("tau must lie in [0, 1], got {0}")]
    Tau(f64),
    #[error("n_max must be at least 1")]
    NMax,
    #[error("delta must be positive and finite, got {0}")]
    Delta(f64),
    #[error("dimension must be at least 1")]
    Dimension,
}

/// How the pivot line is drawn in the soft normalization passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PivotRule {
    /// A fresh uniform pivot for every row (resp. column).
    #[default]
    PerLine,
    /// One pivot per pass, shared by all rows (resp. columns).
    PerPass,
}

/// Parameters of a single run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Target precision.
    pub epsilon: f64,
    /// Iteration cap.
    pub n_max: usize,
    /// Interpolation weight of the graph-aware normalizations.
    pub tau: f64,
    /// Commutator threshold used by the detector.
    pub delta: f64,
    pub seed: u64,
    pub pivot: PivotRule,
    /// Relative cutoff for numerical rank decisions.
    pub rtol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-6,
            n_max: 500,
            tau: 0.5,
            delta: 0.05,
            seed: 1,
            pivot: PivotRule::PerLine,
            rtol: DEFAULT_RTOL,
        }
    }
}

impl RunConfig {
    pub fn new(epsilon: f64, n_max: usize) -> Self {
        Self {
            epsilon,
            n_max,
            ..Self::default()
        }
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_pivot(mut self, pivot: PivotRule) -> Self {
        self.pivot = pivot;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(ConfigError::Epsilon(self.epsilon));
        }
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(ConfigError::Tau(self.tau));
        }
        if self.n_max == 0 {
            return Err(ConfigError::NMax);
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(ConfigError::Delta(self.delta));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Success,
    Failure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Commutative,
    Noncommutative,
    NotApplicable,
}

/// Pair of block positions `((i, j), (k, l))`, 0-based.
pub type Witness = ((usize, usize), (usize, usize));

/// Numerical events observed during a run. None of them abort the run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassEvents {
    /// Line sums that were singular and normalized onto their support.
    pub rank_deficient: usize,
    /// Soft-normalization updates skipped because split ranks disagreed.
    pub rank_mismatch: usize,
    /// Rank cuts that fell inside a degenerate eigenspace.
    pub degenerate_cuts: usize,
}

impl PassEvents {
    pub fn absorb(&mut self, other: PassEvents) {
        self.rank_deficient += other.rank_deficient;
        self.rank_mismatch += other.rank_mismatch;
        self.degenerate_cuts += other.degenerate_cuts;
    }
}

/// Outcome of a single run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub iterations: usize,
    /// `max(error_magic, error_comm)` at the last check.
    pub final_error: f64,
    /// Row-sum error after the last column pass.
    pub error_magic: f64,
    /// Symmetry error; `None` for runs without a graph.
    pub error_comm: Option<f64>,
    pub status: RunStatus,
    pub max_commutator: Option<f64>,
    pub witness: Option<Witness>,
    pub classification: Classification,
    pub wall_time: Duration,
    pub events: PassEvents,
}

impl RunReport {
    pub fn is_success(&self) -> bool {
        self.status == RunStatus::Success
    }
}

/// Random initial tensor: every coordinate is an independent circularly
/// symmetric complex normal with unit variance.
pub fn random_init<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CandidateTensor {
    CandidateTensor {
        n,
        data: (0..n * n * n).map(|_| complex_gaussian(rng)).collect(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    Rows,
    Cols,
}

fn position(axis: Axis, line: usize, member: usize) -> (usize, usize) {
    match axis {
        Axis::Rows => (line, member),
        Axis::Cols => (member, line),
    }
}

fn normalize_lines(x: &mut CandidateTensor, axis: Axis, rtol: f64) -> PassEvents {
    let n = x.n;
    let mut events = PassEvents::default();
    let mut scratch = vec![C64::new(0.0, 0.0); n];
    for line in 0..n {
        let mut sum = ComplexMatrix::zeros(n);
        for m in 0..n {
            let (i, j) = position(axis, line, m);
            sum.add_outer(x.vector(i, j));
        }
        let eig = cmatrix::hermitian_eig_unchecked(&sum);
        if eig.rank(rtol) < n {
            events.rank_deficient += 1;
        }
        let inv_sqrt = cmatrix::psd_inv_sqrt_from_eig(&eig, rtol)
            .expect("a sum of outer products is positive semidefinite");
        for m in 0..n {
            let (i, j) = position(axis, line, m);
            inv_sqrt.apply_into(x.vector(i, j), &mut scratch);
            x.vector_mut(i, j).copy_from_slice(&scratch);
        }
    }
    events
}

/// Replaces every row `(x_i1, …, x_in)` by `R_i^{-1/2} x_ij`, where `R_i` is
/// the row sum; afterwards each row is an orthonormal basis. Singular row
/// sums are inverted on their support and counted in the returned events.
pub fn normalize_rows(x: &mut CandidateTensor, rtol: f64) -> PassEvents {
    normalize_lines(x, Axis::Rows, rtol)
}

/// Column counterpart of [`normalize_rows`].
pub fn normalize_cols(x: &mut CandidateTensor, rtol: f64) -> PassEvents {
    normalize_lines(x, Axis::Cols, rtol)
}

fn line_error(x: &CandidateTensor, axis: Axis) -> f64 {
    let n = x.n;
    let id = ComplexMatrix::identity(n);
    (0..n)
        .map(|line| {
            let sum = match axis {
                Axis::Rows => x.row_sum(line),
                Axis::Cols => x.col_sum(line),
            };
            hs_norm(&(&sum - &id))
        })
        .fold(0.0, f64::max)
}

/// `max_i ‖Σ_k X_ik − I‖₂`.
pub fn row_error(x: &CandidateTensor) -> f64 {
    line_error(x, Axis::Rows)
}

/// `max_j ‖Σ_k X_kj − I‖₂`.
pub fn col_error(x: &CandidateTensor) -> f64 {
    line_error(x, Axis::Cols)
}

/// Distance to the magic-unitary conditions: the larger of [`row_error`] and
/// [`col_error`].
pub fn magic_error(x: &CandidateTensor) -> f64 {
    row_error(x).max(col_error(x))
}

/// Alternates [`normalize_rows`] and [`normalize_cols`] until the row error
/// (checked after each column pass) drops below `epsilon`, or `n_max`
/// iterations have run.
pub fn generate_magic_unitary<R: Rng + ?Sized>(
    n: usize,
    config: &RunConfig,
    rng: &mut R,
) -> (CandidateTensor, RunReport) {
    let start = Instant::now();
    let mut x = random_init(n, rng);
    let mut events = PassEvents::default();
    let mut iterations = 0;
    let mut error;
    loop {
        iterations += 1;
        events.absorb(normalize_rows(&mut x, config.rtol));
        events.absorb(normalize_cols(&mut x, config.rtol));
        error = row_error(&x);
        if error < config.epsilon || iterations >= config.n_max {
            break;
        }
    }
    let status = if error < config.epsilon {
        RunStatus::Success
    } else {
        RunStatus::Failure
    };
    let report = RunReport {
        iterations,
        final_error: error,
        error_magic: error,
        error_comm: None,
        status,
        max_commutator: None,
        witness: None,
        classification: Classification::NotApplicable,
        wall_time: start.elapsed(),
        events,
    };
    (x, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::seeded_rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn basis(n: usize, k: usize) -> Vec<C64> {
        (0..n).map(|i| c(if i == k { 1.0 } else { 0.0 })).collect()
    }

    /// Gram matrix of a family of vectors, computed entry by entry.
    fn gram(vectors: &[&[C64]]) -> Vec<Vec<C64>> {
        vectors
            .iter()
            .map(|a| {
                vectors
                    .iter()
                    .map(|b| a.iter().zip(b.iter()).map(|(p, q)| p.conj() * q).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn same_seed_same_tensor() {
        let a = random_init(4, &mut seeded_rng(11));
        let b = random_init(4, &mut seeded_rng(11));
        assert_eq!(a, b);
        assert_ne!(a, random_init(4, &mut seeded_rng(12)));
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = seeded_rng(5);
        let samples: Vec<C64> = (0..(10_000 / 64 + 1))
            .flat_map(|_| random_init(4, &mut rng).data)
            .take(10_000)
            .collect();
        let count = samples.len() as f64;
        let mean: C64 = samples.iter().sum::<C64>() / count;
        let second: f64 = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / count;
        assert!(mean.norm() < 0.05, "mean {mean}");
        assert!((second - 1.0).abs() < 0.05, "second moment {second}");
    }

    #[test]
    fn orthonormal_row_is_unchanged() {
        let mut x = CandidateTensor::from_fn(3, |_, j| basis(3, j));
        let before = x.clone();
        normalize_rows(&mut x, DEFAULT_RTOL);
        for i in 0..3 {
            for j in 0..3 {
                for (a, b) in x.vector(i, j).iter().zip(before.vector(i, j)) {
                    assert!((a - b).norm() < 1e-14);
                }
            }
        }
        normalize_cols(&mut x, DEFAULT_RTOL);
        assert!(
            magic_error(&x) > 1.0,
            "columns of the all-e_j grid are not bases"
        );
    }

    #[test]
    fn scalar_case_normalizes_to_unit_modulus() {
        let mut x = CandidateTensor::from_fn(1, |_, _| vec![c(3.0)]);
        normalize_rows(&mut x, DEFAULT_RTOL);
        assert!((x.vector(0, 0)[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rows_become_orthonormal_bases() {
        let mut rng = seeded_rng(21);
        for n in 1..=8 {
            let mut x = random_init(n, &mut rng);
            let events = normalize_rows(&mut x, DEFAULT_RTOL);
            assert_eq!(events.rank_deficient, 0);
            for i in 0..n {
                let row: Vec<&[C64]> = (0..n).map(|j| x.vector(i, j)).collect();
                let g = gram(&row);
                for a in 0..n {
                    for b in 0..n {
                        let want = if a == b { 1.0 } else { 0.0 };
                        assert!((g[a][b] - c(want)).norm() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn column_pass_normalizes_columns() {
        let mut rng = seeded_rng(22);
        let mut x = random_init(5, &mut rng);
        normalize_rows(&mut x, DEFAULT_RTOL);
        normalize_cols(&mut x, DEFAULT_RTOL);
        let id = ComplexMatrix::identity(5);
        for j in 0..5 {
            assert!(hs_norm(&(&x.col_sum(j) - &id)) < 1e-10);
        }
        assert!((magic_error(&x) - row_error(&x)).abs() < 1e-9);
        assert!(x.max_unit_norm_deviation() < 1e-10);
    }

    #[test]
    fn column_pass_is_row_pass_on_transpose() {
        let x = random_init(4, &mut seeded_rng(23));
        let mut via_cols = x.clone();
        normalize_cols(&mut via_cols, DEFAULT_RTOL);
        let mut via_rows = x.transpose();
        normalize_rows(&mut via_rows, DEFAULT_RTOL);
        assert_eq!(via_cols, via_rows.transpose());
    }

    #[test]
    fn degenerate_row_is_flagged() {
        let mut x = CandidateTensor::from_fn(2, |_, _| basis(2, 0));
        let events = normalize_rows(&mut x, DEFAULT_RTOL);
        assert_eq!(events.rank_deficient, 2);
        assert!(x.is_finite());
    }

    #[test]
    fn magic_error_of_collapsed_grid() {
        let x = CandidateTensor::from_fn(2, |_, _| basis(2, 0));
        assert!((magic_error(&x) - 2f64.sqrt()).abs() < 1e-15);
        let exact = CandidateTensor::from_fn(3, |i, j| basis(3, (i + j) % 3));
        assert_eq!(magic_error(&exact), 0.0);
    }

    #[test]
    fn trivial_dimension_converges_immediately() {
        let (x, report) = generate_magic_unitary(1, &RunConfig::default(), &mut seeded_rng(1));
        assert_eq!(report.iterations, 1);
        assert_eq!(report.status, RunStatus::Success);
        assert!(report.final_error < 1e-15);
        assert!((x.vector(0, 0)[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_blocks_are_forced() {
        let config = RunConfig::new(1e-10, 500);
        let (x, report) = generate_magic_unitary(2, &config, &mut seeded_rng(2));
        assert!(report.is_success());
        let id = ComplexMatrix::identity(2);
        let x11 = x.block(0, 0);
        let complement = &id - &x11;
        assert!(hs_norm(&(&x.block(0, 1) - &complement)) < 1e-9);
        assert!(hs_norm(&(&x.block(1, 0) - &complement)) < 1e-9);
        assert!(hs_norm(&(&x.block(1, 1) - &x11)) < 1e-9);
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        assert_eq!(
            RunConfig::new(0.0, 10).validate(),
            Err(ConfigError::Epsilon(0.0))
        );
        assert_eq!(RunConfig::new(1e-3, 0).validate(), Err(ConfigError::NMax));
        assert_eq!(
            RunConfig::default().with_tau(1.5).validate(),
            Err(ConfigError::Tau(1.5))
        );
        assert!(RunConfig::default().with_delta(-1.0).validate().is_err());
    }
}
