//! Dense complex matrices and the handful of decompositions the Sinkhorn
//! iterations need.
//!
//! [`ComplexMatrix`] wraps an `nalgebra` dense matrix. Everything that consumes
//! a Hermitian input symmetrizes it first, and every spectral routine returns
//! its eigen/singular values sorted nonincreasing with ties kept in the index
//! order produced by the underlying factorization, so results are reproducible
//! run to run.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::linalg::{SymmetricEigen, SVD};
use nalgebra::DMatrix;
use thiserror::Error;

pub use nalgebra::Complex;

/// Double precision complex scalar.
pub type C64 = Complex<f64>;

/// Default relative cutoff below which eigen/singular values count as zero.
pub const DEFAULT_RTOL: f64 = 1e-10;

/// Gap `λ_r − λ_{r+1}` below which a rank-r cut is reported as degenerate.
pub const DEGENERATE_GAP: f64 = 1e-9;

const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },
    #[error("requested rank {rank} exceeds dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },
}

/// Dense complex matrix.
///
/// Public operations expect square matrices; rectangular values only appear as
/// isometry factors (for example the columns returned by [`Eigen::top_vectors`]).
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(n, n, f))
    }

    /// Builds a matrix from row slices. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self(DMatrix::from_fn(n, m, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self(DMatrix::from_fn(n, m, |i, j| C64::new(rows[i][j], 0.0)))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    /// The rank-one matrix `v v*`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self(DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()))
    }

    pub fn from_inner(m: DMatrix<C64>) -> Self {
        Self(m)
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn nrows(&self) -> usize {
        self.0.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.0.ncols()
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert_eq!(self.0.nrows(), self.0.ncols());
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.0[(i, j)] = value;
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Accumulates `v v*` into `self`.
    pub fn add_outer(&mut self, v: &[C64]) {
        self.add_outer_scaled(v, 1.0);
    }

    /// Accumulates `w · v v*` into `self`.
    pub fn add_outer_scaled(&mut self, v: &[C64], w: f64) {
        let n = v.len();
        debug_assert_eq!(self.0.nrows(), n);
        for j in 0..n {
            let vj = v[j].conj() * w;
            let col = self.0.column_mut(j);
            for (dst, vi) in col.into_iter().zip(v) {
                *dst += vi * vj;
            }
        }
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.0.nrows()];
        self.apply_into(v, &mut out);
        out
    }

    pub fn apply_into(&self, v: &[C64], out: &mut [C64]) {
        debug_assert_eq!(v.len(), self.0.ncols());
        out.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        for (j, vj) in v.iter().enumerate() {
            for (o, mij) in out.iter_mut().zip(self.0.column(j).iter()) {
                *o += mij * vj;
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entrywise modulus of `M − M*`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.0.nrows();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M*) / 2`.
    pub fn symmetrized(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix({}x{})", self.nrows(), self.ncols())?;
        for i in 0..self.nrows() {
            write!(f, "\n  [")?;
            for j in 0..self.ncols() {
                let z = self.0[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            write!(f, " ]")?;
        }
        Ok(())
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

/// Hilbert–Schmidt (Frobenius) norm `sqrt(Tr(M* M))`.
pub fn hs_norm(m: &ComplexMatrix) -> f64 {
    m.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Spectral decomposition of a Hermitian matrix with eigenvalues sorted
/// nonincreasing; `vectors` holds the matching orthonormal eigenvectors as
/// columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    /// Number of eigenvalues strictly above `rtol · λ_max` (zero when `λ_max ≤ 0`).
    pub fn rank(&self, rtol: f64) -> usize {
        let top = self.values.first().copied().unwrap_or(0.0);
        if top <= 0.0 {
            return 0;
        }
        self.values.iter().filter(|&&l| l > rtol * top).count()
    }

    /// The first `r` eigenvector columns as an `n × r` isometry.
    pub fn top_vectors(&self, r: usize) -> ComplexMatrix {
        ComplexMatrix(self.vectors.0.columns(0, r).into_owned())
    }

    /// `Σ_k f(λ_k) q_k q_k*` over the indices for which `f` returns a value.
    pub fn spectral_map(&self, mut f: impl FnMut(usize, f64) -> Option<f64>) -> ComplexMatrix {
        let n = self.vectors.nrows();
        let mut out = DMatrix::<C64>::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let Some(weight) = f(k, lambda) else { continue };
            if weight == 0.0 {
                continue;
            }
            let q = self.vectors.0.column(k);
            for j in 0..n {
                let qj = q[j].conj() * weight;
                for i in 0..n {
                    out[(i, j)] += q[i] * qj;
                }
            }
        }
        ComplexMatrix(out)
    }

    /// `Q diag(λ) Q*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|_, l| Some(l))
    }
}

fn hermitian_tolerance(m: &ComplexMatrix) -> f64 {
    HERMITIAN_TOL * (1.0 + hs_norm(m))
}

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized first;
/// it is rejected when that changes any entry by more than
/// `1e-10 · (1 + ‖M‖₂)`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Eigen, LinalgError> {
    let deviation = m.hermitian_deviation() / 2.0;
    if deviation > hermitian_tolerance(m) {
        return Err(LinalgError::NonHermitian { deviation });
    }
    Ok(hermitian_eig_unchecked(m))
}

pub(crate) fn hermitian_eig_unchecked(m: &ComplexMatrix) -> Eigen {
    let n = m.dim();
    if n == 0 {
        return Eigen {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0),
        };
    }
    let sym = m.symmetrized();
    let eig = SymmetricEigen::new(sym.0);
    let mut order: Vec<usize> = (0..n).collect();
    // `sort_by` is stable: equal eigenvalues keep the solver's column order.
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Eigen {
        values,
        vectors: ComplexMatrix(vectors),
    }
}

/// Singular value decomposition `M = U diag(s) V*`.
#[derive(Debug, Clone)]
pub struct SvdTriple {
    pub left: ComplexMatrix,
    pub singulars: Vec<f64>,
    pub right: ComplexMatrix,
    /// Number of singular values above `rtol · s_max`.
    pub rank: usize,
}

impl SvdTriple {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.left.nrows();
        let k = self.singulars.len();
        let scaled = DMatrix::from_fn(n, k, |i, j| self.left.0[(i, j)] * self.singulars[j]);
        ComplexMatrix(scaled * self.right.0.adjoint())
    }
}

pub fn svd(m: &ComplexMatrix, rtol: f64) -> SvdTriple {
    let n = m.nrows();
    let k = n.min(m.ncols());
    if k == 0 {
        return SvdTriple {
            left: ComplexMatrix(DMatrix::zeros(n, 0)),
            singulars: Vec::new(),
            right: ComplexMatrix(DMatrix::zeros(m.ncols(), 0)),
            rank: 0,
        };
    }
    let dec = SVD::new(m.0.clone(), true, true);
    let u = dec.u.expect("left singular vectors requested");
    let v = dec.v_t.expect("right singular vectors requested").adjoint();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| dec.singular_values[b].total_cmp(&dec.singular_values[a]));
    let singulars: Vec<f64> = order.iter().map(|&i| dec.singular_values[i]).collect();
    let left = DMatrix::from_fn(u.nrows(), k, |i, j| u[(i, order[j])]);
    let right = DMatrix::from_fn(v.nrows(), k, |i, j| v[(i, order[j])]);
    let top = singulars[0];
    let rank = if top > 0.0 {
        singulars.iter().filter(|&&s| s > rtol * top).count()
    } else {
        0
    };
    SvdTriple {
        left: ComplexMatrix(left),
        singulars,
        right: ComplexMatrix(right),
        rank,
    }
}

/// Moore–Penrose inverse square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[−rtol·λ_max, rtol·λ_max]` are treated as zero; anything
/// more negative is an error.
pub fn psd_inv_sqrt(m: &ComplexMatrix, rtol: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(m)?;
    psd_inv_sqrt_from_eig(&eig, rtol)
}

pub(crate) fn psd_inv_sqrt_from_eig(eig: &Eigen, rtol: f64) -> Result<ComplexMatrix, LinalgError> {
    let top = eig.values.first().copied().unwrap_or(0.0);
    if let Some(&low) = eig.values.last() {
        if low < 0.0 && (top <= 0.0 || low < -rtol * top) {
            return Err(LinalgError::NotPsd { eigenvalue: low });
        }
    }
    let cutoff = rtol * top;
    Ok(eig.spectral_map(|_, l| (top > 0.0 && l > cutoff).then(|| l.sqrt().recip())))
}

/// Unitary factor `W` of the polar decomposition `M = W |M|`, taken as
/// `U V*` from [`svd`].
pub fn polar_unitary(m: &ComplexMatrix) -> ComplexMatrix {
    let dec = svd(m, DEFAULT_RTOL);
    ComplexMatrix(&dec.left.0 * dec.right.0.adjoint())
}

/// A projection together with the flag raised when its rank cut fell inside a
/// (near-)degenerate eigenspace.
#[derive(Debug, Clone)]
pub struct RankProjection {
    pub matrix: ComplexMatrix,
    pub degenerate_cut: bool,
}

/// Closest rank-`r` orthogonal projection to a Hermitian matrix: the top `r`
/// eigenvalues are set to one and the rest to zero.
pub fn closest_rank_r_projection(
    h: &ComplexMatrix,
    r: usize,
) -> Result<RankProjection, LinalgError> {
    let n = h.dim();
    if r > n {
        return Err(LinalgError::RankOutOfRange { rank: r, dim: n });
    }
    let eig = hermitian_eig(h)?;
    Ok(rank_r_projection_from_eig(&eig, r))
}

pub(crate) fn rank_r_projection_from_eig(eig: &Eigen, r: usize) -> RankProjection {
    let n = eig.values.len();
    let degenerate_cut = r > 0 && r < n && eig.values[r - 1] - eig.values[r] < DEGENERATE_GAP;
    RankProjection {
        matrix: eig.spectral_map(|k, _| (k < r).then_some(1.0)),
        degenerate_cut,
    }
}

/// Orthogonal projection onto the span of eigenvectors with `|λ| > rtol · max|λ|`.
pub fn support_projection(m: &ComplexMatrix, rtol: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(m)?;
    let top = eig.values.iter().fold(0.0_f64, |acc, l| acc.max(l.abs()));
    Ok(eig.spectral_map(|_, l| (top > 0.0 && l.abs() > rtol * top).then_some(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_gaussian_matrix, random_unitary, seeded_rng};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn hs_norm_basic_cases() {
        assert!((hs_norm(&ComplexMatrix::identity(3)) - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(hs_norm(&ComplexMatrix::zeros(4)), 0.0);
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(hs_norm(&m), 1.0);
    }

    #[test]
    fn eig_of_diagonal_sorts_and_permutes() {
        let eig = hermitian_eig(&ComplexMatrix::from_real_diagonal(&[1.0, 3.0, 2.0])).unwrap();
        assert_eq!(eig.values, vec![3.0, 2.0, 1.0]);
        let expected_cols = [1, 2, 0];
        for (col, &e) in expected_cols.iter().enumerate() {
            for row in 0..3 {
                let want = if row == e { 1.0 } else { 0.0 };
                assert!((eig.vectors.get(row, col).norm() - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn eig_of_rank_one() {
        let v = vec![c(0.6), C64::new(0.0, 0.8)];
        let eig = hermitian_eig(&ComplexMatrix::outer(&v)).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!(eig.values[1].abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            hermitian_eig(&m),
            Err(LinalgError::NonHermitian { .. })
        ));
    }

    #[test]
    fn svd_of_rank_deficient_diagonal() {
        let d = svd(&ComplexMatrix::from_real_diagonal(&[3.0, 0.0]), 1e-12);
        assert_eq!(d.singulars, vec![3.0, 0.0]);
        assert_eq!(d.rank, 1);
    }

    #[test]
    fn svd_of_unitary_has_unit_singulars() {
        let mut rng = seeded_rng(3);
        let u = random_unitary(5, &mut rng);
        let d = svd(&u, DEFAULT_RTOL);
        assert_eq!(d.rank, 5);
        for s in d.singulars {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_factors_are_isometries() {
        let mut rng = seeded_rng(4);
        for n in 1..=8 {
            let m = complex_gaussian_matrix(n, &mut rng);
            let d = svd(&m, DEFAULT_RTOL);
            let id = ComplexMatrix::identity(n);
            assert!(hs_norm(&(&(&d.left.adjoint() * &d.left) - &id)) < 1e-10);
            assert!(hs_norm(&(&(&d.right.adjoint() * &d.right) - &id)) < 1e-10);
            assert!(hs_norm(&(&d.reconstruct() - &m)) <= 1e-10 * (1.0 + hs_norm(&m)));
            assert!(d.singulars.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn inv_sqrt_examples() {
        let n = psd_inv_sqrt(&ComplexMatrix::identity(2).scale(4.0), DEFAULT_RTOL).unwrap();
        assert!(n.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-14);
        let n = psd_inv_sqrt(
            &ComplexMatrix::from_real_diagonal(&[4.0, 0.0]),
            DEFAULT_RTOL,
        )
        .unwrap();
        assert!(n.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 0.0])) < 1e-14);
    }

    #[test]
    fn inv_sqrt_rejects_indefinite() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -0.5]);
        assert!(matches!(
            psd_inv_sqrt(&m, DEFAULT_RTOL),
            Err(LinalgError::NotPsd { .. })
        ));
    }

    #[test]
    fn polar_examples() {
        let w = polar_unitary(&ComplexMatrix::from_real_diagonal(&[2.0, 3.0]));
        assert!(w.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        let rot = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert!(polar_unitary(&rot).max_abs_diff(&rot) < 1e-12);
    }

    #[test]
    fn rank_r_projection_examples() {
        let p = closest_rank_r_projection(&ComplexMatrix::from_real_diagonal(&[0.9, 0.6, 0.1]), 2)
            .unwrap();
        assert!(
            p.matrix
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 0.0]))
                < 1e-14
        );
        assert!(!p.degenerate_cut);

        let tie =
            closest_rank_r_projection(&ComplexMatrix::from_real_diagonal(&[0.5, 0.5]), 1).unwrap();
        assert!(
            tie.matrix
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0]))
                < 1e-14
        );
        assert!(tie.degenerate_cut);

        assert!(matches!(
            closest_rank_r_projection(&ComplexMatrix::identity(2), 3),
            Err(LinalgError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn support_projection_examples() {
        let p = support_projection(
            &ComplexMatrix::from_real_diagonal(&[5.0, 0.0]),
            DEFAULT_RTOL,
        )
        .unwrap();
        assert!(p.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-14);
        let h = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        assert!(
            support_projection(&h, DEFAULT_RTOL)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(2))
                < 1e-12
        );
        let v = vec![c(1.0), C64::new(2.0, -1.0), c(0.5)];
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let expected = ComplexMatrix::outer(&v).scale(1.0 / norm_sq);
        let got = support_projection(&ComplexMatrix::outer(&v), DEFAULT_RTOL).unwrap();
        assert!(got.max_abs_diff(&expected) < 1e-10);
    }

    #[test]
    fn apply_matches_matrix_product() {
        let mut rng = seeded_rng(9);
        let m = complex_gaussian_matrix(4, &mut rng);
        let v: Vec<C64> = (0..4).map(|k| C64::new(k as f64, 1.0 - k as f64)).collect();
        let col = ComplexMatrix::from_inner(DMatrix::from_column_slice(4, 1, &v));
        let expected = &m * &col;
        let got = m.apply(&v);
        for i in 0..4 {
            assert!((got[i] - expected.get(i, 0)).norm() < 1e-12);
        }
    }
}
