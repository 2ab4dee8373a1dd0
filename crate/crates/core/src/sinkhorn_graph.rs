//! Graph-aware Sinkhorn scaling: row and column normalizations that also pull
//! the grid toward the commutant of the adjacency matrix, `X (A ⊗ I) = (A ⊗ I) X`.
//!
//! For row `i` and a pivot column `j`, the row is split by whether `(k, j)` is
//! an edge and column `j` by whether `(i, l)` is an edge. Each half of the row
//! is mapped, by the least-disturbing linear map, onto a projection that
//! interpolates between the row's own normalized half and the matching half of
//! column `j`. Columns are handled symmetrically.

use std::time::Instant;

use rand::Rng;
use thiserror::Error;

use crate::cmatrix::{
    self, hs_norm, polar_unitary, rank_r_projection_from_eig, ComplexMatrix, Eigen, LinalgError,
    RankProjection, C64,
};
use crate::graphs::Graph;
use crate::sinkhorn_core::{
    random_init, row_error, CandidateTensor, Classification, PassEvents, PivotRule, RunConfig,
    RunReport, RunStatus,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SoftError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A line sum split by adjacency: `along` collects the blocks indexed by
/// neighbors, `across` the rest.
#[derive(Debug, Clone)]
pub struct SplitSums {
    pub along: ComplexMatrix,
    pub across: ComplexMatrix,
}

/// `(S^{-1/2} X S^{-1/2}, S^{-1/2} Y S^{-1/2})` with `S = X + Y`, the inverse
/// square root taken in the Moore–Penrose sense.
pub fn normalize_sum(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    rtol: f64,
) -> Result<(ComplexMatrix, ComplexMatrix), LinalgError> {
    let s = x + y;
    let root = cmatrix::psd_inv_sqrt(&s, rtol)?;
    let left = (&(&root * x) * &root).symmetrized();
    let right = (&(&root * y) * &root).symmetrized();
    Ok((left, right))
}

fn projection_rank(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<usize, SoftError> {
    let tp = p.trace().re;
    let tq = q.trace().re;
    if (tp - tq).abs() >= 0.5 || tp < -0.5 {
        return Err(SoftError::RankMismatch {
            left: tp.round().max(0.0) as usize,
            right: tq.round().max(0.0) as usize,
        });
    }
    Ok(tp.round().max(0.0) as usize)
}

fn interpolation_eig(
    p: &ComplexMatrix,
    q: &ComplexMatrix,
    tau: f64,
) -> Result<(Eigen, usize), SoftError> {
    let r = projection_rank(p, q)?;
    let mix = &p.scale(tau) + &q.scale(1.0 - tau);
    Ok((cmatrix::hermitian_eig(&mix)?, r))
}

/// Closest rank-`r` projection to `τP + (1 − τ)Q`, where `r` is the common
/// rank (trace) of the projections `P` and `Q`.
pub fn interpolate_projections(
    p: &ComplexMatrix,
    q: &ComplexMatrix,
    tau: f64,
) -> Result<RankProjection, SoftError> {
    let (eig, r) = interpolation_eig(p, q, tau)?;
    Ok(rank_r_projection_from_eig(&eig, r))
}

/// `F = V_B W₀ Σ V_A*` given the eigendecomposition of `A` and an isometry
/// `V_B` spanning the target projection.
fn transform_onto(
    a_eig: &Eigen,
    target: &ComplexMatrix,
    rtol: f64,
) -> Result<ComplexMatrix, SoftError> {
    let n = a_eig.values.len();
    let r = target.ncols();
    let rank_a = a_eig.rank(rtol);
    if rank_a != r {
        return Err(SoftError::RankMismatch {
            left: rank_a,
            right: r,
        });
    }
    if r == 0 {
        return Ok(ComplexMatrix::zeros(n));
    }
    let v_a = a_eig.top_vectors(r).into_inner();
    let sigma: Vec<f64> = a_eig.values[..r].iter().map(|l| l.sqrt().recip()).collect();
    let mut v_a_sigma = v_a.clone();
    for (k, s) in sigma.iter().enumerate() {
        v_a_sigma.column_mut(k).scale_mut(*s);
    }
    let v_b = target.inner();
    let m = v_b.adjoint() * &v_a_sigma;
    let w0 = polar_unitary(&ComplexMatrix::from_inner(m)).into_inner();
    Ok(ComplexMatrix::from_inner(v_b * w0 * v_a_sigma.adjoint()))
}

/// Least-disturbing solution of `F A F* = B` with `P_B F = F P_A = F`.
///
/// `A` is positive semidefinite of rank `r` and `B` a rank-`r` projection.
/// Among all solutions `V_B W Σ V_A*` (`W` unitary, `Σ = Δ_A^{-1/2}`), the one
/// returned uses the polar factor `W₀` of `V_B* V_A Σ`, which minimizes
/// `‖F − P_A‖₂`.
pub fn optimal_transformation(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    rtol: f64,
) -> Result<ComplexMatrix, SoftError> {
    let a_eig = cmatrix::hermitian_eig(a)?;
    let b_eig = cmatrix::hermitian_eig(b)?;
    let r = b_eig.rank(rtol);
    transform_onto(&a_eig, &b_eig.top_vectors(r), rtol)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    Rows,
    Cols,
}

/// Position of member `m` of line `a`, and whether it falls in the `along`
/// half for pivot `b`.
#[inline]
fn member(g: &Graph, axis: Axis, a: usize, b: usize, m: usize) -> ((usize, usize), bool) {
    match axis {
        Axis::Rows => ((a, m), g.has_edge(m, b)),
        Axis::Cols => ((m, a), g.has_edge(b, m)),
    }
}

/// Position of member `m` of the pivot line `b`, and whether it falls in the
/// `along` half relative to line `a`.
#[inline]
fn pivot_member(g: &Graph, axis: Axis, a: usize, b: usize, m: usize) -> ((usize, usize), bool) {
    match axis {
        Axis::Rows => ((m, b), g.has_edge(a, m)),
        Axis::Cols => ((b, m), g.has_edge(m, a)),
    }
}

type Picker = fn(&Graph, Axis, usize, usize, usize) -> ((usize, usize), bool);

fn split_line(
    x: &CandidateTensor,
    g: &Graph,
    axis: Axis,
    a: usize,
    b: usize,
    pick: Picker,
) -> SplitSums {
    let n = x.n();
    let mut along = ComplexMatrix::zeros(n);
    let mut across = ComplexMatrix::zeros(n);
    for m in 0..n {
        let ((i, j), is_along) = pick(g, axis, a, b, m);
        if is_along {
            along.add_outer(x.vector(i, j));
        } else {
            across.add_outer(x.vector(i, j));
        }
    }
    SplitSums { along, across }
}

/// Split sums used when row `i` is normalized against pivot column `j`:
/// the row split by `(k, j) ∈ E` and the column split by `(i, l) ∈ E`.
pub fn row_split_sums(
    x: &CandidateTensor,
    g: &Graph,
    i: usize,
    j: usize,
) -> (SplitSums, SplitSums) {
    (
        split_line(x, g, Axis::Rows, i, j, member),
        split_line(x, g, Axis::Rows, i, j, pivot_member),
    )
}

/// Split sums used when column `j` is normalized against pivot row `i`:
/// the column split by `(i, l) ∈ E` and the row split by `(k, j) ∈ E`.
pub fn col_split_sums(
    x: &CandidateTensor,
    g: &Graph,
    j: usize,
    i: usize,
) -> (SplitSums, SplitSums) {
    (
        split_line(x, g, Axis::Cols, j, i, member),
        split_line(x, g, Axis::Cols, j, i, pivot_member),
    )
}

struct LineUpdate {
    along: ComplexMatrix,
    across: ComplexMatrix,
    degenerate_cuts: usize,
    rank_deficient: bool,
}

fn soft_line_update(
    line: &SplitSums,
    pivot: &SplitSums,
    tau: f64,
    rtol: f64,
) -> Result<LineUpdate, SoftError> {
    let total = &line.along + &line.across;
    let total_eig = cmatrix::hermitian_eig_unchecked(&total);
    let rank_deficient = total_eig.rank(rtol) < total.dim();
    let root = cmatrix::psd_inv_sqrt_from_eig(&total_eig, rtol)?;
    let hat_along = (&(&root * &line.along) * &root).symmetrized();
    let hat_across = (&(&root * &line.across) * &root).symmetrized();

    let mut degenerate_cuts = 0;
    // The pivot line is not normalized yet, so its halves are only PSD: the
    // target rank comes from the normalized half.
    let mut side = |own: &ComplexMatrix, hat: &ComplexMatrix, other: &ComplexMatrix| {
        let r = hat.trace().re.round().max(0.0) as usize;
        let mix = &hat.scale(tau) + &other.scale(1.0 - tau);
        let eig = cmatrix::hermitian_eig_unchecked(&mix);
        if rank_r_projection_from_eig(&eig, r).degenerate_cut {
            degenerate_cuts += 1;
        }
        let own_eig = cmatrix::hermitian_eig_unchecked(own);
        transform_onto(&own_eig, &eig.top_vectors(r), rtol)
    };
    let along = side(&line.along, &hat_along, &pivot.along)?;
    let across = side(&line.across, &hat_across, &pivot.across)?;
    Ok(LineUpdate {
        along,
        across,
        degenerate_cuts,
        rank_deficient,
    })
}

fn soft_pass<R: Rng + ?Sized>(
    x: &mut CandidateTensor,
    g: &Graph,
    axis: Axis,
    tau: f64,
    pivot_rule: PivotRule,
    rtol: f64,
    rng: &mut R,
) -> PassEvents {
    let n = x.n();
    assert_eq!(g.n(), n, "graph and tensor sizes differ");
    let mut events = PassEvents::default();
    let shared_pivot = match pivot_rule {
        PivotRule::PerPass => Some(rng.random_range(0..n)),
        PivotRule::PerLine => None,
    };
    let mut scratch = vec![C64::new(0.0, 0.0); n];
    for a in 0..n {
        let b = shared_pivot.unwrap_or_else(|| rng.random_range(0..n));
        let line = split_line(x, g, axis, a, b, member);
        let pivot = split_line(x, g, axis, a, b, pivot_member);
        let update = match soft_line_update(&line, &pivot, tau, rtol) {
            Ok(u) => u,
            Err(_) => {
                events.rank_mismatch += 1;
                continue;
            }
        };
        events.degenerate_cuts += update.degenerate_cuts;
        events.rank_deficient += usize::from(update.rank_deficient);
        for m in 0..n {
            let ((i, j), is_along) = member(g, axis, a, b, m);
            let f = if is_along {
                &update.along
            } else {
                &update.across
            };
            f.apply_into(x.vector(i, j), &mut scratch);
            x.vector_mut(i, j).copy_from_slice(&scratch);
        }
    }
    events
}

/// Soft row normalization: for every row `i` a pivot column `j` is drawn
/// (uniformly, per [`RunConfig::pivot`]), and the two halves of the row are
/// mapped onto projections interpolating, with weight `tau`, between the
/// row's normalized halves and the matching halves of column `j`.
///
/// Rows whose split ranks disagree (possible on non-regular graphs) are left
/// untouched and counted as `rank_mismatch` events.
pub fn normalize_rows_soft<R: Rng + ?Sized>(
    x: &mut CandidateTensor,
    g: &Graph,
    tau: f64,
    config: &RunConfig,
    rng: &mut R,
) -> PassEvents {
    soft_pass(x, g, Axis::Rows, tau, config.pivot, config.rtol, rng)
}

/// Column counterpart of [`normalize_rows_soft`]: column `j` draws a pivot
/// row `i` and is split by `(i, l) ∈ E`.
pub fn normalize_cols_soft<R: Rng + ?Sized>(
    x: &mut CandidateTensor,
    g: &Graph,
    tau: f64,
    config: &RunConfig,
    rng: &mut R,
) -> PassEvents {
    soft_pass(x, g, Axis::Cols, tau, config.pivot, config.rtol, rng)
}

/// `max_{i,j} ‖Σ_{k:(k,j)∈E} X_ik − Σ_{l:(i,l)∈E} X_lj‖₂`, the blockwise size
/// of `X(A ⊗ I) − (A ⊗ I)X`.
pub fn commutant_error(x: &CandidateTensor, g: &Graph) -> f64 {
    let n = x.n();
    assert_eq!(g.n(), n, "graph and tensor sizes differ");
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut d = ComplexMatrix::zeros(n);
            for k in g.in_neighbors(j) {
                d.add_outer(x.vector(i, k));
            }
            for l in g.out_neighbors(i) {
                d.add_outer_scaled(x.vector(l, j), -1.0);
            }
            worst = worst.max(hs_norm(&d));
        }
    }
    worst
}

/// Runs soft row and column passes until both the row-sum error (after the
/// column pass) and [`commutant_error`] fall below `epsilon`, or `n_max`
/// iterations have run.
///
/// Meaningful answers need a uniformly vertex transitive graph; see
/// [`crate::graphs::has_maximal_schur_set`]. Other graphs are accepted and
/// simply tend to fail or to log rank-mismatch events.
pub fn generate_qaut<R: Rng + ?Sized>(
    g: &Graph,
    config: &RunConfig,
    rng: &mut R,
) -> (CandidateTensor, RunReport) {
    let start = Instant::now();
    let n = g.n();
    let mut x = random_init(n, rng);
    let mut events = PassEvents::default();
    let mut iterations = 0;
    let (mut error_magic, mut error_comm);
    loop {
        iterations += 1;
        events.absorb(normalize_rows_soft(&mut x, g, config.tau, config, rng));
        events.absorb(normalize_cols_soft(&mut x, g, config.tau, config, rng));
        error_magic = row_error(&x);
        error_comm = commutant_error(&x, g);
        let error = error_magic.max(error_comm);
        if error < config.epsilon || iterations >= config.n_max {
            break;
        }
    }
    let final_error = error_magic.max(error_comm);
    let status = if final_error < config.epsilon {
        RunStatus::Success
    } else {
        RunStatus::Failure
    };
    let report = RunReport {
        iterations,
        final_error,
        error_magic,
        error_comm: Some(error_comm),
        status,
        max_commutator: None,
        witness: None,
        classification: Classification::NotApplicable,
        wall_time: start.elapsed(),
        events,
    };
    (x, report)
}
