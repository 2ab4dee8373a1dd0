//! Commutativity classification of produced tensors and Monte-Carlo batch
//! aggregation.
//!
//! A graph is predicted to have quantum symmetry as soon as one successful
//! run yields blocks that fail to commute; commutative successes alone only
//! support a "no" after a quorum of them.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::graphs::Graph;
use crate::random::seeded_rng;
use crate::sinkhorn_core::{
    generate_magic_unitary, CandidateTensor, Classification, PassEvents, RunConfig, RunReport,
    Witness,
};
use crate::sinkhorn_graph::generate_qaut;

/// Successes needed, all commutative, before predicting "no quantum symmetry".
pub const DEFAULT_QUORUM: usize = 10;

/// Width of the regular histogram buckets, in iterations.
pub const HISTOGRAM_BUCKET_WIDTH: usize = 10;

/// `‖[vv*, ww*]‖₂ = √2 · |⟨v,w⟩| · √(‖v‖²‖w‖² − |⟨v,w⟩|²)`.
pub fn rank_one_commutator_norm(v: &[crate::cmatrix::C64], w: &[crate::cmatrix::C64]) -> f64 {
    let mut inner = crate::cmatrix::C64::new(0.0, 0.0);
    let mut vv = 0.0;
    let mut ww = 0.0;
    for (a, b) in v.iter().zip(w) {
        inner += a.conj() * b;
        vv += a.norm_sqr();
        ww += b.norm_sqr();
    }
    let c2 = inner.norm_sqr();
    (2.0 * c2 * (vv * ww - c2).max(0.0)).sqrt()
}

/// Largest commutator norm `‖X_ij X_kl − X_kl X_ij‖₂` over all pairs of
/// blocks, with the first pair (in row-major order) attaining it.
pub fn max_commutator(x: &CandidateTensor) -> (f64, Witness) {
    let n = x.n();
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut best = 0.0;
    let mut witness = ((0, 0), (0, 0));
    for (a, &p) in positions.iter().enumerate() {
        for &q in &positions[a + 1..] {
            let value = rank_one_commutator_norm(x.vector(p.0, p.1), x.vector(q.0, q.1));
            if value > best {
                best = value;
                witness = (p, q);
            }
        }
    }
    (best, witness)
}

/// Noncommutative iff some pair of blocks has commutator norm above `delta`.
pub fn classify_run(x: &CandidateTensor, delta: f64) -> Classification {
    if max_commutator(x).0 > delta {
        Classification::Noncommutative
    } else {
        Classification::Commutative
    }
}

/// Residual commutator of an ε-accurate run whose limit commutes is about
/// `ε`; the applied threshold stays above twice that.
pub const NOISE_FACTOR: f64 = 2.0;

/// Commutator threshold actually applied for a given precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaChoice {
    pub value: f64,
    /// The precision is coarse enough that residual noise may approach the
    /// threshold.
    pub thin_margin: bool,
}

/// `max(delta, 2ε)`, flagging settings where `ε ≥ delta`.
pub fn effective_delta(delta: f64, epsilon: f64) -> DeltaChoice {
    DeltaChoice {
        value: delta.max(NOISE_FACTOR * epsilon),
        thin_margin: epsilon >= delta,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prediction {
    #[serde(rename = "Y")]
    Yes,
    #[serde(rename = "N")]
    No,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl std::fmt::Display for Prediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Prediction::Yes => "Y",
            Prediction::No => "N",
            Prediction::Inconclusive => "inconclusive",
        })
    }
}

/// `Y` iff any success is noncommutative; `N` iff at least `quorum` successes
/// and none noncommutative; otherwise inconclusive.
pub fn predict(successes: usize, noncommutative_successes: usize, quorum: usize) -> Prediction {
    if noncommutative_successes > 0 {
        Prediction::Yes
    } else if successes >= quorum {
        Prediction::No
    } else {
        Prediction::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBucket {
    pub bucket_start: usize,
    pub count: usize,
}

/// Iteration histogram: successes in buckets `[10b, 10b + 10)` (the last
/// regular bucket absorbs iteration counts up to `n_max`), failures in a final
/// overflow bucket labeled `n_max`.
pub fn histogram(reports: &[RunReport], n_max: usize) -> Vec<HistogramBucket> {
    let last_regular = n_max.saturating_sub(1) / HISTOGRAM_BUCKET_WIDTH;
    let mut counts = vec![0usize; last_regular + 1];
    let mut overflow = 0;
    for r in reports {
        if r.is_success() {
            let b = (r.iterations / HISTOGRAM_BUCKET_WIDTH).min(last_regular);
            counts[b] += 1;
        } else {
            overflow += 1;
        }
    }
    let used = counts.iter().rposition(|&c| c > 0).map_or(0, |b| b + 1);
    counts
        .iter()
        .take(used)
        .enumerate()
        .map(|(b, &count)| HistogramBucket {
            bucket_start: b * HISTOGRAM_BUCKET_WIDTH,
            count,
        })
        .chain(std::iter::once(HistogramBucket {
            bucket_start: n_max,
            count: overflow,
        }))
        .collect()
}

/// Aggregate statistics of a batch of runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub runs: usize,
    pub successes: usize,
    pub failures: usize,
    pub failure_rate: f64,
    /// Mean iteration count over successful runs.
    pub mean_iterations: Option<f64>,
    pub mean_wall_time_s: f64,
    pub noncommutative_successes: usize,
    pub commutative_successes: usize,
    /// Largest commutator norm seen among successes.
    pub max_commutator: Option<f64>,
    pub prediction: Prediction,
    pub quorum: usize,
    pub histogram: Vec<HistogramBucket>,
    pub events: PassEvents,
}

impl BatchSummary {
    /// Folds run reports into a summary. The result does not depend on the
    /// order of `reports`.
    pub fn from_reports(reports: &[RunReport], n_max: usize, quorum: usize) -> Self {
        let runs = reports.len();
        let successes: Vec<&RunReport> = reports.iter().filter(|r| r.is_success()).collect();
        let iteration_total: usize = successes.iter().map(|r| r.iterations).sum();
        let nanos_total: u128 = reports.iter().map(|r| r.wall_time.as_nanos()).sum();
        let noncommutative = successes
            .iter()
            .filter(|r| r.classification == Classification::Noncommutative)
            .count();
        let mut events = PassEvents::default();
        for r in reports {
            events.absorb(r.events);
        }
        let max_commutator = successes
            .iter()
            .filter_map(|r| r.max_commutator)
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.max(v)))
            });
        Self {
            runs,
            successes: successes.len(),
            failures: runs - successes.len(),
            failure_rate: if runs == 0 {
                0.0
            } else {
                (runs - successes.len()) as f64 / runs as f64
            },
            mean_iterations: (!successes.is_empty())
                .then(|| iteration_total as f64 / successes.len() as f64),
            mean_wall_time_s: if runs == 0 {
                0.0
            } else {
                Duration::from_nanos((nanos_total / runs as u128) as u64).as_secs_f64()
            },
            noncommutative_successes: noncommutative,
            commutative_successes: successes.len() - noncommutative,
            max_commutator,
            prediction: predict(successes.len(), noncommutative, quorum),
            quorum,
            histogram: histogram(reports, n_max),
            events,
        }
    }
}

/// One run of a batch, with the seed that produced it.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub seed: u64,
    pub report: RunReport,
}

#[derive(Debug, Clone)]
pub struct Batch {
    pub outcomes: Vec<RunOutcome>,
    pub summary: BatchSummary,
}

/// Runs one seeded experiment and fills in the commutator diagnostics.
///
/// With a graph the graph-aware iteration is used and `n` is ignored;
/// without one the plain iteration runs in dimension `n`. The commutator
/// threshold is [`effective_delta`] of the configured one.
pub fn run_single(graph: Option<&Graph>, n: usize, config: &RunConfig) -> RunReport {
    run_single_with_tensor(graph, n, config).1
}

/// Like [`run_single`], also returning the final tensor.
pub fn run_single_with_tensor(
    graph: Option<&Graph>,
    n: usize,
    config: &RunConfig,
) -> (CandidateTensor, RunReport) {
    let mut rng = seeded_rng(config.seed);
    let (x, mut report) = match graph {
        Some(g) => generate_qaut(g, config, &mut rng),
        None => generate_magic_unitary(n, config, &mut rng),
    };
    let (value, witness) = max_commutator(&x);
    report.max_commutator = Some(value);
    report.witness = Some(witness);
    if report.is_success() {
        let delta = effective_delta(config.delta, config.epsilon).value;
        report.classification = if value > delta {
            Classification::Noncommutative
        } else {
            Classification::Commutative
        };
    }
    (x, report)
}

/// Runs `runs` experiments with seeds `seed, seed + 1, …` and aggregates them.
pub fn run_batch(graph: Option<&Graph>, n: usize, config: &RunConfig, runs: usize) -> Batch {
    run_batch_with_quorum(graph, n, config, runs, DEFAULT_QUORUM)
}

pub fn run_batch_with_quorum(
    graph: Option<&Graph>,
    n: usize,
    config: &RunConfig,
    runs: usize,
    quorum: usize,
) -> Batch {
    let outcomes = run_seeds(graph, n, config, 0..runs);
    summarize(outcomes, config.n_max, quorum)
}

fn run_seeds(
    graph: Option<&Graph>,
    n: usize,
    config: &RunConfig,
    range: std::ops::Range<usize>,
) -> Vec<RunOutcome> {
    range
        .map(|k| {
            let seed = config.seed.wrapping_add(k as u64);
            let report = run_single(graph, n, &config.with_seed(seed));
            RunOutcome { seed, report }
        })
        .collect()
}

fn summarize(outcomes: Vec<RunOutcome>, n_max: usize, quorum: usize) -> Batch {
    let reports: Vec<RunReport> = outcomes.iter().map(|o| o.report.clone()).collect();
    let summary = BatchSummary::from_reports(&reports, n_max, quorum);
    Batch { outcomes, summary }
}

/// Runs at least `min_runs` experiments, then keeps adding blocks of
/// `min_runs` while the prediction is inconclusive, up to `max_runs` in total.
/// The result equals [`run_batch`] with the final run count.
///
/// Graphs whose runs often hit the iteration cap otherwise rarely collect
/// the quorum of successes an `N` verdict needs.
pub fn run_batch_until_decisive(
    graph: Option<&Graph>,
    n: usize,
    config: &RunConfig,
    min_runs: usize,
    max_runs: usize,
) -> Batch {
    let step = min_runs.max(1);
    let mut outcomes = run_seeds(graph, n, config, 0..min_runs);
    loop {
        let done = outcomes.len();
        let batch = summarize(outcomes, config.n_max, DEFAULT_QUORUM);
        if batch.summary.prediction != Prediction::Inconclusive || done >= max_runs {
            return batch;
        }
        outcomes = batch.outcomes;
        let next = (done + step).min(max_runs);
        outcomes.extend(run_seeds(graph, n, config, done..next));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::C64;
    use crate::sinkhorn_core::RunStatus;

    fn report(iterations: usize, success: bool, class: Classification) -> RunReport {
        RunReport {
            iterations,
            final_error: 0.0,
            error_magic: 0.0,
            error_comm: None,
            status: if success {
                RunStatus::Success
            } else {
                RunStatus::Failure
            },
            max_commutator: Some(0.0),
            witness: None,
            classification: class,
            wall_time: Duration::from_millis(iterations as u64),
            events: PassEvents::default(),
        }
    }

    #[test]
    fn closed_form_at_half_overlap() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let w = [C64::new(s, 0.0), C64::new(s, 0.0)];
        assert!((rank_one_commutator_norm(&v, &w) - s).abs() < 1e-15);
    }

    #[test]
    fn diagonal_blocks_commute() {
        let x = CandidateTensor::from_fn(3, |i, j| {
            (0..3)
                .map(|k| C64::new(if k == (i + j) % 3 { 1.0 } else { 0.0 }, 0.0))
                .collect()
        });
        assert_eq!(max_commutator(&x).0, 0.0);
        assert_eq!(classify_run(&x, 1e-12), Classification::Commutative);
    }

    #[test]
    fn prediction_rule() {
        assert_eq!(predict(0, 0, 10), Prediction::Inconclusive);
        assert_eq!(predict(1, 1, 10), Prediction::Yes);
        assert_eq!(predict(9, 0, 10), Prediction::Inconclusive);
        assert_eq!(predict(10, 0, 10), Prediction::No);
        assert_eq!(predict(50, 2, 10), Prediction::Yes);
    }

    #[test]
    fn delta_clamp() {
        assert_eq!(
            effective_delta(0.05, 1e-3),
            DeltaChoice {
                value: 0.05,
                thin_margin: false
            }
        );
        let coarse = effective_delta(0.05, 0.1);
        assert_eq!(coarse.value, 0.2);
        assert!(coarse.thin_margin);
        assert_eq!(effective_delta(0.05, 0.02).value, 0.05);
    }

    #[test]
    fn histogram_buckets_and_overflow() {
        let reports = vec![
            report(3, true, Classification::Commutative),
            report(12, true, Classification::Commutative),
            report(19, true, Classification::Noncommutative),
            report(50, true, Classification::Commutative),
            report(50, false, Classification::NotApplicable),
        ];
        let h = histogram(&reports, 50);
        assert_eq!(
            h.last(),
            Some(&HistogramBucket {
                bucket_start: 50,
                count: 1
            })
        );
        assert_eq!(
            h[0],
            HistogramBucket {
                bucket_start: 0,
                count: 1
            }
        );
        assert_eq!(
            h[1],
            HistogramBucket {
                bucket_start: 10,
                count: 2
            }
        );
        // iteration 50 == n_max folds into the last regular bucket
        assert_eq!(
            h[4],
            HistogramBucket {
                bucket_start: 40,
                count: 1
            }
        );
        assert_eq!(h.iter().map(|b| b.count).sum::<usize>(), 5);
    }

    #[test]
    fn summary_is_order_independent() {
        let mut reports = vec![
            report(30, true, Classification::Commutative),
            report(11, true, Classification::Noncommutative),
            report(100, false, Classification::NotApplicable),
            report(47, true, Classification::Commutative),
        ];
        let a = BatchSummary::from_reports(&reports, 100, 2);
        reports.reverse();
        let b = BatchSummary::from_reports(&reports, 100, 2);
        assert_eq!(a, b);
        assert_eq!(a.successes, 3);
        assert_eq!(a.failures, 1);
        assert_eq!(a.failure_rate, 0.25);
        assert_eq!(a.mean_iterations, Some(88.0 / 3.0));
        assert_eq!(a.prediction, Prediction::Yes);
    }

    #[test]
    fn empty_batch_is_inconclusive() {
        let s = BatchSummary::from_reports(&[], 10, DEFAULT_QUORUM);
        assert_eq!(s.prediction, Prediction::Inconclusive);
        assert_eq!(s.mean_iterations, None);
        assert_eq!(
            s.histogram,
            vec![HistogramBucket {
                bucket_start: 10,
                count: 0
            }]
        );
    }

    #[test]
    fn extension_matches_a_plain_batch() {
        // n = 2 runs are always commutative; a quorum of 10 needs 10 successes
        let config = RunConfig::new(1e-8, 200).with_seed(3);
        let grown = run_batch_until_decisive(None, 2, &config, 4, 20);
        assert_eq!(grown.summary.runs, 12);
        assert_eq!(grown.summary.prediction, Prediction::No);
        let plain = run_batch(None, 2, &config, 12);
        assert_eq!(grown.summary.successes, plain.summary.successes);
        assert_eq!(grown.summary.histogram, plain.summary.histogram);
    }

    #[test]
    fn small_magic_batch() {
        let batch = run_batch(None, 3, &RunConfig::new(1e-8, 500).with_seed(40), 5);
        assert_eq!(batch.outcomes.len(), 5);
        assert_eq!(batch.outcomes[2].seed, 42);
        assert_eq!(batch.summary.noncommutative_successes, 0);
    }
}
