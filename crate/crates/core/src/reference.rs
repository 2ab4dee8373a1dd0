//! Published reference values for the two standard experiments: failure
//! rates of the plain iteration on small `n`, and quantum-symmetry verdicts
//! for the graph catalog.

use crate::detector::Prediction;

/// Failure rate of the plain iteration for one `(n, ε, N_max)` setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FailureRateRow {
    pub n: usize,
    pub epsilon: f64,
    pub n_max: usize,
    pub failure_rate: f64,
}

pub const FAILURE_RATES: [FailureRateRow; 3] = [
    FailureRateRow {
        n: 4,
        epsilon: 1e-6,
        n_max: 500,
        failure_rate: 0.049,
    },
    FailureRateRow {
        n: 5,
        epsilon: 1e-6,
        n_max: 2000,
        failure_rate: 0.002,
    },
    FailureRateRow {
        n: 6,
        epsilon: 1e-6,
        n_max: 5000,
        failure_rate: 0.113,
    },
];

/// One catalog graph with its experiment parameters and published results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphRow {
    pub name: &'static str,
    pub vertices: usize,
    pub automorphism_group_order: usize,
    pub mean_iterations: f64,
    pub epsilon: f64,
    pub tau: f64,
    pub prediction: Prediction,
    /// Whether the answer has been proved independently.
    pub proved: bool,
}

/// Iteration cap used for every graph experiment.
pub const GRAPH_N_MAX: usize = 2000;

#[allow(clippy::too_many_arguments)]
const fn row(
    name: &'static str,
    vertices: usize,
    automorphism_group_order: usize,
    mean_iterations: f64,
    epsilon: f64,
    tau: f64,
    prediction: Prediction,
    proved: bool,
) -> GraphRow {
    GraphRow {
        name,
        vertices,
        automorphism_group_order,
        mean_iterations,
        epsilon,
        tau,
        prediction,
        proved,
    }
}

use Prediction::{No as N, Yes as Y};

pub const GRAPH_TABLE: [GraphRow; 16] = [
    row("k4", 4, 24, 106.32, 1e-6, 1.0, Y, true),
    row("k5", 5, 120, 113.15, 1e-6, 1.0, Y, true),
    row("k6", 6, 720, 1118.25, 1e-6, 1.0, Y, true),
    row("cube_q3", 8, 48, 92.11, 1e-3, 0.5, Y, true),
    row("petersen", 10, 120, 402.32, 1e-3, 0.5, N, true),
    row("l_q3", 12, 48, 71.18, 1e-3, 0.5, N, false),
    row("l_c6_2", 12, 48, 67.89, 1e-3, 0.5, N, false),
    row("trun_k4", 12, 24, 283.87, 1e-3, 0.5, N, false),
    row("k3_box_c4", 12, 48, 66.31, 1e-3, 0.5, Y, true),
    row("antip_trun_k4", 12, 24, 95.39, 1e-3, 0.5, N, false),
    row("icosahedron", 12, 120, 61.89, 1e-3, 0.5, N, true),
    row("co_heawood", 14, 336, 83.69, 1e-1, 0.5, N, true),
    row("hamming_2_4", 16, 1152, 102.74, 1e-1, 0.5, Y, true),
    row("shrikhande", 16, 192, 126.73, 1e-1, 0.5, N, true),
    row("cube_q4", 16, 384, 71.63, 1e-1, 0.5, Y, true),
    row("clebsch", 16, 1920, 91.07, 1e-1, 0.5, Y, true),
];

pub fn graph_row(name: &str) -> Option<&'static GraphRow> {
    GRAPH_TABLE.iter().find(|r| r.name == name)
}
