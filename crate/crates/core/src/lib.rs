//! Operator-valued Sinkhorn scaling.
//!
//! [`sinkhorn_core`] alternately normalizes the rows and columns of an
//! `n × n` array of rank-one operators until it is close to a magic unitary
//! (a quantum permutation matrix). [`sinkhorn_graph`] adds a soft projection
//! onto the commutant of a graph's adjacency matrix, producing approximate
//! quantum automorphisms; [`detector`] then checks whether the blocks commute
//! and aggregates many seeded runs into a quantum-symmetry prediction.

pub mod cli;
pub mod cmatrix;
pub mod detector;
pub mod graphs;
pub mod random;
pub mod reference;
pub mod sinkhorn_core;
pub mod sinkhorn_graph;
