//! Finite graphs given by 0/1 adjacency matrices.
//!
//! Vertices are stored 0-based; anything shown to a user (file comments,
//! permutation display, witness indices) is 1-based.

mod automorphisms;
mod catalog;
mod generators;
mod parse;

use std::fmt;

use thiserror::Error;

pub use automorphisms::{
    automorphisms, automorphisms_with_budget, has_maximal_schur_set, is_vertex_transitive,
    SchurSearch, DEFAULT_SEARCH_BUDGET,
};
pub use catalog::{catalog, catalog_names, REFERENCE_GRAPHS};
pub use generators::{
    cartesian_product, cayley_abelian, circulant, complement, complete, cycle, distance_k,
    folded_cube, hamming, hypercube, kneser, line_graph,
};
pub use parse::parse_adjacency;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown graph `{name}` (valid names: {})", valid.join(", "))]
    UnknownGraph { name: String, valid: Vec<String> },
    #[error("search budget of {budget} node expansions exhausted")]
    BudgetExceeded { budget: u64 },
}

/// A simple (possibly directed) graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<bool>,
    name: Option<String>,
}

impl Graph {
    /// Builds a graph from an `n × n` 0/1 matrix.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self, GraphError> {
        let n = rows.len();
        if n == 0 {
            return Err(GraphError::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut adjacency = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::DimensionMismatch {
                    line: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            for &a in row {
                match a {
                    0 => adjacency.push(false),
                    1 => adjacency.push(true),
                    other => {
                        return Err(GraphError::InvalidParameter(format!(
                            "adjacency entry {other} is not 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(Self {
            n,
            adjacency,
            name: None,
        })
    }

    /// Builds a graph from an edge list. Undirected edges are inserted in both
    /// directions.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        undirected: bool,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut adjacency = vec![false; n * n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::InvalidParameter(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            adjacency[a * n + b] = true;
            if undirected {
                adjacency[b * n + a] = true;
            }
        }
        Ok(Self {
            n,
            adjacency,
            name: None,
        })
    }

    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adjacency = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                adjacency.push(i != j && f(i, j));
            }
        }
        Self {
            n,
            adjacency,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }

    pub fn in_neighbors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.has_edge(i, j))
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.out_neighbors(i).count()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        self.in_neighbors(j).count()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.out_degree(i)).collect()
    }

    /// The common out-degree, if every vertex has the same in- and out-degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.out_degree(0);
        (0..self.n)
            .all(|v| self.out_degree(v) == d && self.in_degree(v) == d)
            .then_some(d)
    }

    pub fn is_undirected(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.has_edge(i, j) == self.has_edge(j, i)))
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|i| self.has_edge(i, i))
    }

    /// Number of nonzero adjacency entries (twice the edge count when undirected).
    pub fn arc_count(&self) -> usize {
        self.adjacency.iter().filter(|&&a| a).count()
    }

    /// Undirected edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(i, j) || self.has_edge(j, i))
            .collect()
    }

    /// Adjacency as a 0/1 integer matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| u8::from(self.has_edge(i, j))).collect())
            .collect()
    }

    /// Renders the graph in the adjacency file format read by [`parse_adjacency`].
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("# {name}\n"));
        }
        out.push_str(&format!("{}\n", self.n));
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n)
                .map(|j| if self.has_edge(i, j) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("arcs", &self.arc_count())
            .finish()
    }
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GraphError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GraphError::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// Whether the permutation matrix commutes with the adjacency matrix.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.n() == g.n()
            && (0..g.n()).all(|i| {
                (0..g.n()).all(|j| g.has_edge(i, j) == g.has_edge(self.image(i), self.image(j)))
            })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}
