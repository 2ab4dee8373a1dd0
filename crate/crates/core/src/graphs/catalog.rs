//! Named graphs, covering every graph in the quantum-symmetry benchmark table
//! plus a few extras used in diagnostics.

use super::generators::{
    cartesian_product, cayley_abelian, circulant, complete, cycle, distance_k, folded_cube,
    hamming, hypercube, kneser, line_graph,
};
use super::{Graph, GraphError};

/// Catalog names of the sixteen benchmark graphs, in table order.
pub const REFERENCE_GRAPHS: [&str; 16] = [
    "k4",
    "k5",
    "k6",
    "cube_q3",
    "petersen",
    "l_q3",
    "l_c6_2",
    "trun_k4",
    "k3_box_c4",
    "antip_trun_k4",
    "icosahedron",
    "co_heawood",
    "hamming_2_4",
    "shrikhande",
    "cube_q4",
    "clebsch",
];

const EXTRA_GRAPHS: [&str; 1] = ["l_petersen"];

/// All names accepted by [`catalog`].
pub fn catalog_names() -> Vec<&'static str> {
    REFERENCE_GRAPHS
        .iter()
        .chain(EXTRA_GRAPHS.iter())
        .copied()
        .collect()
}

const ICOSAHEDRON_EDGES: [(usize, usize); 30] = [
    (0, 1),
    (0, 5),
    (0, 7),
    (0, 8),
    (0, 11),
    (1, 2),
    (1, 5),
    (1, 6),
    (1, 8),
    (2, 3),
    (2, 6),
    (2, 8),
    (2, 9),
    (3, 4),
    (3, 6),
    (3, 9),
    (3, 10),
    (4, 5),
    (4, 6),
    (4, 10),
    (4, 11),
    (5, 6),
    (5, 11),
    (7, 8),
    (7, 9),
    (7, 10),
    (7, 11),
    (8, 9),
    (9, 10),
    (10, 11),
];

// Hamiltonian path 0-1-…-11 plus the seven chords.
const TRUNCATED_TETRAHEDRON_EDGES: [(usize, usize); 18] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 9),
    (9, 10),
    (10, 11),
    (0, 2),
    (0, 9),
    (1, 6),
    (3, 11),
    (4, 11),
    (5, 7),
    (8, 10),
];

fn truncated_tetrahedron() -> Graph {
    Graph::from_edges(12, TRUNCATED_TETRAHEDRON_EDGES, true).expect("static edge list")
}

/// Points `0..7` and lines `7..14` of the Fano plane (lines `{i, i+1, i+3}`
/// mod 7); a point is adjacent to the lines not containing it.
fn co_heawood() -> Graph {
    let on_line = |p: usize, l: usize| [l, (l + 1) % 7, (l + 3) % 7].contains(&p);
    let mut edges = Vec::new();
    for p in 0..7 {
        for l in 0..7 {
            if !on_line(p, l) {
                edges.push((p, 7 + l));
            }
        }
    }
    Graph::from_edges(14, edges, true).expect("static edge list")
}

fn shrikhande() -> Result<Graph, GraphError> {
    cayley_abelian(&[4, 4], &[vec![1, 0], vec![0, 1], vec![1, 1]])
}

/// Looks up a graph by catalog name.
pub fn catalog(name: &str) -> Result<Graph, GraphError> {
    let g = match name {
        "k4" => complete(4)?,
        "k5" => complete(5)?,
        "k6" => complete(6)?,
        "cube_q3" => hypercube(3)?,
        "cube_q4" => hypercube(4)?,
        "petersen" => kneser(5, 2)?,
        "l_q3" => line_graph(&hypercube(3)?)?,
        "l_c6_2" => line_graph(&circulant(6, &[1, 2])?)?,
        "trun_k4" => truncated_tetrahedron(),
        "antip_trun_k4" => distance_k(&truncated_tetrahedron(), 3)?,
        "k3_box_c4" => cartesian_product(&complete(3)?, &cycle(4)?)?,
        "icosahedron" => Graph::from_edges(12, ICOSAHEDRON_EDGES, true)?,
        "co_heawood" => co_heawood(),
        "hamming_2_4" => hamming(2, 4)?,
        "shrikhande" => shrikhande()?,
        "clebsch" => folded_cube(5)?,
        "l_petersen" => line_graph(&kneser(5, 2)?)?,
        _ => {
            return Err(GraphError::UnknownGraph {
                name: name.to_string(),
                valid: catalog_names().into_iter().map(String::from).collect(),
            })
        }
    };
    Ok(g.with_name(name))
}
