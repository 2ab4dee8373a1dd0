//! Maximal Schur sets: the Petersen graph has one, its line graph is vertex
//! transitive but has none.
//!
//! ```bash
//! cargo run --release --example schur_set
//! ```

use qsinkhorn::graphs::{
    has_maximal_schur_set, is_vertex_transitive, kneser, line_graph, DEFAULT_SEARCH_BUDGET,
};

fn main() {
    let petersen = kneser(5, 2).unwrap();
    let line = line_graph(&petersen).unwrap();

    for (name, g) in [("Petersen", &petersen), ("L(Petersen)", &line)] {
        let vt = is_vertex_transitive(g, DEFAULT_SEARCH_BUDGET).unwrap();
        println!("{name}: {} vertices, vertex transitive: {vt}", g.n());
        match has_maximal_schur_set(g, DEFAULT_SEARCH_BUDGET).unwrap() {
            Some(set) => {
                println!("  maximal Schur set:");
                for sigma in set {
                    println!("    {sigma}");
                }
            }
            None => println!("  no maximal Schur set"),
        }
    }
}
