//! Every graph in the built-in catalog with its size, degree, automorphism
//! group order and whether it admits a maximal Schur set.
//!
//! ```bash
//! cargo run --release --example graph_catalog
//! ```

use qsinkhorn::graphs::{
    automorphisms, catalog, catalog_names, has_maximal_schur_set, is_vertex_transitive,
    DEFAULT_SEARCH_BUDGET,
};

fn main() {
    println!(
        "{:<14} {:>3} {:>6} {:>6} {:>5} {:>5}",
        "name", "n", "degree", "|Aut|", "VT", "UVT"
    );
    for name in catalog_names() {
        let g = catalog(name).unwrap();
        let order = automorphisms(&g, 0).map_or("?".to_string(), |a| a.len().to_string());
        let degree = g
            .regular_degree()
            .map_or("-".to_string(), |d| d.to_string());
        let vt =
            is_vertex_transitive(&g, DEFAULT_SEARCH_BUDGET).map_or("?".into(), |b| b.to_string());
        let uvt = match has_maximal_schur_set(&g, DEFAULT_SEARCH_BUDGET) {
            Ok(s) => s.is_some().to_string(),
            Err(_) => "?".into(),
        };
        println!(
            "{name:<14} {:>3} {degree:>6} {order:>6} {vt:>5} {uvt:>5}",
            g.n()
        );
    }
}
