//! Standard graph constructions. All outputs are simple and undirected.

use std::collections::VecDeque;

use super::{Graph, GraphError};

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("complete graph needs n >= 1"));
    }
    Ok(Graph::from_fn(n, |_, _| true).with_name(format!("K{n}")))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    Ok(Graph::from_fn(n, |i, j| (i + 1) % n == j || (j + 1) % n == i).with_name(format!("C{n}")))
}

/// The `d`-dimensional hypercube `Q_d` on `{0,1}^d`.
pub fn hypercube(d: u32) -> Result<Graph, GraphError> {
    if d == 0 || d > 16 {
        return Err(invalid("hypercube dimension must be in 1..=16"));
    }
    let n = 1usize << d;
    Ok(Graph::from_fn(n, |i, j| (i ^ j).count_ones() == 1).with_name(format!("Q{d}")))
}

/// The folded `d`-cube: `Q_{d-1}` plus an edge between each pair of antipodes.
pub fn folded_cube(d: u32) -> Result<Graph, GraphError> {
    if !(2..=17).contains(&d) {
        return Err(invalid("folded cube dimension must be in 2..=17"));
    }
    let n = 1usize << (d - 1);
    let all = n - 1;
    Ok(
        Graph::from_fn(n, |i, j| (i ^ j).count_ones() == 1 || (i ^ j) == all)
            .with_name(format!("folded Q{d}")),
    )
}

fn k_subsets(m: usize, k: usize) -> Vec<u64> {
    (0u64..(1u64 << m))
        .filter(|s| s.count_ones() as usize == k)
        .collect()
}

/// Kneser graph `K(m, k)`: `k`-subsets of an `m`-set, adjacent when disjoint.
/// Vertices are ordered by the bitmask value of the subset.
pub fn kneser(m: usize, k: usize) -> Result<Graph, GraphError> {
    if k == 0 || 2 * k > m || m > 20 {
        return Err(invalid(format!(
            "kneser({m}, {k}) needs 1 <= k <= m/2 and m <= 20"
        )));
    }
    let sets = k_subsets(m, k);
    Ok(Graph::from_fn(sets.len(), |i, j| sets[i] & sets[j] == 0).with_name(format!("K({m},{k})")))
}

/// Hamming graph `H(d, q)` on words of length `d` over a `q`-letter alphabet.
pub fn hamming(d: u32, q: usize) -> Result<Graph, GraphError> {
    if d == 0 || q < 2 {
        return Err(invalid("hamming graph needs d >= 1 and q >= 2"));
    }
    let n = q
        .checked_pow(d)
        .filter(|&n| n <= 4096)
        .ok_or_else(|| invalid("hamming graph too large"))?;
    let digits = |mut x: usize| {
        let mut out = Vec::with_capacity(d as usize);
        for _ in 0..d {
            out.push(x % q);
            x /= q;
        }
        out
    };
    let words: Vec<Vec<usize>> = (0..n).map(digits).collect();
    Ok(Graph::from_fn(n, |i, j| {
        words[i]
            .iter()
            .zip(&words[j])
            .filter(|(a, b)| a != b)
            .count()
            == 1
    })
    .with_name(format!("H({d},{q})")))
}

/// Circulant graph: `i ~ j` iff `j − i ≡ ±s (mod n)` for some offset `s`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(invalid("circulant needs n >= 2"));
    }
    if offsets.iter().any(|&s| s % n == 0) {
        return Err(invalid("circulant offsets must be nonzero mod n"));
    }
    Ok(Graph::from_fn(n, |i, j| {
        let diff = (j + n - i) % n;
        offsets
            .iter()
            .any(|&s| s % n == diff || (n - s % n) == diff)
    })
    .with_name(format!("C{n}{offsets:?}")))
}

/// Cayley graph of `Z_{m_1} × … × Z_{m_r}` with a connection set closed under
/// negation (it is symmetrized here).
pub fn cayley_abelian(moduli: &[usize], connection: &[Vec<i64>]) -> Result<Graph, GraphError> {
    if moduli.is_empty() || moduli.iter().any(|&m| m < 2) {
        return Err(invalid("cayley graph needs moduli >= 2"));
    }
    if connection.iter().any(|c| c.len() != moduli.len()) {
        return Err(invalid("connection element has wrong arity"));
    }
    let n: usize = moduli.iter().product();
    let coords = |mut x: usize| {
        moduli
            .iter()
            .map(|&m| {
                let c = x % m;
                x /= m;
                c
            })
            .collect::<Vec<_>>()
    };
    let points: Vec<Vec<usize>> = (0..n).map(coords).collect();
    let in_set = |diff: &[usize]| {
        connection.iter().any(|c| {
            let pos = c
                .iter()
                .zip(moduli)
                .zip(diff)
                .all(|((&g, &m), &d)| g.rem_euclid(m as i64) as usize == d);
            let neg = c
                .iter()
                .zip(moduli)
                .zip(diff)
                .all(|((&g, &m), &d)| (-g).rem_euclid(m as i64) as usize == d);
            pos || neg
        })
    };
    if connection.iter().any(|c| {
        c.iter()
            .zip(moduli)
            .all(|(&g, &m)| g.rem_euclid(m as i64) == 0)
    }) {
        return Err(invalid("connection set must not contain the identity"));
    }
    Ok(Graph::from_fn(n, |i, j| {
        let diff: Vec<usize> = points[i]
            .iter()
            .zip(&points[j])
            .zip(moduli)
            .map(|((&a, &b), &m)| (b + m - a) % m)
            .collect();
        in_set(&diff)
    }))
}

fn require_undirected(g: &Graph, what: &str) -> Result<(), GraphError> {
    if !g.is_undirected() || g.has_loops() {
        return Err(invalid(format!("{what} needs a simple undirected graph")));
    }
    Ok(())
}

/// Line graph: one vertex per edge (in [`Graph::edges`] order), adjacent when
/// the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    require_undirected(g, "line graph")?;
    let edges = g.edges();
    if edges.is_empty() {
        return Err(invalid("line graph of an edgeless graph is empty"));
    }
    let name = format!("L({})", g.name().unwrap_or("G"));
    Ok(Graph::from_fn(edges.len(), |a, b| {
        let (p, q) = edges[a];
        let (r, s) = edges[b];
        p == r || p == s || q == r || q == s
    })
    .with_name(name))
}

/// Cartesian product; vertex `(g, h)` has index `g · |H| + h`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    require_undirected(g, "cartesian product")?;
    require_undirected(h, "cartesian product")?;
    let m = h.n();
    let name = format!("{} x {}", g.name().unwrap_or("G"), h.name().unwrap_or("H"));
    Ok(Graph::from_fn(g.n() * m, |a, b| {
        let (ga, ha) = (a / m, a % m);
        let (gb, hb) = (b / m, b % m);
        (ga == gb && h.has_edge(ha, hb)) || (ha == hb && g.has_edge(ga, gb))
    })
    .with_name(name))
}

pub fn complement(g: &Graph) -> Result<Graph, GraphError> {
    Ok(Graph::from_fn(g.n(), |i, j| !g.has_edge(i, j)))
}

/// Graph on the same vertices where `i ~ j` iff their distance in `g` is
/// exactly `k`. Vertices in different components are never adjacent.
pub fn distance_k(g: &Graph, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(invalid("distance must be >= 1"));
    }
    require_undirected(g, "distance graph")?;
    let n = g.n();
    let mut dist = vec![usize::MAX; n * n];
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.out_neighbors(v) {
                if row[w] == usize::MAX {
                    row[w] = row[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(Graph::from_fn(n, |i, j| dist[i * n + j] == k))
}
