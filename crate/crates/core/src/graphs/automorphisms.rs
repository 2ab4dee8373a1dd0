//! Brute-force automorphism enumeration and the vertex-transitivity checks
//! built on it. Fine for graphs up to a few dozen vertices.

use std::collections::VecDeque;

use super::{Graph, GraphError, Permutation};

/// Default cap on search-tree node expansions.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Outcome of the maximal-Schur-set search.
pub type SchurSearch = Option<Vec<Permutation>>;

#[derive(Clone, PartialEq, Eq)]
struct Signature {
    out_degree: usize,
    in_degree: usize,
    neighbor_degrees: Vec<usize>,
}

fn signature(g: &Graph, v: usize) -> Signature {
    let mut neighbor_degrees: Vec<usize> = g.out_neighbors(v).map(|w| g.out_degree(w)).collect();
    neighbor_degrees.sort_unstable();
    Signature {
        out_degree: g.out_degree(v),
        in_degree: g.in_degree(v),
        neighbor_degrees,
    }
}

/// Breadth-first order over the underlying undirected graph, so that most
/// vertices have an already-placed neighbor when they are mapped.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in 0..n {
                if !seen[w] && (g.has_edge(v, w) || g.has_edge(w, v)) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    signatures: Vec<Signature>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    found: Vec<Permutation>,
    limit: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn consistent(&self, v: usize, w: usize) -> bool {
        let g = self.g;
        if g.has_edge(v, v) != g.has_edge(w, w) {
            return false;
        }
        self.order
            .iter()
            .filter_map(|&u| self.image[u].map(|iu| (u, iu)))
            .all(|(u, iu)| {
                g.has_edge(u, v) == g.has_edge(iu, w) && g.has_edge(v, u) == g.has_edge(w, iu)
            })
    }

    fn candidates(&self, position: usize) -> Vec<usize> {
        let g = self.g;
        let v = self.order[position];
        let anchor = self.order[..position]
            .iter()
            .copied()
            .find(|&u| g.has_edge(u, v) || g.has_edge(v, u));
        let pool: Vec<usize> = match anchor {
            Some(u) => {
                let iu = self.image[u].expect("earlier vertices are mapped");
                if g.has_edge(u, v) {
                    g.out_neighbors(iu).collect()
                } else {
                    g.in_neighbors(iu).collect()
                }
            }
            None => (0..g.n()).collect(),
        };
        pool.into_iter()
            .filter(|&w| !self.used[w] && self.signatures[w] == self.signatures[v])
            .collect()
    }

    /// Returns `false` when the search should stop (limit reached).
    fn extend(&mut self, position: usize) -> Result<bool, GraphError> {
        if position == self.order.len() {
            let images = self.image.iter().map(|x| x.expect("complete")).collect();
            self.found.push(Permutation { images });
            return Ok(self.limit == 0 || self.found.len() < self.limit);
        }
        let v = self.order[position];
        for w in self.candidates(position) {
            if !self.consistent(v, w) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(GraphError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            self.image[v] = Some(w);
            self.used[w] = true;
            let keep_going = self.extend(position + 1)?;
            self.image[v] = None;
            self.used[w] = false;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All automorphisms of `g` (at most `limit` of them; `0` means no limit),
/// using the default search budget.
pub fn automorphisms(g: &Graph, limit: usize) -> Result<Vec<Permutation>, GraphError> {
    automorphisms_with_budget(g, limit, DEFAULT_SEARCH_BUDGET)
}

pub fn automorphisms_with_budget(
    g: &Graph,
    limit: usize,
    budget: u64,
) -> Result<Vec<Permutation>, GraphError> {
    let n = g.n();
    let mut search = Search {
        g,
        order: search_order(g),
        signatures: (0..n).map(|v| signature(g, v)).collect(),
        image: vec![None; n],
        used: vec![false; n],
        found: Vec::new(),
        limit,
        nodes: 0,
        budget,
    };
    search.extend(0)?;
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// Whether the orbit of the first vertex under `Aut(g)` is the whole vertex set.
pub fn is_vertex_transitive(g: &Graph, budget: u64) -> Result<bool, GraphError> {
    let auts = automorphisms_with_budget(g, 0, budget)?;
    let mut reached = vec![false; g.n()];
    for sigma in &auts {
        reached[sigma.image(0)] = true;
    }
    Ok(reached.into_iter().all(|r| r))
}

struct SchurCover<'a> {
    n: usize,
    // automorphisms grouped by the image of vertex 0
    groups: Vec<Vec<&'a Permutation>>,
    covered: Vec<bool>,
    chosen: Vec<&'a Permutation>,
    nodes: u64,
    budget: u64,
}

impl<'a> SchurCover<'a> {
    fn fits(&self, sigma: &Permutation) -> bool {
        (0..self.n).all(|i| !self.covered[i * self.n + sigma.image(i)])
    }

    fn mark(&mut self, sigma: &Permutation, value: bool) {
        for i in 0..self.n {
            self.covered[i * self.n + sigma.image(i)] = value;
        }
    }

    fn solve(&mut self, target: usize) -> Result<bool, GraphError> {
        if target == self.n {
            return Ok(true);
        }
        for k in 0..self.groups[target].len() {
            let sigma = self.groups[target][k];
            if !self.fits(sigma) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(GraphError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            self.mark(sigma, true);
            self.chosen.push(sigma);
            if self.solve(target + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            self.mark(sigma, false);
        }
        Ok(false)
    }
}

/// Searches for `n` automorphisms whose permutation matrices sum to the
/// all-ones matrix. `Ok(None)` means no such set exists; running out of budget
/// is an error, distinct from absence.
///
/// Each chosen automorphism sends vertex 0 somewhere different, so candidates
/// are grouped by that image and the cover is built one group at a time.
pub fn has_maximal_schur_set(g: &Graph, budget: u64) -> Result<SchurSearch, GraphError> {
    let n = g.n();
    let auts = automorphisms_with_budget(g, 0, budget)?;
    let mut groups: Vec<Vec<&Permutation>> = vec![Vec::new(); n];
    for sigma in &auts {
        groups[sigma.image(0)].push(sigma);
    }
    if groups.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut cover = SchurCover {
        n,
        groups,
        covered: vec![false; n * n],
        chosen: Vec::with_capacity(n),
        nodes: 0,
        budget,
    };
    if cover.solve(0)? {
        Ok(Some(cover.chosen.into_iter().cloned().collect()))
    } else {
        Ok(None)
    }
}
