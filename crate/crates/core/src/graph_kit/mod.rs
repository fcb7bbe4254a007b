//! Graph primitives used by the solvers and kernels.

mod matching;
mod scc;
mod twosat;
mod vertex_cover;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

pub use matching::{max_bipartite_matching, BipartiteGraph, Matching};
pub use scc::{scc_condense, Condensation};
pub use twosat::{solve_2sat, Literal, TwoSatFormula};
pub use vertex_cover::{
    vertex_cover_2approx, vertex_cover_at_most, vertex_cover_exact, EXACT_COVER_CAP,
};

use crate::mixed_graph::VertexId;

/// Directed graph as adjacency lists. Parallel arcs are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    adj: Vec<Vec<VertexId>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v);
        }
        g
    }

    pub fn add_arc(&mut self, u: VertexId, v: VertexId) {
        self.adj[u].push(v);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }

    pub fn reversed(&self) -> Digraph {
        Digraph::from_arcs(self.n(), self.arcs().map(|(u, v)| (v, u)))
    }
}

/// Simple undirected graph; edges normalized `u < v`, sorted and unique.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut edges: Vec<_> = edges
            .into_iter()
            .inspect(|&(u, v)| assert!(u != v && u < n && v < n, "bad edge ({u}, {v})"))
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_vertex_cover(&self, cover: &[VertexId]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in cover {
            if v < self.n {
                inside[v] = true;
            }
        }
        self.edges.iter().all(|&(u, v)| inside[u] || inside[v])
    }

    /// The complement graph: exactly the non-adjacent distinct pairs.
    pub fn complement(&self) -> UndirectedGraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.edges.binary_search(&(u, v)).is_err() {
                    edges.push((u, v));
                }
            }
        }
        UndirectedGraph { n: self.n, edges }
    }
}

/// Vertices reachable from `from` (including itself), as a membership vector.
pub fn reachable(g: &Digraph, from: VertexId) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        for &v in g.successors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has a directed cycle through {cycle:?}")]
pub struct CyclicError {
    pub cycle: Vec<VertexId>,
}

/// Topological order, ties broken by smallest id (Kahn's algorithm with a heap).
pub fn topo_order(g: &Digraph) -> Result<Vec<VertexId>, CyclicError> {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for (_, v) in g.arcs() {
        indeg[v] += 1;
    }
    let mut heap: BinaryHeap<Reverse<VertexId>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = heap.pop() {
        order.push(u);
        for &v in g.successors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                heap.push(Reverse(v));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover vertex keeps a leftover predecessor, so walking
    // predecessors from any of them must revisit a vertex.
    let leftover: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let rev = g.reversed();
    let start = (0..n).find(|&v| leftover[v]).expect("some vertex left");
    let mut pos = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut cur = start;
    while pos[cur] == usize::MAX {
        pos[cur] = walk.len();
        walk.push(cur);
        cur = *rev
            .successors(cur)
            .iter()
            .filter(|&&p| leftover[p])
            .min()
            .expect("leftover vertex has a leftover predecessor");
    }
    let mut cycle: Vec<VertexId> = walk[pos[cur]..].to_vec();
    // Walked backwards; flip to follow arc direction, then rotate to the minimum.
    cycle.reverse();
    let m = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(m);
    Err(CyclicError { cycle })
}

/// Connected components of an undirected graph given as edge list; returns
/// the component id of every vertex (ids in order of smallest member).
pub fn connected_components(n: usize, edges: &[(VertexId, VertexId)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    comp
}
