use super::UndirectedGraph;
use crate::mixed_graph::VertexId;

/// Largest cover `vertex_cover_exact` will search for.
pub const EXACT_COVER_CAP: usize = 32;

/// Endpoints of a greedy maximal matching (edges scanned in sorted order).
pub fn vertex_cover_2approx(g: &UndirectedGraph) -> Vec<VertexId> {
    let mut taken = vec![false; g.n()];
    for &(u, v) in g.edges() {
        if !taken[u] && !taken[v] {
            taken[u] = true;
            taken[v] = true;
        }
    }
    (0..g.n()).filter(|&v| taken[v]).collect()
}

/// A minimum vertex cover, or `Refused` when it is larger than [`EXACT_COVER_CAP`].
pub fn vertex_cover_exact(g: &UndirectedGraph) -> crate::Result<Vec<VertexId>> {
    vertex_cover_at_most(g, EXACT_COVER_CAP).ok_or_else(|| {
        crate::Error::Refused(format!(
            "minimum vertex cover exceeds the exact-search cap of {EXACT_COVER_CAP}"
        ))
    })
}

/// A minimum vertex cover if its size is at most `limit`.
pub fn vertex_cover_at_most(g: &UndirectedGraph, limit: usize) -> Option<Vec<VertexId>> {
    let approx = vertex_cover_2approx(g);
    let mut search = Search {
        adj: g.neighbors(),
        alive: vec![true; g.n()],
        chosen: Vec::new(),
        best: (approx.len() <= limit).then(|| approx.clone()),
        bound: approx.len().min(limit + 1),
    };
    search.run();
    search.best.map(|mut c| {
        c.sort_unstable();
        c
    })
}

struct Search {
    adj: Vec<Vec<VertexId>>,
    alive: Vec<bool>,
    chosen: Vec<VertexId>,
    best: Option<Vec<VertexId>>,
    /// Only covers strictly smaller than this are interesting.
    bound: usize,
}

impl Search {
    fn degree(&self, v: VertexId) -> usize {
        self.adj[v].iter().filter(|&&w| self.alive[w]).count()
    }

    fn take(&mut self, v: VertexId) {
        self.alive[v] = false;
        self.chosen.push(v);
    }

    fn run(&mut self) {
        let mark = self.chosen.len();
        let mut removed = Vec::new();
        // forced moves: neighbors of degree-1 vertices
        loop {
            if self.chosen.len() >= self.bound {
                self.undo(mark, &removed);
                return;
            }
            let pendant = (0..self.adj.len()).find(|&v| self.alive[v] && self.degree(v) == 1);
            let Some(v) = pendant else { break };
            let u = *self.adj[v].iter().find(|&&w| self.alive[w]).unwrap();
            self.take(u);
            removed.push(u);
        }

        let (mut best_v, mut best_deg, mut edges) = (usize::MAX, 0, 0);
        for v in 0..self.adj.len() {
            if self.alive[v] {
                let d = self.degree(v);
                edges += d;
                if d > best_deg {
                    best_v = v;
                    best_deg = d;
                }
            }
        }
        edges /= 2;
        if edges == 0 {
            if self.chosen.len() < self.bound {
                self.bound = self.chosen.len();
                self.best = Some(self.chosen.clone());
            }
            self.undo(mark, &removed);
            return;
        }
        // every remaining vertex covers at most best_deg edges
        let lower = edges.div_ceil(best_deg);
        if self.chosen.len() + lower >= self.bound {
            self.undo(mark, &removed);
            return;
        }

        let v = best_v;
        self.take(v);
        self.run();
        self.alive[v] = true;
        self.chosen.pop();

        let nbrs: Vec<VertexId> = self.adj[v]
            .iter()
            .copied()
            .filter(|&w| self.alive[w])
            .collect();
        if self.chosen.len() + nbrs.len() < self.bound {
            for &w in &nbrs {
                self.take(w);
            }
            self.run();
            for &w in &nbrs {
                self.alive[w] = true;
                self.chosen.pop();
            }
        }
        self.undo(mark, &removed);
    }

    fn undo(&mut self, mark: usize, removed: &[VertexId]) {
        for &u in removed {
            self.alive[u] = true;
        }
        self.chosen.truncate(mark);
    }
}
