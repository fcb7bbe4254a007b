//! Branching on the edges that break the restricted structure.
//!
//! After preprocessing, only edges at vertices of mixed degree at least three
//! need guessing, and there are at most `6|A|` of them. Every leaf is a
//! restricted instance handed to [`solve_restricted`].

use std::collections::BTreeSet;

use serde::Serialize;

use super::restricted::solve_restricted;
use crate::graph_kit::Digraph;
use crate::mixed_graph::{Instance, MixedGraph, Orientation, Verdict, VertexId};
use crate::preprocess::{preprocess, EarlyVerdict};
use crate::Result;

/// Size of the branching tree of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BranchStats {
    /// Search-tree leaves: restricted instances solved plus branches cut early.
    pub leaves: u64,
    pub max_depth: usize,
}

/// Edges incident to a vertex of mixed degree at least three, in order of
/// that vertex and then of the neighbor.
pub fn branch_edges(g: &MixedGraph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 0..g.n() {
        if adj.mixed_degree(v) < 3 {
            continue;
        }
        for &w in &adj.undirected[v] {
            let i = g.edge_index(v, w).expect("neighbor via an edge");
            if seen.insert(i) {
                out.push(i);
            }
        }
    }
    out
}

/// For the forest `G[E]`: the degree sum over its vertices of degree at least
/// three and three times its number of leaves. The first never exceeds the second.
pub fn forest_degree_claim(g: &MixedGraph) -> (usize, usize) {
    let mut deg = vec![0usize; g.n()];
    for &(u, v) in g.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    let high: usize = deg.iter().filter(|&&d| d >= 3).sum();
    let leaves = deg.iter().filter(|&&d| d == 1).count();
    (high, 3 * leaves)
}

/// Preprocesses, branches, and solves each leaf with the restricted algorithm.
pub fn solve_arcs_fpt(inst: &Instance) -> Result<(Verdict, BranchStats)> {
    solve_arcs_fpt_with(inst, &mut |_| {})
}

/// Like [`solve_arcs_fpt`], calling `on_leaf` with every restricted leaf instance.
pub fn solve_arcs_fpt_with(
    inst: &Instance,
    on_leaf: &mut dyn FnMut(&Instance),
) -> Result<(Verdict, BranchStats)> {
    let report = preprocess(inst);
    match report.verdict {
        EarlyVerdict::No => return Ok((Verdict::No, BranchStats::default())),
        EarlyVerdict::Yes => {
            return Ok((
                Verdict::Yes(report.trivial_witness(inst.graph())),
                BranchStats::default(),
            ))
        }
        EarlyVerdict::Undecided => {}
    }
    let red = &report.instance;
    let mut search = Search::new(red, on_leaf);
    let found = search.dfs(0, 0)?;
    let stats = search.stats;
    Ok(match found {
        Some(o) => (Verdict::Yes(report.lift(inst.graph(), &o)), stats),
        None => (Verdict::No, stats),
    })
}

struct Search<'a, 'f> {
    inst: &'a Instance,
    order: Vec<usize>,
    fixed: Vec<Option<(VertexId, VertexId)>>,
    trail: Vec<usize>,
    stats: BranchStats,
    on_leaf: &'f mut dyn FnMut(&Instance),
}

impl<'a, 'f> Search<'a, 'f> {
    fn new(inst: &'a Instance, on_leaf: &'f mut dyn FnMut(&Instance)) -> Self {
        Self {
            inst,
            order: branch_edges(inst.graph()),
            fixed: vec![None; inst.graph().edges().len()],
            trail: Vec::new(),
            stats: BranchStats::default(),
            on_leaf,
        }
    }

    fn fix(&mut self, i: usize, dir: (VertexId, VertexId)) {
        debug_assert!(self.fixed[i].is_none());
        self.fixed[i] = Some(dir);
        self.trail.push(i);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().unwrap();
            self.fixed[i] = None;
        }
    }

    fn dfs(&mut self, pos: usize, depth: usize) -> Result<Option<Orientation>> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let mark = self.trail.len();
        if !self.propagate() {
            self.stats.leaves += 1;
            self.undo(mark);
            return Ok(None);
        }
        let next = (pos..self.order.len()).find(|&p| self.fixed[self.order[p]].is_none());
        let result = match next {
            None => {
                self.stats.leaves += 1;
                self.solve_leaf()?
            }
            Some(p) => {
                let i = self.order[p];
                let (u, v) = self.inst.graph().edges()[i];
                let mut found = None;
                for dir in [(u, v), (v, u)] {
                    let inner = self.trail.len();
                    self.fix(i, dir);
                    found = self.dfs(p + 1, depth + 1)?;
                    self.undo(inner);
                    if found.is_some() {
                        break;
                    }
                }
                found
            }
        };
        self.undo(mark);
        Ok(result)
    }

    fn solve_leaf(&mut self) -> Result<Option<Orientation>> {
        let g = self.inst.graph();
        let free: Vec<(VertexId, VertexId)> = g
            .edges()
            .iter()
            .zip(&self.fixed)
            .filter(|(_, f)| f.is_none())
            .map(|(&e, _)| e)
            .collect();
        let arcs = g
            .arcs()
            .iter()
            .copied()
            .chain(self.fixed.iter().flatten().copied());
        let leaf_graph =
            MixedGraph::new(g.n(), free, arcs).expect("fixing edges keeps the graph valid");
        let leaf = self.inst.with_graph(leaf_graph);
        (self.on_leaf)(&leaf);
        Ok(match solve_restricted(&leaf)? {
            Verdict::No => None,
            Verdict::Yes(o) => {
                let mut dirs: Vec<(VertexId, VertexId)> =
                    self.fixed.iter().flatten().copied().collect();
                dirs.extend_from_slice(o.dirs());
                Some(Orientation::from_pairs(g, dirs)?)
            }
        })
    }

    /// Cuts branches in which some pair cannot be connected even with every
    /// free edge usable both ways, and fixes free edges that some pair needs
    /// in one specific direction. Returns false on a dead branch.
    fn propagate(&mut self) -> bool {
        let g = self.inst.graph();
        let n = g.n();
        loop {
            let mut sure = Digraph::new(n);
            for (u, v) in g
                .arcs()
                .iter()
                .copied()
                .chain(self.fixed.iter().flatten().copied())
            {
                sure.add_arc(u, v);
            }
            // free edge arcs tagged with their edge index
            let mut free: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                if self.fixed[i].is_none() {
                    free[u].push((v, i));
                    free[v].push((u, i));
                }
            }
            let mut changed = false;
            for p in self.inst.terminals() {
                let Some(path) = find_path(&sure, &free, p.s, p.t, None) else {
                    return false;
                };
                for (a, b, i) in path {
                    if self.fixed[i].is_some() {
                        continue;
                    }
                    if find_path(&sure, &free, p.s, p.t, Some((a, b))).is_none() {
                        self.fix(i, (a, b));
                        changed = true;
                        break;
                    }
                }
                if changed {
                    break;
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

/// BFS from `s` to `t` over `sure` arcs and free edges in both directions,
/// never moving `a -> b` along a free edge when `banned = Some((a, b))`.
/// Returns the free edges used, as `(from, to, edge index)`.
fn find_path(
    sure: &Digraph,
    free: &[Vec<(VertexId, usize)>],
    s: VertexId,
    t: VertexId,
    banned: Option<(VertexId, VertexId)>,
) -> Option<Vec<(VertexId, VertexId, usize)>> {
    const NONE: usize = usize::MAX;
    let n = sure.n();
    // parent vertex and the free edge used to get here (NONE for a sure arc)
    let mut parent = vec![(NONE, NONE); n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([s]);
    seen[s] = true;
    while let Some(u) = queue.pop_front() {
        if u == t {
            let mut used = Vec::new();
            let mut cur = t;
            while cur != s {
                let (p, e) = parent[cur];
                if e != NONE {
                    used.push((p, cur, e));
                }
                cur = p;
            }
            return Some(used);
        }
        let sure_next = sure.successors(u).iter().map(|&w| (w, NONE));
        let free_next = free[u]
            .iter()
            .filter(|&&(w, _)| banned != Some((u, w)))
            .copied();
        for (w, e) in sure_next.chain(free_next) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = (u, e);
                queue.push_back(w);
            }
        }
    }
    None
}
