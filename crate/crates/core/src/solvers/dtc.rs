//! The `4^dtc` algorithm for instances that are a clique plus a few vertices.

use std::collections::VecDeque;

use crate::graph_kit::{reachable, Digraph};
use crate::mixed_graph::{underlying_graph, Instance, MixedGraph, Orientation, Verdict, VertexId};
use crate::preprocess::is_mixed_acyclic;
use crate::{Error, Result};

/// Most modulator-incident edges the outer enumeration will try.
const OUTER_EDGE_CAP: usize = 30;

/// True iff removing `modulator` leaves a complete underlying graph.
pub fn is_clique_modulator(g: &MixedGraph, modulator: &[VertexId]) -> bool {
    let mut in_mod = vec![false; g.n()];
    for &v in modulator {
        in_mod[v] = true;
    }
    let nbrs = underlying_graph(g).neighbors();
    let rest: Vec<VertexId> = (0..g.n()).filter(|&v| !in_mod[v]).collect();
    rest.iter()
        .all(|&v| nbrs[v].iter().filter(|&&w| !in_mod[w]).count() == rest.len() - 1)
}

/// Decides a mixed acyclic instance given a clique modulator.
///
/// Edges touching the modulator are enumerated. The remaining edges lie in
/// the clique and form a matching, and every unsatisfied pair then depends on
/// a single one of them, which is oriented greedily.
pub fn solve_dtc(inst: &Instance, modulator: &[VertexId]) -> Result<Verdict> {
    let g = inst.graph();
    if let Some(&v) = modulator.iter().find(|&&v| v >= g.n()) {
        return Err(Error::Contract(format!(
            "modulator vertex {v} out of range"
        )));
    }
    if !is_mixed_acyclic(g) {
        return Err(Error::Contract(
            "clique-modulator solver needs a mixed acyclic instance".into(),
        ));
    }
    if !is_clique_modulator(g, modulator) {
        return Err(Error::Contract(
            "removing the modulator does not leave a clique".into(),
        ));
    }
    let mut in_mod = vec![false; g.n()];
    for &v in modulator {
        in_mod[v] = true;
    }
    let outer: Vec<usize> = (0..g.edges().len())
        .filter(|&i| {
            let (u, v) = g.edges()[i];
            in_mod[u] || in_mod[v]
        })
        .collect();
    if outer.len() > OUTER_EDGE_CAP {
        return Err(Error::Refused(format!(
            "{} edges touch the modulator; the enumeration is capped at {OUTER_EDGE_CAP}",
            outer.len()
        )));
    }
    let m = outer.len();
    for mask in 0u64..(1u64 << m) {
        let mut fixed: Vec<Option<(VertexId, VertexId)>> = vec![None; g.edges().len()];
        for (j, &i) in outer.iter().enumerate() {
            let (u, v) = g.edges()[i];
            let low_to_high = (mask >> (m - 1 - j)) & 1 == 0;
            fixed[i] = Some(if low_to_high { (u, v) } else { (v, u) });
        }
        if let Some(o) = clique_core(inst, fixed)? {
            return Ok(Verdict::Yes(o));
        }
    }
    Ok(Verdict::No)
}

fn clique_core(
    inst: &Instance,
    mut fixed: Vec<Option<(VertexId, VertexId)>>,
) -> Result<Option<Orientation>> {
    let g = inst.graph();
    let n = g.n();
    for p in inst.terminals() {
        let sure = Digraph::from_arcs(
            n,
            g.arcs()
                .iter()
                .copied()
                .chain(fixed.iter().flatten().copied()),
        );
        if reachable(&sure, p.s)[p.t] {
            continue;
        }
        let Some(used) = fewest_free_edges(g, &sure, &fixed, p.s, p.t) else {
            return Ok(None);
        };
        if used.len() != 1 {
            return Err(Error::Invariant(format!(
                "a cheapest path from {} to {} uses {} undirected edges instead of one",
                p.s,
                p.t,
                used.len()
            )));
        }
        let i = used[0];
        let (u, v) = g.edges()[i];
        let works = |dir: (VertexId, VertexId)| {
            let mut d = sure.clone();
            d.add_arc(dir.0, dir.1);
            reachable(&d, p.s)[p.t]
        };
        match (works((u, v)), works((v, u))) {
            // both directions working would give an arc-only path already
            (true, true) => {}
            (true, false) => fixed[i] = Some((u, v)),
            (false, true) => fixed[i] = Some((v, u)),
            (false, false) => {
                return Err(Error::Invariant(format!(
                    "edge {{{u}, {v}}} lies on a path from {} to {} but neither direction works",
                    p.s, p.t
                )))
            }
        }
    }
    let dirs: Vec<(VertexId, VertexId)> = g
        .edges()
        .iter()
        .zip(&fixed)
        .map(|(&e, f)| f.unwrap_or(e))
        .collect();
    Ok(Some(Orientation::from_pairs(g, dirs)?))
}

/// 0-1 BFS where free edges cost one; returns the free edges on a cheapest
/// `s`-`t` path, or `None` if `t` is unreachable even with free edges both ways.
fn fewest_free_edges(
    g: &MixedGraph,
    sure: &Digraph,
    fixed: &[Option<(VertexId, VertexId)>],
    s: VertexId,
    t: VertexId,
) -> Option<Vec<usize>> {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut free: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if fixed[i].is_none() {
            free[u].push((v, i));
            free[v].push((u, i));
        }
    }
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![(NONE, NONE); n];
    let mut deque = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = deque.pop_front() {
        for &w in sure.successors(u) {
            if dist[u] < dist[w] {
                dist[w] = dist[u];
                parent[w] = (u, NONE);
                deque.push_front(w);
            }
        }
        for &(w, i) in &free[u] {
            if dist[u] + 1 < dist[w] {
                dist[w] = dist[u] + 1;
                parent[w] = (u, i);
                deque.push_back(w);
            }
        }
    }
    if dist[t] == usize::MAX {
        return None;
    }
    let mut used = Vec::new();
    let mut cur = t;
    while cur != s {
        let (p, i) = parent[cur];
        if i != NONE {
            used.push(i);
        }
        cur = p;
    }
    Some(used)
}
