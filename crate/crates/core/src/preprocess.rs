//! Answer-preserving reductions: cycle contraction, degree-one elimination and
//! shortcut arcs between cover vertices.
//!
//! Every reduction returns a [`PreprocessReport`] that remembers, for each
//! edge of the input, whether it survived (and as which edge) or was given a
//! fixed direction. That is enough to turn a witness for the reduced instance
//! into a witness for the input.

use std::collections::BTreeSet;

use crate::graph_kit::{connected_components, reachable, scc_condense, topo_order, Digraph};
use crate::mixed_graph::{Instance, MixedGraph, Orientation, TerminalPair, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EarlyVerdict {
    Yes,
    No,
    Undecided,
}

/// Where each input vertex ended up. `None` for deleted vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    image: Vec<Option<VertexId>>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).map(Some).collect(),
        }
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.image[v]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn as_slice(&self) -> &[Option<VertexId>] {
        &self.image
    }

    /// Image of a vertex set, deduplicated and sorted; deleted vertices vanish.
    pub fn map_set(&self, vs: &[VertexId]) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = vs.iter().filter_map(|&v| self.get(v)).collect();
        set.into_iter().collect()
    }

    fn then(&self, next: &ContractionMap) -> ContractionMap {
        ContractionMap {
            image: self
                .image
                .iter()
                .map(|m| m.and_then(|m| next.image[m]))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeFate {
    /// Survives as edge `i` of the reduced graph.
    Kept(usize),
    /// Direction decided by the reduction, in input vertex ids.
    Fixed(VertexId, VertexId),
}

#[derive(Debug, Clone)]
pub struct PreprocessReport {
    pub instance: Instance,
    pub map: ContractionMap,
    /// Input vertices deleted by degree-one elimination.
    pub removed: Vec<VertexId>,
    pub verdict: EarlyVerdict,
    fates: Vec<EdgeFate>,
    input_edges: Vec<(VertexId, VertexId)>,
}

impl PreprocessReport {
    fn identity(inst: &Instance) -> Self {
        Self {
            instance: inst.clone(),
            map: ContractionMap::identity(inst.graph().n()),
            removed: Vec::new(),
            verdict: if inst.k() == 0 {
                EarlyVerdict::Yes
            } else {
                EarlyVerdict::Undecided
            },
            fates: (0..inst.graph().edges().len())
                .map(EdgeFate::Kept)
                .collect(),
            input_edges: inst.graph().edges().to_vec(),
        }
    }

    /// Chains `self` (input -> middle) with `next` (middle -> output).
    pub fn then(self, next: PreprocessReport) -> PreprocessReport {
        let fates = self
            .input_edges
            .iter()
            .zip(&self.fates)
            .map(|(&(u, v), fate)| match *fate {
                EdgeFate::Fixed(a, b) => EdgeFate::Fixed(a, b),
                EdgeFate::Kept(j) => match next.fates[j] {
                    EdgeFate::Kept(k) => EdgeFate::Kept(k),
                    EdgeFate::Fixed(a, _) => {
                        if self.map.get(u) == Some(a) {
                            EdgeFate::Fixed(u, v)
                        } else {
                            EdgeFate::Fixed(v, u)
                        }
                    }
                },
            })
            .collect();
        let mut removed = self.removed;
        let gone: BTreeSet<VertexId> = next.removed.iter().copied().collect();
        removed.extend(
            (0..self.map.len()).filter(|&v| self.map.get(v).is_some_and(|m| gone.contains(&m))),
        );
        removed.sort_unstable();
        PreprocessReport {
            map: self.map.then(&next.map),
            instance: next.instance,
            removed,
            verdict: next.verdict,
            fates,
            input_edges: self.input_edges,
        }
    }

    /// Turns a witness for `self.instance` into one for the input instance.
    pub fn lift(&self, input: &MixedGraph, o: &Orientation) -> Orientation {
        debug_assert_eq!(input.edges(), &self.input_edges[..]);
        let dirs = self
            .input_edges
            .iter()
            .zip(&self.fates)
            .map(|(&(u, v), fate)| match *fate {
                EdgeFate::Fixed(a, b) => (a, b),
                EdgeFate::Kept(k) => {
                    let (a, _) = o.dirs()[k];
                    if self.map.get(u) == Some(a) {
                        (u, v)
                    } else {
                        (v, u)
                    }
                }
            });
        Orientation::from_pairs(input, dirs).expect("lifted orientation covers every edge")
    }

    /// Witness for the input when the reductions alone decided YES.
    pub fn trivial_witness(&self, input: &MixedGraph) -> Orientation {
        self.lift(input, &Orientation::toward_higher(self.instance.graph()))
    }
}

/// True iff the graph has no mixed cycle: `G[E]` is a forest and the arcs
/// between its components form a DAG with no arc inside a component.
pub fn is_mixed_acyclic(g: &MixedGraph) -> bool {
    let comp = connected_components(g.n(), g.edges());
    let trees = comp.iter().max().map_or(0, |&c| c + 1);
    // a forest has exactly n - #components edges
    if g.edges().len() != g.n() - trees {
        return false;
    }
    let mut dag = Digraph::new(trees);
    for &(u, v) in g.arcs() {
        if comp[u] == comp[v] {
            return false;
        }
        dag.add_arc(comp[u], comp[v]);
    }
    topo_order(&dag).is_ok()
}

fn map_terminals(
    terminals: &[TerminalPair],
    f: impl Fn(VertexId) -> VertexId,
) -> Vec<TerminalPair> {
    terminals
        .iter()
        .map(|p| TerminalPair::new(f(p.s), f(p.t)))
        .filter(|p| p.s != p.t)
        .collect()
}

/// Contracts every maximal vertex set that can be made strongly connected by
/// orienting its edges.
///
/// Such sets are the SCCs of the bidirected augmentation split further at
/// undirected bridges: a bridge can be crossed in one direction only, so it
/// survives as an edge between the two sides.
pub fn contract_cycles(inst: &Instance) -> PreprocessReport {
    let g = inst.graph();
    let n = g.n();
    let scc = scc_condense(&g.bidirected()).component;

    // Underlying multigraph restricted to SCC-internal connections.
    // Connection ids: 0..|E| are edges, |E|.. are arcs.
    let m_edges = g.edges().len();
    let internal: Vec<(usize, VertexId, VertexId)> = g
        .edges()
        .iter()
        .chain(g.arcs())
        .enumerate()
        .filter(|(_, &(u, v))| scc[u] == scc[v])
        .map(|(id, &(u, v))| (id, u, v))
        .collect();
    let bridges = find_bridges(n, &internal);
    debug_assert!(bridges.iter().all(|&id| id < m_edges));

    let mut uf = UnionFind::new(n);
    for &(id, u, v) in &internal {
        if !bridges.contains(&id) {
            uf.union(u, v);
        }
    }
    // classes numbered by smallest member
    let mut class_of_root = vec![usize::MAX; n];
    let mut classes = 0;
    let class: Vec<usize> = (0..n)
        .map(|v| {
            let r = uf.find(v);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes;
                classes += 1;
            }
            class_of_root[r]
        })
        .collect();

    let new_edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| class[u] != class[v])
        .map(|&(u, v)| (class[u], class[v]))
        .collect();
    let arc_set: BTreeSet<(VertexId, VertexId)> = g
        .arcs()
        .iter()
        .filter(|&&(u, v)| class[u] != class[v])
        .map(|&(u, v)| (class[u], class[v]))
        .filter(|&(a, b)| {
            !new_edges.contains(&(a.min(b), a.max(b))) && !new_edges.contains(&(b, a))
        })
        .collect();
    let graph = MixedGraph::new(classes, new_edges, arc_set)
        .expect("contracted graph keeps the mixed graph invariants");

    let internal_dirs = strong_orientations(g, &class);
    let fates = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            if class[u] == class[v] {
                let (a, b) = internal_dirs[i].expect("internal edge oriented");
                EdgeFate::Fixed(a, b)
            } else {
                EdgeFate::Kept(graph.edge_index(class[u], class[v]).expect("bridge kept"))
            }
        })
        .collect();

    let terminals = map_terminals(inst.terminals(), |v| class[v]);
    let verdict = if terminals.is_empty() {
        EarlyVerdict::Yes
    } else {
        EarlyVerdict::Undecided
    };
    PreprocessReport {
        instance: Instance::new(graph, terminals).expect("terminals remapped in range"),
        map: ContractionMap {
            image: class.into_iter().map(Some).collect(),
        },
        removed: Vec::new(),
        verdict,
        fates,
        input_edges: g.edges().to_vec(),
    }
}

/// Orients the edges inside every class so the class becomes strongly
/// connected. Each class is strongly connected in the augmentation and free of
/// undirected bridges, so one of the two directions of each edge always keeps
/// it strongly connected (Boesch–Tindell); edges are fixed greedily.
fn strong_orientations(g: &MixedGraph, class: &[usize]) -> Vec<Option<(VertexId, VertexId)>> {
    let n = g.n();
    let classes = class.iter().max().map_or(0, |&c| c + 1);
    let mut members = vec![Vec::new(); classes];
    for v in 0..n {
        members[class[v]].push(v);
    }
    let mut local = vec![0usize; n];
    for m in &members {
        for (i, &v) in m.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut arcs_by_class = vec![Vec::new(); classes];
    for &(u, v) in g.arcs() {
        if class[u] == class[v] {
            arcs_by_class[class[u]].push((local[u], local[v]));
        }
    }
    let mut edges_by_class = vec![Vec::new(); classes];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if class[u] == class[v] {
            edges_by_class[class[u]].push(i);
        }
    }

    let mut out = vec![None; g.edges().len()];
    for c in 0..classes {
        let size = members[c].len();
        let edge_ids = &edges_by_class[c];
        if edge_ids.is_empty() {
            continue;
        }
        let mut decided: Vec<Option<(usize, usize)>> = vec![None; edge_ids.len()];
        for pos in 0..edge_ids.len() {
            let (u, v) = g.edges()[edge_ids[pos]];
            let (lu, lv) = (local[u], local[v]);
            decided[pos] = Some((lu, lv));
            let mut arcs = arcs_by_class[c].clone();
            for (j, d) in decided.iter().enumerate() {
                match *d {
                    Some(arc) => arcs.push(arc),
                    None => {
                        let (a, b) = g.edges()[edge_ids[j]];
                        arcs.push((local[a], local[b]));
                        arcs.push((local[b], local[a]));
                    }
                }
            }
            let ok = strongly_connected(size, arcs);
            let (a, b) = if ok { (u, v) } else { (v, u) };
            decided[pos] = Some((local[a], local[b]));
            out[edge_ids[pos]] = Some((a, b));
        }
    }
    out
}

fn strongly_connected(size: usize, arcs: Vec<(usize, usize)>) -> bool {
    let d = Digraph::from_arcs(size, arcs);
    reachable(&d, 0).iter().all(|&x| x) && reachable(&d.reversed(), 0).iter().all(|&x| x)
}

/// Bridges of an undirected multigraph given as `(id, u, v)` connections.
fn find_bridges(n: usize, conns: &[(usize, VertexId, VertexId)]) -> BTreeSet<usize> {
    let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for &(id, u, v) in conns {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut bridges = BTreeSet::new();
    // (vertex, id of the connection used to enter it, next adjacency position)
    let mut stack: Vec<(VertexId, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent_conn, ref mut pos)) = stack.last_mut() {
            if let Some(&(w, id)) = adj[v].get(*pos) {
                *pos += 1;
                if id == parent_conn {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if low[v] > disc[p] {
                    bridges.insert(parent_conn);
                }
            }
        }
    }
    bridges
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Copy)]
enum Link {
    Edge,
    /// arc from the vertex to its neighbor
    Out,
    /// arc from the neighbor into the vertex
    In,
}

/// Exhaustively removes vertices of underlying degree at most one.
///
/// A pendant terminal is replaced by its neighbor in every pair (after
/// checking the single connection points the right way); isolated vertices go
/// away, or decide NO if they still carry a non-trivial pair.
pub fn eliminate_degree_one(inst: &Instance) -> PreprocessReport {
    let g = inst.graph();
    let n = g.n();
    let mut links: Vec<Vec<(VertexId, Link, Option<usize>)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        links[u].push((v, Link::Edge, Some(i)));
        links[v].push((u, Link::Edge, Some(i)));
    }
    for &(u, v) in g.arcs() {
        links[u].push((v, Link::Out, None));
        links[v].push((u, Link::In, None));
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = links.iter().map(Vec::len).collect();
    let mut fixed: Vec<Option<(VertexId, VertexId)>> = vec![None; g.edges().len()];
    let mut pairs: Vec<TerminalPair> = inst
        .terminals()
        .iter()
        .copied()
        .filter(|p| p.s != p.t)
        .collect();
    let mut queue: Vec<VertexId> = (0..n).rev().filter(|&v| degree[v] <= 1).collect();
    let mut no = false;

    while let Some(v) = queue.pop() {
        if !alive[v] || degree[v] > 1 {
            continue;
        }
        let is_source = pairs.iter().any(|p| p.s == v);
        let is_sink = pairs.iter().any(|p| p.t == v);
        let link = links[v].iter().find(|(w, _, _)| alive[*w]).copied();
        let Some((u, kind, edge)) = link else {
            // isolated
            if is_source || is_sink {
                no = true;
                break;
            }
            alive[v] = false;
            continue;
        };
        if is_source && is_sink {
            no = true;
            break;
        }
        if (is_source && matches!(kind, Link::In)) || (is_sink && matches!(kind, Link::Out)) {
            no = true;
            break;
        }
        if let Some(e) = edge {
            fixed[e] = Some(if is_sink { (u, v) } else { (v, u) });
        }
        if is_source || is_sink {
            for p in &mut pairs {
                if p.s == v {
                    p.s = u;
                }
                if p.t == v {
                    p.t = u;
                }
            }
            pairs.retain(|p| p.s != p.t);
        }
        alive[v] = false;
        degree[u] -= 1;
        if degree[u] <= 1 {
            queue.push(u);
        }
    }

    let mut image = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if alive[v] {
            image[v] = Some(next);
            next += 1;
        }
    }
    let keep: Vec<VertexId> = (0..n).filter(|&v| alive[v]).collect();
    let graph = g.induced(&keep);
    let fates = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| match (image[u], image[v]) {
            (Some(a), Some(b)) => EdgeFate::Kept(graph.edge_index(a, b).expect("edge kept")),
            _ => {
                let (a, b) = fixed[i].unwrap_or((u, v));
                EdgeFate::Fixed(a, b)
            }
        })
        .collect();
    let removed: Vec<VertexId> = (0..n).filter(|&v| !alive[v]).collect();
    let verdict = if no {
        EarlyVerdict::No
    } else if pairs.is_empty() {
        EarlyVerdict::Yes
    } else {
        EarlyVerdict::Undecided
    };
    let terminals: Vec<TerminalPair> = if no {
        Vec::new()
    } else {
        map_terminals(&pairs, |v| image[v].expect("terminal vertices stay alive"))
    };
    // On NO the terminal list is meaningless; keep the graph for inspection.
    PreprocessReport {
        instance: Instance::new(graph, terminals).expect("terminals remapped in range"),
        map: ContractionMap { image },
        removed,
        verdict,
        fates,
        input_edges: g.edges().to_vec(),
    }
}

/// Contraction and degree-one elimination alternated to a fixpoint.
pub fn preprocess(inst: &Instance) -> PreprocessReport {
    let mut report = PreprocessReport::identity(inst);
    loop {
        let contracted = contract_cycles(&report.instance);
        report = report.then(contracted);
        if report.verdict != EarlyVerdict::Undecided {
            return report;
        }
        let before = report.instance.graph().n();
        let trimmed = eliminate_degree_one(&report.instance);
        report = report.then(trimmed);
        if report.verdict != EarlyVerdict::Undecided || report.instance.graph().n() == before {
            return report;
        }
    }
}

/// Adds arc `(u, v)` for cover vertices `u != v` joined by a directed path in
/// `(V, A)`, unless the arc or the edge `{u, v}` already exists.
pub fn add_shortcut_arcs(inst: &Instance, cover: &[VertexId]) -> Instance {
    let g = inst.graph();
    let arcs_only = g.arc_digraph();
    let cover: BTreeSet<VertexId> = cover.iter().copied().collect();
    let mut arcs: Vec<(VertexId, VertexId)> = g.arcs().to_vec();
    for &u in &cover {
        let reach = reachable(&arcs_only, u);
        for &v in &cover {
            if u != v && reach[v] && !g.has_arc(u, v) && !g.has_edge(u, v) {
                arcs.push((u, v));
            }
        }
    }
    let graph = MixedGraph::new(g.n(), g.edges().iter().copied(), arcs)
        .expect("shortcut arcs avoid existing edges and arcs");
    Instance::new(graph, inst.terminals().iter().copied()).expect("same vertex set")
}
