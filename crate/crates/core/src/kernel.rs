//! Kernels parameterized by a vertex cover.
//!
//! [`kernelize_poly`] keeps the cover, the independent terminals, and one
//! independent non-terminal per cover pair it can connect (chosen by a
//! maximum matching). [`kernelize_exp`] additionally caps the number of
//! terminal pairs of each neighborhood type when no vertex is shared between pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph_kit::{
    max_bipartite_matching, vertex_cover_2approx, vertex_cover_at_most, vertex_cover_exact,
    BipartiteGraph,
};
use crate::mixed_graph::{underlying_graph, Instance, MixedGraph, TerminalPair, VertexId};
use crate::preprocess::{add_shortcut_arcs, contract_cycles, EarlyVerdict};
use crate::{Error, Result};

/// Covers up to this size are computed exactly under [`CoverChoice::Auto`].
pub const EXACT_KERNEL_COVER: usize = 12;

/// Pairs kept per terminal-pair type by [`kernelize_exp`].
pub const PAIRS_PER_TYPE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CoverChoice {
    /// Exact when the minimum cover has at most [`EXACT_KERNEL_COVER`] vertices, else 2-approximate.
    #[default]
    Auto,
    Exact,
    Approx,
    /// A cover of the contracted instance, in its vertex ids.
    Given(Vec<VertexId>),
}

/// Everything the polynomial kernel computed along the way. Vertex ids refer
/// to `augmented`, the contracted instance with shortcut arcs.
#[derive(Debug, Clone)]
pub struct KernelContext {
    pub augmented: Instance,
    pub cover: Vec<VertexId>,
    pub cover_exact: bool,
    pub independent: Vec<VertexId>,
    pub terminal_side: Vec<VertexId>,
    pub non_terminal_side: Vec<VertexId>,
    /// Cover pairs that only an independent non-terminal connects, in lexicographic order.
    pub x: Vec<(VertexId, VertexId)>,
    pub i_prime: Vec<VertexId>,
    /// `kept[i]` is the `augmented` vertex that became vertex `i` of the kernel.
    pub kept: Vec<VertexId>,
    /// The cover in kernel vertex ids.
    pub kernel_cover: Vec<VertexId>,
    /// Contraction alone satisfied every pair; the kernel is then the empty instance.
    pub decided_yes: bool,
}

/// JSON summary written next to a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KernelSummary {
    pub cover_size: usize,
    pub cover_exact: bool,
    pub x_size: usize,
    pub i_prime_size: usize,
    pub kept_pairs: usize,
}

impl KernelContext {
    pub fn summary(&self, kernel: &Instance) -> KernelSummary {
        KernelSummary {
            cover_size: self.cover.len(),
            cover_exact: self.cover_exact,
            x_size: self.x.len(),
            i_prime_size: self.i_prime.len(),
            kept_pairs: kernel.k(),
        }
    }
}

/// Trivial YES instance: no terminals.
fn trivial_yes() -> Instance {
    Instance::new(MixedGraph::empty(0), []).expect("empty instance")
}

/// Kernel with `O(vc^2 + k)` vertices.
pub fn kernelize_poly(inst: &Instance, choice: &CoverChoice) -> Result<(Instance, KernelContext)> {
    let contracted = contract_cycles(inst);
    let red = contracted.instance;
    let under = underlying_graph(red.graph());
    let (cover, cover_exact) = match choice {
        CoverChoice::Auto => match vertex_cover_at_most(&under, EXACT_KERNEL_COVER) {
            Some(c) => (c, true),
            None => (vertex_cover_2approx(&under), false),
        },
        CoverChoice::Exact => (vertex_cover_exact(&under)?, true),
        CoverChoice::Approx => (vertex_cover_2approx(&under), false),
        CoverChoice::Given(c) => {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            if c.iter().any(|&v| v >= red.graph().n()) || !under.is_vertex_cover(&c) {
                return Err(Error::Contract(
                    "the given set is not a vertex cover".into(),
                ));
            }
            (c, false)
        }
    };

    if contracted.verdict == EarlyVerdict::Yes {
        let ctx = empty_context(red, cover, cover_exact);
        return Ok((trivial_yes(), ctx));
    }

    let aug = add_shortcut_arcs(&red, &cover);
    let g = aug.graph();
    let n = g.n();
    let mut in_cover = vec![false; n];
    for &v in &cover {
        in_cover[v] = true;
    }
    let mut is_terminal = vec![false; n];
    for p in aug.terminals() {
        is_terminal[p.s] = true;
        is_terminal[p.t] = true;
    }
    let independent: Vec<VertexId> = (0..n).filter(|&v| !in_cover[v]).collect();
    let terminal_side: Vec<VertexId> = independent
        .iter()
        .copied()
        .filter(|&v| is_terminal[v])
        .collect();
    let non_terminal_side: Vec<VertexId> = independent
        .iter()
        .copied()
        .filter(|&v| !is_terminal[v])
        .collect();

    // u - w - v with at least one undirected step, oriented u -> w -> v
    let connects = |u: VertexId, w: VertexId, v: VertexId| {
        let (eu, ev) = (g.has_edge(u, w), g.has_edge(w, v));
        (eu && ev) || (eu && g.has_arc(w, v)) || (g.has_arc(u, w) && ev)
    };
    let mut x = Vec::new();
    let mut h_edges = Vec::new();
    for &u in &cover {
        for &v in &cover {
            if u == v || g.has_arc(u, v) || g.has_edge(u, v) {
                continue;
            }
            let ws: Vec<usize> = (0..non_terminal_side.len())
                .filter(|&j| connects(u, non_terminal_side[j], v))
                .collect();
            if ws.is_empty() {
                continue;
            }
            let left = x.len();
            x.push((u, v));
            h_edges.extend(ws.into_iter().map(|j| (left, j)));
        }
    }
    let h = BipartiteGraph::new(x.len(), non_terminal_side.len(), h_edges);
    let matching = max_bipartite_matching(&h);
    let mut i_prime: Vec<VertexId> = matching
        .pairs
        .iter()
        .map(|&(_, j)| non_terminal_side[j])
        .collect();
    i_prime.sort_unstable();

    let mut kept: Vec<VertexId> = cover
        .iter()
        .chain(&terminal_side)
        .chain(&i_prime)
        .copied()
        .collect();
    kept.sort_unstable();
    let kernel = induced_instance(&aug, &kept);
    let mut index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let kernel_cover = cover.iter().map(|&v| index[v]).collect();
    let ctx = KernelContext {
        augmented: aug,
        cover,
        cover_exact,
        independent,
        terminal_side,
        non_terminal_side,
        x,
        i_prime,
        kept,
        kernel_cover,
        decided_yes: false,
    };
    Ok((kernel, ctx))
}

fn empty_context(red: Instance, cover: Vec<VertexId>, cover_exact: bool) -> KernelContext {
    KernelContext {
        augmented: red,
        cover,
        cover_exact,
        independent: Vec::new(),
        terminal_side: Vec::new(),
        non_terminal_side: Vec::new(),
        x: Vec::new(),
        i_prime: Vec::new(),
        kept: Vec::new(),
        kernel_cover: Vec::new(),
        decided_yes: true,
    }
}

/// Sub-instance induced by the sorted vertex list `keep`; every terminal must be kept.
fn induced_instance(inst: &Instance, keep: &[VertexId]) -> Instance {
    let mut index = vec![usize::MAX; inst.graph().n()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let terminals = inst
        .terminals()
        .iter()
        .map(|p| TerminalPair::new(index[p.s], index[p.t]));
    Instance::new(inst.graph().induced(keep), terminals).expect("terminal vertices are kept")
}

/// Neighborhood signature of an independent terminal, or a singleton type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TerminalType {
    Signature {
        undirected: Vec<VertexId>,
        in_arcs: Vec<VertexId>,
        out_arcs: Vec<VertexId>,
        source: bool,
    },
    /// Cover vertices, and vertices shared by several pairs after contraction.
    Singleton(VertexId),
}

/// What [`kernelize_exp`] did to the terminal pairs.
#[derive(Debug, Clone, Default)]
pub struct ExpKernelReport {
    /// Number of pairs of each type before trimming, keyed by (source type, sink type).
    pub type_counts: BTreeMap<(TerminalType, TerminalType), usize>,
    /// Number of pairs of each type that survived.
    pub kept_counts: BTreeMap<(TerminalType, TerminalType), usize>,
    pub cover_size: usize,
}

/// Keeps at most [`PAIRS_PER_TYPE`] terminal pairs of every type, then drops
/// independent terminals left without a pair.
///
/// Requires that no vertex of the input lies in two terminal pairs.
pub fn kernelize_exp(inst: &Instance) -> Result<(Instance, ExpKernelReport)> {
    let mut uses = vec![0usize; inst.graph().n()];
    for p in inst.terminals() {
        uses[p.s] += 1;
        uses[p.t] += 1;
    }
    if let Some(v) = (0..uses.len()).find(|&v| uses[v] > 1) {
        return Err(Error::Refused(format!(
            "vertex {} appears in more than one terminal pair",
            v + 1
        )));
    }
    let (kernel, ctx) = kernelize_poly(inst, &CoverChoice::Auto)?;
    if ctx.decided_yes {
        return Ok((kernel, ExpKernelReport::default()));
    }
    let g = kernel.graph();
    let adj = g.adjacency();
    let mut in_cover = vec![false; g.n()];
    for &v in &ctx.kernel_cover {
        in_cover[v] = true;
    }
    let mut uses = vec![0usize; g.n()];
    for p in kernel.terminals() {
        uses[p.s] += 1;
        uses[p.t] += 1;
    }
    let type_of = |v: VertexId, source: bool| {
        if in_cover[v] || uses[v] > 1 {
            TerminalType::Singleton(v)
        } else {
            TerminalType::Signature {
                undirected: adj.undirected[v].clone(),
                in_arcs: adj.in_arcs[v].clone(),
                out_arcs: adj.out_arcs[v].clone(),
                source,
            }
        }
    };

    let mut report = ExpKernelReport {
        cover_size: ctx.cover.len(),
        ..Default::default()
    };
    let mut surviving = Vec::new();
    for p in kernel.terminals() {
        let key = (type_of(p.s, true), type_of(p.t, false));
        let count = report.type_counts.entry(key.clone()).or_insert(0);
        *count += 1;
        if *count <= PAIRS_PER_TYPE {
            *report.kept_counts.entry(key).or_insert(0) += 1;
            surviving.push(*p);
        }
    }

    let mut still_used = vec![false; g.n()];
    for p in &surviving {
        still_used[p.s] = true;
        still_used[p.t] = true;
    }
    let was_terminal: Vec<bool> = uses.iter().map(|&u| u > 0).collect();
    let keep: Vec<VertexId> = (0..g.n())
        .filter(|&v| in_cover[v] || !was_terminal[v] || still_used[v])
        .collect();
    let out = induced_instance(&kernel.with_terminals(surviving), &keep);
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(
        n: usize,
        e: &[(usize, usize)],
        a: &[(usize, usize)],
        t: &[(usize, usize)],
    ) -> Instance {
        Instance::new(
            MixedGraph::new(n, e.iter().copied(), a.iter().copied()).unwrap(),
            t.iter().map(|&p| p.into()),
        )
        .unwrap()
    }

    #[test]
    fn nothing_to_discard() {
        // every independent vertex is a terminal
        let i = inst(4, &[(0, 1), (1, 2)], &[(3, 1)], &[(0, 2), (3, 0)]);
        let (k, ctx) = kernelize_poly(&i, &CoverChoice::Auto).unwrap();
        assert!(ctx.non_terminal_side.is_empty());
        assert_eq!(k, i);
    }

    #[test]
    fn one_middle_vertex_per_pair() {
        // cover {0, 2}; 1 and 3 both give 0 -> w -> 2
        let i = inst(
            6,
            &[(0, 1), (0, 3)],
            &[(1, 2), (3, 2), (4, 0), (2, 5)],
            &[(4, 5)],
        );
        let (k, ctx) = kernelize_poly(&i, &CoverChoice::Given(vec![0, 2])).unwrap();
        assert_eq!(ctx.x, vec![(0, 2)]);
        assert_eq!(ctx.i_prime.len(), 1);
        assert_eq!(k.graph().n(), 5);
    }
}
