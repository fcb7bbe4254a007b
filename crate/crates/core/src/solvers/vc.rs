//! The `n^O(vc^2)` algorithm parameterized by a vertex cover.
//!
//! Orientations inside the cover are enumerated, then for every ordered pair
//! of cover vertices a middle vertex (or none) realising a two-step path
//! through the independent set. What is left only involves edges at
//! independent terminals and is settled greedily.

use crate::graph_kit::{reachable, Digraph};
use crate::mixed_graph::{
    check_orientation, underlying_graph, Instance, MixedGraph, Orientation, Verdict, VertexId,
};
use crate::preprocess::is_mixed_acyclic;
use crate::{Error, Result};

/// Largest cover accepted.
pub const VC_COVER_CAP: usize = 6;
/// Largest number of middle-vertex combinations accepted.
pub const VC_MIDDLE_CAP: u128 = 100_000_000;

pub fn solve_vc_xp(inst: &Instance, cover: &[VertexId]) -> Result<Verdict> {
    solve_vc_xp_capped(inst, cover, VC_MIDDLE_CAP)
}

/// [`solve_vc_xp`] with a custom limit on the middle enumeration.
pub fn solve_vc_xp_capped(
    inst: &Instance,
    cover: &[VertexId],
    middle_cap: u128,
) -> Result<Verdict> {
    let g = inst.graph();
    if let Some(&v) = cover.iter().find(|&&v| v >= g.n()) {
        return Err(Error::Contract(format!("cover vertex {v} out of range")));
    }
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    if cover.len() > VC_COVER_CAP {
        return Err(Error::Refused(format!(
            "the XP solver accepts covers of at most {VC_COVER_CAP} vertices, got {}",
            cover.len()
        )));
    }
    if !is_mixed_acyclic(g) {
        return Err(Error::Contract(
            "vertex-cover solver needs a mixed acyclic instance".into(),
        ));
    }
    if !underlying_graph(g).is_vertex_cover(&cover) {
        return Err(Error::Contract(
            "the given set is not a vertex cover".into(),
        ));
    }

    let mut in_cover = vec![false; g.n()];
    for &v in &cover {
        in_cover[v] = true;
    }
    let inner: Vec<usize> = (0..g.edges().len())
        .filter(|&i| {
            let (u, v) = g.edges()[i];
            in_cover[u] && in_cover[v]
        })
        .collect();

    let mut slots = Vec::new();
    for &u in &cover {
        for &v in &cover {
            if u != v {
                slots.push(Slot {
                    u,
                    v,
                    options: middle_options(g, &in_cover, u, v),
                });
            }
        }
    }
    let space = slots.iter().fold(1u128, |acc, s| {
        acc.saturating_mul(s.options.len() as u128 + 1)
    });
    if space > middle_cap {
        return Err(Error::Refused(format!(
            "{space} middle-vertex combinations exceed the cap of {middle_cap}"
        )));
    }

    let m = inner.len();
    let mut search = Search {
        inst,
        in_cover,
        slots,
        fixed: vec![None; g.edges().len()],
    };
    for mask in 0u64..(1u64 << m) {
        for (j, &i) in inner.iter().enumerate() {
            let (u, v) = g.edges()[i];
            search.fixed[i] = Some(if (mask >> (m - 1 - j)) & 1 == 0 {
                (u, v)
            } else {
                (v, u)
            });
        }
        if let Some(o) = search.middle(0) {
            if !check_orientation(inst, &o)? {
                return Err(Error::Invariant(
                    "vertex-cover solver built an invalid witness".into(),
                ));
            }
            return Ok(Verdict::Yes(o));
        }
    }
    Ok(Verdict::No)
}

/// A candidate middle vertex `w` for `u -> w -> v`, with the edge indices
/// that would have to be oriented (`None` where an arc already goes the right way).
#[derive(Debug, Clone, Copy)]
struct Middle {
    first: Option<usize>,
    second: Option<usize>,
}

struct Slot {
    u: VertexId,
    v: VertexId,
    options: Vec<Middle>,
}

fn middle_options(g: &MixedGraph, in_cover: &[bool], u: VertexId, v: VertexId) -> Vec<Middle> {
    (0..g.n())
        .filter(|&w| !in_cover[w])
        .filter_map(|w| {
            let first = if g.has_arc(u, w) {
                None
            } else {
                Some(g.edge_index(u, w)?)
            };
            let second = if g.has_arc(w, v) {
                None
            } else {
                Some(g.edge_index(w, v)?)
            };
            Some(Middle { first, second })
        })
        .collect()
}

struct Search<'a> {
    inst: &'a Instance,
    in_cover: Vec<bool>,
    slots: Vec<Slot>,
    fixed: Vec<Option<(VertexId, VertexId)>>,
}

impl Search<'_> {
    fn try_fix(
        &mut self,
        i: Option<usize>,
        dir: (VertexId, VertexId),
        set: &mut Vec<usize>,
    ) -> bool {
        let Some(i) = i else { return true };
        let (a, b) = dir;
        match self.fixed[i] {
            Some(d) => d == (a, b),
            None => {
                self.fixed[i] = Some((a, b));
                set.push(i);
                true
            }
        }
    }

    fn middle(&mut self, k: usize) -> Option<Orientation> {
        if k == self.slots.len() {
            return self.settle();
        }
        if let Some(o) = self.middle(k + 1) {
            return Some(o);
        }
        let (u, v) = (self.slots[k].u, self.slots[k].v);
        for j in 0..self.slots[k].options.len() {
            let opt = self.slots[k].options[j];
            let g = self.inst.graph();
            // the middle vertex is the endpoint of the first connection that is not u
            let w = match (opt.first, opt.second) {
                (Some(i), _) => other(g.edges()[i], u),
                (None, Some(i)) => other(g.edges()[i], v),
                (None, None) => continue, // arcs u -> w -> v need no guess
            };
            let mut set = Vec::new();
            let ok = self.try_fix(opt.first, (u, w), &mut set)
                && self.try_fix(opt.second, (w, v), &mut set);
            let found = if ok { self.middle(k + 1) } else { None };
            for i in set {
                self.fixed[i] = None;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Handles the demands one by one, each time picking one whose source is
    /// nobody's sink, orienting edges at its independent endpoints.
    fn settle(&self) -> Option<Orientation> {
        let g = self.inst.graph();
        let n = g.n();
        let mut fixed = self.fixed.clone();
        let mut open: Vec<usize> = (0..self.inst.k()).collect();
        let pairs = self.inst.terminals();
        let reaches = |fixed: &[Option<(VertexId, VertexId)>], s: VertexId, t: VertexId| {
            let d = Digraph::from_arcs(
                n,
                g.arcs()
                    .iter()
                    .copied()
                    .chain(fixed.iter().flatten().copied()),
            );
            reachable(&d, s)[t]
        };
        while !open.is_empty() {
            let pick = open
                .iter()
                .position(|&i| open.iter().all(|&j| j == i || pairs[j].t != pairs[i].s))?;
            let p = pairs[open[pick]];
            if !self.in_cover[p.s] {
                orient_at(g, &mut fixed, p.s, true);
            }
            if !reaches(&fixed, p.s, p.t) {
                if !self.in_cover[p.t] {
                    orient_at(g, &mut fixed, p.t, false);
                }
                if !reaches(&fixed, p.s, p.t) {
                    return None;
                }
            }
            open.remove(pick);
        }
        let dirs: Vec<(VertexId, VertexId)> = g
            .edges()
            .iter()
            .zip(&fixed)
            .map(|(&e, f)| f.unwrap_or(e))
            .collect();
        Orientation::from_pairs(g, dirs).ok()
    }
}

/// Orients every still-free edge at `v` away from it (`outward`) or toward it.
fn orient_at(
    g: &MixedGraph,
    fixed: &mut [Option<(VertexId, VertexId)>],
    v: VertexId,
    outward: bool,
) {
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if fixed[i].is_none() && (a == v || b == v) {
            let w = other((a, b), v);
            fixed[i] = Some(if outward { (v, w) } else { (w, v) });
        }
    }
}

fn other((a, b): (VertexId, VertexId), v: VertexId) -> VertexId {
    if a == v {
        b
    } else {
        a
    }
}
