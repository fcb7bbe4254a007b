use crate::mixed_graph::{Instance, Orientation, Verdict, VertexId};
use crate::{Error, Result};

/// Default limit on `|E|` for exhaustive search.
pub const DEFAULT_BRUTE_CAP: usize = 24;

/// Tries all `2^|E|` orientations with the default cap.
pub fn solve_brute(inst: &Instance) -> Result<Verdict> {
    solve_brute_capped(inst, DEFAULT_BRUTE_CAP)
}

/// Tries all `2^|E|` orientations in lexicographic order: edge 0 is the most
/// significant position and the low-to-high direction comes first.
pub fn solve_brute_capped(inst: &Instance, cap: usize) -> Result<Verdict> {
    let g = inst.graph();
    let m = g.edges().len();
    if m > cap || m >= 64 {
        return Err(Error::Refused(format!(
            "brute force is capped at {cap} undirected edges; the instance has {m}"
        )));
    }
    let n = g.n();
    let mut arcs_out: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(u, v) in g.arcs() {
        arcs_out[u].push(v);
    }
    // (edge index, other endpoint, whether leaving through the edge means low -> high)
    let mut incident: Vec<Vec<(usize, VertexId, bool)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push((i, v, true));
        incident[v].push((i, u, false));
    }

    let mut seen = vec![0u32; n];
    let mut stamp = 0u32;
    let mut stack = Vec::new();
    let mut forward = vec![true; m];
    for mask in 0u64..(1u64 << m) {
        for (i, f) in forward.iter_mut().enumerate() {
            *f = (mask >> (m - 1 - i)) & 1 == 0;
        }
        let ok = inst.terminals().iter().all(|p| {
            stamp += 1;
            seen[p.s] = stamp;
            stack.clear();
            stack.push(p.s);
            while let Some(u) = stack.pop() {
                if u == p.t {
                    return true;
                }
                let via_edges = incident[u]
                    .iter()
                    .filter(|&&(i, _, low_to_high)| forward[i] == low_to_high)
                    .map(|&(_, w, _)| w);
                for w in arcs_out[u].iter().copied().chain(via_edges) {
                    if seen[w] != stamp {
                        seen[w] = stamp;
                        stack.push(w);
                    }
                }
            }
            false
        });
        if ok {
            return Ok(Verdict::Yes(Orientation::from_flags(g, &forward)));
        }
    }
    Ok(Verdict::No)
}
