//! Reference implementations used as oracles. They share no code with the
//! library beyond the instance accessors.

#![allow(dead_code)]

use std::collections::VecDeque;

use steiner_core::generators::{CnfFormula, MulticoloredGraph};
use steiner_core::Instance;

fn reaches(adj: &[Vec<usize>], s: usize, t: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(u) = queue.pop_front() {
        if u == t {
            return true;
        }
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Tries all `2^|E|` orientations.
pub fn orientation_exists(inst: &Instance) -> bool {
    let g = inst.graph();
    let m = g.edges().len();
    assert!(m <= 24, "oracle limited to 24 edges");
    (0u32..1 << m).any(|mask| {
        let mut adj = vec![Vec::new(); g.n()];
        for &(u, v) in g.arcs() {
            adj[u].push(v);
        }
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 0 {
                adj[u].push(v);
            } else {
                adj[v].push(u);
            }
        }
        inst.terminals().iter().all(|p| reaches(&adj, p.s, p.t))
    })
}

/// Truth table over `x_1..x_n`.
pub fn cnf_satisfiable(phi: &CnfFormula) -> bool {
    let n = phi.num_vars();
    (0u32..1 << n).any(|mask| {
        phi.clauses().iter().all(|c| {
            c.iter().any(|&l| {
                let value = mask >> (l.unsigned_abs() - 1) & 1 == 1;
                value == (l > 0)
            })
        })
    })
}

/// All `n^k` choices of one vertex per color.
pub fn has_multicolored_clique(g: &MulticoloredGraph) -> bool {
    let (k, n) = (g.k(), g.n());
    if k == 0 {
        return true;
    }
    let total = n.pow(k as u32);
    (0..total).any(|mut code| {
        let mut pick = Vec::with_capacity(k);
        for _ in 0..k {
            pick.push(code % n);
            code /= n;
        }
        (0..k).all(|c| (c + 1..k).all(|d| g.has_edge((c, pick[c]), (d, pick[d]))))
    })
}

/// Size of a minimum vertex cover by trying every vertex subset.
pub fn min_vertex_cover_size(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n)
        .filter(|mask| {
            edges
                .iter()
                .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Maximum matching size: each left vertex in turn takes a free right
/// neighbor or stays unmatched.
pub fn max_matching_size(left: usize, right: usize, edges: &[(usize, usize)]) -> usize {
    fn go(l: usize, left: usize, adj: &[Vec<usize>], used: &mut [bool]) -> usize {
        if l == left {
            return 0;
        }
        let mut best = go(l + 1, left, adj, used);
        for &r in &adj[l] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + go(l + 1, left, adj, used));
                used[r] = false;
            }
        }
        best
    }
    let mut adj = vec![Vec::new(); left];
    for &(l, r) in edges {
        adj[l].push(r);
    }
    go(0, left, &adj, &mut vec![false; right])
}

/// A literal as `(var, positive)`.
pub type Lit = (usize, bool);

/// `clauses` over variables `0..n`.
pub fn two_sat_satisfiable(n: usize, clauses: &[(Lit, Lit)]) -> bool {
    (0u32..1 << n).any(|mask| {
        clauses
            .iter()
            .all(|&((a, pa), (b, pb))| (mask >> a & 1 == 1) == pa || (mask >> b & 1 == 1) == pb)
    })
}
