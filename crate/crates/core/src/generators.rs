//! Instance generators: the three hardness reductions, run forward, plus
//! random instances for fuzzing.
//!
//! Vertex numbering of each reduction is fixed and documented on the
//! generator so that witnesses can be read back.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph_kit::UndirectedGraph;
use crate::mixed_graph::{Instance, MixedGraph, TerminalPair, VertexId};
use crate::{Error, Result};

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Contract(format!("line {line}: {}", msg.into()))
}

/// A CNF formula over variables `1..=n`; literal `-i` is the negation of `x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Contract(format!("clause {} is empty", j + 1)));
            }
            if let Some(&l) = c
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(Error::Contract(format!(
                    "literal {l} in clause {} is not among the {num_vars} variables",
                    j + 1
                )));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Reads DIMACS CNF: `c` comments, a `p cnf n m` header, then
    /// whitespace-separated literals with every clause closed by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let f: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                    return Err(bad(
                        i + 1,
                        "expected a single `p cnf <vars> <clauses>` header",
                    ));
                }
                let n = f[2].parse().map_err(|_| bad(i + 1, "bad variable count"))?;
                let m = f[3].parse().map_err(|_| bad(i + 1, "bad clause count"))?;
                header = Some((n, m));
                continue;
            }
            if header.is_none() {
                return Err(bad(i + 1, "clause before the `p cnf` header"));
            }
            for tok in line.split_whitespace() {
                let l: i32 = tok
                    .parse()
                    .map_err(|_| bad(i + 1, format!("bad literal `{tok}`")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(l);
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(Error::Contract("missing `p cnf` header".into()));
        };
        if !current.is_empty() {
            return Err(Error::Contract("last clause is not terminated by 0".into()));
        }
        if clauses.len() != m {
            return Err(Error::Contract(format!(
                "header declares {m} clauses but found {}",
                clauses.len()
            )));
        }
        Self::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{l} "));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `assignment[i]` is the value of `x_{i+1}`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }

    /// Truth-table search. Only meant for small `n`.
    pub fn brute_force_sat(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars < 32, "truth table too large");
        (0u32..1 << self.num_vars)
            .map(|mask| {
                (0..self.num_vars)
                    .map(|i| mask >> i & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .find(|a| self.is_satisfied_by(a))
    }

    /// `m` clauses of exactly `width` distinct variables with random signs.
    pub fn random(rng: &mut impl Rng, n: usize, m: usize, width: usize) -> Self {
        assert!(width >= 1 && width <= n);
        let vars: Vec<i32> = (1..=n as i32).collect();
        let clauses = (0..m)
            .map(|_| {
                vars.choose_multiple(rng, width)
                    .map(|&v| if rng.gen() { v } else { -v })
                    .collect()
            })
            .collect();
        Self::new(n, clauses).expect("random clauses are well formed")
    }
}

/// A CNF whose clauses have at most three literals, all of the same sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCnf(CnfFormula);

impl MonotoneCnf {
    pub fn new(phi: CnfFormula) -> Result<Self> {
        for (j, c) in phi.clauses().iter().enumerate() {
            if c.len() > 3 {
                return Err(Error::Contract(format!(
                    "clause {} has {} literals",
                    j + 1,
                    c.len()
                )));
            }
            if !(c.iter().all(|&l| l > 0) || c.iter().all(|&l| l < 0)) {
                return Err(Error::Contract(format!("clause {} mixes signs", j + 1)));
            }
            let vars: BTreeSet<u32> = c.iter().map(|l| l.unsigned_abs()).collect();
            if vars.len() != c.len() {
                return Err(Error::Contract(format!(
                    "clause {} repeats a variable",
                    j + 1
                )));
            }
        }
        Ok(Self(phi))
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.0
    }

    /// Clauses of two or three distinct variables, each positive or negative
    /// with equal probability.
    pub fn random(rng: &mut impl Rng, n: usize, m: usize) -> Self {
        assert!(n >= 2);
        let vars: Vec<i32> = (1..=n as i32).collect();
        let clauses = (0..m)
            .map(|_| {
                let width = rng.gen_range(2..=3.min(n));
                let sign = if rng.gen() { 1 } else { -1 };
                vars.choose_multiple(rng, width)
                    .map(|&v| sign * v)
                    .collect()
            })
            .collect();
        Self::new(CnfFormula::new(n, clauses).expect("well formed"))
            .expect("monotone by construction")
    }
}

/// Colored vertices `(c, i)` with `c < k`, `i < n`; edges join different colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticoloredGraph {
    k: usize,
    n: usize,
    edges: BTreeSet<((usize, usize), (usize, usize))>,
}

impl MulticoloredGraph {
    pub fn new(
        k: usize,
        n: usize,
        edges: impl IntoIterator<Item = ((usize, usize), (usize, usize))>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for (c, i) in [a, b] {
                if c >= k || i >= n {
                    return Err(Error::Contract(format!("vertex ({c}, {i}) out of range")));
                }
            }
            if a.0 == b.0 {
                return Err(Error::Contract(format!("edge inside color class {}", a.0)));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { k, n, edges: set })
    }

    /// Reads `p mcc <k> <n>` followed by `e <c1> <i1> <c2> <i2>` lines, 1-based.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = None;
        let mut edges = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let f: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(bad(
                        line_no + 1,
                        format!("expected a positive number, got `{s}`"),
                    )),
                }
            };
            match f.as_slice() {
                [] => {}
                ["c", ..] => {}
                ["p", "mcc", k, n] if header.is_none() => {
                    header = Some((num(k)? + 1, num(n)? + 1));
                }
                ["e", c1, i1, c2, i2] if header.is_some() => {
                    edges.push(((num(c1)?, num(i1)?), (num(c2)?, num(i2)?)));
                }
                _ => return Err(bad(line_no + 1, format!("unexpected line `{line}`"))),
            }
        }
        let (k, n) = header.ok_or_else(|| Error::Contract("missing `p mcc` header".into()))?;
        Self::new(k, n, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        self.edges.iter().copied()
    }

    /// Adds classes adjacent to everything else until `k` is a perfect square.
    pub fn padded(&self) -> Self {
        let root = ceil_sqrt(self.k);
        let k2 = root * root;
        let mut edges = self.edges.clone();
        for c in self.k..k2 {
            for d in (0..k2).filter(|&d| d != c) {
                for i in 0..self.n {
                    for j in 0..self.n {
                        let (a, b) = ((c, i), (d, j));
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
        Self {
            k: k2,
            n: self.n,
            edges,
        }
    }

    /// Exhaustive search over all `n^k` choices of one vertex per class.
    pub fn find_clique(&self) -> Option<Vec<usize>> {
        if self.n == 0 {
            return (self.k == 0).then(Vec::new);
        }
        let mut pick = Vec::with_capacity(self.k);
        self.extend_clique(&mut pick).then_some(pick)
    }

    fn extend_clique(&self, pick: &mut Vec<usize>) -> bool {
        let c = pick.len();
        if c == self.k {
            return true;
        }
        for i in 0..self.n {
            if (0..c).all(|d| self.has_edge((d, pick[d]), (c, i))) {
                pick.push(i);
                if self.extend_clique(pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }

    /// Each cross-color pair becomes an edge with probability `p`.
    pub fn random(rng: &mut impl Rng, k: usize, n: usize, p: f64) -> Self {
        let mut edges = Vec::new();
        for c in 0..k {
            for d in c + 1..k {
                for i in 0..n {
                    for j in 0..n {
                        if rng.gen_bool(p) {
                            edges.push(((c, i), (d, j)));
                        }
                    }
                }
            }
        }
        Self::new(k, n, edges).expect("well formed")
    }
}

fn ceil_sqrt(k: usize) -> usize {
    let mut r = 0;
    while r * r < k {
        r += 1;
    }
    r
}

/// Reduction from CNF-SAT with one undirected edge per variable.
///
/// Vertex `2i` is `x_{i+1}` and `2i + 1` is its negation; clause `j` gets
/// `s_j = 2n + 2j` and `t_j = 2n + 2j + 1`. The pair `(s_j, t_j)` can only
/// be served through a literal whose variable edge points from its negation
/// to it, that is, through a true literal.
pub fn gen_cnf_sat(phi: &CnfFormula) -> Instance {
    let n = phi.num_vars();
    let lit = |l: i32| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0);
    let edges = (0..n).map(|i| (2 * i, 2 * i + 1));
    let mut arcs = BTreeSet::new();
    let mut terminals = Vec::new();
    for (j, c) in phi.clauses().iter().enumerate() {
        let (s, t) = (2 * n + 2 * j, 2 * n + 2 * j + 1);
        for &l in c {
            arcs.insert((s, lit(-l)));
            arcs.insert((lit(l), t));
        }
        terminals.push(TerminalPair::new(s, t));
    }
    let g =
        MixedGraph::new(2 * n + 2 * phi.clauses().len(), edges, arcs).expect("valid gadget graph");
    Instance::new(g, terminals).expect("terminals in range")
}

/// Vertex of `ℓ` in [`gen_monotone3sat`] output.
pub const MONO_L: VertexId = 0;
/// Vertex of `r` in [`gen_monotone3sat`] output.
pub const MONO_R: VertexId = 1;

/// Reduction from monotone 3-SAT to a series-parallel instance.
///
/// Vertices: `ℓ = 0`, `r = 1`, then `ℓ_i = 2i + 2` and `r_i = 2i + 3` per
/// variable, then per clause its `v^j_i` in literal order followed by `t_j`.
/// Orienting `r_i -> ℓ_i` means `x_i` is true.
pub fn gen_monotone3sat(phi: &MonotoneCnf) -> Instance {
    let f = phi.formula();
    let n = f.num_vars();
    let ell = |i: usize| 2 * i + 2;
    let r = |i: usize| 2 * i + 3;
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    let mut terminals = Vec::new();
    for i in 0..n {
        edges.push((ell(i), r(i)));
        arcs.push((ell(i), MONO_L));
        arcs.push((r(i), MONO_R));
    }
    let mut next = 2 * n + 2;
    for c in f.clauses() {
        let positive = c[0] > 0;
        // a negative clause is the mirror image with ℓ and r swapped
        let (near, far) = if positive {
            (MONO_L, MONO_R)
        } else {
            (MONO_R, MONO_L)
        };
        let t = next + c.len();
        for (idx, &l) in c.iter().enumerate() {
            let v = next + idx;
            let i = l.unsigned_abs() as usize - 1;
            arcs.push((near, v));
            edges.push((v, t));
            terminals.push(TerminalPair::new(if positive { r(i) } else { ell(i) }, v));
        }
        arcs.push((far, t));
        terminals.push(TerminalPair::new(near, t));
        next = t + 1;
    }
    let g = MixedGraph::new(next, edges, arcs).expect("valid gadget graph");
    Instance::new(g, terminals).expect("terminals in range")
}

/// Reduction from multicolored clique; the output has a vertex cover of
/// size `4√k` after padding `k` to a square.
///
/// With `q = √k`, vertices `0..q` are `ℓ_α`, then `ℓ′_α`, `r_α`, `r′_α` in
/// blocks of `q`. Class `i` follows with `X_i` at `4q + 2ni + j` and `Y_i`
/// right after it. Class `i` sits at `h(i) = (i / q, i % q)`.
pub fn gen_multicolored_clique(g: &MulticoloredGraph) -> Instance {
    let g = g.padded();
    let (k, n) = (g.k(), g.n());
    let q = ceil_sqrt(k);
    let hubs = clique_hubs(k);
    let (l, lp, r, rp) = (
        &hubs[..q],
        &hubs[q..2 * q],
        &hubs[2 * q..3 * q],
        &hubs[3 * q..],
    );
    let x = |i: usize, j: usize| 4 * q + 2 * n * i + j;
    let y = |i: usize, j: usize| 4 * q + 2 * n * i + n + j;

    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    let mut terminals = Vec::new();
    for a in 0..q {
        for b in 0..q {
            arcs.push((l[a], lp[b]));
            arcs.push((r[a], rp[b]));
            terminals.push(TerminalPair::new(l[a], r[b]));
            terminals.push(TerminalPair::new(lp[a], rp[b]));
        }
    }
    for i in 0..k {
        let (a, b) = (i / q, i % q);
        for j in 0..n {
            edges.push((l[a], x(i, j)));
            arcs.push((x(i, j), r[b]));
            arcs.push((lp[a], y(i, j)));
            edges.push((rp[b], y(i, j)));
            for j2 in (0..n).filter(|&j2| j2 != j) {
                terminals.push(TerminalPair::new(x(i, j), y(i, j2)));
            }
        }
    }
    for i1 in 0..k {
        for i2 in i1 + 1..k {
            for j1 in 0..n {
                for j2 in 0..n {
                    if !g.has_edge((i1, j1), (i2, j2)) {
                        terminals.push(TerminalPair::new(x(i1, j1), y(i2, j2)));
                        terminals.push(TerminalPair::new(x(i2, j2), y(i1, j1)));
                    }
                }
            }
        }
    }
    let graph = MixedGraph::new(4 * q + 2 * n * k, edges, arcs).expect("valid gadget graph");
    Instance::new(graph, terminals).expect("terminals in range")
}

/// Hub vertices of [`gen_multicolored_clique`] for `k` classes after padding.
pub fn clique_hubs(k: usize) -> Vec<VertexId> {
    (0..4 * ceil_sqrt(k)).collect()
}

/// Every vertex has at most one undirected edge and there are exactly
/// `num_vars` of them.
pub fn check_cnf_certificate(inst: &Instance, num_vars: usize) -> bool {
    let g = inst.graph();
    let adj = g.adjacency();
    g.edges().len() == num_vars && adj.undirected.iter().all(|nb| nb.len() <= 1)
}

/// Without `ℓ` and `r`, every component of the underlying graph is a star
/// on at most four vertices.
pub fn check_monotone_certificate(inst: &Instance) -> bool {
    let g = inst.graph();
    let n = g.n();
    let rest = |v: VertexId| v != MONO_L && v != MONO_R;
    let pairs = g
        .edges()
        .iter()
        .chain(g.arcs())
        .copied()
        .filter(|&(u, v)| rest(u) && rest(v));
    let nbrs = UndirectedGraph::new(n, pairs).neighbors();
    let mut seen = vec![false; n];
    for start in (0..n).filter(|&v| rest(v)) {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in &nbrs[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let size = comp.len();
        let degree_sum: usize = comp.iter().map(|&v| nbrs[v].len()).sum();
        let has_center = comp.iter().any(|&v| nbrs[v].len() == size - 1);
        // a tree with a vertex adjacent to all others
        if size > 4 || degree_sum != 2 * (size - 1) || !has_center {
            return false;
        }
    }
    true
}

/// The hub set is a vertex cover of the underlying graph.
pub fn check_clique_certificate(inst: &Instance, k: usize) -> bool {
    crate::mixed_graph::underlying_graph(inst.graph()).is_vertex_cover(&clique_hubs(k))
}

/// Independent per-pair draw: an edge with probability `p_edge`, otherwise
/// an arc in a random direction with probability `p_arc`; then up to `k`
/// distinct ordered pairs of distinct vertices as terminals.
pub fn gen_random(seed: u64, n: usize, p_edge: f64, p_arc: f64, k: usize) -> Result<Instance> {
    if !(p_edge >= 0.0 && p_arc >= 0.0 && p_edge + p_arc <= 1.0) {
        return Err(Error::Contract(format!(
            "need p_edge, p_arc >= 0 with sum at most 1, got {p_edge} and {p_arc}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let x: f64 = rng.gen();
            if x < p_edge {
                edges.push((u, v));
            } else if x < p_edge + p_arc {
                arcs.push(if rng.gen() { (u, v) } else { (v, u) });
            }
        }
    }
    let terminals = random_pairs(&mut rng, n, k);
    Ok(Instance::new(MixedGraph::new(n, edges, arcs)?, terminals)?)
}

fn random_pairs(rng: &mut impl Rng, n: usize, k: usize) -> Vec<TerminalPair> {
    let all: Vec<TerminalPair> = (0..n)
        .flat_map(|s| {
            (0..n)
                .filter(move |&t| t != s)
                .map(move |t| TerminalPair::new(s, t))
        })
        .collect();
    all.choose_multiple(rng, k).copied().collect()
}

/// Size limits for [`gen_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Profile {
    pub max_n: usize,
    pub max_edges: usize,
    pub max_arcs: usize,
    pub max_k: usize,
}

impl Default for Profile {
    fn default() -> Self {
        Self {
            max_n: 12,
            max_edges: 10,
            max_arcs: 15,
            max_k: 4,
        }
    }
}

/// A random instance within `profile`.
///
/// Half of the seeds place edges and arcs on random vertex pairs, with arcs
/// mostly following a hidden vertex order. The other half build the edges as
/// random trees on a partition of the vertices and run arcs between the
/// trees, again mostly along an order; the edges then stay bridges and
/// preprocessing leaves more to decide. Most terminal pairs are drawn among
/// pairs connected when every edge may be used both ways.
pub fn gen_profile(seed: u64, profile: &Profile) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range((profile.max_n / 2).max(2)..=profile.max_n.max(2));
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(&mut rng);
    let (edges, arcs) = if rng.gen() {
        scattered_links(&mut rng, n, profile, &rank)
    } else {
        forest_links(&mut rng, n, profile, &rank)
    };
    let g = MixedGraph::new(n, edges, arcs).expect("distinct slots");

    let bi = g.bidirected();
    let connected: Vec<TerminalPair> = (0..n)
        .flat_map(|s| {
            let seen = crate::graph_kit::reachable(&bi, s);
            (0..n)
                .filter(move |&t| t != s && seen[t])
                .map(move |t| TerminalPair::new(s, t))
        })
        .collect();
    let k = rng.gen_range(1..=profile.max_k.max(1));
    let mut terminals = Vec::new();
    for _ in 0..k {
        if !connected.is_empty() && rng.gen_bool(0.85) {
            terminals.push(*connected.choose(&mut rng).expect("non-empty"));
        } else {
            terminals.extend(random_pairs(&mut rng, n, 1));
        }
    }
    Instance::new(g, terminals).expect("terminals in range")
}

type Links = (Vec<(VertexId, VertexId)>, Vec<(VertexId, VertexId)>);

/// Orients `{u, v}` along `rank`, against it with probability 0.1.
fn ranked_arc(
    rng: &mut impl Rng,
    rank: &[usize],
    u: VertexId,
    v: VertexId,
) -> (VertexId, VertexId) {
    if (rank[u] < rank[v]) != rng.gen_bool(0.1) {
        (u, v)
    } else {
        (v, u)
    }
}

fn scattered_links(rng: &mut impl Rng, n: usize, profile: &Profile, rank: &[usize]) -> Links {
    let mut slots: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    slots.shuffle(rng);
    let max_e = profile.max_edges.min(slots.len());
    let e = rng.gen_range(max_e / 2..=max_e);
    let max_a = profile.max_arcs.min(slots.len() - e);
    let a = rng.gen_range(max_a / 2..=max_a);
    let arcs = slots[e..e + a]
        .iter()
        .map(|&(u, v)| ranked_arc(rng, rank, u, v))
        .collect();
    (slots[..e].to_vec(), arcs)
}

fn forest_links(rng: &mut impl Rng, n: usize, profile: &Profile, rank: &[usize]) -> Links {
    let groups = rng.gen_range(1..=(n / 2).max(1));
    let group: Vec<usize> = (0..n).map(|_| rng.gen_range(0..groups)).collect();
    let mut edges = Vec::new();
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    // attach each vertex to a random earlier vertex of its group
    for (i, &v) in order.iter().enumerate() {
        let earlier: Vec<VertexId> = order[..i]
            .iter()
            .copied()
            .filter(|&u| group[u] == group[v])
            .collect();
        if let Some(&u) = earlier.choose(rng) {
            if edges.len() < profile.max_edges {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    let mut slots: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| group[u] != group[v])
        .collect();
    slots.shuffle(rng);
    let max_a = profile.max_arcs.min(slots.len());
    let a = rng.gen_range(max_a / 2..=max_a);
    // ordering by group keeps every tree its own strong component, up to the
    // occasional reversed arc
    let group_rank: Vec<usize> = (0..n).map(|v| group[v] * n + rank[v]).collect();
    let arcs = slots[..a]
        .iter()
        .map(|&(u, v)| ranked_arc(rng, &group_rank, u, v))
        .collect();
    (edges, arcs)
}

/// Random instance where no vertex is in two terminal pairs, built so that
/// many terminals share their neighborhood: up to three hub vertices, and
/// every other vertex copies one of two random attachment patterns to the
/// hubs. Every other seed uses a single pattern and as many pairs as fit,
/// which over-populates one pair type. Patterns use at most two edges, so
/// the output has at most `2 max_n + 3` edges.
pub fn gen_disjoint_terminals(seed: u64, max_n: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense = seed % 2 == 1;
    let n = if dense {
        max_n.max(4)
    } else {
        rng.gen_range(4..=max_n.max(4))
    };
    let hubs = rng.gen_range(1..=3.min(n - 2));
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for u in 0..hubs {
        for v in u + 1..hubs {
            match rng.gen_range(0..3) {
                0 => edges.push((u, v)),
                1 => arcs.push((u, v)),
                _ => {}
            }
        }
    }
    // per hub: 0 none, 1 edge, 2 arc into the hub, 3 arc out of it
    let patterns: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let mut used = 0;
            (0..hubs)
                .map(|_| {
                    let kind = if used < 2 {
                        rng.gen_range(0..4)
                    } else {
                        [0, 2, 3][rng.gen_range(0..3)]
                    };
                    used += usize::from(kind == 1);
                    kind
                })
                .collect()
        })
        .collect();
    let leaves: Vec<VertexId> = (hubs..n).collect();
    for &v in &leaves {
        let which = usize::from(!dense && rng.gen_bool(0.3));
        for (h, &kind) in patterns[which].iter().enumerate() {
            match kind {
                1 => edges.push((h, v)),
                2 => arcs.push((v, h)),
                3 => arcs.push((h, v)),
                _ => {}
            }
        }
    }
    let mut pool = leaves;
    pool.shuffle(&mut rng);
    let k = if dense {
        pool.len() / 2
    } else {
        rng.gen_range(1..=pool.len() / 2)
    };
    let terminals = pool
        .chunks_exact(2)
        .take(k)
        .map(|c| TerminalPair::new(c[0], c[1]));
    let g = MixedGraph::new(n, edges, arcs).expect("distinct slots");
    Instance::new(g, terminals).expect("terminals in range")
}
