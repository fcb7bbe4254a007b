//! Polynomial algorithm for restricted instances.
//!
//! In a restricted mixed acyclic instance the undirected edges form vertex
//! disjoint paths whose interior vertices carry no arcs. After degree-one
//! elimination each path endpoint has exactly one arc, so a path can be
//! entered or left only through its endpoints and each terminal sitting on a
//! path just has to pick which endpoint it uses. That choice is a 2-SAT
//! variable.

use std::collections::HashMap;

use crate::graph_kit::{reachable, solve_2sat, Digraph, Literal, TwoSatFormula};
use crate::mixed_graph::{check_orientation, Instance, MixedGraph, Orientation, Verdict, VertexId};
use crate::preprocess::{eliminate_degree_one, is_mixed_acyclic, EarlyVerdict};
use crate::{Error, Result};

/// `(path index, position on the path)` of a vertex.
type PathPos = Option<(usize, usize)>;

/// Every vertex of mixed degree at least three has no undirected edge.
pub fn is_restricted(g: &MixedGraph) -> bool {
    let adj = g.adjacency();
    (0..g.n()).all(|v| adj.undirected[v].is_empty() || adj.mixed_degree(v) <= 2)
}

/// Decides a restricted, mixed acyclic instance.
pub fn solve_restricted(inst: &Instance) -> Result<Verdict> {
    if !is_mixed_acyclic(inst.graph()) {
        return Err(Error::Contract(
            "restricted solver needs a mixed acyclic instance".into(),
        ));
    }
    if !is_restricted(inst.graph()) {
        return Err(Error::Contract(
            "restricted solver needs every vertex of mixed degree >= 3 to have no undirected edge"
                .into(),
        ));
    }
    let report = eliminate_degree_one(inst);
    let red = &report.instance;
    match report.verdict {
        EarlyVerdict::No => return Ok(Verdict::No),
        EarlyVerdict::Yes => return Ok(Verdict::Yes(report.trivial_witness(inst.graph()))),
        EarlyVerdict::Undecided => {}
    }
    let Some(o) = Core::new(red).run()? else {
        return Ok(Verdict::No);
    };
    if !check_orientation(red, &o)? {
        return Err(Error::Invariant(
            "restricted solver built an invalid witness".into(),
        ));
    }
    Ok(Verdict::Yes(report.lift(inst.graph(), &o)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    In,
    Out,
}

struct Path {
    verts: Vec<VertexId>,
    /// `edges[i]` joins `verts[i]` and `verts[i + 1]`.
    edges: Vec<usize>,
    left: End,
    right: End,
}

struct Core<'a> {
    inst: &'a Instance,
    forced: Vec<Option<(VertexId, VertexId)>>,
    reach: HashMap<VertexId, Vec<bool>>,
}

impl<'a> Core<'a> {
    fn new(inst: &'a Instance) -> Self {
        Self {
            inst,
            forced: vec![None; inst.graph().edges().len()],
            reach: HashMap::new(),
        }
    }

    fn g(&self) -> &MixedGraph {
        self.inst.graph()
    }

    /// Orients edge `i` as `(a, b)`; false on a conflicting earlier choice.
    fn force(&mut self, i: usize, a: VertexId, b: VertexId) -> bool {
        match self.forced[i] {
            Some(d) => d == (a, b),
            None => {
                self.forced[i] = Some((a, b));
                true
            }
        }
    }

    /// Orients the path edges between positions `from` and `to` toward `to`.
    fn orient_segment(&mut self, p: &Path, from: usize, to: usize) -> bool {
        let mut ok = true;
        if from < to {
            for i in from..to {
                ok &= self.force(p.edges[i], p.verts[i], p.verts[i + 1]);
            }
        } else {
            for i in to..from {
                ok &= self.force(p.edges[i], p.verts[i + 1], p.verts[i]);
            }
        }
        ok
    }

    /// Maximal paths of still-unforced edges, with the position of every vertex.
    fn paths(&self) -> Result<(Vec<Path>, Vec<PathPos>)> {
        let g = self.g();
        let n = g.n();
        let mut nbrs: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if self.forced[i].is_none() {
                nbrs[u].push((v, i));
                nbrs[v].push((u, i));
            }
        }
        // arcs and forced edges, as seen from each vertex
        let mut ins = vec![0usize; n];
        let mut outs = vec![0usize; n];
        for (u, v) in g
            .arcs()
            .iter()
            .copied()
            .chain(self.forced.iter().flatten().copied())
        {
            outs[u] += 1;
            ins[v] += 1;
        }
        let end_kind = |v: VertexId| match (ins[v], outs[v]) {
            (1, 0) => Ok(End::In),
            (0, 1) => Ok(End::Out),
            _ => Err(Error::Invariant(format!(
                "path endpoint {v} should carry exactly one arc after degree-one elimination"
            ))),
        };

        let mut on_path = vec![None; n];
        let mut paths = Vec::new();
        for start in 0..n {
            if nbrs[start].len() != 1 || on_path[start].is_some() {
                continue;
            }
            let mut verts = vec![start];
            let mut edges = Vec::new();
            let (mut prev, mut cur) = (usize::MAX, start);
            loop {
                let next = nbrs[cur].iter().find(|&&(w, _)| w != prev).copied();
                let Some((w, e)) = next else { break };
                if nbrs[cur].len() > 2 {
                    return Err(Error::Contract(
                        "undirected components must be paths".into(),
                    ));
                }
                verts.push(w);
                edges.push(e);
                prev = cur;
                cur = w;
                if nbrs[cur].len() == 1 {
                    break;
                }
            }
            let id = paths.len();
            for (pos, &v) in verts.iter().enumerate() {
                on_path[v] = Some((id, pos));
            }
            let (l, r) = (verts[0], *verts.last().unwrap());
            paths.push(Path {
                left: end_kind(l)?,
                right: end_kind(r)?,
                verts,
                edges,
            });
        }
        // the starting endpoint is the smaller one, so `verts[0]` is the left end
        Ok((paths, on_path))
    }

    fn reaches(&mut self, d: &Digraph, from: VertexId, to: VertexId) -> bool {
        self.reach.entry(from).or_insert_with(|| reachable(d, from))[to]
    }

    fn run(mut self) -> Result<Option<Orientation>> {
        let pairs = self.inst.terminals().to_vec();
        let mut open = vec![true; pairs.len()];

        // Two terminals on one path: the subpath between them is forced.
        let (paths, on_path) = self.paths()?;
        for (i, p) in pairs.iter().enumerate() {
            if let (Some((a, ps)), Some((b, pt))) = (on_path[p.s], on_path[p.t]) {
                if a == b {
                    if !self.orient_segment(&paths[a], ps, pt) {
                        return Ok(None);
                    }
                    open[i] = false;
                }
            }
        }

        // A path entered at one end and left at the other is oriented along.
        let (paths, _) = self.paths()?;
        for p in &paths {
            let last = p.verts.len() - 1;
            match (p.left, p.right) {
                (End::In, End::Out) => {
                    self.orient_segment(p, 0, last);
                }
                (End::Out, End::In) => {
                    self.orient_segment(p, last, 0);
                }
                _ => {}
            }
        }

        let (paths, on_path) = self.paths()?;
        let g = self.g();
        let d = Digraph::from_arcs(
            g.n(),
            g.arcs()
                .iter()
                .copied()
                .chain(self.forced.iter().flatten().copied()),
        );

        // One variable per terminal occurrence on a path; true = uses the left end.
        let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); paths.len()];
        let mut sources: Vec<(usize, usize, usize)> = Vec::new(); // (var, path, pos)
        let mut sinks: Vec<(usize, usize, usize)> = Vec::new();
        let mut unary: Vec<Literal> = Vec::new();
        let mut binary: Vec<(Literal, Literal)> = Vec::new();
        let mut vars = 0;
        for (i, p) in pairs.iter().enumerate() {
            if !open[i] {
                continue;
            }
            let s_on = on_path[p.s];
            let t_on = on_path[p.t];
            // A source can only leave a path through an out-arc, a sink only
            // be entered through an in-arc.
            if let Some((a, _)) = s_on {
                if paths[a].left != End::Out {
                    return Ok(None);
                }
            }
            if let Some((b, _)) = t_on {
                if paths[b].left != End::In {
                    return Ok(None);
                }
            }
            match (s_on, t_on) {
                (None, None) => {
                    if !self.reaches(&d, p.s, p.t) {
                        return Ok(None);
                    }
                }
                (Some((a, ps)), None) => {
                    let x = vars;
                    vars += 1;
                    occurrences[a].push((ps, x));
                    sources.push((x, a, ps));
                    let (l, r) = ends(&paths[a]);
                    if !self.reaches(&d, l, p.t) {
                        unary.push(Literal::neg(x));
                    }
                    if !self.reaches(&d, r, p.t) {
                        unary.push(Literal::pos(x));
                    }
                }
                (None, Some((b, pt))) => {
                    let y = vars;
                    vars += 1;
                    occurrences[b].push((pt, y));
                    sinks.push((y, b, pt));
                    let (l, r) = ends(&paths[b]);
                    if !self.reaches(&d, p.s, l) {
                        unary.push(Literal::neg(y));
                    }
                    if !self.reaches(&d, p.s, r) {
                        unary.push(Literal::pos(y));
                    }
                }
                (Some((a, ps)), Some((b, pt))) => {
                    let (x, y) = (vars, vars + 1);
                    vars += 2;
                    occurrences[a].push((ps, x));
                    occurrences[b].push((pt, y));
                    sources.push((x, a, ps));
                    sinks.push((y, b, pt));
                    let (la, ra) = ends(&paths[a]);
                    let (lb, rb) = ends(&paths[b]);
                    for (from, xs) in [(la, true), (ra, false)] {
                        for (to, yt) in [(lb, true), (rb, false)] {
                            if !self.reaches(&d, from, to) {
                                binary.push((
                                    Literal {
                                        var: x,
                                        positive: !xs,
                                    },
                                    Literal {
                                        var: y,
                                        positive: !yt,
                                    },
                                ));
                            }
                        }
                    }
                }
            }
        }

        let mut f = TwoSatFormula::new(vars);
        for l in unary {
            f.add_unit(l);
        }
        for (a, b) in binary {
            f.add_clause(a, b);
        }
        // A terminal strictly left of another cannot use the right end while
        // the other uses the left end: the edges between them would clash.
        for occ in &occurrences {
            for &(p1, v1) in occ {
                for &(p2, v2) in occ {
                    if p1 < p2 {
                        f.add_clause(Literal::pos(v1), Literal::neg(v2));
                    }
                }
            }
        }
        let Some(assign) = solve_2sat(&f) else {
            return Ok(None);
        };

        for &(x, a, pos) in &sources {
            let last = paths[a].verts.len() - 1;
            let target = if assign[x] { 0 } else { last };
            self.orient_segment(&paths[a], pos, target);
        }
        for &(y, b, pos) in &sinks {
            let last = paths[b].verts.len() - 1;
            let origin = if assign[y] { 0 } else { last };
            self.orient_segment(&paths[b], origin, pos);
        }
        let g = self.g();
        let dirs: Vec<(VertexId, VertexId)> = g
            .edges()
            .iter()
            .zip(&self.forced)
            .map(|(&e, f)| f.unwrap_or(e))
            .collect();
        Ok(Some(Orientation::from_pairs(g, dirs)?))
    }
}

fn ends(p: &Path) -> (VertexId, VertexId) {
    (p.verts[0], *p.verts.last().unwrap())
}
