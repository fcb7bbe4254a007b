//! Mixed graphs, Steiner Orientation instances and orientation witnesses.
//!
//! Vertices are dense `0..n` internally and `1..=n` in files. All types are
//! plain immutable data once constructed.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph_kit::{reachable, Digraph, UndirectedGraph};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(VertexId, VertexId),
    #[error("edge {{{0}, {1}}} parallel to an arc")]
    EdgeArcParallel(VertexId, VertexId),
}

/// A mixed graph with undirected edges and arcs.
///
/// Edges are stored normalized (`u < v`) and both lists are kept sorted, which
/// makes edge indices stable and serialization canonical. Anti-parallel arc
/// pairs are accepted; they only ever exist before cycle contraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MixedGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    arcs: Vec<(VertexId, VertexId)>,
}

impl MixedGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        arcs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let check = |u: usize, v: usize| -> Result<(), GraphError> {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            Ok(())
        };
        let mut es = Vec::new();
        for (u, v) in edges {
            check(u, v)?;
            es.push((u.min(v), u.max(v)));
        }
        let mut arcs_v = Vec::new();
        for (u, v) in arcs {
            check(u, v)?;
            arcs_v.push((u, v));
        }
        es.sort_unstable();
        if let Some(w) = es.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        arcs_v.sort_unstable();
        if let Some(w) = arcs_v.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateArc(w[0].0, w[0].1));
        }
        for &(u, v) in &arcs_v {
            if es.binary_search(&(u.min(v), u.max(v))).is_ok() {
                return Err(GraphError::EdgeArcParallel(u.min(v), u.max(v)));
            }
        }
        Ok(Self {
            n,
            edges: es,
            arcs: arcs_v,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            arcs: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn adjacency(&self) -> Adjacency {
        let mut adj = Adjacency {
            undirected: vec![Vec::new(); self.n],
            out_arcs: vec![Vec::new(); self.n],
            in_arcs: vec![Vec::new(); self.n],
        };
        for &(u, v) in &self.edges {
            adj.undirected[u].push(v);
            adj.undirected[v].push(u);
        }
        for &(u, v) in &self.arcs {
            adj.out_arcs[u].push(v);
            adj.in_arcs[v].push(u);
        }
        for list in adj
            .undirected
            .iter_mut()
            .chain(adj.out_arcs.iter_mut())
            .chain(adj.in_arcs.iter_mut())
        {
            list.sort_unstable();
        }
        adj
    }

    /// Digraph over the arcs only.
    pub fn arc_digraph(&self) -> Digraph {
        Digraph::from_arcs(self.n, self.arcs.iter().copied())
    }

    /// Every edge replaced by two anti-parallel arcs, plus all arcs.
    pub fn bidirected(&self) -> Digraph {
        Digraph::from_arcs(
            self.n,
            self.arcs
                .iter()
                .copied()
                .chain(self.edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)])),
        )
    }

    /// Sub-graph induced by `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[VertexId]) -> MixedGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let map = |&(u, v): &(usize, usize)| {
            let (a, b) = (index[u], index[v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b))
        };
        MixedGraph::new(
            keep.len(),
            self.edges.iter().filter_map(map),
            self.arcs.iter().filter_map(map),
        )
        .expect("induced subgraph of a valid graph is valid")
    }
}

/// Sorted neighbor lists split by connection kind.
#[derive(Debug, Clone)]
pub struct Adjacency {
    pub undirected: Vec<Vec<VertexId>>,
    pub out_arcs: Vec<Vec<VertexId>>,
    pub in_arcs: Vec<Vec<VertexId>>,
}

impl Adjacency {
    /// Degree in the underlying (multi)graph.
    pub fn mixed_degree(&self, v: VertexId) -> usize {
        self.undirected[v].len() + self.out_arcs[v].len() + self.in_arcs[v].len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TerminalPair {
    pub s: VertexId,
    pub t: VertexId,
}

impl TerminalPair {
    pub fn new(s: VertexId, t: VertexId) -> Self {
        Self { s, t }
    }
}

impl From<(VertexId, VertexId)> for TerminalPair {
    fn from((s, t): (VertexId, VertexId)) -> Self {
        Self { s, t }
    }
}

/// A mixed graph together with its terminal pairs.
///
/// Terminal pairs are kept sorted and deduplicated: the answer does not depend
/// on their order or multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Instance {
    graph: MixedGraph,
    terminals: Vec<TerminalPair>,
}

impl Instance {
    pub fn new(
        graph: MixedGraph,
        terminals: impl IntoIterator<Item = TerminalPair>,
    ) -> Result<Self, GraphError> {
        let n = graph.n();
        let mut terminals: Vec<TerminalPair> = terminals.into_iter().collect();
        for p in &terminals {
            for x in [p.s, p.t] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
        }
        terminals.sort_unstable();
        terminals.dedup();
        Ok(Self { graph, terminals })
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.graph
    }

    pub fn terminals(&self) -> &[TerminalPair] {
        &self.terminals
    }

    pub fn k(&self) -> usize {
        self.terminals.len()
    }

    /// Same terminals on a different graph over the same vertex set.
    pub fn with_graph(&self, graph: MixedGraph) -> Instance {
        assert_eq!(graph.n(), self.graph.n(), "vertex count must not change");
        Instance {
            graph,
            terminals: self.terminals.clone(),
        }
    }

    /// Same graph, different terminal list.
    pub fn with_terminals(&self, terminals: impl IntoIterator<Item = TerminalPair>) -> Instance {
        Instance::new(self.graph.clone(), terminals).expect("terminals must be in range")
    }
}

/// A direction for every undirected edge of a graph.
///
/// `dirs()[i]` is the oriented version of `graph.edges()[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Orientation {
    dirs: Vec<(VertexId, VertexId)>,
}

impl Orientation {
    /// Builds an orientation from directed pairs given in any order.
    pub fn from_pairs(
        graph: &MixedGraph,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> crate::Result<Self> {
        let mut slots: Vec<Option<(VertexId, VertexId)>> = vec![None; graph.edges().len()];
        for (u, v) in pairs {
            let Some(i) = graph.edge_index(u, v) else {
                return Err(crate::Error::Contract(format!(
                    "orientation names ({u}, {v}) which is not an undirected edge"
                )));
            };
            if slots[i].replace((u, v)).is_some() {
                return Err(crate::Error::Contract(format!(
                    "edge {{{u}, {v}}} oriented twice"
                )));
            }
        }
        let dirs = slots
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                d.ok_or_else(|| {
                    let (u, v) = graph.edges()[i];
                    crate::Error::Contract(format!("edge {{{u}, {v}}} left unoriented"))
                })
            })
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(Self { dirs })
    }

    /// `forward[i]` orients `edges()[i]` from its lower to its higher endpoint.
    pub fn from_flags(graph: &MixedGraph, forward: &[bool]) -> Self {
        assert_eq!(forward.len(), graph.edges().len());
        Self {
            dirs: graph
                .edges()
                .iter()
                .zip(forward)
                .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
                .collect(),
        }
    }

    /// Every edge from its lower to its higher endpoint.
    pub fn toward_higher(graph: &MixedGraph) -> Self {
        Self {
            dirs: graph.edges().to_vec(),
        }
    }

    pub fn dirs(&self) -> &[(VertexId, VertexId)] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    fn matches(&self, graph: &MixedGraph) -> bool {
        self.dirs.len() == graph.edges().len()
            && self
                .dirs
                .iter()
                .zip(graph.edges())
                .all(|(&(a, b), &e)| (a.min(b), a.max(b)) == e)
    }

    /// `o u v` lines, 1-based.
    pub fn to_witness_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.dirs {
            let _ = writeln!(out, "o {} {}", u + 1, v + 1);
        }
        out
    }

    /// Reads `o` lines; the set of oriented pairs must equal the edge set.
    pub fn parse_witness(text: &str, graph: &MixedGraph) -> crate::Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || ParseError::new(lineno + 1, ParseErrorKind::Malformed(line.to_string()));
            if toks.len() != 3 || toks[0] != "o" {
                return Err(bad().into());
            }
            let u = parse_vertex(toks[1], graph.n(), lineno + 1)?;
            let v = parse_vertex(toks[2], graph.n(), lineno + 1)?;
            pairs.push((u, v));
        }
        Self::from_pairs(graph, pairs)
    }
}

/// Outcome of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(Orientation),
    No,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn witness(&self) -> Option<&Orientation> {
        match self {
            Verdict::Yes(o) => Some(o),
            Verdict::No => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        if self.is_yes() {
            "YES"
        } else {
            "NO"
        }
    }
}

/// Digraph `G_o`: the arcs plus every edge in its chosen direction.
pub fn oriented_digraph(graph: &MixedGraph, o: &Orientation) -> Digraph {
    Digraph::from_arcs(
        graph.n(),
        graph.arcs().iter().copied().chain(o.dirs().iter().copied()),
    )
}

/// True iff every terminal pair is connected by a directed path in `G_o`.
pub fn check_orientation(inst: &Instance, o: &Orientation) -> crate::Result<bool> {
    if !o.matches(inst.graph()) {
        return Err(crate::Error::Contract(
            "orientation domain differs from the instance's edge set".into(),
        ));
    }
    let d = oriented_digraph(inst.graph(), o);
    let mut cache: HashMap<VertexId, Vec<bool>> = HashMap::new();
    Ok(inst.terminals().iter().all(|p| {
        cache
            .entry(p.s)
            .or_insert_with(|| reachable(&d, p.s))
            .get(p.t)
            .copied()
            .unwrap_or(false)
    }))
}

/// The underlying simple undirected graph.
pub fn underlying_graph(g: &MixedGraph) -> UndirectedGraph {
    let set: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .chain(g.arcs())
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    UndirectedGraph::new(g.n(), set)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    DuplicateHeader,
    MalformedHeader,
    Malformed(String),
    VertexOutOfRange(String),
    SelfLoop,
    DuplicateEdge,
    DuplicateArc,
    EdgeArcParallel,
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing `p so` header"),
            ParseErrorKind::DuplicateHeader => write!(f, "duplicate header"),
            ParseErrorKind::MalformedHeader => write!(f, "malformed header"),
            ParseErrorKind::Malformed(l) => write!(f, "malformed line `{l}`"),
            ParseErrorKind::VertexOutOfRange(v) => write!(f, "vertex `{v}` out of range"),
            ParseErrorKind::SelfLoop => write!(f, "self-loop"),
            ParseErrorKind::DuplicateEdge => write!(f, "duplicate edge"),
            ParseErrorKind::DuplicateArc => write!(f, "duplicate arc"),
            ParseErrorKind::EdgeArcParallel => write!(f, "edge parallel to an arc"),
            ParseErrorKind::CountMismatch {
                what,
                declared,
                found,
            } => write!(f, "header declares {declared} {what} but found {found}"),
        }
    }
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<VertexId, ParseError> {
    match tok.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
        _ => Err(ParseError::new(
            line,
            ParseErrorKind::VertexOutOfRange(tok.to_string()),
        )),
    }
}

/// Parses the `p so n |E| |A| k` text format.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<[usize; 4]> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut terminals = Vec::new();
    let mut seen_edges = BTreeSet::new();
    let mut seen_arcs = BTreeSet::new();
    let mut seen_directed = BTreeSet::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(lineno, ParseErrorKind::DuplicateHeader));
                }
                if toks.len() != 6 || toks[1] != "so" {
                    return Err(ParseError::new(lineno, ParseErrorKind::MalformedHeader));
                }
                let mut vals = [0usize; 4];
                for (slot, tok) in vals.iter_mut().zip(&toks[2..]) {
                    *slot = tok
                        .parse()
                        .map_err(|_| ParseError::new(lineno, ParseErrorKind::MalformedHeader))?;
                }
                header = Some(vals);
            }
            kind @ ("e" | "a" | "t") => {
                let Some([n, ..]) = header else {
                    return Err(ParseError::new(lineno, ParseErrorKind::MissingHeader));
                };
                if toks.len() != 3 {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::Malformed(line.to_string()),
                    ));
                }
                let u = parse_vertex(toks[1], n, lineno)?;
                let v = parse_vertex(toks[2], n, lineno)?;
                let key = (u.min(v), u.max(v));
                match kind {
                    "e" => {
                        if u == v {
                            return Err(ParseError::new(lineno, ParseErrorKind::SelfLoop));
                        }
                        if seen_arcs.contains(&key) {
                            return Err(ParseError::new(lineno, ParseErrorKind::EdgeArcParallel));
                        }
                        if !seen_edges.insert(key) {
                            return Err(ParseError::new(lineno, ParseErrorKind::DuplicateEdge));
                        }
                        edges.push((u, v));
                    }
                    "a" => {
                        if u == v {
                            return Err(ParseError::new(lineno, ParseErrorKind::SelfLoop));
                        }
                        if seen_edges.contains(&key) {
                            return Err(ParseError::new(lineno, ParseErrorKind::EdgeArcParallel));
                        }
                        if !seen_directed.insert((u, v)) {
                            return Err(ParseError::new(lineno, ParseErrorKind::DuplicateArc));
                        }
                        seen_arcs.insert(key);
                        arcs.push((u, v));
                    }
                    _ => terminals.push(TerminalPair::new(u, v)),
                }
            }
            _ => {
                return Err(ParseError::new(
                    lineno,
                    ParseErrorKind::Malformed(line.to_string()),
                ))
            }
        }
    }

    let Some([n, ne, na, k]) = header else {
        return Err(ParseError::new(
            last_line.max(1),
            ParseErrorKind::MissingHeader,
        ));
    };
    for (what, declared, found) in [
        ("edges", ne, edges.len()),
        ("arcs", na, arcs.len()),
        ("terminal pairs", k, terminals.len()),
    ] {
        if declared != found {
            return Err(ParseError::new(
                last_line,
                ParseErrorKind::CountMismatch {
                    what,
                    declared,
                    found,
                },
            ));
        }
    }
    let graph = MixedGraph::new(n, edges, arcs).expect("validated while parsing");
    Ok(Instance::new(graph, terminals).expect("validated while parsing"))
}

/// Canonical text form: header, then sorted edges, arcs and terminal pairs.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p so {} {} {} {}",
        g.n(),
        g.edges().len(),
        g.arcs().len(),
        inst.k()
    );
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for &(u, v) in g.arcs() {
        let _ = writeln!(out, "a {} {}", u + 1, v + 1);
    }
    for p in inst.terminals() {
        let _ = writeln!(out, "t {} {}", p.s + 1, p.t + 1);
    }
    out
}
