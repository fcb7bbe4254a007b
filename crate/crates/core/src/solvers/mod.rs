//! Exact decision procedures for Steiner Orientation.
//!
//! [`solve_brute`] is the reference oracle. The other solvers exploit a small
//! parameter: the number of arcs ([`solve_arcs_fpt`]), a clique modulator
//! ([`solve_dtc`]) or a vertex cover ([`solve_vc_xp`]). [`solve`] wraps them
//! with preprocessing, parameter discovery and witness lifting.

mod arcs;
mod brute;
mod dtc;
mod mso2;
mod restricted;
mod vc;

use std::fmt;
use std::str::FromStr;

pub use arcs::{
    branch_edges, forest_degree_claim, solve_arcs_fpt, solve_arcs_fpt_with, BranchStats,
};
pub use brute::{solve_brute, solve_brute_capped, DEFAULT_BRUTE_CAP};
pub use dtc::{is_clique_modulator, solve_dtc};
pub use mso2::{emit_mso2, MSO2_FORMULA};
pub use restricted::{is_restricted, solve_restricted};
pub use vc::{solve_vc_xp, solve_vc_xp_capped, VC_COVER_CAP, VC_MIDDLE_CAP};

use crate::graph_kit::{vertex_cover_at_most, vertex_cover_exact};
use crate::mixed_graph::{check_orientation, underlying_graph, Instance, Verdict, VertexId};
use crate::preprocess::{preprocess, EarlyVerdict, PreprocessReport};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Brute,
    Arcs,
    Dtc,
    Vc,
    Auto,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::Arcs => "arcs",
            Algo::Dtc => "dtc",
            Algo::Vc => "vc",
            Algo::Auto => "auto",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "brute" => Ok(Algo::Brute),
            "arcs" => Ok(Algo::Arcs),
            "dtc" => Ok(Algo::Dtc),
            "vc" => Ok(Algo::Vc),
            "auto" => Ok(Algo::Auto),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Thresholds of the `auto` policy.
pub const AUTO_BRUTE_EDGES: usize = 14;
pub const AUTO_ARCS: usize = 8;
pub const AUTO_MODULATOR: usize = 6;
pub const AUTO_COVER: usize = 6;

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Clique modulator in input vertex ids; computed when absent.
    pub modulator: Option<Vec<VertexId>>,
    /// Vertex cover in input vertex ids; computed when absent.
    pub cover: Option<Vec<VertexId>>,
    pub brute_cap: Option<usize>,
    /// Limit on the middle-vertex enumeration of the vertex-cover solver.
    pub middle_cap: Option<u128>,
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub verdict: Verdict,
    /// The algorithm that actually ran (never `Auto`).
    pub algo: Algo,
    pub stats: Option<BranchStats>,
}

/// Runs `algo` on `inst` and returns a verdict for `inst` itself.
///
/// `dtc` and `vc` run on the preprocessed instance; a given modulator or
/// cover is carried over through the contraction map. Every YES witness is
/// re-checked before it is returned.
pub fn solve(inst: &Instance, algo: Algo, opts: &SolveOptions) -> Result<Solved> {
    let algo = match algo {
        Algo::Auto => choose_auto(inst, opts)?,
        other => other,
    };
    // caller-supplied sets are checked before preprocessing can decide the instance
    if let Some(m) = &opts.modulator {
        check_ids(inst, m)?;
    }
    if let Some(c) = &opts.cover {
        check_ids(inst, c)?;
        let distinct: std::collections::BTreeSet<_> = c.iter().collect();
        if algo == Algo::Vc && distinct.len() > VC_COVER_CAP {
            return Err(Error::Refused(format!(
                "the XP solver accepts covers of at most {VC_COVER_CAP} vertices, got {}",
                distinct.len()
            )));
        }
    }
    let mut stats = None;
    let verdict = match algo {
        Algo::Brute => solve_brute_capped(inst, opts.brute_cap.unwrap_or(DEFAULT_BRUTE_CAP))?,
        Algo::Arcs => {
            let (v, s) = solve_arcs_fpt(inst)?;
            stats = Some(s);
            v
        }
        Algo::Dtc => on_preprocessed(inst, |report| {
            let red = &report.instance;
            let modulator = match &opts.modulator {
                Some(m) => report.map.map_set(m),
                None => min_clique_modulator(red, usize::MAX)?,
            };
            solve_dtc(red, &modulator)
        })?,
        Algo::Vc => on_preprocessed(inst, |report| {
            let red = &report.instance;
            let cover = match &opts.cover {
                Some(c) => report.map.map_set(c),
                None => vertex_cover_exact(&underlying_graph(red.graph()))?,
            };
            solve_vc_xp_capped(red, &cover, opts.middle_cap.unwrap_or(VC_MIDDLE_CAP))
        })?,
        Algo::Auto => unreachable!("auto resolved above"),
    };
    if let Verdict::Yes(o) = &verdict {
        if !check_orientation(inst, o)? {
            return Err(Error::Invariant(format!(
                "{algo} returned a witness that does not satisfy every pair"
            )));
        }
    }
    Ok(Solved {
        verdict,
        algo,
        stats,
    })
}

fn check_ids(inst: &Instance, vs: &[VertexId]) -> Result<()> {
    match vs.iter().find(|&&v| v >= inst.graph().n()) {
        Some(v) => Err(Error::Contract(format!(
            "vertex {} is out of range (n = {})",
            v + 1,
            inst.graph().n()
        ))),
        None => Ok(()),
    }
}

/// Preprocesses, hands the reduced instance to `f` unless the reductions
/// already decided it, and lifts the witness back.
fn on_preprocessed(
    inst: &Instance,
    f: impl FnOnce(&PreprocessReport) -> Result<Verdict>,
) -> Result<Verdict> {
    let report = preprocess(inst);
    match report.verdict {
        EarlyVerdict::No => Ok(Verdict::No),
        EarlyVerdict::Yes => Ok(Verdict::Yes(report.trivial_witness(inst.graph()))),
        EarlyVerdict::Undecided => Ok(match f(&report)? {
            Verdict::Yes(o) => Verdict::Yes(report.lift(inst.graph(), &o)),
            Verdict::No => Verdict::No,
        }),
    }
}

/// Smallest set whose removal leaves the underlying graph complete, if it has
/// at most `limit` vertices: a minimum vertex cover of the complement.
pub fn min_clique_modulator(inst: &Instance, limit: usize) -> Result<Vec<VertexId>> {
    let complement = underlying_graph(inst.graph()).complement();
    if limit == usize::MAX {
        return vertex_cover_exact(&complement);
    }
    vertex_cover_at_most(&complement, limit)
        .ok_or_else(|| Error::Refused(format!("no clique modulator of size at most {limit}")))
}

/// The `auto` policy: brute force for few edges, then branching on arcs, then
/// the clique-modulator and vertex-cover algorithms.
pub fn choose_auto(inst: &Instance, opts: &SolveOptions) -> Result<Algo> {
    let g = inst.graph();
    if g.edges().len() <= AUTO_BRUTE_EDGES {
        return Ok(Algo::Brute);
    }
    if g.arcs().len() <= AUTO_ARCS {
        return Ok(Algo::Arcs);
    }
    let report = preprocess(inst);
    if report.verdict != EarlyVerdict::Undecided {
        return Ok(Algo::Arcs);
    }
    let red = &report.instance;
    let modulator_small = match &opts.modulator {
        Some(m) => m.len() <= AUTO_MODULATOR,
        None => min_clique_modulator(red, AUTO_MODULATOR).is_ok(),
    };
    if modulator_small {
        return Ok(Algo::Dtc);
    }
    let cover_small = match &opts.cover {
        Some(c) => c.len() <= AUTO_COVER,
        None => vertex_cover_at_most(&underlying_graph(red.graph()), AUTO_COVER).is_some(),
    };
    if cover_small {
        return Ok(Algo::Vc);
    }
    Err(Error::Refused(format!(
        "auto: |E| > {AUTO_BRUTE_EDGES}, |A| > {AUTO_ARCS}, and neither a clique modulator of size \
         {AUTO_MODULATOR} nor a vertex cover of size {AUTO_COVER} exists"
    )))
}
