//! The `steiner` command line front end.
//!
//! Exit codes: 0 for YES or success, 1 for NO, 2 for usage errors, bad input
//! and refusals, 3 for internal invariant violations and cross-validation
//! disagreements.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::generators::{
    gen_cnf_sat, gen_monotone3sat, gen_multicolored_clique, gen_profile, gen_random, CnfFormula,
    MonotoneCnf, MulticoloredGraph, Profile,
};
use crate::graph_kit::vertex_cover_at_most;
use crate::kernel::{kernelize_exp, kernelize_poly, CoverChoice};
use crate::mixed_graph::{
    check_orientation, parse_instance, serialize_instance, underlying_graph, Instance, Verdict,
    VertexId,
};
use crate::preprocess::{preprocess, EarlyVerdict};
use crate::solvers::{
    emit_mso2, min_clique_modulator, solve, solve_brute_capped, Algo, SolveOptions,
    DEFAULT_BRUTE_CAP,
};
use crate::{Error, Result};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable that replaces the default seed.
pub const SEED_ENV: &str = "SO_SEED";

/// Largest modulator and cover for which cross-validation also runs the
/// parameterized solvers.
pub const CROSSVAL_PARAM: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "steiner",
    version,
    about = "Steiner Orientation on mixed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an instance and print a witness orientation on YES.
    Solve(SolveArgs),
    /// Apply cycle contraction and degree-one elimination.
    Preprocess {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the vertex-cover kernel, or the exponential kernel with --exp.
    Kernelize(KernelizeArgs),
    /// Write a generated instance to stdout.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Write the MSO2 facts and formula for an instance.
    EmitMso2 { file: PathBuf },
    /// Compare every solver against brute force on random instances.
    Crossvalidate(CrossvalArgs),
    /// Time solvers on every instance file of a directory, as CSV.
    Bench {
        dir: PathBuf,
        /// Comma-separated algorithms.
        #[arg(long, default_value = "brute,arcs")]
        algos: String,
    },
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value = "auto")]
    algo: Algo,
    /// Clique modulator, 1-based, comma-separated.
    #[arg(long)]
    modulator: Option<String>,
    /// Vertex cover, 1-based, comma-separated.
    #[arg(long)]
    cover: Option<String>,
    /// Print branching statistics as JSON.
    #[arg(long)]
    stats: bool,
    /// Print one JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Most undirected edges brute force accepts.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=62))]
    brute_cap: Option<u64>,
    /// Most middle-vertex combinations the vertex-cover solver accepts.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    xp_cap: Option<u64>,
}

#[derive(Debug, Args)]
struct KernelizeArgs {
    file: PathBuf,
    /// Build the exponential kernel for instances with disjoint terminal pairs.
    #[arg(long)]
    exp: bool,
    /// Vertex cover to use, 1-based, comma-separated.
    #[arg(long, conflicts_with = "cover_mode")]
    cover: Option<String>,
    /// How to find a vertex cover: auto, exact or approx.
    #[arg(long)]
    cover_mode: Option<String>,
    /// Write the kernel here and the JSON sidecar next to it; default: the
    /// kernel to stdout and the sidecar to stderr.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum GenerateKind {
    /// CNF-SAT reduction; one undirected edge per variable.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
    },
    /// Monotone 3-SAT reduction.
    Mono3sat {
        #[arg(long)]
        cnf: PathBuf,
    },
    /// Multicolored clique reduction.
    Clique {
        #[arg(long)]
        clique: PathBuf,
    },
    /// Independent random draw per vertex pair.
    Random {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        pe: f64,
        #[arg(long, default_value_t = 0.3)]
        pa: f64,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Debug, Args)]
struct CrossvalArgs {
    /// First seed; defaults to SO_SEED or 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    count: u64,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 10)]
    max_edges: usize,
    #[arg(long, default_value_t = 15)]
    max_arcs: usize,
    #[arg(long, default_value_t = 4)]
    max_k: usize,
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    brute_cap: usize,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_YES
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Preprocess { file, json } => cmd_preprocess(&file, json, out),
        Command::Kernelize(a) => cmd_kernelize(a, out, err),
        Command::Generate { kind } => cmd_generate(kind, out),
        Command::EmitMso2 { file } => {
            write!(out, "{}", emit_mso2(&read_instance(&file)?)?)?;
            Ok(EXIT_YES)
        }
        Command::Crossvalidate(a) => cmd_crossvalidate(a, out),
        Command::Bench { dir, algos } => cmd_bench(&dir, &algos, out, err),
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_instance(&text)?)
}

/// `"1,3,4"` to 0-based ids.
fn parse_id_list(s: &str) -> Result<Vec<VertexId>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Error::Contract(format!("`{t}` is not a 1-based vertex id"))),
        })
        .collect()
}

fn default_seed() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Contract(format!("{SEED_ENV}=`{s}` is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn witness_pairs(v: &Verdict) -> Option<Vec<[VertexId; 2]>> {
    v.witness()
        .map(|o| o.dirs().iter().map(|&(a, b)| [a + 1, b + 1]).collect())
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(&a.file)?;
    let opts = SolveOptions {
        modulator: a.modulator.as_deref().map(parse_id_list).transpose()?,
        cover: a.cover.as_deref().map(parse_id_list).transpose()?,
        brute_cap: a.brute_cap.map(|c| c as usize),
        middle_cap: a.xp_cap.map(u128::from),
    };
    let solved = solve(&inst, a.algo, &opts)?;
    if let Some(o) = solved.verdict.witness() {
        // solve() checks too; the CLI never prints an unchecked witness
        if !check_orientation(&inst, o)? {
            return Err(Error::Invariant("witness failed re-validation".into()));
        }
    }
    if a.json {
        let mut doc = json!({
            "verdict": solved.verdict.as_str(),
            "algo": solved.algo.name(),
            "witness": witness_pairs(&solved.verdict),
        });
        if a.stats {
            doc["stats"] = json!(solved.stats);
        }
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "c {} ({})", solved.verdict.as_str(), solved.algo)?;
        if let Some(o) = solved.verdict.witness() {
            write!(out, "{}", o.to_witness_text())?;
        }
        if a.stats {
            writeln!(out, "{}", json!(solved.stats))?;
        }
    }
    Ok(if solved.verdict.is_yes() {
        EXIT_YES
    } else {
        EXIT_NO
    })
}

fn verdict_name(v: EarlyVerdict) -> &'static str {
    match v {
        EarlyVerdict::Yes => "YES",
        EarlyVerdict::No => "NO",
        EarlyVerdict::Undecided => "UNDECIDED",
    }
}

fn cmd_preprocess(file: &Path, as_json: bool, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(file)?;
    let report = preprocess(&inst);
    let red = &report.instance;
    let text = serialize_instance(red);
    if as_json {
        let map: Vec<Option<VertexId>> = report
            .map
            .as_slice()
            .iter()
            .map(|m| m.map(|v| v + 1))
            .collect();
        let doc = json!({
            "verdict": verdict_name(report.verdict),
            "input": {"n": inst.graph().n(), "edges": inst.graph().edges().len(),
                      "arcs": inst.graph().arcs().len(), "k": inst.k()},
            "output": {"n": red.graph().n(), "edges": red.graph().edges().len(),
                       "arcs": red.graph().arcs().len(), "k": red.k()},
            "removed": report.removed.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "map": map,
            "instance": text,
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "c verdict {}", verdict_name(report.verdict))?;
        writeln!(
            out,
            "c vertices {} -> {}, edges {} -> {}, arcs {} -> {}, pairs {} -> {}, removed {}",
            inst.graph().n(),
            red.graph().n(),
            inst.graph().edges().len(),
            red.graph().edges().len(),
            inst.graph().arcs().len(),
            red.graph().arcs().len(),
            inst.k(),
            red.k(),
            report.removed.len()
        )?;
        write!(out, "{text}")?;
    }
    Ok(EXIT_YES)
}

fn cmd_kernelize(a: KernelizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(&a.file)?;
    let (kernel, sidecar) = if a.exp {
        if a.cover.is_some() || a.cover_mode.is_some() {
            return Err(Error::Contract("--exp picks its own cover".into()));
        }
        let (kernel, report) = kernelize_exp(&inst)?;
        let over = report
            .type_counts
            .values()
            .filter(|&&c| c > crate::kernel::PAIRS_PER_TYPE)
            .count();
        let doc = json!({
            "cover_size": report.cover_size,
            "pair_types": report.type_counts.len(),
            "over_populated_types": over,
            "pairs_before": report.type_counts.values().sum::<usize>(),
            "kept_pairs": report.kept_counts.values().sum::<usize>(),
        });
        (kernel, doc)
    } else {
        let choice = match (&a.cover, a.cover_mode.as_deref()) {
            (Some(c), _) => CoverChoice::Given(parse_id_list(c)?),
            (None, None | Some("auto")) => CoverChoice::Auto,
            (None, Some("exact")) => CoverChoice::Exact,
            (None, Some("approx")) => CoverChoice::Approx,
            (None, Some(other)) => {
                return Err(Error::Contract(format!(
                    "unknown cover mode `{other}`; use auto, exact or approx"
                )))
            }
        };
        let (kernel, ctx) = kernelize_poly(&inst, &choice)?;
        let doc = serde_json::to_value(ctx.summary(&kernel)).expect("summary serializes");
        (kernel, doc)
    };
    let text = serialize_instance(&kernel);
    match a.output {
        Some(path) => {
            std::fs::write(&path, text)?;
            let mut side = path.into_os_string();
            side.push(".json");
            std::fs::write(side, format!("{sidecar}\n"))?;
        }
        None => {
            write!(out, "{text}")?;
            writeln!(err, "{sidecar}")?;
        }
    }
    Ok(EXIT_YES)
}

fn cmd_generate(kind: GenerateKind, out: &mut dyn Write) -> Result<i32> {
    let inst = match kind {
        GenerateKind::Sat { cnf } => {
            let phi = CnfFormula::parse_dimacs(&std::fs::read_to_string(cnf)?)?;
            writeln!(
                out,
                "c CNF-SAT reduction: x_i = 2i-1, not x_i = 2i, then s_j, t_j per clause"
            )?;
            gen_cnf_sat(&phi)
        }
        GenerateKind::Mono3sat { cnf } => {
            let phi = MonotoneCnf::new(CnfFormula::parse_dimacs(&std::fs::read_to_string(cnf)?)?)?;
            writeln!(
                out,
                "c monotone 3-SAT reduction: l = 1, r = 2, then l_i, r_i, then clause gadgets"
            )?;
            gen_monotone3sat(&phi)
        }
        GenerateKind::Clique { clique } => {
            let g = MulticoloredGraph::parse(&std::fs::read_to_string(clique)?)?;
            writeln!(
                out,
                "c multicolored clique reduction: hubs first, then X_i, Y_i per class"
            )?;
            gen_multicolored_clique(&g)
        }
        GenerateKind::Random { seed, n, pe, pa, k } => {
            let seed = match seed {
                Some(s) => s,
                None => default_seed()?,
            };
            writeln!(out, "c random seed {seed} n {n} pe {pe} pa {pa} k {k}")?;
            gen_random(seed, n, pe, pa, k)?
        }
    };
    write!(out, "{}", serialize_instance(&inst))?;
    Ok(EXIT_YES)
}

/// One solver run inside a cross-validation record.
#[derive(Debug, Clone, Serialize)]
pub struct AlgoRun {
    pub algo: String,
    pub verdict: String,
    pub micros: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossValRecord {
    pub seed: u64,
    pub n: usize,
    pub edges: usize,
    pub arcs: usize,
    pub k: usize,
    pub runs: Vec<AlgoRun>,
    pub agree: bool,
    /// Set when a solver failed or returned a witness that does not check out.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossValReport {
    pub records: Vec<CrossValRecord>,
    pub checked: usize,
    pub disagreements: usize,
}

fn timed(algo: &str, f: impl FnOnce() -> Result<Verdict>) -> Result<(AlgoRun, Verdict)> {
    let start = Instant::now();
    let v = f()?;
    let run = AlgoRun {
        algo: algo.to_string(),
        verdict: v.as_str().to_string(),
        micros: start.elapsed().as_micros(),
    };
    Ok((run, v))
}

/// Runs brute force, the arcs solver, the kernel followed by brute force, and
/// the clique-modulator and vertex-cover solvers when the preprocessed
/// instance has a modulator or cover of at most [`CROSSVAL_PARAM`] vertices.
pub fn crossvalidate_instance(seed: u64, inst: &Instance, brute_cap: usize) -> CrossValRecord {
    let g = inst.graph();
    let mut rec = CrossValRecord {
        seed,
        n: g.n(),
        edges: g.edges().len(),
        arcs: g.arcs().len(),
        k: inst.k(),
        runs: Vec::new(),
        agree: true,
        error: None,
    };
    if let Err(e) = crossvalidate_into(&mut rec, inst, brute_cap) {
        rec.agree = false;
        rec.error = Some(e.to_string());
        return rec;
    }
    rec.agree = rec.runs.windows(2).all(|w| w[0].verdict == w[1].verdict);
    rec
}

fn crossvalidate_into(rec: &mut CrossValRecord, inst: &Instance, brute_cap: usize) -> Result<()> {
    let opts = SolveOptions {
        brute_cap: Some(brute_cap),
        ..SolveOptions::default()
    };
    let mut witnesses = Vec::new();
    let mut push = |rec: &mut CrossValRecord, (run, v): (AlgoRun, Verdict)| {
        rec.runs.push(run);
        witnesses.push(v);
    };
    push(rec, timed("brute", || solve_brute_capped(inst, brute_cap))?);
    push(
        rec,
        timed("arcs", || Ok(solve(inst, Algo::Arcs, &opts)?.verdict))?,
    );
    let report = preprocess(inst);
    let red = &report.instance;
    if min_clique_modulator(red, CROSSVAL_PARAM).is_ok() {
        push(
            rec,
            timed("dtc", || Ok(solve(inst, Algo::Dtc, &opts)?.verdict))?,
        );
    }
    if vertex_cover_at_most(&underlying_graph(red.graph()), CROSSVAL_PARAM).is_some() {
        push(
            rec,
            timed("vc", || Ok(solve(inst, Algo::Vc, &opts)?.verdict))?,
        );
    }
    push(
        rec,
        timed("kernel+brute", || {
            let (kernel, _) = kernelize_poly(inst, &CoverChoice::Auto)?;
            // the kernel lives on other vertices; only its verdict is comparable
            Ok(match solve_brute_capped(&kernel, brute_cap)? {
                Verdict::Yes(_) => Verdict::Yes(Default::default()),
                Verdict::No => Verdict::No,
            })
        })?,
    );
    for (run, v) in rec.runs.iter().zip(&witnesses) {
        if run.algo == "kernel+brute" {
            continue;
        }
        if let Some(o) = v.witness() {
            if !check_orientation(inst, o)? {
                return Err(Error::Invariant(format!(
                    "{} produced an invalid witness",
                    run.algo
                )));
            }
        }
    }
    Ok(())
}

fn cmd_crossvalidate(a: CrossvalArgs, out: &mut dyn Write) -> Result<i32> {
    if a.max_edges > a.brute_cap {
        return Err(Error::Refused(format!(
            "profile allows {} undirected edges but brute force is capped at {}",
            a.max_edges, a.brute_cap
        )));
    }
    if a.max_n < 2 {
        return Err(Error::Contract("--max-n must be at least 2".into()));
    }
    let first = match a.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let profile = Profile {
        max_n: a.max_n,
        max_edges: a.max_edges,
        max_arcs: a.max_arcs,
        max_k: a.max_k,
    };
    let records: Vec<CrossValRecord> = (first..first.saturating_add(a.count))
        .into_par_iter()
        .map(|seed| crossvalidate_instance(seed, &gen_profile(seed, &profile), a.brute_cap))
        .collect();
    let disagreements = records.iter().filter(|r| !r.agree).count();
    let report = CrossValReport {
        checked: records.len(),
        disagreements,
        records,
    };
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        )?;
    } else {
        writeln!(out, "c seeds {first}..{}", first.saturating_add(a.count))?;
        for r in report.records.iter().filter(|r| !r.agree) {
            writeln!(
                out,
                "DISAGREE {}",
                serde_json::to_string(r).expect("record serializes")
            )?;
        }
        writeln!(
            out,
            "checked {} instances, {} disagreements",
            report.checked, disagreements
        )?;
    }
    Ok(if disagreements == 0 {
        EXIT_YES
    } else {
        EXIT_INTERNAL
    })
}

fn cmd_bench(dir: &Path, algos: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let algos: Vec<Algo> = algos
        .split(',')
        .map(|s| s.trim().parse().map_err(Error::Contract))
        .collect::<Result<_>>()?;
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    writeln!(out, "file,algo,verdict,ms,leaves")?;
    for path in files {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let inst = match read_instance(&path) {
            Ok(i) => i,
            Err(e) => {
                writeln!(err, "warning: skipping {name}: {e}")?;
                continue;
            }
        };
        for &algo in &algos {
            let start = Instant::now();
            let result = solve(&inst, algo, &SolveOptions::default());
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let (verdict, leaves) = match result {
                Ok(s) => (s.verdict.as_str(), s.stats.map(|st| st.leaves.to_string())),
                Err(Error::Refused(_)) => ("REFUSED", None),
                Err(e) => return Err(e),
            };
            writeln!(
                out,
                "{name},{algo},{verdict},{ms:.3},{}",
                leaves.unwrap_or_default()
            )?;
        }
    }
    Ok(EXIT_YES)
}
