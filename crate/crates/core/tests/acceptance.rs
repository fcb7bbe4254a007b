//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steiner_core::generators::{
    check_clique_certificate, check_cnf_certificate, check_monotone_certificate, gen_cnf_sat,
    gen_disjoint_terminals, gen_monotone3sat, gen_multicolored_clique, gen_profile, gen_random,
    CnfFormula, MonotoneCnf, MulticoloredGraph, Profile,
};
use steiner_core::graph_kit::{
    max_bipartite_matching, solve_2sat, vertex_cover_at_most, vertex_cover_exact, BipartiteGraph,
    Literal, TwoSatFormula, UndirectedGraph,
};
use steiner_core::kernel::{kernelize_exp, kernelize_poly, CoverChoice, PAIRS_PER_TYPE};
use steiner_core::preprocess::{
    contract_cycles, eliminate_degree_one, is_mixed_acyclic, preprocess, EarlyVerdict,
    PreprocessReport,
};
use steiner_core::solvers::{
    emit_mso2, forest_degree_claim, is_restricted, min_clique_modulator, solve, solve_arcs_fpt,
    solve_arcs_fpt_with, solve_brute, Algo, SolveOptions, MSO2_FORMULA,
};
use steiner_core::{check_orientation, underlying_graph, Instance, Verdict};

const CORPUS_SEEDS: u64 = 500;
const SMALL_PARAM: usize = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Everything recorded while running the shared random corpus.
#[derive(Default)]
struct CorpusRun {
    instances: usize,
    disagreements: Vec<String>,
    runs: usize,
    oracle_mismatch: usize,
    yes_witnesses: usize,
    bad_witnesses: Vec<String>,
    leaf_bound_violations: Vec<String>,
    unrestricted_leaves: usize,
    leaves_seen: u64,
    forest_checked: usize,
    forest_violations: Vec<String>,
    elapsed: Duration,
}

fn witness_ok(run: &mut CorpusRun, inst: &Instance, v: &Verdict, what: &str, seed: u64) {
    if let Some(o) = v.witness() {
        run.yes_witnesses += 1;
        if !check_orientation(inst, o).unwrap_or(false) {
            run.bad_witnesses.push(format!("seed {seed} {what}"));
        }
    }
}

fn run_corpus() -> CorpusRun {
    let mut run = CorpusRun::default();
    let profile = Profile::default();
    let start = Instant::now();
    for seed in 0..CORPUS_SEEDS {
        let inst = gen_profile(seed, &profile);
        run.instances += 1;
        let brute = solve_brute(&inst).expect("profile within the brute-force cap");
        if brute.is_yes() != common::orientation_exists(&inst) {
            run.oracle_mismatch += 1;
        }
        witness_ok(&mut run, &inst, &brute, "brute", seed);
        let compare = |run: &mut CorpusRun, name: &str, v: &Verdict| {
            run.runs += 1;
            if v.is_yes() != brute.is_yes() {
                run.disagreements
                    .push(format!("seed {seed}: {name} says {}", v.as_str()));
            }
        };

        let mut unrestricted = 0;
        let (arcs, stats) = solve_arcs_fpt_with(&inst, &mut |leaf| {
            if !is_restricted(leaf.graph()) {
                unrestricted += 1;
            }
        })
        .expect("arcs solver");
        run.unrestricted_leaves += unrestricted;
        run.leaves_seen += stats.leaves;
        let shift = (6 * inst.graph().arcs().len()).min(127);
        if u128::from(stats.leaves) > 1u128 << shift {
            run.leaf_bound_violations.push(format!(
                "seed {seed}: {} leaves with |A| ={}",
                stats.leaves,
                inst.graph().arcs().len()
            ));
        }
        compare(&mut run, "arcs", &arcs);
        witness_ok(&mut run, &inst, &arcs, "arcs", seed);

        let report = preprocess(&inst);
        let red = &report.instance;
        if report.verdict == EarlyVerdict::Undecided {
            run.forest_checked += 1;
            let (high, bound) = forest_degree_claim(red.graph());
            if high > bound {
                run.forest_violations
                    .push(format!("seed {seed}: {high} > {bound}"));
            }
        }
        if min_clique_modulator(red, SMALL_PARAM).is_ok() {
            let v = solve(&inst, Algo::Dtc, &SolveOptions::default())
                .expect("dtc")
                .verdict;
            compare(&mut run, "dtc", &v);
            witness_ok(&mut run, &inst, &v, "dtc", seed);
        }
        if vertex_cover_at_most(&underlying_graph(red.graph()), SMALL_PARAM).is_some() {
            let v = solve(&inst, Algo::Vc, &SolveOptions::default())
                .expect("vc")
                .verdict;
            compare(&mut run, "vc", &v);
            witness_ok(&mut run, &inst, &v, "vc", seed);
        }
        let (kernel, _) = kernelize_poly(&inst, &CoverChoice::Auto).expect("kernel");
        let v = solve_brute(&kernel).expect("kernel within the brute-force cap");
        compare(&mut run, "kernel+brute", &v);
    }
    run.elapsed = start.elapsed();
    run
}

/// `" (first offender)"`, or nothing when `v` is empty.
fn first(v: &[String]) -> String {
    v.first().map(|e| format!(" ({e})")).unwrap_or_default()
}

fn criterion_1(run: &CorpusRun) -> Outcome {
    let pass = run.disagreements.is_empty()
        && run.oracle_mismatch == 0
        && run.elapsed.as_secs_f64() < 60.0;
    outcome(
        pass,
        format!(
            "{} instances, {} solver runs, {} disagreements{}, brute vs enumeration mismatches {}, {:.1}s",
            run.instances,
            run.runs,
            run.disagreements.len(),
            first(&run.disagreements),
            run.oracle_mismatch,
            run.elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2(run: &CorpusRun) -> Outcome {
    outcome(
        run.bad_witnesses.is_empty(),
        format!(
            "{} YES witnesses checked, {} invalid{}",
            run.yes_witnesses,
            run.bad_witnesses.len(),
            first(&run.bad_witnesses)
        ),
    )
}

fn criterion_3(run: &CorpusRun) -> Outcome {
    outcome(
        run.leaf_bound_violations.is_empty() && run.unrestricted_leaves == 0,
        format!(
            "{} leaves in total, {} runs above 2^(6|A|){}, {} leaves not restricted",
            run.leaves_seen,
            run.leaf_bound_violations.len(),
            first(&run.leaf_bound_violations),
            run.unrestricted_leaves
        ),
    )
}

fn criterion_4(run: &CorpusRun) -> Outcome {
    outcome(
        run.forest_violations.is_empty(),
        format!(
            "{} preprocessed forests checked, {} violations{}",
            run.forest_checked,
            run.forest_violations.len(),
            first(&run.forest_violations)
        ),
    )
}

fn criterion_5() -> Outcome {
    let profile = Profile::default();
    let (mut checked, mut size_fail, mut approx_fail, mut verdict_fail) = (0, 0, 0, 0);
    let mut worst = String::new();
    let mut seed = 10_000u64;
    while checked < 300 {
        let inst = gen_profile(seed, &profile);
        seed += 1;
        if vertex_cover_at_most(&underlying_graph(inst.graph()), 5).is_none() {
            continue;
        }
        checked += 1;
        let (kernel, ctx) = kernelize_poly(&inst, &CoverChoice::Exact).expect("exact kernel");
        let s = ctx.cover.len();
        // |V(G*)| <= |S| + 2k + |S|^2 / 2, doubled to stay in integers
        if 2 * kernel.graph().n() > 2 * s + 4 * inst.k() + s * s {
            size_fail += 1;
            worst = format!(
                " (seed {}: |V| = {}, |S| = {s}, k = {})",
                seed - 1,
                kernel.graph().n(),
                inst.k()
            );
        }
        if solve_brute(&kernel).unwrap().is_yes() != solve_brute(&inst).unwrap().is_yes() {
            verdict_fail += 1;
        }
        let (_, actx) = kernelize_poly(&inst, &CoverChoice::Approx).expect("approx kernel");
        let sa = actx.cover.len();
        let ok = if sa == 0 {
            actx.i_prime.is_empty()
        } else {
            actx.i_prime.len() < 4 * sa * sa
        };
        if !ok {
            approx_fail += 1;
        }
    }
    outcome(
        size_fail == 0 && approx_fail == 0 && verdict_fail == 0,
        format!(
            "{checked} instances with vc <= 5: {size_fail} over the exact-cover size bound{worst}, \
             {approx_fail} with |I'| >= 4|S|^2, {verdict_fail} verdict changes"
        ),
    )
}

struct ReductionRun {
    disagreements: Vec<String>,
    cnf_sat: (usize, usize),
    mono_sat: (usize, usize),
    clique_yes: (usize, usize),
    cnf_cert_fail: usize,
    mono_cert_fail: usize,
    clique_cert_fail: usize,
    generated: usize,
}

fn run_reductions() -> ReductionRun {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut r = ReductionRun {
        disagreements: Vec::new(),
        cnf_sat: (0, 0),
        mono_sat: (0, 0),
        clique_yes: (0, 0),
        cnf_cert_fail: 0,
        mono_cert_fail: 0,
        clique_cert_fail: 0,
        generated: 0,
    };
    let tally = |t: &mut (usize, usize), yes: bool| {
        if yes {
            t.0 += 1
        } else {
            t.1 += 1
        }
    };
    for i in 0..20 {
        let n = 3 + i % 6;
        let m = rng.gen_range(2 * n..=6 * n);
        let phi = CnfFormula::random(&mut rng, n, m, 3);
        let expected = common::cnf_satisfiable(&phi);
        let inst = gen_cnf_sat(&phi);
        r.generated += 1;
        if !check_cnf_certificate(&inst, n) {
            r.cnf_cert_fail += 1;
        }
        let brute = solve_brute(&inst).unwrap().is_yes();
        let arcs = solve_arcs_fpt(&inst).unwrap().0.is_yes();
        if brute != expected || arcs != expected {
            r.disagreements.push(format!(
                "3-CNF #{i}: sat {expected}, brute {brute}, arcs {arcs}"
            ));
        }
        tally(&mut r.cnf_sat, expected);
    }
    for i in 0..20 {
        let n = 2 + i % 5;
        let m = rng.gen_range(n..=5 * n);
        let phi = MonotoneCnf::random(&mut rng, n, m);
        let expected = common::cnf_satisfiable(phi.formula());
        let inst = gen_monotone3sat(&phi);
        r.generated += 1;
        if !check_monotone_certificate(&inst) {
            r.mono_cert_fail += 1;
        }
        let arcs = solve_arcs_fpt(&inst).unwrap().0.is_yes();
        if arcs != expected {
            r.disagreements
                .push(format!("monotone #{i}: sat {expected}, arcs {arcs}"));
        }
        tally(&mut r.mono_sat, expected);
    }
    for i in 0..10 {
        let n = 2 + i % 2;
        let p = [0.5, 0.7, 0.85][i % 3];
        let g = MulticoloredGraph::random(&mut rng, 4, n, p);
        let expected = common::has_multicolored_clique(&g);
        let inst = gen_multicolored_clique(&g);
        r.generated += 1;
        if !check_clique_certificate(&inst, 4) {
            r.clique_cert_fail += 1;
        }
        let (v, _) = solve_arcs_fpt(&inst).unwrap();
        if let Some(o) = v.witness() {
            assert!(check_orientation(&inst, o).unwrap());
        }
        if v.is_yes() != expected {
            r.disagreements.push(format!(
                "clique #{i}: clique {expected}, arcs {}",
                v.is_yes()
            ));
        }
        tally(&mut r.clique_yes, expected);
    }
    r
}

fn criterion_6(r: &ReductionRun) -> Outcome {
    outcome(
        r.disagreements.is_empty(),
        format!(
            "3-CNF {}/{} sat/unsat, monotone {}/{}, clique {}/{} yes/no; {} disagreements{}",
            r.cnf_sat.0,
            r.cnf_sat.1,
            r.mono_sat.0,
            r.mono_sat.1,
            r.clique_yes.0,
            r.clique_yes.1,
            r.disagreements.len(),
            first(&r.disagreements)
        ),
    )
}

fn criterion_7(r: &ReductionRun) -> Outcome {
    // extra generator outputs beyond the criterion-6 corpus
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut extra, mut fails) = (0, 0);
    for n in 2..=8 {
        let phi = MonotoneCnf::random(&mut rng, n, 3 * n);
        fails += usize::from(!check_monotone_certificate(&gen_monotone3sat(&phi)));
        let phi = CnfFormula::random(&mut rng, n, 3 * n, 2);
        fails += usize::from(!check_cnf_certificate(&gen_cnf_sat(&phi), n));
        extra += 2;
    }
    for k in [1, 2, 4, 5, 9] {
        let g = MulticoloredGraph::random(&mut rng, k, 2, 0.5);
        fails += usize::from(!check_clique_certificate(&gen_multicolored_clique(&g), k));
        extra += 1;
    }
    let total_fail = fails + r.cnf_cert_fail + r.mono_cert_fail + r.clique_cert_fail;
    outcome(
        total_fail == 0,
        format!(
            "{} generated instances; certificate failures: cnf {}, monotone {}, clique {}, extra {fails}",
            r.generated + extra,
            r.cnf_cert_fail,
            r.mono_cert_fail,
            r.clique_cert_fail
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sat_fail = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(0..=3 * n);
        let clauses: Vec<((usize, bool), (usize, bool))> = (0..m)
            .map(|_| {
                let mut lit = || (rng.gen_range(0..n), rng.gen::<bool>());
                (lit(), lit())
            })
            .collect();
        let mut f = TwoSatFormula::new(n);
        for &((a, pa), (b, pb)) in &clauses {
            let l = |v, p| if p { Literal::pos(v) } else { Literal::neg(v) };
            f.add_clause(l(a, pa), l(b, pb));
        }
        let expected = common::two_sat_satisfiable(n, &clauses);
        match solve_2sat(&f) {
            Some(a) => sat_fail += usize::from(!expected || !f.is_satisfied_by(&a)),
            None => sat_fail += usize::from(expected),
        }
    }
    let mut match_fail = 0;
    for _ in 0..100 {
        let p = rng.gen_range(0.1..0.6);
        let edges: Vec<(usize, usize)> = (0..6)
            .flat_map(|l| (0..6).map(move |r| (l, r)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let m = max_bipartite_matching(&BipartiteGraph::new(6, 6, edges.clone()));
        let lefts: BTreeSet<usize> = m.pairs.iter().map(|p| p.0).collect();
        let rights: BTreeSet<usize> = m.pairs.iter().map(|p| p.1).collect();
        let valid = lefts.len() == m.len()
            && rights.len() == m.len()
            && m.pairs.iter().all(|e| edges.contains(e));
        if !valid || m.len() != common::max_matching_size(6, 6, &edges) {
            match_fail += 1;
        }
    }
    let mut vc_fail = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.7);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = UndirectedGraph::new(n, edges.clone());
        let c = vertex_cover_exact(&g).unwrap();
        if !g.is_vertex_cover(&c) || c.len() != common::min_vertex_cover_size(n, &edges) {
            vc_fail += 1;
        }
    }
    outcome(
        sat_fail + match_fail + vc_fail == 0,
        format!(
            "2-SAT {sat_fail}/1000 wrong, matching {match_fail}/100 wrong, vertex cover {vc_fail}/100 wrong"
        ),
    )
}

fn check_step(inst: &Instance, report: &PreprocessReport, expected: bool) -> Result<(), String> {
    match report.verdict {
        EarlyVerdict::Yes if !expected => Err("decided YES on a NO instance".into()),
        EarlyVerdict::No if expected => Err("decided NO on a YES instance".into()),
        EarlyVerdict::Undecided => match solve_brute(&report.instance).unwrap() {
            Verdict::Yes(o) => {
                if !expected {
                    return Err("reduced instance is YES".into());
                }
                if !check_orientation(inst, &report.lift(inst.graph(), &o)).unwrap() {
                    return Err("lifted witness fails".into());
                }
                Ok(())
            }
            Verdict::No if expected => Err("reduced instance is NO".into()),
            Verdict::No => Ok(()),
        },
        _ => Ok(()),
    }
}

fn criterion_9() -> Outcome {
    let profile = Profile::default();
    let mut errors = Vec::new();
    let mut undecided = 0;
    for seed in 0..CORPUS_SEEDS {
        let inst = gen_profile(seed, &profile);
        let expected = solve_brute(&inst).unwrap().is_yes();
        let contracted = contract_cycles(&inst);
        if let Err(e) = check_step(&inst, &contracted, expected) {
            errors.push(format!("seed {seed} contract: {e}"));
        }
        if !is_mixed_acyclic(contracted.instance.graph()) {
            errors.push(format!("seed {seed}: contraction left a cycle"));
        }
        if contracted.verdict == EarlyVerdict::Undecided {
            let c = &contracted.instance;
            let trimmed = eliminate_degree_one(c);
            if let Err(e) = check_step(c, &trimmed, expected) {
                errors.push(format!("seed {seed} eliminate: {e}"));
            }
        }
        let full = preprocess(&inst);
        if let Err(e) = check_step(&inst, &full, expected) {
            errors.push(format!("seed {seed} preprocess: {e}"));
        }
        if full.verdict == EarlyVerdict::Undecided {
            undecided += 1;
            let g = full.instance.graph();
            let adj = g.adjacency();
            let min_degree = (0..g.n()).map(|v| adj.mixed_degree(v)).min().unwrap_or(2);
            if !is_mixed_acyclic(g) || min_degree < 2 {
                errors.push(format!(
                    "seed {seed}: not a fixpoint (min degree {min_degree})"
                ));
            }
            let again = preprocess(&full.instance);
            if again.instance.graph().n() != g.n() || again.verdict != EarlyVerdict::Undecided {
                errors.push(format!("seed {seed}: a second pass changed the instance"));
            }
        }
    }
    outcome(
        errors.is_empty(),
        format!(
            "{CORPUS_SEEDS} instances, {undecided} left undecided, {} problems{}",
            errors.len(),
            first(&errors)
        ),
    )
}

fn criterion_10() -> Outcome {
    let (mut errors, mut over, mut total_types) = (Vec::new(), 0, 0);
    for seed in 0..200 {
        let inst = gen_disjoint_terminals(seed, 12);
        let (kernel, report) = match kernelize_exp(&inst) {
            Ok(x) => x,
            Err(e) => {
                errors.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let expected = solve_brute(&inst).unwrap().is_yes();
        if solve_brute(&kernel).unwrap().is_yes() != expected {
            errors.push(format!("seed {seed}: verdict changed"));
        }
        for (ty, &count) in &report.type_counts {
            total_types += 1;
            let kept = report.kept_counts.get(ty).copied().unwrap_or(0);
            let want = count.min(PAIRS_PER_TYPE);
            if count > PAIRS_PER_TYPE {
                over += 1;
            }
            if kept != want {
                errors.push(format!("seed {seed}: type with {count} pairs kept {kept}"));
            }
        }
    }
    outcome(
        errors.is_empty() && over > 0,
        format!(
            "200 instances, {total_types} pair types, {over} over-populated, {} problems{}",
            errors.len(),
            first(&errors)
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut errors = Vec::new();
    for seed in 0..10u64 {
        let n = 4 + seed as usize % 6;
        let inst = gen_random(
            seed,
            n,
            0.25 + 0.05 * (seed % 3) as f64,
            0.3,
            1 + seed as usize % 4,
        )
        .unwrap();
        let text = emit_mso2(&inst).unwrap();
        let Some((facts, formula)) = text.split_once("c formula\n") else {
            errors.push(format!("seed {seed}: no formula section"));
            continue;
        };
        if formula != MSO2_FORMULA {
            errors.push(format!("seed {seed}: formula differs"));
        }
        let count = |p: &str| facts.lines().filter(|l| l.starts_with(p)).count();
        let g = inst.graph();
        if count("t1(") != 2 * g.edges().len() + g.arcs().len() || count("t2(") != inst.k() {
            errors.push(format!("seed {seed}: fact counts off"));
        }
        if count("edge(") != count("t1(") + count("t2(") {
            errors.push(format!("seed {seed}: untyped arcs"));
        }
    }
    outcome(
        errors.is_empty(),
        format!("10 instances, {} problems{}", errors.len(), first(&errors)),
    )
}

fn main() {
    let corpus = run_corpus();
    let reductions = run_reductions();
    let results = [
        ("oracle equivalence", criterion_1(&corpus)),
        ("witness validity", criterion_2(&corpus)),
        ("branch bound and restricted leaves", criterion_3(&corpus)),
        ("forest degree claim", criterion_4(&corpus)),
        ("kernel size", criterion_5()),
        ("reduction soundness", criterion_6(&reductions)),
        ("structural certificates", criterion_7(&reductions)),
        ("component correctness", criterion_8()),
        ("preprocessing equivalence and fixpoint", criterion_9()),
        ("exponential kernel", criterion_10()),
        ("MSO2 emission", criterion_11()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("{tag} criterion {}: {name}: {}", i + 1, o.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
