//! Property tests: every solver, the kernels and preprocessing agree with an
//! exhaustive orientation search on small random instances.

mod common;

use proptest::prelude::*;

use steiner_core::graph_kit::vertex_cover_at_most;
use steiner_core::kernel::{kernelize_poly, CoverChoice};
use steiner_core::preprocess::{preprocess, EarlyVerdict};
use steiner_core::solvers::{
    min_clique_modulator, solve, solve_arcs_fpt, solve_brute, Algo, SolveOptions,
};
use steiner_core::{
    check_orientation, parse_instance, serialize_instance, underlying_graph, Instance, MixedGraph,
    TerminalPair,
};

/// For every vertex pair: nothing, an edge, or an arc either way.
fn instance_strategy(max_n: usize, max_edges: usize) -> impl Strategy<Value = Instance> {
    (3..=max_n)
        .prop_flat_map(move |n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec(0u8..6, pairs),
                prop::collection::vec((0..n, 0..n), 1..=4),
            )
        })
        .prop_map(move |(n, kinds, terms)| {
            let mut edges = Vec::new();
            let mut arcs = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match kinds[idx] {
                        0 if edges.len() < max_edges => edges.push((u, v)),
                        1 => arcs.push((u, v)),
                        2 => arcs.push((v, u)),
                        _ => {}
                    }
                    idx += 1;
                }
            }
            let g = MixedGraph::new(n, edges, arcs).unwrap();
            let terminals = terms
                .into_iter()
                .filter(|(s, t)| s != t)
                .map(|(s, t)| TerminalPair::new(s, t));
            Instance::new(g, terminals).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn brute_and_arcs_match_enumeration(inst in instance_strategy(8, 12)) {
        let expected = common::orientation_exists(&inst);
        let brute = solve_brute(&inst).unwrap();
        prop_assert_eq!(brute.is_yes(), expected);
        let (arcs, _) = solve_arcs_fpt(&inst).unwrap();
        prop_assert_eq!(arcs.is_yes(), expected);
        for v in [&brute, &arcs] {
            if let Some(o) = v.witness() {
                prop_assert!(check_orientation(&inst, o).unwrap());
            }
        }
    }

    #[test]
    fn parameterized_solvers_match(inst in instance_strategy(8, 12)) {
        let expected = common::orientation_exists(&inst);
        let red = preprocess(&inst).instance;
        let opts = SolveOptions::default();
        if min_clique_modulator(&red, 4).is_ok() {
            let s = solve(&inst, Algo::Dtc, &opts).unwrap();
            prop_assert_eq!(s.verdict.is_yes(), expected);
        }
        if vertex_cover_at_most(&underlying_graph(red.graph()), 4).is_some() {
            let s = solve(&inst, Algo::Vc, &opts).unwrap();
            prop_assert_eq!(s.verdict.is_yes(), expected);
        }
    }

    #[test]
    fn kernels_preserve_the_answer(inst in instance_strategy(9, 12)) {
        let expected = common::orientation_exists(&inst);
        for choice in [CoverChoice::Exact, CoverChoice::Approx] {
            let (kernel, ctx) = kernelize_poly(&inst, &choice).unwrap();
            prop_assert_eq!(common::orientation_exists(&kernel), expected);
            prop_assert!(underlying_graph(kernel.graph()).is_vertex_cover(&ctx.kernel_cover));
        }
    }

    #[test]
    fn preprocessing_preserves_the_answer(inst in instance_strategy(9, 12)) {
        let expected = common::orientation_exists(&inst);
        let report = preprocess(&inst);
        match report.verdict {
            EarlyVerdict::Yes => {
                prop_assert!(expected);
                let o = report.trivial_witness(inst.graph());
                prop_assert!(check_orientation(&inst, &o).unwrap());
            }
            EarlyVerdict::No => prop_assert!(!expected),
            EarlyVerdict::Undecided => {
                prop_assert_eq!(common::orientation_exists(&report.instance), expected);
            }
        }
    }

    #[test]
    fn file_format_round_trip(inst in instance_strategy(9, 12)) {
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
