mod common;

use ftrs_core::ftrs::{reachable_after, without_vertices};
use ftrs_core::oracle::{
    verify_ftrs, verify_ftrs_vertex, verify_lambda_ftrs, verify_lambda_ftrs_vertex,
};
use ftrs_core::{
    alpha, build_ftrs, build_ftrs_with_threshold, build_lambda_ftrs, max_flow_bounded, BuildParams,
    DeletionReason, Digraph, EdgeSet, FaultMode, FaultSet, VertexSet,
};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Graphs where a few vertices collect many in-edges, so in-degrees exceed
/// the k = 0 threshold of 4.
fn hub_graphs(count: usize, seed: u64) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(4..=8);
            let m = rng.random_range(3..=6);
            let mut g = common::random_multigraph(&mut rng, n, m);
            let hub = rng.random_range(1..n);
            for _ in 0..rng.random_range(5..=8) {
                let mut u = rng.random_range(0..n - 1);
                if u >= hub {
                    u += 1;
                }
                g.add_edge(u, hub).unwrap();
            }
            g
        })
        .collect()
}

fn assert_spanning(h: &Digraph, g: &Digraph) {
    assert!(h.is_spanning_subgraph_of(g));
}

#[test]
fn random_certificates_pass_exhaustive_oracle() {
    for (i, g) in common::catalog(150, 8, 14, 21).into_iter().enumerate() {
        let s = i % g.vertex_count();
        for k in 0..=2 {
            let r = build_ftrs(&g, s, k).unwrap();
            let h = r.certificate();
            assert_spanning(h, &g);
            assert_eq!(h.in_degree(s), 0);
            assert!(h.max_in_degree() <= alpha(k));
            let report = verify_ftrs(&g, h, s, k).unwrap();
            assert!(report.passed, "{g:?} k={k}: {:?}", report.counterexample);
        }
    }
}

#[test]
fn hub_graphs_are_reduced_and_stay_correct() {
    let mut deletions = 0;
    for g in hub_graphs(120, 22) {
        let r = build_ftrs(&g, 0, 0).unwrap();
        let h = r.certificate();
        assert!(h.max_in_degree() <= 4);
        deletions += r
            .deleted()
            .iter()
            .filter(|d| d.reason == DeletionReason::DegreeReduction)
            .count();
        let report = verify_ftrs(&g, h, 0, 0).unwrap();
        assert!(report.passed, "{g:?}: {:?}", report.counterexample);
    }
    assert!(
        deletions > 100,
        "only {deletions} degree-reduction deletions"
    );
}

#[test]
fn low_threshold_builds_stay_correct() {
    // The deletion rule is sound for any threshold; a threshold of 0 or 1
    // pushes the loop through many deletions on small graphs.
    let mut deletions = 0;
    for (i, g) in common::catalog(150, 7, 13, 23).into_iter().enumerate() {
        let s = i % g.vertex_count();
        for k in 0..=2 {
            for threshold in 0..=1 {
                let params = BuildParams::new(s, k);
                let r = build_ftrs_with_threshold(&g, &params, threshold).unwrap();
                deletions += r.deleted().len();
                let report = verify_ftrs(&g, r.certificate(), s, k).unwrap();
                assert!(
                    report.passed,
                    "{g:?} s={s} k={k} t={threshold}: {:?}",
                    report.counterexample
                );
            }
        }
    }
    assert!(deletions > 500);
}

#[test]
fn each_single_deletion_is_safe() {
    for (i, g) in common::catalog(60, 6, 11, 24).into_iter().enumerate() {
        let s = i % g.vertex_count();
        for k in 0..=1 {
            let r = build_ftrs_with_threshold(&g, &BuildParams::new(s, k), 0).unwrap();
            let mut work = g.clone();
            for d in r.deleted() {
                work.delete_edge(d.edge);
                let report = verify_ftrs(&g, &work, s, k).unwrap();
                assert!(
                    report.passed,
                    "after deleting {}: {:?}",
                    d.edge, report.counterexample
                );
            }
            assert_eq!(&work, r.certificate());
        }
    }
}

#[test]
fn lambda_certificates_pass_flow_oracle() {
    for (i, g) in common::catalog(80, 7, 12, 25).into_iter().enumerate() {
        let s = i % g.vertex_count();
        for (k, lambda) in [(0, 2), (1, 2), (0, 3)] {
            let params = BuildParams::new(s, k).with_lambda(lambda);
            let r = build_lambda_ftrs(&g, &params).unwrap();
            assert!(r.certificate().max_in_degree() <= alpha(k + lambda - 1));
            let report = verify_lambda_ftrs(&g, r.certificate(), s, k, lambda).unwrap();
            assert!(report.passed, "{g:?}: {:?}", report.counterexample);

            let low = build_ftrs_with_threshold(&g, &params, 1).unwrap();
            let report = verify_lambda_ftrs(&g, low.certificate(), s, k, lambda).unwrap();
            assert!(
                report.passed,
                "{g:?} threshold 1: {:?}",
                report.counterexample
            );
        }
    }
}

#[test]
fn lambda_queries_match_flow_in_original() {
    for g in common::catalog(40, 6, 11, 26) {
        let params = BuildParams::new(0, 1).with_lambda(2);
        let r = build_ftrs_with_threshold(&g, &params, 1).unwrap();
        let faults = g.alive_edge_ids().map(Some).chain([None]);
        for f in faults {
            let fs = FaultSet::Edges(f.into_iter().collect());
            let damaged = match &fs {
                FaultSet::Edges(e) => g.without_edges(e),
                _ => unreachable!(),
            };
            for v in 1..g.vertex_count() {
                let flow = max_flow_bounded(
                    &damaged,
                    &VertexSet::singleton(0),
                    &VertexSet::singleton(v),
                    2,
                )
                .unwrap();
                assert_eq!(r.query_connectivity(&fs, v).unwrap(), flow.value >= 2);
                assert_eq!(
                    r.query_reachable(&fs, v).unwrap(),
                    reachable_after(&g, 0, &fs)[v]
                );
            }
        }
    }
}

#[test]
fn vertex_mode_certificates() {
    for (i, g) in common::catalog(80, 7, 13, 27).into_iter().enumerate() {
        let s = i % g.vertex_count();
        for k in 0..=2 {
            let params = BuildParams::new(s, k).with_fault_mode(FaultMode::Vertex);
            for r in [
                build_lambda_ftrs(&g, &params).unwrap(),
                build_ftrs_with_threshold(&g, &params, 0).unwrap(),
            ] {
                let h = r.certificate();
                assert_spanning(h, &g);
                let report = verify_ftrs_vertex(&g, h, s, k).unwrap();
                assert!(report.passed, "{g:?} k={k}: {:?}", report.counterexample);

                let others: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != s).collect();
                for size in 0..=k {
                    for w in others.iter().copied().combinations(size) {
                        let w: VertexSet = w.into_iter().collect();
                        let fs = FaultSet::Vertices(w.clone());
                        let truth = reachable_after(&g, s, &fs);
                        for (v, &reached) in truth.iter().enumerate() {
                            let expect = reached && !w.contains(v);
                            assert_eq!(r.query_reachable(&fs, v).unwrap(), expect);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn vertex_mode_lambda_certificates() {
    for (i, g) in common::catalog(50, 6, 11, 28).into_iter().enumerate() {
        let s = i % g.vertex_count();
        let params = BuildParams::new(s, 1)
            .with_lambda(2)
            .with_fault_mode(FaultMode::Vertex);
        let r = build_ftrs_with_threshold(&g, &params, 0).unwrap();
        let report = verify_lambda_ftrs_vertex(&g, r.certificate(), s, 1, 2).unwrap();
        assert!(report.passed, "{g:?}: {:?}", report.counterexample);
        for w in (0..g.vertex_count()).filter(|&v| v != s) {
            let fs = FaultSet::Vertices(VertexSet::singleton(w));
            let damaged = without_vertices(&g, &VertexSet::singleton(w));
            for v in (0..g.vertex_count()).filter(|&v| v != s && v != w) {
                let flow = max_flow_bounded(
                    &damaged,
                    &VertexSet::singleton(s),
                    &VertexSet::singleton(v),
                    2,
                )
                .unwrap();
                assert_eq!(r.query_connectivity(&fs, v).unwrap(), flow.value >= 2);
            }
        }
    }
}

#[test]
fn rebuild_is_idempotent() {
    let mut graphs = hub_graphs(40, 29);
    graphs.extend(common::catalog(40, 8, 14, 30));
    for g in graphs {
        for k in 0..=2 {
            let first = build_ftrs(&g, 0, k).unwrap();
            let second = build_ftrs(first.certificate(), 0, k).unwrap();
            assert!(second.deleted().is_empty());
            assert_eq!(second.certificate(), first.certificate());
        }
    }
}

#[test]
fn star_of_paths_example() {
    let g = common::star_of_paths(6);
    let r = build_ftrs(&g, 0, 0).unwrap();
    assert_eq!(r.certificate().in_degree(7), 4);
    assert!(verify_ftrs(&g, r.certificate(), 0, 0).unwrap().passed);
    // One failure is not covered by a 0-FTRS, so k = 1 keeps everything.
    let r = build_ftrs(&g, 0, 1).unwrap();
    assert_eq!(r.certificate(), &g);
}

#[test]
fn many_parallel_edges_with_k1() {
    // 40 parallel s->v edges: alpha(1) = 32, and no cut of size <= 2 exists,
    // so exactly 8 are dropped.
    let mut g = Digraph::new(2);
    for _ in 0..40 {
        g.add_edge(0, 1).unwrap();
    }
    let r = build_ftrs(&g, 0, 1).unwrap();
    assert_eq!(r.certificate().in_degree(1), 32);
    let gone: Vec<usize> = r.deleted().iter().map(|d| d.edge).collect();
    assert_eq!(gone, (0..8).collect::<Vec<_>>());
    let faults = FaultSet::Edges(EdgeSet::singleton(20));
    assert!(r.query_reachable(&faults, 1).unwrap());
}
