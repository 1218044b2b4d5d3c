//! Invariants quantified over the bundled isomorph-free corpus (n ≤ 7)
//! and, where stated, the order-8 census.

use critlab::chroma;
use critlab::criticality;
use critlab::graph::{Graph, VertexSet};
use critlab::harness;

fn corpus() -> Vec<Graph> {
    let path = format!("{}/data/corpus_n7.g6", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .expect("bundled corpus present")
        .lines()
        .map(|line| Graph::from_graph6(line).expect("corpus line parses"))
        .collect()
}

#[test]
fn edge_list_reproduces_every_corpus_graph() {
    for g in corpus() {
        let text = g.to_edge_list();
        assert_eq!(Graph::from_edge_list(&text).unwrap(), g);
        assert_eq!(Graph::from_edges(g.n(), &g.edges()).unwrap(), g);
    }
}

#[test]
fn singleton_neighborhoods_match_rows_on_corpus() {
    for g in corpus() {
        for v in 0..g.n() {
            assert_eq!(
                g.common_neighborhood(VertexSet::singleton(v)).unwrap(),
                g.neighbors(v)
            );
        }
    }
}

fn has_claw_by_subset_scan(g: &Graph) -> bool {
    let n = g.n();
    for center in 0..n {
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    if a == center || b == center || c == center {
                        continue;
                    }
                    if g.has_edge(center, a)
                        && g.has_edge(center, b)
                        && g.has_edge(center, c)
                        && !g.has_edge(a, b)
                        && !g.has_edge(a, c)
                        && !g.has_edge(b, c)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[test]
fn claw_detection_matches_subset_oracle_through_n8() {
    for g in corpus() {
        assert_eq!(g.find_claw().is_some(), has_claw_by_subset_scan(&g));
    }
    for g in harness::enumerate_graphs(8).unwrap() {
        assert_eq!(g.find_claw().is_some(), has_claw_by_subset_scan(&g));
    }
}

#[test]
fn clique_stream_brackets_omega_on_corpus() {
    for g in corpus() {
        let omega = g.clique_number();
        if g.n() > 0 {
            assert!(g.enumerate_cliques(omega).next().is_some());
        }
        assert!(g.enumerate_cliques(omega + 1).next().is_none());
    }
}

#[test]
fn chi_bounds_and_monotonicity_on_corpus() {
    for g in corpus() {
        let chi = chroma::chi(&g);
        assert!(g.clique_number() <= chi);
        assert!(chi <= g.n());
        assert_eq!(chi == g.n() && g.n() > 0, g.is_complete() && g.n() > 0);
        for v in 0..g.n() {
            let (h, _) = g.delete_vertex(v);
            let sub = chroma::chi(&h);
            assert!(sub == chi || sub + 1 == chi);
        }
    }
}

#[test]
fn criticals_have_min_degree_chi_minus_one() {
    // Cross-check with the degree lemma; also: no non-complete critical
    // with chi <= 2l+1 exists in range (they would contradict the
    // completeness theorems).
    for g in corpus() {
        let report = criticality::is_kl_critical(&g, 2);
        if report.is_critical {
            assert!(g.min_degree() + 1 >= report.chi);
            assert!(g.is_complete());
        }
    }
}
