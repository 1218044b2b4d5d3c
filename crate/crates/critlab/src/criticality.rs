//! Clique-criticality: the three-clause definition, its verdict report,
//! and extraction of a critical subgraph of equal chromatic number.
//!
//! A graph is K_l-critical when it (i) contains a K_l, (ii) loses exactly
//! one from its chromatic number on every single-vertex deletion, and
//! (iii) loses exactly l on deleting the vertex set of any K_l copy.

use crate::chroma;
use crate::graph::{Graph, VertexSet};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriticalityError {
    #[error("graph has no K_{0}, clique-drop property is undefined")]
    NoClique(usize),
    #[error("clique order l must be at least 2, got {0}")]
    BadCliqueOrder(usize),
    #[error("extraction requires the clique-drop property; {0:?} fails it")]
    CliqueDropMissing(VertexSet),
    /// The extracted graph failed re-certification. Mathematically this
    /// would falsify the extraction lemma, so it is reported as a structured
    /// finding rather than swallowed or panicked on.
    #[error("extracted subgraph is not K_{l}-critical: lemma falsified? graph6={graph6}")]
    LemmaFalsified { l: usize, graph6: String, report: Box<CriticalityReport> },
}

/// Clause-by-clause verdict for the K_l-criticality definition.
///
/// Failing clauses carry concrete witnesses; a `true` verdict leaves all
/// failure witnesses empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub l: usize,
    pub chi: usize,
    /// Clause (i): some K_l exists. `first_clique` is the positive
    /// certificate (lexicographically first copy) when it does.
    pub has_clique: bool,
    pub first_clique: Option<VertexSet>,
    /// Clause (ii): every vertex deletion drops χ by one. On failure,
    /// the least vertex whose deletion keeps χ unchanged.
    pub vertex_critical: bool,
    pub vertex_witness: Option<usize>,
    /// Clause (iii): every K_l deletion drops χ by l. On failure, the
    /// lexicographically first failing copy.
    pub clique_drop: bool,
    pub clique_drop_witness: Option<VertexSet>,
    /// Conjunction of the three clauses.
    pub is_critical: bool,
}

/// Clause (ii) alone: `true` iff χ(G−v) = χ(G)−1 for every vertex; on
/// failure also the least failing vertex. Vacuously true on the empty graph.
pub fn is_vertex_critical(g: &Graph) -> (bool, Option<usize>) {
    let k = chroma::chi(g);
    for v in 0..g.n() {
        let (h, _) = g.delete_vertex(v);
        if chroma::chi(&h) != k - 1 {
            return (false, Some(v));
        }
    }
    (true, None)
}

/// Clause (iii) alone. Errors when no K_l exists (the property quantifies
/// over K_l copies, so it would be vacuous, not meaningful).
pub fn has_clique_drop_property(
    g: &Graph,
    l: usize,
) -> Result<(bool, Option<VertexSet>), CriticalityError> {
    if g.first_clique(l).is_none() {
        return Err(CriticalityError::NoClique(l));
    }
    Ok(clique_drop_scan(g, l, chroma::chi(g)))
}

fn clique_drop_scan(g: &Graph, l: usize, chi: usize) -> (bool, Option<VertexSet>) {
    for clique in g.enumerate_cliques(l) {
        let (h, _) = g.delete_vertices(clique);
        if chroma::chi(&h) + l != chi {
            return (false, Some(clique));
        }
    }
    (true, None)
}

/// Full three-clause evaluation with the exact solver as oracle.
pub fn is_kl_critical(g: &Graph, l: usize) -> CriticalityReport {
    assert!(l >= 2, "clique order l must be at least 2");
    let chi = chroma::chi(g);
    let first_clique = g.first_clique(l);
    let has_clique = first_clique.is_some();
    let (vertex_critical, vertex_witness) = is_vertex_critical(g);
    let (clique_drop, clique_drop_witness) = clique_drop_scan(g, l, chi);
    CriticalityReport {
        l,
        chi,
        has_clique,
        first_clique,
        vertex_critical,
        vertex_witness,
        clique_drop,
        clique_drop_witness,
        is_critical: has_clique && vertex_critical && clique_drop,
    }
}

/// Repeatedly delete the least-index vertex whose removal preserves χ, then
/// certify the remainder. The returned subgraph has the same chromatic
/// number and passes the full criticality check.
///
/// The clique-drop property guarantees success. It is enforced lazily: the
/// peeling runs first, and only a non-critical remainder triggers the
/// precondition check. If the input did satisfy the property, a failed
/// certification would falsify the extraction lemma, so it is reported as
/// [`CriticalityError::LemmaFalsified`] rather than swallowed.
pub fn extract_critical_subgraph(g: &Graph, l: usize) -> Result<Graph, CriticalityError> {
    if l < 2 {
        return Err(CriticalityError::BadCliqueOrder(l));
    }
    if g.first_clique(l).is_none() {
        return Err(CriticalityError::NoClique(l));
    }
    let chi = chroma::chi(g);
    let mut current = g.clone();
    'shrink: loop {
        for v in 0..current.n() {
            let (h, _) = current.delete_vertex(v);
            if chroma::chi(&h) == chi {
                current = h;
                continue 'shrink;
            }
        }
        break;
    }
    let report = is_kl_critical(&current, l);
    if !report.is_critical || report.chi != chi {
        return match has_clique_drop_property(g, l)? {
            (true, _) => Err(CriticalityError::LemmaFalsified {
                l,
                graph6: current.to_graph6(),
                report: Box::new(report),
            }),
            (false, witness) => Err(CriticalityError::CliqueDropMissing(
                witness.unwrap_or(VertexSet::EMPTY),
            )),
        };
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs_are_vertex_critical() {
        let (ok, w) = is_vertex_critical(&Graph::complete(6).unwrap());
        assert!(ok);
        assert_eq!(w, None);
    }

    #[test]
    fn odd_cycle_is_vertex_critical() {
        // C_5 - v = P_4, χ drops 3 -> 2.
        let (ok, _) = is_vertex_critical(&Graph::cycle(5).unwrap());
        assert!(ok);
    }

    #[test]
    fn isolated_vertex_blocks_criticality() {
        let mut edges = Vec::new();
        for v in 0..5 {
            edges.push((v, (v + 1) % 5));
        }
        let g = Graph::from_edges(6, &edges).unwrap(); // C_5 plus isolated 5
        let (ok, w) = is_vertex_critical(&g);
        assert!(!ok);
        assert_eq!(w, Some(5));
    }

    #[test]
    fn complete_graphs_are_kl_critical() {
        for k in 2..=9 {
            for l in 2..=k {
                let report = is_kl_critical(&Graph::complete(k).unwrap(), l);
                assert!(report.is_critical, "K_{k} should be K_{l}-critical");
                assert_eq!(report.chi, k);
                assert!(report.vertex_witness.is_none());
                assert!(report.clique_drop_witness.is_none());
            }
        }
    }

    #[test]
    fn c5_fails_clause_three_for_edges() {
        // χ(C_5)=3 but deleting an edge's endpoints leaves P_3 with χ=2 ≠ 1.
        let report = is_kl_critical(&Graph::cycle(5).unwrap(), 2);
        assert!(!report.is_critical);
        assert!(report.has_clique);
        assert!(report.vertex_critical);
        assert!(!report.clique_drop);
        assert_eq!(report.clique_drop_witness, Some(VertexSet::from_iter([0, 1])));
    }

    #[test]
    fn c5_has_no_triangle() {
        let report = is_kl_critical(&Graph::cycle(5).unwrap(), 3);
        assert!(!report.is_critical);
        assert!(!report.has_clique);
        assert_eq!(report.first_clique, None);
    }

    #[test]
    fn clique_drop_property_examples() {
        // K_5 plus an isolated vertex: all K_2s inside the K_5, each drops χ 5 -> 3.
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(6, &edges).unwrap();
        assert_eq!(has_clique_drop_property(&g, 2).unwrap(), (true, None));

        // K_5 ∪ K_2: removing the K_2's endpoints leaves χ = 5 ≠ 3.
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        edges.push((5, 6));
        let g = Graph::from_edges(7, &edges).unwrap();
        let (ok, witness) = has_clique_drop_property(&g, 2).unwrap();
        assert!(!ok);
        assert_eq!(witness, Some(VertexSet::from_iter([5, 6])));

        assert_eq!(
            has_clique_drop_property(&Graph::complete(7).unwrap(), 3).unwrap(),
            (true, None)
        );
        assert_eq!(
            has_clique_drop_property(&Graph::cycle(5).unwrap(), 3),
            Err(CriticalityError::NoClique(3))
        );
    }

    #[test]
    fn extraction_peels_isolated_vertex() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(6, &edges).unwrap();
        let core = extract_critical_subgraph(&g, 2).unwrap();
        assert_eq!(core, Graph::complete(5).unwrap());
    }

    #[test]
    fn extraction_is_identity_on_critical_input() {
        let k6 = Graph::complete(6).unwrap();
        assert_eq!(extract_critical_subgraph(&k6, 3).unwrap(), k6);
    }

    #[test]
    fn extraction_removes_pendant() {
        // K_4 plus a vertex adjacent to two of its vertices: χ stays 4 when
        // the pendant goes, and only then is every deletion chromatic.
        let g = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1)],
        )
        .unwrap();
        assert_eq!(chroma::chi(&g), 4);
        let core = extract_critical_subgraph(&g, 2).unwrap();
        assert_eq!(core, Graph::complete(4).unwrap());
    }

    #[test]
    fn extraction_requires_clique_drop() {
        let err = extract_critical_subgraph(&Graph::cycle(5).unwrap(), 2);
        assert!(matches!(err, Err(CriticalityError::CliqueDropMissing(_))));
    }

    #[test]
    fn critical_graphs_have_min_degree_chi_minus_one() {
        for g in [Graph::complete(5).unwrap(), Graph::cycle(7).unwrap()] {
            let report = is_kl_critical(&g, 2);
            if report.is_critical {
                assert!(g.min_degree() >= report.chi - 1);
            }
        }
    }
}
