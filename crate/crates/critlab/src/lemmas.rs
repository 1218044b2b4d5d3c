//! Structural lemmas as executable predicates.
//!
//! Each lemma about K_l-critical graphs becomes a check that returns a
//! [`LemmaVerdict`]: universally quantified hypotheses are run by exhaustive
//! loops, applicability gates are auto-detected from the criticality module,
//! and any failure carries a witness that re-verifies from raw graph data.
//! On genuinely critical inputs every check should pass; a failure either
//! exposes a soundness bug or falsifies a lemma, so the sweep treats
//! failures as release blockers. A verdict on a non-applicable graph is
//! vacuous, flagged, and counted by the sweep.

use crate::chroma::{self, Coloring};
use crate::criticality::{self, CriticalityReport};
use crate::graph::{Graph, VertexSet};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Stable identifiers, named after the source's internal lemma labels.
#[derive(Copy, Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum LemmaId {
    Deg,
    Force,
    Avoid,
    MissNeigh,
    Chrom,
    VDeg,
    Outside,
    C5Nbr,
}

impl LemmaId {
    pub const ALL: [LemmaId; 8] = [
        LemmaId::Deg,
        LemmaId::Force,
        LemmaId::Avoid,
        LemmaId::MissNeigh,
        LemmaId::Chrom,
        LemmaId::VDeg,
        LemmaId::Outside,
        LemmaId::C5Nbr,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::Deg => "L-DEG",
            LemmaId::Force => "L-FORCE",
            LemmaId::Avoid => "L-AVOID",
            LemmaId::MissNeigh => "L-MISSNEIGH",
            LemmaId::Chrom => "L-CHROM",
            LemmaId::VDeg => "L-VDEG",
            LemmaId::Outside => "L-OUTSIDE",
            LemmaId::C5Nbr => "L-C5NBR",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = String;
    fn from_str(s: &str) -> Result<LemmaId, String> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown lemma id {s:?}"))
    }
}

impl Serialize for LemmaId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Violation data; every variant carries enough to re-check the stated
/// inequality directly against the graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaWitness {
    MinDegree { vertex: usize, degree: usize, required: usize },
    CliqueNeighborhood { clique: VertexSet, degree: usize, required: usize },
    ColorClassMiss { clique: VertexSet, color: usize, coloring: Coloring },
    ForcedComplete { hypothesis: String, clique: Option<VertexSet>, chi: usize },
    AvoidExhausted { candidates: Vec<AvoidCandidate> },
    NeighborhoodContained { vertex: usize, clique: VertexSet, common: VertexSet },
    NeighborhoodChromatic { vertex: usize, chi_neighborhood: usize, bound: isize },
    SubcliqueDegree { size: usize, subclique: VertexSet, degree: usize, required: usize },
    OutsideNeighbors { x: usize, v: usize, outside: usize, required: usize },
    TriangleNeighborhood { triangle: VertexSet, neighborhood: VertexSet, reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AvoidCandidate {
    pub clique: VertexSet,
    /// First member every one of whose K_l copies sits inside its closed
    /// neighborhood, disqualifying the candidate.
    pub blocked_by: usize,
}

/// Outcome of one lemma check on one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaVerdict {
    pub lemma_id: LemmaId,
    pub applicable: bool,
    /// Vacuously true when not applicable.
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vacuous_reason: Option<String>,
    /// For checks that quantify over colorings: which mode ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LemmaWitness>,
}

impl LemmaVerdict {
    fn vacuous(lemma_id: LemmaId, reason: &str) -> LemmaVerdict {
        LemmaVerdict {
            lemma_id,
            applicable: false,
            pass: true,
            vacuous_reason: Some(reason.to_string()),
            mode: None,
            witness: None,
        }
    }

    fn pass(lemma_id: LemmaId) -> LemmaVerdict {
        LemmaVerdict {
            lemma_id,
            applicable: true,
            pass: true,
            vacuous_reason: None,
            mode: None,
            witness: None,
        }
    }

    fn fail(lemma_id: LemmaId, witness: LemmaWitness) -> LemmaVerdict {
        LemmaVerdict {
            lemma_id,
            applicable: true,
            pass: false,
            vacuous_reason: None,
            mode: None,
            witness: Some(witness),
        }
    }
}

/// Shared per-graph facts so a battery of checks runs criticality and
/// clique enumeration once.
pub struct LemmaContext<'g> {
    pub g: &'g Graph,
    pub l: usize,
    pub chi: usize,
    pub report: CriticalityReport,
    pub complete: bool,
    cliques_l: Vec<VertexSet>,
}

impl<'g> LemmaContext<'g> {
    pub fn new(g: &'g Graph, l: usize) -> LemmaContext<'g> {
        let report = criticality::is_kl_critical(g, l);
        LemmaContext {
            g,
            l,
            chi: report.chi,
            complete: g.is_complete(),
            cliques_l: g.enumerate_cliques(l).collect(),
            report,
        }
    }

    #[cfg(test)]
    fn forced_critical(g: &'g Graph, l: usize) -> LemmaContext<'g> {
        let mut ctx = LemmaContext::new(g, l);
        ctx.report.is_critical = true;
        ctx.report.vertex_critical = true;
        ctx
    }

    fn critical(&self) -> bool {
        self.report.is_critical
    }
}

/// Minimum degree and clique-neighborhood bounds: d(v) ≥ χ−1 on
/// vertex-critical graphs; on K_l-critical graphs additionally d(L) ≥ χ−l
/// for every K_l copy L, with every color class of a (χ−l)-coloring of G−L
/// meeting N(L).
pub fn check_l_deg(g: &Graph, l: usize) -> LemmaVerdict {
    check_l_deg_ctx(&LemmaContext::new(g, l))
}

fn check_l_deg_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    let part1 = ctx.report.vertex_critical;
    let part2 = ctx.critical();
    if !part1 && !part2 {
        return LemmaVerdict::vacuous(LemmaId::Deg, "graph is not vertex-critical");
    }
    let g = ctx.g;
    let k = ctx.chi;
    if part1 {
        for v in 0..g.n() {
            if g.degree(v) + 1 < k {
                return LemmaVerdict::fail(
                    LemmaId::Deg,
                    LemmaWitness::MinDegree { vertex: v, degree: g.degree(v), required: k - 1 },
                );
            }
        }
    }
    if !part2 {
        return LemmaVerdict::pass(LemmaId::Deg);
    }
    let palette = k - ctx.l;
    let mut mode = None;
    for clique in &ctx.cliques_l {
        let nbhd = g.common_neighborhood(*clique).expect("clique is nonempty");
        if nbhd.len() + ctx.l < k {
            return LemmaVerdict::fail(
                LemmaId::Deg,
                LemmaWitness::CliqueNeighborhood {
                    clique: *clique,
                    degree: nbhd.len(),
                    required: k - ctx.l,
                },
            );
        }
        // The color-class clause quantifies over any (χ−l)-coloring of G−L.
        // Checking canonical representatives covers all colorings (the
        // property is invariant under color permutation); fall back to the
        // single solver coloring when the enumeration budget trips.
        let (sub, map) = g.delete_vertices(*clique);
        let miss = |coloring: &Coloring| -> Option<usize> {
            (1..=palette).find(|&color| {
                coloring
                    .class(color)
                    .iter()
                    .all(|v| !nbhd.contains(map.old_index(v)))
            })
        };
        let lift = |coloring: &Coloring| {
            let mut lifted = Coloring::new(palette.max(1), g.n());
            for v in 0..sub.n() {
                lifted.set(map.old_index(v), coloring.color(v).expect("total"));
            }
            lifted
        };
        let colorings = chroma::enumerate_colorings(&sub, palette);
        match colorings {
            Ok(stream) => {
                mode = Some("all-canonical-colorings".to_string());
                for coloring in stream {
                    if let Some(color) = miss(&coloring) {
                        return LemmaVerdict {
                            mode,
                            ..LemmaVerdict::fail(
                                LemmaId::Deg,
                                LemmaWitness::ColorClassMiss {
                                    clique: *clique,
                                    color,
                                    coloring: lift(&coloring),
                                },
                            )
                        };
                    }
                }
            }
            Err(_) => {
                mode = Some("single-solver-coloring".to_string());
                let coloring = chroma::is_k_colorable(&sub, palette)
                    .expect("clique drop property guarantees a (chi-l)-coloring");
                if let Some(color) = miss(&coloring) {
                    return LemmaVerdict {
                        mode,
                        ..LemmaVerdict::fail(
                            LemmaId::Deg,
                            LemmaWitness::ColorClassMiss {
                                clique: *clique,
                                color,
                                coloring: lift(&coloring),
                            },
                        )
                    };
                }
            }
        }
    }
    LemmaVerdict { mode, ..LemmaVerdict::pass(LemmaId::Deg) }
}

/// Completeness forcing: a K_l-critical graph containing K_{χ−l+1} is
/// complete, and one with χ ≤ 2l is complete.
pub fn check_l_force(g: &Graph, l: usize) -> LemmaVerdict {
    check_l_force_ctx(&LemmaContext::new(g, l))
}

fn check_l_force_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    if !ctx.critical() {
        return LemmaVerdict::vacuous(LemmaId::Force, "graph is not K_l-critical");
    }
    let k = ctx.chi;
    let big = k + 1 - ctx.l;
    if let Some(clique) = ctx.g.first_clique(big) {
        if !ctx.complete {
            return LemmaVerdict::fail(
                LemmaId::Force,
                LemmaWitness::ForcedComplete {
                    hypothesis: format!("contains K_{big} = K_(chi-l+1)"),
                    clique: Some(clique),
                    chi: k,
                },
            );
        }
    }
    if k <= 2 * ctx.l && !ctx.complete {
        return LemmaVerdict::fail(
            LemmaId::Force,
            LemmaWitness::ForcedComplete {
                hypothesis: format!("chi = {k} <= 2l = {}", 2 * ctx.l),
                clique: None,
                chi: k,
            },
        );
    }
    LemmaVerdict::pass(LemmaId::Force)
}

/// Existence of a K_{l+1} copy S such that every member x of S has some
/// K_l copy outside N[x]. Applies to non-complete critical graphs.
pub fn check_l_avoid(g: &Graph, l: usize) -> LemmaVerdict {
    check_l_avoid_ctx(&LemmaContext::new(g, l))
}

fn check_l_avoid_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    if !ctx.critical() {
        return LemmaVerdict::vacuous(LemmaId::Avoid, "graph is not K_l-critical");
    }
    if ctx.complete {
        return LemmaVerdict::vacuous(LemmaId::Avoid, "graph is complete");
    }
    let g = ctx.g;
    let nonlocal: Vec<bool> = (0..g.n())
        .map(|x| {
            let closed = g.closed_neighbors(x);
            ctx.cliques_l.iter().any(|cl| !cl.is_subset_of(closed))
        })
        .collect();
    let mut candidates = Vec::new();
    for s in g.enumerate_cliques(ctx.l + 1) {
        match s.iter().find(|&x| !nonlocal[x]) {
            None => return LemmaVerdict::pass(LemmaId::Avoid),
            Some(blocked_by) => candidates.push(AvoidCandidate { clique: s, blocked_by }),
        }
    }
    LemmaVerdict::fail(LemmaId::Avoid, LemmaWitness::AvoidExhausted { candidates })
}

/// For every pair (x, L) with L a K_l copy not inside N[x]: N(L) ⊈ N(x).
pub fn check_l_missneigh(g: &Graph, l: usize) -> LemmaVerdict {
    check_l_missneigh_ctx(&LemmaContext::new(g, l))
}

fn check_l_missneigh_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    if !ctx.critical() {
        return LemmaVerdict::vacuous(LemmaId::MissNeigh, "graph is not K_l-critical");
    }
    let g = ctx.g;
    for x in 0..g.n() {
        let closed = g.closed_neighbors(x);
        for clique in &ctx.cliques_l {
            if clique.is_subset_of(closed) {
                continue;
            }
            let common = g.common_neighborhood(*clique).expect("clique is nonempty");
            if common.is_subset_of(g.neighbors(x)) {
                return LemmaVerdict::fail(
                    LemmaId::MissNeigh,
                    LemmaWitness::NeighborhoodContained { vertex: x, clique: *clique, common },
                );
            }
        }
    }
    LemmaVerdict::pass(LemmaId::MissNeigh)
}

/// χ(G[N(x)]) ≤ χ−l−1 for every x having some K_l copy outside N[x].
pub fn check_l_chrom(g: &Graph, l: usize) -> LemmaVerdict {
    check_l_chrom_ctx(&LemmaContext::new(g, l))
}

fn check_l_chrom_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    if !ctx.critical() {
        return LemmaVerdict::vacuous(LemmaId::Chrom, "graph is not K_l-critical");
    }
    let g = ctx.g;
    let bound = ctx.chi as isize - ctx.l as isize - 1;
    for x in 0..g.n() {
        let closed = g.closed_neighbors(x);
        if ctx.cliques_l.iter().all(|cl| cl.is_subset_of(closed)) {
            continue;
        }
        let (nbhd, _) = g.induced_subgraph(g.neighbors(x));
        let chi_nbhd = chroma::chi(&nbhd);
        if chi_nbhd as isize > bound {
            return LemmaVerdict::fail(
                LemmaId::Chrom,
                LemmaWitness::NeighborhoodChromatic { vertex: x, chi_neighborhood: chi_nbhd, bound },
            );
        }
    }
    LemmaVerdict::pass(LemmaId::Chrom)
}

/// Degree bounds on non-complete critical graphs: every vertex on a K_l has
/// degree at least χ+2l−3, and every K_i inside a K_l has common-neighbor
/// count at least χ−l+3(l−i), for all 1 ≤ i ≤ l.
pub fn check_l_vdeg(g: &Graph, l: usize) -> LemmaVerdict {
    check_l_vdeg_ctx(&LemmaContext::new(g, l))
}

fn check_l_vdeg_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    if !ctx.critical() {
        return LemmaVerdict::vacuous(LemmaId::VDeg, "graph is not K_l-critical");
    }
    if ctx.complete {
        return LemmaVerdict::vacuous(LemmaId::VDeg, "graph is complete");
    }
    let g = ctx.g;
    let k = ctx.chi;
    let l = ctx.l;
    let mut on_clique = VertexSet::EMPTY;
    for clique in &ctx.cliques_l {
        on_clique = on_clique | *clique;
    }
    for v in on_clique.iter() {
        if (g.degree(v) as isize) < k as isize + 2 * l as isize - 3 {
            return LemmaVerdict::fail(
                LemmaId::VDeg,
                LemmaWitness::MinDegree {
                    vertex: v,
                    degree: g.degree(v),
                    required: (k + 2 * l).saturating_sub(3),
                },
            );
        }
    }
    // "In particular" clause, one sub-check per subclique order i.
    for i in 1..=l {
        let mut seen = std::collections::BTreeSet::new();
        for clique in &ctx.cliques_l {
            let members = clique.to_vec();
            for subset in subsets_of_size(&members, i) {
                if !seen.insert(subset) {
                    continue;
                }
                let degree = g.common_neighborhood(subset).expect("nonempty").len();
                let required = k as isize - l as isize + 3 * (l as isize - i as isize);
                if (degree as isize) < required {
                    return LemmaVerdict::fail(
                        LemmaId::VDeg,
                        LemmaWitness::SubcliqueDegree {
                            size: i,
                            subclique: subset,
                            degree,
                            required: required.max(0) as usize,
                        },
                    );
                }
            }
        }
    }
    LemmaVerdict::pass(LemmaId::VDeg)
}

fn subsets_of_size(members: &[usize], size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, VertexSet, usize)> = vec![(0, VertexSet::EMPTY, 0)];
    while let Some((idx, set, count)) = stack.pop() {
        if count == size {
            out.push(set);
            continue;
        }
        if idx >= members.len() || members.len() - idx < size - count {
            continue;
        }
        stack.push((idx + 1, set, count));
        stack.push((idx + 1, set.with(members[idx]), count + 1));
    }
    out.sort();
    out
}

/// Every vertex v on a K_l copy reaching outside N[x] has at least l
/// neighbors outside N[x], for every vertex x.
pub fn check_l_outside(g: &Graph, l: usize) -> LemmaVerdict {
    check_l_outside_ctx(&LemmaContext::new(g, l))
}

fn check_l_outside_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    if !ctx.critical() {
        return LemmaVerdict::vacuous(LemmaId::Outside, "graph is not K_l-critical");
    }
    let g = ctx.g;
    for x in 0..g.n() {
        let closed = g.closed_neighbors(x);
        let mut qualifying = VertexSet::EMPTY;
        for clique in &ctx.cliques_l {
            if !clique.is_subset_of(closed) {
                qualifying = qualifying | *clique;
            }
        }
        for v in qualifying.iter() {
            let outside = (g.neighbors(v) - closed).len();
            if outside < ctx.l {
                return LemmaVerdict::fail(
                    LemmaId::Outside,
                    LemmaWitness::OutsideNeighbors { x, v, outside, required: ctx.l },
                );
            }
        }
    }
    LemmaVerdict::pass(LemmaId::Outside)
}

/// On a non-complete triangle-critical claw-free graph with χ = 8, every
/// triangle's common neighborhood induces a C_5 (and so has independence
/// number at most two).
pub fn check_l_c5nbr(g: &Graph) -> LemmaVerdict {
    // Triangle-criticality regardless of the caller's l.
    let ctx = LemmaContext::new(g, 3);
    check_l_c5nbr_ctx(&ctx)
}

fn check_l_c5nbr_ctx(ctx: &LemmaContext) -> LemmaVerdict {
    let triangle_ctx;
    let ctx = if ctx.l == 3 {
        ctx
    } else {
        triangle_ctx = LemmaContext::new(ctx.g, 3);
        &triangle_ctx
    };
    if !ctx.critical() {
        return LemmaVerdict::vacuous(LemmaId::C5Nbr, "graph is not triangle-critical");
    }
    if !ctx.g.is_claw_free() {
        return LemmaVerdict::vacuous(LemmaId::C5Nbr, "graph is not claw-free");
    }
    if ctx.chi != 8 {
        return LemmaVerdict::vacuous(LemmaId::C5Nbr, "chromatic number is not eight");
    }
    if ctx.complete {
        return LemmaVerdict::vacuous(LemmaId::C5Nbr, "graph is complete");
    }
    let g = ctx.g;
    for triangle in &ctx.cliques_l {
        let nbhd = g.common_neighborhood(*triangle).expect("nonempty");
        if nbhd.len() != 5 {
            return LemmaVerdict::fail(
                LemmaId::C5Nbr,
                LemmaWitness::TriangleNeighborhood {
                    triangle: *triangle,
                    neighborhood: nbhd,
                    reason: format!("common neighborhood has {} vertices, expected 5", nbhd.len()),
                },
            );
        }
        if !induces_c5(g, nbhd) {
            return LemmaVerdict::fail(
                LemmaId::C5Nbr,
                LemmaWitness::TriangleNeighborhood {
                    triangle: *triangle,
                    neighborhood: nbhd,
                    reason: "common neighborhood does not induce C_5".to_string(),
                },
            );
        }
        let (induced, _) = g.induced_subgraph(nbhd);
        if induced.independence_number() > 2 {
            return LemmaVerdict::fail(
                LemmaId::C5Nbr,
                LemmaWitness::TriangleNeighborhood {
                    triangle: *triangle,
                    neighborhood: nbhd,
                    reason: "independence number above two".to_string(),
                },
            );
        }
    }
    LemmaVerdict::pass(LemmaId::C5Nbr)
}

/// Five vertices, all of induced degree two, connected: exactly a 5-cycle.
/// Special-cased instead of generic isomorphism machinery.
pub fn induces_c5(g: &Graph, s: VertexSet) -> bool {
    if s.len() != 5 {
        return false;
    }
    let (h, _) = g.induced_subgraph(s);
    (0..5).all(|v| h.degree(v) == 2) && h.is_connected()
}

/// Run one check by id.
pub fn check_lemma(g: &Graph, l: usize, id: LemmaId) -> LemmaVerdict {
    check_lemma_ctx(&LemmaContext::new(g, l), id)
}

fn check_lemma_ctx(ctx: &LemmaContext, id: LemmaId) -> LemmaVerdict {
    match id {
        LemmaId::Deg => check_l_deg_ctx(ctx),
        LemmaId::Force => check_l_force_ctx(ctx),
        LemmaId::Avoid => check_l_avoid_ctx(ctx),
        LemmaId::MissNeigh => check_l_missneigh_ctx(ctx),
        LemmaId::Chrom => check_l_chrom_ctx(ctx),
        LemmaId::VDeg => check_l_vdeg_ctx(ctx),
        LemmaId::Outside => check_l_outside_ctx(ctx),
        LemmaId::C5Nbr => check_l_c5nbr_ctx(ctx),
    }
}

/// Run a battery of checks, computing the shared context once.
pub fn check_lemmas(g: &Graph, l: usize, ids: &[LemmaId]) -> Vec<LemmaVerdict> {
    let ctx = LemmaContext::new(g, l);
    ids.iter().map(|&id| check_lemma_ctx(&ctx, id)).collect()
}
