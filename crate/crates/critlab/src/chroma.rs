//! Exact chromatic numbers and k-colorability.
//!
//! The solver is complete and deterministic: DSATUR gives the upper bound,
//! a maximum clique the lower bound, and exact k-colorability decides each
//! value in between. Vertex selection is by saturation degree and a vertex
//! may open at most one fresh color, so no randomization and no timeouts
//! are involved; callers bound the graph order instead.

use crate::graph::{Graph, VertexSet};
use serde::Serialize;

/// A total or partial proper vertex coloring with colors in `1..=k`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Coloring {
    k: usize,
    colors: Vec<Option<usize>>,
}

impl Coloring {
    /// Fully uncolored coloring on `n` vertices with palette `1..=k`.
    pub fn new(k: usize, n: usize) -> Coloring {
        Coloring { k, colors: vec![None; n] }
    }

    /// Total coloring from a color-per-vertex slice.
    ///
    /// Panics if a color is outside `1..=k`; properness is not checked here,
    /// use [`verify_coloring`].
    pub fn from_colors(k: usize, colors: &[usize]) -> Coloring {
        let mut c = Coloring::new(k, colors.len());
        for (v, &color) in colors.iter().enumerate() {
            c.set(v, color);
        }
        c
    }

    pub fn set(&mut self, v: usize, color: usize) {
        assert!(color >= 1 && color <= self.k, "color {color} outside 1..={}", self.k);
        self.colors[v] = Some(color);
    }

    pub fn clear(&mut self, v: usize) {
        self.colors[v] = None;
    }

    #[inline]
    pub fn color(&self, v: usize) -> Option<usize> {
        self.colors[v]
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Vertices that carry a color.
    pub fn domain(&self) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|_| v))
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        let mut mask = 0u64;
        for c in self.colors.iter().flatten() {
            mask |= 1 << (c - 1);
        }
        mask.count_ones() as usize
    }

    /// Members of color class `c`.
    pub fn class(&self, c: usize) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, &col)| (col == Some(c)).then_some(v))
            .collect()
    }
}

/// True iff `c` is total on `V(g)` and no edge is monochromatic.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> bool {
    if c.n() != g.n() || !c.is_total() {
        return false;
    }
    is_proper_partial(g, c)
}

/// Properness on the colored domain only; uncolored vertices are ignored.
pub fn is_proper_partial(g: &Graph, c: &Coloring) -> bool {
    if c.n() != g.n() {
        return false;
    }
    for v in 0..g.n() {
        if let Some(col) = c.color(v) {
            if col < 1 || col > c.k() {
                return false;
            }
            for u in g.neighbors(v).iter() {
                if u > v && c.color(u) == Some(col) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact chromatic number plus the artifacts proving both bounds.
#[derive(Clone, Debug, Serialize)]
pub struct ChiCertificate {
    pub chi: usize,
    /// Proper coloring using exactly `chi` colors.
    pub witness_coloring: Coloring,
    /// Clique establishing `chi >= |clique|` during the search.
    pub lower_bound_clique: VertexSet,
}

struct Solver<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<usize>, // 0 = uncolored
    // Bitmask of colors used on each vertex's neighborhood (bit c-1 = color c).
    nbr_colors: Vec<u64>,
    uncolored: VertexSet,
    max_used: usize,
}

impl<'g> Solver<'g> {
    fn new(g: &'g Graph, k: usize) -> Solver<'g> {
        Solver {
            g,
            k,
            colors: vec![0; g.n()],
            nbr_colors: vec![0; g.n()],
            uncolored: VertexSet::full(g.n()),
            max_used: 0,
        }
    }

    /// Next vertex by maximum saturation, then maximum degree among the
    /// uncolored, then lowest index.
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_sat = 0;
        let mut best_deg = 0;
        for v in self.uncolored.iter() {
            let sat = self.nbr_colors[v].count_ones() as usize;
            let deg = (self.g.neighbors(v) & self.uncolored).len();
            if best == usize::MAX || sat > best_sat || (sat == best_sat && deg > best_deg) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        self.uncolored.remove(v);
        for u in self.g.neighbors(v).iter() {
            self.nbr_colors[u] |= 1 << (c - 1);
        }
        self.max_used = self.max_used.max(c);
    }

    fn unassign(&mut self, v: usize, c: usize, prev_max: usize) {
        self.colors[v] = 0;
        self.uncolored.insert(v);
        for u in self.g.neighbors(v).iter() {
            // Recompute the bit: another neighbor may still use c.
            let still = self
                .g
                .neighbors(u)
                .iter()
                .any(|w| self.colors[w] == c);
            if !still {
                self.nbr_colors[u] &= !(1u64 << (c - 1));
            }
        }
        self.max_used = prev_max;
    }

    fn solve(&mut self) -> bool {
        if self.uncolored.is_empty() {
            return true;
        }
        let v = self.select();
        // Symmetry breaking: at most one fresh color per vertex.
        let limit = (self.max_used + 1).min(self.k);
        for c in 1..=limit {
            if self.nbr_colors[v] >> (c - 1) & 1 != 0 {
                continue;
            }
            let prev_max = self.max_used;
            self.assign(v, c);
            if self.solve() {
                return true;
            }
            self.unassign(v, c, prev_max);
        }
        false
    }
}

/// A proper k-coloring, or `None` with an exhaustive-search guarantee.
pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    if g.n() == 0 {
        return Some(Coloring::new(k, 0));
    }
    if k == 0 {
        return None;
    }
    // χ(G) ≤ n, and symmetry breaking never opens more than n colors, so the
    // effective palette fits the 64-bit saturation masks.
    let mut solver = Solver::new(g, k.min(g.n()));
    if solver.solve() {
        let mut c = Coloring::new(k, g.n());
        for (v, &col) in solver.colors.iter().enumerate() {
            c.set(v, col);
        }
        debug_assert!(verify_coloring(g, &c));
        Some(c)
    } else {
        None
    }
}

/// DSATUR greedy coloring; the number of colors used is an upper bound on χ.
fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![0usize; n];
    let mut nbr_colors = vec![0u64; n];
    let mut uncolored = VertexSet::full(n);
    let mut max_used = 0;
    for _ in 0..n {
        let mut best = usize::MAX;
        let mut best_sat = 0;
        let mut best_deg = 0;
        for v in uncolored.iter() {
            let sat = nbr_colors[v].count_ones() as usize;
            let deg = (g.neighbors(v) & uncolored).len();
            if best == usize::MAX || sat > best_sat || (sat == best_sat && deg > best_deg) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        let c = (nbr_colors[best].trailing_ones() + 1) as usize;
        colors[best] = c;
        uncolored.remove(best);
        for u in g.neighbors(best).iter() {
            nbr_colors[u] |= 1 << (c - 1);
        }
        max_used = max_used.max(c);
    }
    let mut out = Coloring::new(max_used.max(1), n);
    for (v, &c) in colors.iter().enumerate() {
        out.set(v, c);
    }
    out
}

/// Exact χ(G) with a verifying certificate.
pub fn chromatic_number(g: &Graph) -> ChiCertificate {
    if g.n() == 0 {
        return ChiCertificate {
            chi: 0,
            witness_coloring: Coloring::new(0, 0),
            lower_bound_clique: VertexSet::EMPTY,
        };
    }
    let clique = g.max_clique();
    let lower = clique.len();
    let greedy = greedy_coloring(g);
    let upper = greedy.colors_used();
    for k in lower..upper {
        if let Some(witness) = is_k_colorable(g, k) {
            debug_assert_eq!(witness.colors_used(), k);
            return ChiCertificate { chi: k, witness_coloring: witness, lower_bound_clique: clique };
        }
    }
    debug_assert!(verify_coloring(g, &greedy));
    ChiCertificate { chi: upper, witness_coloring: greedy, lower_bound_clique: clique }
}

/// Convenience: just the number.
pub fn chi(g: &Graph) -> usize {
    chromatic_number(g).chi
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("coloring enumeration budget exceeded: {k}^{n} > {budget} estimated nodes")]
    BudgetExceeded { k: usize, n: usize, budget: u64 },
}

const COLORING_BUDGET: u64 = 100_000_000;

/// All proper k-colorings up to color permutation, lexicographic in the
/// color sequence. Canonical form: scanning vertices `0..n`, the first
/// vertex of each new color gets the smallest unused index, so "uniquely
/// k-colorable" is testable as "stream length 1".
pub fn enumerate_colorings(
    g: &Graph,
    k: usize,
) -> Result<impl Iterator<Item = Coloring> + '_, EnumerateError> {
    let n = g.n() as u32;
    // Estimated search nodes before symmetry breaking.
    let estimate = (k as u64).checked_pow(n);
    if estimate.is_none() || estimate.unwrap() > COLORING_BUDGET {
        return Err(EnumerateError::BudgetExceeded { k, n: g.n(), budget: COLORING_BUDGET });
    }
    Ok(ColoringIter::new(g, k))
}

struct ColoringIter<'g> {
    g: &'g Graph,
    k: usize,
    // colors[v] for v < depth; next color to try at the current depth.
    colors: Vec<usize>,
    depth: usize,
    next_try: usize,
    exhausted: bool,
}

impl<'g> ColoringIter<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        ColoringIter {
            g,
            k,
            colors: vec![0; g.n()],
            depth: 0,
            next_try: 1,
            exhausted: g.n() > 0 && k == 0,
        }
    }

    fn max_used(&self) -> usize {
        self.colors[..self.depth].iter().copied().max().unwrap_or(0)
    }

    fn conflicts(&self, v: usize, c: usize) -> bool {
        self.g
            .neighbors(v)
            .iter()
            .any(|u| u < self.depth && self.colors[u] == c)
    }
}

impl Iterator for ColoringIter<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.exhausted {
            return None;
        }
        if self.g.n() == 0 {
            self.exhausted = true;
            return Some(Coloring::new(self.k, 0));
        }
        loop {
            if self.depth == self.g.n() {
                // Emit, then backtrack to find the next one.
                let mut c = Coloring::new(self.k, self.g.n());
                for (v, &col) in self.colors.iter().enumerate() {
                    c.set(v, col);
                }
                self.depth -= 1;
                self.next_try = self.colors[self.depth] + 1;
                return Some(c);
            }
            let v = self.depth;
            let limit = (self.max_used() + 1).min(self.k);
            let mut advanced = false;
            for c in self.next_try..=limit {
                if !self.conflicts(v, c) {
                    self.colors[v] = c;
                    self.depth += 1;
                    self.next_try = 1;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                if self.depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                self.depth -= 1;
                self.next_try = self.colors[self.depth] + 1;
            }
        }
    }
}
