//! Simple undirected graphs on up to 64 vertices with bit-row adjacency.
//!
//! Vertices are `0..n-1`. Each vertex stores its neighborhood as one `u64`
//! word, so neighborhood intersections, clique tests, and subset checks are
//! single bitwise operations. Graphs are immutable values: deleting or
//! inducing returns a new graph with vertices renumbered to `0..m-1`
//! together with the old-to-new index map.
//!
//! Widening past 64 vertices means replacing the `u64` rows (and
//! [`VertexSet`]) with multi-word bitsets; the public API is already
//! index-based and would not change.

mod codec;

pub use codec::{EdgeListError, Graph6Error};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

/// Hard cap of the bit-row representation.
pub const MAX_VERTICES: usize = 64;

/// Errors from graph construction and neighborhood queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the {MAX_VERTICES}-vertex limit")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("common neighborhood of the empty set is undefined")]
    EmptySetQuery,
}

/// A set of vertices, stored as one bit per vertex.
///
/// The carrier for neighborhoods, cliques, and color classes. Bits at or
/// above the owning graph's order are always zero.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub fn singleton(v: usize) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    /// All vertices of a graph on `n` vertices.
    #[inline]
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(mut self, v: usize) -> VertexSet {
        self.insert(v);
        self
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Least vertex in the set, if any. (Named to avoid clashing with
    /// `Ord::min`.)
    #[inline]
    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Vertices not in the set, restricted to `0..n`.
    #[inline]
    pub fn complement_within(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    /// Ascending iteration over members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// Old-to-new index map returned by vertex deletion and induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl VertexMap {
    /// New index of `old`, or `None` if the vertex was removed.
    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn old_index(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn kept(&self) -> &[usize] {
        &self.new_to_old
    }
}

/// Immutable simple undirected graph with one `u64` adjacency row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = VertexSet::full(n).bits();
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// Cycle `C_n` with edges `i`-`i+1` and `n-1`-`0`.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        if n >= 2 {
            for v in 0..n {
                let w = (v + 1) % n;
                if v != w {
                    g.set_edge(v, w);
                }
            }
        }
        Ok(g)
    }

    /// Path `P_n` with edges `i`-`i+1`.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    /// Assemble from prevalidated adjacency rows (symmetric, irreflexive,
    /// masked to `n` bits). Used by relabeling code that builds rows directly.
    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<u64>) -> Graph {
        let g = Graph { n, adj };
        #[cfg(debug_assertions)]
        g.check_invariants();
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] >> v & 1 != 0
    }

    /// Open neighborhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        debug_assert!(v < self.n);
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as `(u, v)` pairs with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = 1u64;
        loop {
            let mut next = seen;
            let mut bits = seen;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[v];
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        seen == self.vertices().bits()
    }

    /// Complement graph on the same vertices.
    pub fn complement(&self) -> Graph {
        let all = self.vertices().bits();
        let adj = (0..self.n)
            .map(|v| all & !self.adj[v] & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Common neighborhood `N(S)`, the vertices adjacent to every member of
    /// `s`. `N(∅)` is rejected rather than defined as `V(G)`.
    pub fn common_neighborhood(&self, s: VertexSet) -> Result<VertexSet, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySetQuery);
        }
        let mut acc = u64::MAX;
        for v in s.iter() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: self.n });
            }
            acc &= self.adj[v];
        }
        Ok(VertexSet(acc & self.vertices().bits()))
    }

    /// Closed neighborhood `N[S] = N(S) ∪ S`.
    pub fn closed_neighborhood(&self, s: VertexSet) -> Result<VertexSet, GraphError> {
        Ok(self.common_neighborhood(s)? | s)
    }

    /// `N[v]` for a single vertex.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.neighbors(v).with(v)
    }

    /// Induced subgraph on `keep`, vertices renumbered ascending to `0..m-1`.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (Graph, VertexMap) {
        let keep = keep & self.vertices();
        let new_to_old: Vec<usize> = keep.iter().collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let m = new_to_old.len();
        let mut adj = vec![0u64; m];
        for (new_u, &old_u) in new_to_old.iter().enumerate() {
            for (new_v, &old_v) in new_to_old.iter().enumerate() {
                if new_u != new_v && self.has_edge(old_u, old_v) {
                    adj[new_u] |= 1u64 << new_v;
                }
            }
        }
        (
            Graph { n: m, adj },
            VertexMap { old_to_new, new_to_old },
        )
    }

    /// Delete `remove`, renumbering the survivors.
    pub fn delete_vertices(&self, remove: VertexSet) -> (Graph, VertexMap) {
        self.induced_subgraph(self.vertices() - remove)
    }

    pub fn delete_vertex(&self, v: usize) -> (Graph, VertexMap) {
        self.delete_vertices(VertexSet::singleton(v))
    }

    /// True iff `s` induces a complete subgraph.
    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| {
            v < self.n && (s - VertexSet::singleton(v)).is_subset_of(self.neighbors(v))
        })
    }

    /// All cliques of exactly `l` vertices, in lexicographic order of their
    /// member lists. Empty stream when no `K_l` exists (or `l` is 0 or
    /// exceeds the order).
    pub fn enumerate_cliques(&self, l: usize) -> CliqueIter<'_> {
        CliqueIter::new(self, l)
    }

    /// First `K_l` in enumeration order, if any.
    pub fn first_clique(&self, l: usize) -> Option<VertexSet> {
        self.enumerate_cliques(l).next()
    }

    /// Clique number ω(G) by branch and bound with a greedy coloring bound.
    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    /// A maximum clique; deterministic for a fixed input.
    pub fn max_clique(&self) -> VertexSet {
        if self.n == 0 {
            return VertexSet::EMPTY;
        }
        let mut best = VertexSet::singleton(0);
        let mut cur = VertexSet::EMPTY;
        self.clique_search(self.vertices(), &mut cur, &mut best);
        best
    }

    fn clique_search(&self, cand: VertexSet, cur: &mut VertexSet, best: &mut VertexSet) {
        if cand.is_empty() {
            if cur.len() > best.len() {
                *best = *cur;
            }
            return;
        }
        // Greedy coloring of the candidates gives an upper bound on how much
        // the current clique can still grow.
        let mut classes: Vec<u64> = Vec::new();
        let mut order: Vec<(usize, usize)> = Vec::new(); // (vertex, class index)
        for v in cand.iter() {
            let mut placed = false;
            for (ci, class) in classes.iter_mut().enumerate() {
                if *class & self.adj[v] == 0 {
                    *class |= 1u64 << v;
                    order.push((v, ci));
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(1u64 << v);
                order.push((v, classes.len() - 1));
            }
        }
        // Process highest color first so the bound tightens as we go.
        order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut remaining = cand;
        for (v, ci) in order {
            if cur.len() + ci < best.len() {
                return;
            }
            remaining.remove(v);
            cur.insert(v);
            self.clique_search(remaining & self.neighbors(v), cur, best);
            cur.remove(v);
        }
    }

    /// Independence number α(G): maximum clique of the complement.
    pub fn independence_number(&self) -> usize {
        self.complement().clique_number()
    }

    /// First induced `K_{1,3}` in scan order, center first; `None` iff the
    /// graph is claw-free.
    pub fn find_claw(&self) -> Option<[usize; 4]> {
        for center in 0..self.n {
            let nbrs: Vec<usize> = self.neighbors(center).to_vec();
            for i in 0..nbrs.len() {
                for j in (i + 1)..nbrs.len() {
                    if self.has_edge(nbrs[i], nbrs[j]) {
                        continue;
                    }
                    for k in (j + 1)..nbrs.len() {
                        if !self.has_edge(nbrs[i], nbrs[k]) && !self.has_edge(nbrs[j], nbrs[k]) {
                            return Some([center, nbrs[i], nbrs[j], nbrs[k]]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_claw_free(&self) -> bool {
        self.find_claw().is_none()
    }

    #[cfg(debug_assertions)]
    pub(crate) fn check_invariants(&self) {
        assert!(self.n <= MAX_VERTICES);
        let mask = VertexSet::full(self.n).bits();
        for v in 0..self.n {
            assert_eq!(self.adj[v] & !mask, 0, "bits above n-1 at vertex {v}");
            assert_eq!(self.adj[v] >> v & 1, 0, "self-loop at vertex {v}");
            for u in (v + 1)..self.n {
                assert_eq!(
                    self.adj[v] >> u & 1,
                    self.adj[u] >> v & 1,
                    "asymmetry at ({v},{u})"
                );
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Lexicographic stream over all `l`-cliques.
pub struct CliqueIter<'g> {
    graph: &'g Graph,
    target: usize,
    chosen: Vec<usize>,
    // Remaining candidate bits per level; level i extends chosen[..i].
    stack: Vec<u64>,
    done: bool,
}

impl<'g> CliqueIter<'g> {
    fn new(graph: &'g Graph, target: usize) -> Self {
        let done = target == 0 || target > graph.n;
        CliqueIter {
            graph,
            target,
            chosen: Vec::new(),
            stack: if done {
                Vec::new()
            } else {
                vec![graph.vertices().bits()]
            },
            done,
        }
    }
}

impl Iterator for CliqueIter<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.stack.len() - 1;
            let cand = self.stack[depth];
            // Not enough candidates left to finish a clique.
            if cand == 0 || self.chosen.len() + (cand.count_ones() as usize) < self.target {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.stack.pop();
                self.chosen.pop();
                continue;
            }
            let v = cand.trailing_zeros() as usize;
            self.stack[depth] &= !(1u64 << v);
            self.chosen.push(v);
            if self.chosen.len() == self.target {
                let result = self.chosen.iter().copied().collect();
                self.chosen.pop();
                return Some(result);
            }
            // Only candidates above v that are adjacent to the whole prefix.
            let next = self.stack[depth] & self.graph.adj[v];
            self.stack.push(next);
        }
    }
}
