//! Isomorph-free graph enumeration by canonical augmentation.
//!
//! Level n is generated from level n-1: each parent is extended by one new
//! vertex, one neighborhood per orbit of the parent's automorphism group,
//! and a child survives iff its added vertex lies in the same orbit as the
//! canonical deletion vertex (the one the canonical labeling maps last).
//! Together the two conditions yield exactly one representative per
//! isomorphism class.
//!
//! Canonical forms come from partition refinement plus exhaustive
//! individualization, with automorphism discovery at repeated leaves and
//! orbit pruning at tree nodes (restricted to automorphisms fixing the
//! individualized path, which keeps the pruning sound).

use crate::graph::{Graph, VertexSet};

/// Canonical labeling data for one graph.
pub struct Canon {
    /// old index -> canonical index
    pub labeling: Vec<usize>,
    /// The graph relabeled by `labeling`; equal for isomorphic inputs.
    pub canonical: Graph,
    /// Discovered automorphism generators (old -> old).
    pub generators: Vec<Vec<usize>>,
    /// Orbit representative (minimum member) per vertex under the
    /// discovered generators.
    pub orbits: Vec<usize>,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Union keeping the smaller index as representative.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

type Partition = Vec<VertexSet>;

/// Split cells by degree into every cell until equitable. Subcells are
/// ordered by ascending degree, so the result is isomorphism-invariant.
fn refine(g: &Graph, partition: &mut Partition) {
    'restart: loop {
        for si in 0..partition.len() {
            let splitter = partition[si];
            for ci in 0..partition.len() {
                let cell = partition[ci];
                if cell.len() <= 1 {
                    continue;
                }
                let mut groups: std::collections::BTreeMap<usize, VertexSet> =
                    std::collections::BTreeMap::new();
                for v in cell.iter() {
                    groups
                        .entry((g.neighbors(v) & splitter).len())
                        .or_insert(VertexSet::EMPTY)
                        .insert(v);
                }
                if groups.len() > 1 {
                    let replacement: Vec<VertexSet> = groups.into_values().collect();
                    partition.splice(ci..=ci, replacement);
                    continue 'restart;
                }
            }
        }
        return;
    }
}

struct CanonSearch<'g> {
    g: &'g Graph,
    best_key: Option<Vec<u64>>,
    best_labeling: Vec<usize>,
    first_key: Option<Vec<u64>>,
    first_labeling: Vec<usize>,
    generators: Vec<Vec<usize>>,
    orbit_dsu: Dsu,
}

impl<'g> CanonSearch<'g> {
    fn leaf_labeling(partition: &Partition) -> Vec<usize> {
        let n: usize = partition.len();
        let mut labeling = vec![0; n];
        for (new, cell) in partition.iter().enumerate() {
            labeling[cell.min_vertex().expect("singleton cell")] = new;
        }
        labeling
    }

    fn relabel_key(&self, labeling: &[usize]) -> Vec<u64> {
        let n = self.g.n();
        let mut rows = vec![0u64; n];
        for v in 0..n {
            for u in self.g.neighbors(v).iter() {
                rows[labeling[v]] |= 1 << labeling[u];
            }
        }
        rows
    }

    fn record_automorphism(&mut self, reference: &[usize], labeling: &[usize]) {
        // reference and labeling relabel to the same graph, so
        // a = reference^{-1} ∘ labeling is an automorphism.
        let n = self.g.n();
        let mut inverse = vec![0; n];
        for (old, &new) in reference.iter().enumerate() {
            inverse[new] = old;
        }
        let auto: Vec<usize> = (0..n).map(|v| inverse[labeling[v]]).collect();
        if auto.iter().enumerate().all(|(v, &img)| v == img) {
            return;
        }
        for (v, &img) in auto.iter().enumerate() {
            self.orbit_dsu.union(v, img);
        }
        // The stored list only drives pruning; a cap keeps pathological
        // groups from bloating it while staying sound.
        if self.generators.len() < 256 {
            self.generators.push(auto);
        }
    }

    fn visit_leaf(&mut self, partition: &Partition) {
        let labeling = Self::leaf_labeling(partition);
        let key = self.relabel_key(&labeling);
        if self.first_key.is_none() {
            self.first_key = Some(key.clone());
            self.first_labeling = labeling.clone();
        } else if self.first_key.as_deref() == Some(&key[..]) {
            let reference = self.first_labeling.clone();
            self.record_automorphism(&reference, &labeling);
        }
        match &self.best_key {
            None => {
                self.best_key = Some(key);
                self.best_labeling = labeling;
            }
            Some(best) => {
                if key > *best {
                    self.best_key = Some(key);
                    self.best_labeling = labeling;
                } else if key == *best {
                    let reference = self.best_labeling.clone();
                    self.record_automorphism(&reference, &labeling);
                }
            }
        }
    }

    /// Orbit pruning: `v` is redundant at this node when an automorphism
    /// fixing the individualized path pointwise maps it into an
    /// already-branched vertex.
    fn redundant(&mut self, v: usize, branched: VertexSet, path: &[usize]) -> bool {
        if branched.is_empty() || self.generators.is_empty() {
            return false;
        }
        let n = self.g.n();
        let mut dsu = Dsu::new(n);
        for gen in &self.generators {
            if path.iter().any(|&p| gen[p] != p) {
                continue;
            }
            for (x, &image) in gen.iter().enumerate() {
                dsu.union(x, image);
            }
        }
        let rv = dsu.find(v);
        branched.iter().any(|u| dsu.find(u) == rv)
    }

    fn dfs(&mut self, partition: Partition, path: &mut Vec<usize>) {
        let target = partition.iter().position(|cell| cell.len() > 1);
        let Some(tc) = target else {
            self.visit_leaf(&partition);
            return;
        };
        let cell = partition[tc];
        let mut branched = VertexSet::EMPTY;
        for v in cell.iter() {
            if self.redundant(v, branched, path) {
                continue;
            }
            branched.insert(v);
            let mut child = partition.clone();
            child.splice(tc..=tc, [VertexSet::singleton(v), cell - VertexSet::singleton(v)]);
            refine(self.g, &mut child);
            path.push(v);
            self.dfs(child, path);
            path.pop();
        }
    }
}

/// Canonical labeling, relabeled graph, and automorphism data.
pub fn canonical_form(g: &Graph) -> Canon {
    let n = g.n();
    if n == 0 {
        return Canon {
            labeling: vec![],
            canonical: g.clone(),
            generators: vec![],
            orbits: vec![],
        };
    }
    let mut search = CanonSearch {
        g,
        best_key: None,
        best_labeling: vec![],
        first_key: None,
        first_labeling: vec![],
        generators: vec![],
        orbit_dsu: Dsu::new(n),
    };
    let mut initial: Partition = vec![VertexSet::full(n)];
    refine(g, &mut initial);
    search.dfs(initial, &mut Vec::new());
    let labeling = search.best_labeling;
    let adj = search
        .best_key
        .expect("at least one leaf");
    let canonical = Graph::from_rows_unchecked(n, adj);
    let mut dsu = search.orbit_dsu;
    let orbits = (0..n).map(|v| dsu.find(v)).collect();
    Canon { labeling, canonical, generators: search.generators, orbits }
}

/// Parent plus one vertex adjacent to `nbhd`.
fn extend(parent: &Graph, nbhd: VertexSet) -> Graph {
    let n = parent.n();
    let mut edges = parent.edges();
    for v in nbhd.iter() {
        edges.push((v, n));
    }
    Graph::from_edges(n + 1, &edges).expect("extension stays within bounds")
}

/// Children of one canonical parent, one per isomorphism class whose
/// canonical deletion leads back to the parent. Emitted in canonical form.
fn children(parent: &Graph) -> Vec<Graph> {
    let n = parent.n();
    let parent_canon = canonical_form(parent);
    // One neighborhood per orbit of Aut(parent) acting on vertex subsets.
    let count = 1usize << n;
    let mut dsu = Dsu::new(count);
    for gen in &parent_canon.generators {
        for s in 0..count {
            let mut image = 0usize;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                image |= 1 << gen[v];
            }
            dsu.union(s, image);
        }
    }
    let mut out = Vec::new();
    for s in 0..count {
        if dsu.find(s) != s {
            continue;
        }
        let child = extend(parent, VertexSet::from_bits(s as u64));
        let canon = canonical_form(&child);
        // Canonical deletion vertex: the one labeled last.
        let deletion = canon
            .labeling
            .iter()
            .position(|&new| new == n)
            .expect("labeling is a bijection");
        if canon.orbits[n] == canon.orbits[deletion] {
            out.push(canon.canonical);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error(
        "internal enumeration supports 1..=10 vertices, got {0}; \
         pipe larger corpora through graph6-stream mode instead"
    )]
    UnsupportedOrder(usize),
}

const MAX_ENUMERATION_ORDER: usize = 10;

/// Stream of isomorphism-class representatives, one per class.
pub struct GraphStream {
    /// Fully generated lower levels still waiting to be emitted (up-to mode).
    pending: std::collections::VecDeque<Graph>,
    /// Canonical representatives at level `target - 1`.
    parents: Vec<Graph>,
    parent_idx: usize,
    buffer: std::collections::VecDeque<Graph>,
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if let Some(g) = self.pending.pop_front() {
            return Some(g);
        }
        loop {
            if let Some(g) = self.buffer.pop_front() {
                return Some(g);
            }
            if self.parent_idx >= self.parents.len() {
                return None;
            }
            self.buffer.extend(children(&self.parents[self.parent_idx]));
            self.parent_idx += 1;
        }
    }
}

fn levels_up_to(n: usize) -> Vec<Vec<Graph>> {
    // levels[i] holds the representatives on i+1 vertices.
    let mut levels = vec![vec![Graph::empty(1).expect("one vertex fits")]];
    for _ in 2..=n {
        let prev = levels.last().expect("level 1 seeded");
        let next: Vec<Graph> = prev.iter().flat_map(children).collect();
        levels.push(next);
    }
    levels
}

/// Exactly one representative per isomorphism class on exactly `n` vertices.
pub fn enumerate_graphs(n: usize) -> Result<GraphStream, EnumerationError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(EnumerationError::UnsupportedOrder(n));
    }
    if n == 1 {
        return Ok(GraphStream {
            pending: [Graph::empty(1).expect("fits")].into(),
            parents: vec![],
            parent_idx: 0,
            buffer: Default::default(),
        });
    }
    let mut levels = levels_up_to(n - 1);
    Ok(GraphStream {
        pending: Default::default(),
        parents: levels.pop().expect("nonempty"),
        parent_idx: 0,
        buffer: Default::default(),
    })
}

/// All representatives on 1..=n_max vertices, ascending order.
pub fn enumerate_up_to(n_max: usize) -> Result<GraphStream, EnumerationError> {
    enumerate_range(1, n_max)
}

/// Representatives on min_n..=n_max vertices, ascending order. The lower
/// levels are still generated internally (augmentation needs them) but not
/// emitted.
pub fn enumerate_range(min_n: usize, n_max: usize) -> Result<GraphStream, EnumerationError> {
    if n_max == 0 || n_max > MAX_ENUMERATION_ORDER || min_n > n_max {
        return Err(EnumerationError::UnsupportedOrder(n_max));
    }
    if n_max == 1 {
        return Ok(GraphStream {
            pending: [Graph::empty(1).expect("fits")].into(),
            parents: vec![],
            parent_idx: 0,
            buffer: Default::default(),
        });
    }
    let levels = levels_up_to(n_max - 1);
    let parents = levels.last().expect("nonempty").clone();
    let pending = levels
        .into_iter()
        .enumerate()
        .filter(|(i, _)| i + 1 >= min_n)
        .flat_map(|(_, level)| level)
        .collect();
    Ok(GraphStream { pending, parents, parent_idx: 0, buffer: Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: canonical form as the maximum adjacency key over
    /// all n! labelings. Independent of the refinement machinery.
    fn brute_force_canonical_key(g: &Graph) -> Vec<u64> {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for rest in permutations(n - 1) {
                for pos in 0..n {
                    let mut perm = rest.clone();
                    perm.insert(pos, n - 1);
                    out.push(perm);
                }
            }
            out
        }
        let n = g.n();
        let mut best: Option<Vec<u64>> = None;
        for perm in permutations(n) {
            let mut rows = vec![0u64; n];
            for v in 0..n {
                for u in g.neighbors(v).iter() {
                    rows[perm[v]] |= 1 << perm[u];
                }
            }
            if best.as_ref().is_none_or(|b| rows > *b) {
                best = Some(rows);
            }
        }
        best.unwrap_or_default()
    }

    fn brute_force_class_count(n: usize) -> usize {
        let mut classes = std::collections::HashSet::new();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            classes.insert(brute_force_canonical_key(&g));
        }
        classes.len()
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        // Relabel by a few permutations; canonical forms must coincide.
        for shift in 1..6 {
            let edges: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(u, v)| ((u + shift) % 6, (v + shift) % 6))
                .collect();
            let h = Graph::from_edges(6, &edges).unwrap();
            assert_eq!(canonical_form(&g).canonical, canonical_form(&h).canonical);
        }
    }

    #[test]
    fn canonical_form_separates_classes_like_brute_force() {
        // Two graphs share a brute-force isomorphism class iff they share a
        // canonical form. The pool includes relabelings and same-degree-
        // sequence non-isomorphic pairs (C_6 vs 2×C_3).
        let pool = [
            Graph::cycle(6).unwrap(),
            Graph::from_edges(6, &[(5, 0), (0, 2), (2, 4), (4, 1), (1, 3), (3, 5)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
            Graph::path(5).unwrap(),
            Graph::from_edges(5, &[(4, 2), (2, 0), (0, 1), (1, 3)]).unwrap(),
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap(),
            Graph::complete(5).unwrap(),
            Graph::empty(5).unwrap(),
        ];
        for a in &pool {
            for b in &pool {
                if a.n() != b.n() {
                    continue;
                }
                let same_class = brute_force_canonical_key(a) == brute_force_canonical_key(b);
                let same_canon = canonical_form(a).canonical == canonical_form(b).canonical;
                assert_eq!(same_class, same_canon, "a = {a:?}, b = {b:?}");
            }
        }
    }

    #[test]
    fn labeling_reproduces_the_canonical_graph() {
        for g in [
            Graph::path(5).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::from_edges(6, &[(0, 3), (3, 1), (1, 4), (4, 0), (2, 5)]).unwrap(),
        ] {
            let canon = canonical_form(&g);
            let mut rows = vec![0u64; g.n()];
            for v in 0..g.n() {
                for u in g.neighbors(v).iter() {
                    rows[canon.labeling[v]] |= 1 << canon.labeling[u];
                }
            }
            assert_eq!(Graph::from_rows_unchecked(g.n(), rows), canon.canonical);
        }
    }

    #[test]
    fn automorphism_generators_are_automorphisms() {
        for g in [
            Graph::cycle(6).unwrap(),
            Graph::complete(4).unwrap(),
            Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap(),
        ] {
            let canon = canonical_form(&g);
            for gen in &canon.generators {
                for (u, v) in g.edges() {
                    assert!(g.has_edge(gen[u], gen[v]));
                }
            }
        }
    }

    #[test]
    fn orbits_of_vertex_transitive_graphs_are_single() {
        for g in [Graph::cycle(7).unwrap(), Graph::complete(5).unwrap(), Graph::empty(6).unwrap()]
        {
            let canon = canonical_form(&g);
            assert!(canon.orbits.iter().all(|&o| o == 0), "graph {g:?}");
        }
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        for n in 1..=5 {
            let stream = enumerate_graphs(n).unwrap();
            assert_eq!(stream.count(), brute_force_class_count(n), "n = {n}");
        }
    }

    #[test]
    fn small_counts_are_the_known_values() {
        // 1, 2, 4, 11, 34, 156 classes on 1..=6 vertices.
        let expected = [1usize, 2, 4, 11, 34, 156];
        for (n, &want) in (1..=6).zip(expected.iter()) {
            assert_eq!(enumerate_graphs(n).unwrap().count(), want, "n = {n}");
        }
    }

    #[test]
    fn up_to_mode_concatenates_levels() {
        let total = enumerate_up_to(6).unwrap().count();
        assert_eq!(total, 1 + 2 + 4 + 11 + 34 + 156);
        assert_eq!(enumerate_up_to(1).unwrap().count(), 1);
    }

    #[test]
    fn enumerated_representatives_are_pairwise_distinct() {
        let graphs: Vec<Graph> = enumerate_graphs(6).unwrap().collect();
        let set: std::collections::HashSet<String> =
            graphs.iter().map(|g| g.to_graph6()).collect();
        assert_eq!(set.len(), graphs.len());
    }

    #[test]
    fn out_of_range_orders_are_rejected() {
        assert!(matches!(enumerate_graphs(0), Err(EnumerationError::UnsupportedOrder(0))));
        assert!(matches!(enumerate_graphs(11), Err(EnumerationError::UnsupportedOrder(11))));
    }
}
