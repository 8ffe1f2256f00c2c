//! Pair-compatibility graph, maximum-cardinality matching, and the packing
//! assembled from matched pairs.
//!
//! Two charts are compatible when they fit side by side in the same two
//! bins: left bars sum to at most 1 and right bars sum to at most 1. The
//! guarantee analysis needs a maximum (not merely maximal) matching, so the
//! matcher is a full blossom-contraction search, O(n^3).

use crate::instance::Instance;
use crate::packing::Packing;
use num_traits::One;
use std::collections::VecDeque;

/// Undirected graph over chart indices with an edge per compatible pair.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CompatibilityGraph {
    /// Builds a graph from explicit edges; mostly for tests and external
    /// callers. Edges are normalized to `(min, max)`, deduplicated, and
    /// self-loops are rejected.
    pub fn from_edges(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut normalized: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        normalized.sort_unstable();
        normalized.dedup();
        let mut adjacency = vec![Vec::new(); vertices];
        for &(i, j) in &normalized {
            assert!(i != j && j < vertices, "invalid edge ({i}, {j})");
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        CompatibilityGraph {
            vertices,
            edges: normalized,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Edge set: `(i, j)` iff both `a_i + a_j <= 1` and `b_i + b_j <= 1`.
pub fn build_graph(instance: &Instance) -> CompatibilityGraph {
    let capacity = crate::rational::Rational::one();
    let n = instance.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (x, y) = (instance.chart(i), instance.chart(j));
            if x.a() + y.a() <= capacity && x.b() + y.b() <= capacity {
                edges.push((i, j));
            }
        }
    }
    CompatibilityGraph::from_edges(n, edges)
}

/// Vertex-disjoint pairs of a maximum-cardinality matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pairs: Vec<(usize, usize)>,
}

impl MatchingResult {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn cardinality(&self) -> usize {
        self.pairs.len()
    }
}

/// Maximum-cardinality matching on a general graph via repeated augmenting
/// path search with blossom contraction.
pub fn max_matching(graph: &CompatibilityGraph) -> MatchingResult {
    let mut search = BlossomSearch::new(graph);
    for v in 0..graph.vertex_count() {
        if search.mate[v].is_none() {
            if let Some(finish) = search.find_augmenting_path(v) {
                search.augment(v, finish);
            }
        }
    }
    let pairs: Vec<(usize, usize)> = search
        .mate
        .iter()
        .enumerate()
        .filter_map(|(v, &m)| m.filter(|&u| v < u).map(|u| (v, u)))
        .collect();
    MatchingResult { pairs }
}

struct BlossomSearch<'a> {
    graph: &'a CompatibilityGraph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
}

impl<'a> BlossomSearch<'a> {
    fn new(graph: &'a CompatibilityGraph) -> Self {
        let n = graph.vertex_count();
        BlossomSearch {
            graph,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
        }
    }

    /// BFS over the alternating tree rooted at `root`; returns the free
    /// vertex ending an augmenting path, contracting blossoms on the way.
    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.graph.vertex_count();
        self.parent = vec![None; n];
        self.base = (0..n).collect();
        let mut in_tree = vec![false; n];
        in_tree[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &self.graph.adjacency[v] {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let closes_cycle = to == root
                    || self
                        .mate[to]
                        .is_some_and(|m| self.parent[m].is_some());
                if closes_cycle {
                    // Odd cycle: contract the blossom around its base.
                    let cycle_base = self.lowest_common_ancestor(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, cycle_base, to, &mut in_blossom);
                    self.mark_path(to, cycle_base, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cycle_base;
                            if !in_tree[i] {
                                in_tree[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            if !in_tree[m] {
                                in_tree[m] = true;
                                queue.push_back(m);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn lowest_common_ancestor(&self, v: usize, w: usize) -> usize {
        let mut on_path = vec![false; self.graph.vertex_count()];
        let mut v = v;
        loop {
            v = self.base[v];
            on_path[v] = true;
            match self.mate[v] {
                Some(m) => v = self.parent[m].expect("matched tree vertex has a parent"),
                None => break, // reached the root
            }
        }
        let mut w = w;
        while !on_path[self.base[w]] {
            w = self.parent[self.mate[w].expect("alternating path vertex is matched")]
                .expect("alternating path vertex has a parent");
        }
        self.base[w]
    }

    /// Walks from `v` down to the blossom base, marking cycle vertices and
    /// rethreading parent pointers so augmentation can cross the blossom.
    fn mark_path(&mut self, mut v: usize, cycle_base: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != cycle_base {
            let m = self.mate[v].expect("blossom vertex is matched");
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom vertex has a parent");
        }
    }

    fn augment(&mut self, root: usize, finish: usize) {
        let mut v = finish;
        while v != root {
            let prev = self.parent[v].expect("augmenting path is parent-linked");
            let next = self.mate[prev];
            self.mate[v] = Some(prev);
            self.mate[prev] = Some(v);
            match next {
                Some(next) => v = next,
                None => break,
            }
        }
    }
}

/// Lays out the matched pairs in consecutive two-bin blocks (ascending by
/// smaller index), then every unmatched chart in its own fresh block. The
/// layout is feasible by construction and its length is exactly
/// `2*pairs + 2*(n - 2*pairs)`.
pub fn matching_pack(instance: &Instance, matching: &MatchingResult) -> Packing {
    layout(instance, matching, false)
}

/// Same layout, then a greedy left-to-right pass that merges adjacent blocks
/// whenever the trailing right-bar load plus the next block's left-bar load
/// fits in one bin. Lengths no longer match the plain analysis, so this is
/// opt-in.
pub fn matching_pack_compact(instance: &Instance, matching: &MatchingResult) -> Packing {
    layout(instance, matching, true)
}

fn layout(instance: &Instance, matching: &MatchingResult, compact: bool) -> Packing {
    let n = instance.len();
    let mut matched = vec![false; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &(i, j) in matching.pairs() {
        matched[i] = true;
        matched[j] = true;
        blocks.push(vec![i, j]);
    }
    blocks.extend((0..n).filter(|&i| !matched[i]).map(|i| vec![i]));

    let capacity = crate::rational::Rational::one();
    let mut starts = vec![0usize; n];
    let mut next_start = 1usize;
    let mut trailing: Option<crate::rational::Rational> = None;
    for block in &blocks {
        let leading: crate::rational::Rational =
            block.iter().map(|&i| instance.chart(i).a()).sum();
        let start = match &trailing {
            Some(load) if compact && load + &leading <= capacity => next_start - 1,
            _ => next_start,
        };
        for &chart in block {
            starts[chart] = start;
        }
        trailing = Some(block.iter().map(|&i| instance.chart(i).b()).sum());
        next_start = start + 2;
    }
    Packing::new(starts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::BarChart;
    use crate::rational::ratio;
    use crate::verify::{check_feasible, packing_length};

    fn tenths(charts: &[(i64, i64)]) -> Instance {
        Instance::new(
            charts
                .iter()
                .map(|&(a, b)| BarChart::new(ratio(a, 10), ratio(b, 10)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn edges_require_both_sums_to_fit() {
        let inst = tenths(&[(6, 3), (3, 6), (5, 8)]);
        let graph = build_graph(&inst);
        assert_eq!(graph.edges(), &[(0, 1)]);
    }

    #[test]
    fn all_first_bars_big_gives_empty_graph() {
        let inst = tenths(&[(6, 1), (7, 2), (9, 3)]);
        assert_eq!(build_graph(&inst).edge_count(), 0);
        assert_eq!(max_matching(&build_graph(&inst)).cardinality(), 0);
    }

    #[test]
    fn triangle_matches_one_pair() {
        let graph = CompatibilityGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]);
        assert_eq!(max_matching(&graph).cardinality(), 1);
    }

    #[test]
    fn five_cycle_with_chord_needs_blossom_handling() {
        let graph = CompatibilityGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]);
        assert_eq!(max_matching(&graph).cardinality(), 2);
    }

    #[test]
    fn two_triangles_with_bridge_match_perfectly() {
        // Needs an augmenting path through both odd cycles.
        let graph = CompatibilityGraph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        );
        assert_eq!(max_matching(&graph).cardinality(), 3);
    }

    #[test]
    fn planted_pairs_match_perfectly() {
        let inst = tenths(&[(6, 4), (4, 6), (6, 4), (4, 6)]);
        let matching = max_matching(&build_graph(&inst));
        assert_eq!(matching.cardinality(), 2);
    }

    #[test]
    fn pack_places_pairs_then_singles() {
        let inst = tenths(&[(6, 3), (3, 6), (9, 9)]);
        let matching = max_matching(&build_graph(&inst));
        assert_eq!(matching.pairs(), &[(0, 1)]);
        let packing = matching_pack(&inst, &matching);
        assert_eq!(packing.starts(), &[1, 1, 3]);
        assert_eq!(packing_length(&inst, &packing).unwrap(), 4);
        let report = check_feasible(&inst, &packing).unwrap();
        assert_eq!(report.loads[&1], ratio(9, 10));
        assert_eq!(report.loads[&4], ratio(9, 10));
    }

    #[test]
    fn empty_matching_uses_two_bins_per_chart() {
        let inst = tenths(&[(6, 1), (7, 2), (9, 3)]);
        let packing = matching_pack(&inst, &max_matching(&build_graph(&inst)));
        assert_eq!(packing.starts(), &[1, 3, 5]);
        assert_eq!(packing_length(&inst, &packing).unwrap(), 6);
    }

    #[test]
    fn fully_matched_pair_fills_two_bins() {
        let inst = tenths(&[(6, 4), (4, 6)]);
        let packing = matching_pack(&inst, &max_matching(&build_graph(&inst)));
        assert_eq!(packing_length(&inst, &packing).unwrap(), 2);
    }

    #[test]
    fn compact_merges_blocks_that_fit() {
        // Singles (0.6, 0.1) and (0.8, 0.2): 0.1 + 0.8 <= 1 merges them.
        let inst = tenths(&[(6, 1), (8, 2)]);
        let matching = max_matching(&build_graph(&inst));
        assert_eq!(matching.cardinality(), 0);
        let plain = matching_pack(&inst, &matching);
        let compact = matching_pack_compact(&inst, &matching);
        assert_eq!(packing_length(&inst, &plain).unwrap(), 4);
        assert_eq!(packing_length(&inst, &compact).unwrap(), 3);
        check_feasible(&inst, &compact).unwrap();
    }
}
