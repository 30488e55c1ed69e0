//! Maximum matchings in general graphs (Edmonds' blossom algorithm), the
//! Erdős–Gallai edge threshold, and a verifier for the statements about
//! largest components of two dense graphs on a common vertex set.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Component, Graph};
use crate::hypergraph::{Pair, Vertex};
use crate::util::choose2;

const NONE: usize = usize::MAX;

/// A set of pairwise disjoint edges, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphMatching {
    pub pairs: Vec<Pair>,
}

impl GraphMatching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// True iff the pairs are disjoint and each one is an edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n() + 1];
        for &[a, b] in &self.pairs {
            if !g.has_edge(a, b) || used[a] || used[b] {
                return false;
            }
            used[a] = true;
            used[b] = true;
        }
        true
    }

    /// First `k` pairs in sorted order.
    pub fn truncated(&self, k: usize) -> GraphMatching {
        GraphMatching {
            pairs: self.pairs.iter().take(k).copied().collect(),
        }
    }
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let size = g.n() + 1;
        Blossom {
            g,
            mate: vec![NONE; size],
            parent: vec![NONE; size],
            base: (0..size).collect(),
            used: vec![false; size],
            in_blossom: vec![false; size],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from the exposed vertex `root`; returns
    /// the exposed endpoint found, or `NONE`.
    fn find_path(&mut self, root: usize) -> usize {
        let size = self.mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 1..size {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        NONE
    }

    fn run(mut self) -> Vec<usize> {
        // Greedy start; augmentations fix any suboptimal choices.
        for &[a, b] in self.g.edges() {
            if self.mate[a] == NONE && self.mate[b] == NONE {
                self.mate[a] = b;
                self.mate[b] = a;
            }
        }
        for v in 1..=self.g.n() {
            if self.mate[v] != NONE {
                continue;
            }
            let mut u = self.find_path(v);
            while u != NONE {
                let pv = self.parent[u];
                let ppv = self.mate[pv];
                self.mate[u] = pv;
                self.mate[pv] = u;
                u = ppv;
            }
        }
        self.mate
    }
}

/// A maximum-cardinality matching of `g`.
pub fn max_matching(g: &Graph) -> GraphMatching {
    let mate = Blossom::new(g).run();
    let pairs = (1..=g.n())
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| [v, mate[v]])
        .collect();
    GraphMatching { pairs }
}

/// `max{C(2k-1, 2), C(k-1, 2) + (k-1)(N-k+1)}`: any graph on `N` vertices
/// with strictly more edges has a matching of size `k`.
pub fn erdos_gallai_threshold(big_n: usize, k: usize) -> Result<usize> {
    if k < 1 || big_n < 1 {
        return Err(Error::invalid(format!("need N >= 1 and k >= 1, got N={big_n}, k={k}")));
    }
    if big_n + 1 < 2 * k {
        return Err(Error::invalid(format!(
            "a matching of size {k} needs N >= 2k-1 = {}, got N={big_n}",
            2 * k - 1
        )));
    }
    let first = choose2(2 * k - 1);
    let second = choose2(k - 1) + (k - 1) * (big_n - k + 1);
    Ok(first.max(second))
}

/// The connected component with the most vertices; ties go to the
/// lexicographically smallest vertex set.
pub fn largest_component(g: &Graph) -> Result<Component> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("graph has no edges: no component"));
    }
    let mut best: Option<Component> = None;
    // `components` is ordered by smallest vertex and components are
    // disjoint, so the first maximum is the lexicographically smallest.
    for c in g.components() {
        if best
            .as_ref()
            .map_or(true, |b| c.vertices.len() > b.vertices.len())
        {
            best = Some(c);
        }
    }
    Ok(best.expect("non-empty graph has a component"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeetMode {
    /// Reject inputs that violate the density precondition.
    Strict,
    /// Run regardless; the report is flagged when the precondition fails.
    Observe,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeetSide {
    pub component: Component,
    /// A matching inside the component of size `n/3` when one exists,
    /// otherwise a maximum matching of the component.
    pub matching: GraphMatching,
    /// Fraction of vertices outside the component.
    pub outside_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeetVerdicts {
    /// `v(C_i) > 2n/3` for both sides.
    pub large_components: bool,
    /// `e(C_i) > (4/9) C(n, 2)` for both sides.
    pub dense_components: bool,
    /// Both components hold a matching of size `n/3`.
    pub matchings: bool,
    /// The components share an edge.
    pub shared_edge: bool,
}

impl MeetVerdicts {
    pub fn all(&self) -> bool {
        self.large_components && self.dense_components && self.matchings && self.shared_edge
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphMeetReport {
    pub n: usize,
    pub precondition_met: bool,
    pub sides: [MeetSide; 2],
    pub shared_edge: Option<Pair>,
    pub verdicts: MeetVerdicts,
}

impl GraphMeetReport {
    /// Recomputes all four verdicts from the evidence alone.
    pub fn recompute_verdicts(&self) -> MeetVerdicts {
        let n = self.n;
        let target = n / 3;
        let large = self
            .sides
            .iter()
            .all(|s| 3 * s.component.vertices.len() > 2 * n);
        let dense = self
            .sides
            .iter()
            .all(|s| 9 * s.component.edges.len() > 4 * choose2(n));
        let matchings = self.sides.iter().all(|s| {
            let host = Graph::from_sorted(n, s.component.edges.clone());
            s.matching.size() == target && s.matching.is_valid_in(&host)
        });
        let shared = self.shared_edge.is_some_and(|e| {
            self.sides
                .iter()
                .all(|s| s.component.edges.binary_search(&e).is_ok())
        });
        MeetVerdicts {
            large_components: large,
            dense_components: dense,
            matchings,
            shared_edge: shared,
        }
    }
}

/// Strict density test `e(G) > (5/9) C(n, 2)` in integers.
pub fn above_five_ninths(g: &Graph) -> bool {
    9 * g.edge_count() > 5 * choose2(g.n())
}

fn meet_side(g: &Graph) -> MeetSide {
    let n = g.n();
    let component = largest_component(g).unwrap_or(Component {
        vertices: Vec::new(),
        edges: Vec::new(),
    });
    let host = Graph::from_sorted(n, component.edges.clone());
    let full = max_matching(&host);
    let matching = if full.size() >= n / 3 {
        full.truncated(n / 3)
    } else {
        full
    };
    let outside_fraction = if n == 0 {
        0.0
    } else {
        1.0 - component.vertices.len() as f64 / n as f64
    };
    MeetSide {
        component,
        matching,
        outside_fraction,
    }
}

pub fn graphmeet_verify(g1: &Graph, g2: &Graph, mode: MeetMode) -> Result<GraphMeetReport> {
    if g1.n() != g2.n() {
        return Err(Error::invalid(format!(
            "graphs have different vertex counts {} and {}",
            g1.n(),
            g2.n()
        )));
    }
    let n = g1.n();
    let mut problems = Vec::new();
    if n % 3 != 0 {
        problems.push(format!("3 does not divide n = {n}"));
    }
    for (i, g) in [g1, g2].into_iter().enumerate() {
        if !above_five_ninths(g) {
            problems.push(format!(
                "e(G{}) = {} is not > (5/9)*C({n},2) = {:.3}",
                i + 1,
                g.edge_count(),
                5.0 * choose2(n) as f64 / 9.0
            ));
        }
    }
    if !problems.is_empty() && mode == MeetMode::Strict {
        return Err(Error::Precondition(problems.join("; ")));
    }
    let sides = [meet_side(g1), meet_side(g2)];
    let shared_edge = sides[0]
        .component
        .edges
        .iter()
        .find(|e| sides[1].component.edges.binary_search(e).is_ok())
        .copied();
    let mut report = GraphMeetReport {
        n,
        precondition_met: problems.is_empty(),
        sides,
        shared_edge,
        verdicts: MeetVerdicts::default(),
    };
    report.verdicts = report.recompute_verdicts();
    Ok(report)
}

/// Vertices left uncovered by a matching, ascending.
pub fn uncovered(m: &GraphMatching, n: usize) -> Vec<Vertex> {
    let mut covered = vec![false; n + 1];
    for &[a, b] in &m.pairs {
        covered[a] = true;
        covered[b] = true;
    }
    (1..=n).filter(|&v| !covered[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (1..=n).map(|i| [i, i % n + 1])).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push([i + 1, (i + 1) % 5 + 1]);
            edges.push([i + 1, i + 6]);
            edges.push([i + 6, (i + 2) % 5 + 6]);
        }
        Graph::new(10, edges).unwrap()
    }

    /// Exhaustive maximum matching by branching on the lowest edge.
    fn brute_max(edges: &[Pair], used: u32) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&[a, b], rest)) => {
                let skip = brute_max(rest, used);
                if used & (1 << a) == 0 && used & (1 << b) == 0 {
                    skip.max(1 + brute_max(rest, used | 1 << a | 1 << b))
                } else {
                    skip
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(max_matching(&cycle(5)).size(), 2);
        assert_eq!(max_matching(&Graph::complete(4)).size(), 2);
        assert_eq!(max_matching(&Graph::empty(3)).size(), 0);
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let g = petersen();
        assert_eq!(brute_max(g.edges(), 0), 5);
        let m = max_matching(&g);
        assert_eq!(m.size(), 5);
        assert!(m.is_valid_in(&g));
    }

    #[test]
    fn blossom_needed() {
        // Two triangles joined by a path: greedy on sorted edges is stuck.
        let g = Graph::new(
            8,
            [[1, 2], [2, 3], [1, 3], [3, 4], [4, 5], [5, 6], [6, 7], [7, 8], [6, 8]],
        )
        .unwrap();
        assert_eq!(max_matching(&g).size(), brute_max(g.edges(), 0));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3000 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.05..0.9);
            let mut edges = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    if rng.gen_bool(p) {
                        edges.push([a, b]);
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let m = max_matching(&g);
            assert!(m.is_valid_in(&g));
            assert_eq!(m.size(), brute_max(g.edges(), 0), "{g:?}");
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(erdos_gallai_threshold(5, 2).unwrap(), 4);
        for n in 1..20 {
            assert_eq!(erdos_gallai_threshold(n, 1).unwrap(), 0);
        }
        assert!(erdos_gallai_threshold(0, 1).is_err());
        assert!(erdos_gallai_threshold(5, 0).is_err());
        assert!(erdos_gallai_threshold(4, 3).is_err());
        assert!(erdos_gallai_threshold(5, 3).is_ok());
    }

    #[test]
    fn threshold_is_tight_on_extremal_graphs() {
        // K_{2k-1} plus isolated vertices and K_{k-1} joined to everything
        // both have exactly `threshold` edges (for the maximising term) and
        // no matching of size k.
        for n in 3..=12 {
            for k in 2..=(n + 1) / 2 {
                let t = erdos_gallai_threshold(n, k).unwrap();
                let clique = Graph::new(
                    n,
                    (1..2 * k).flat_map(|a| (a + 1..2 * k).map(move |b| [a, b])),
                )
                .unwrap();
                let mut star_edges = Vec::new();
                for a in 1..k {
                    for b in a + 1..=n {
                        star_edges.push([a, b]);
                    }
                }
                let star = Graph::new(n, star_edges).unwrap();
                assert!(max_matching(&clique).size() < k);
                assert!(max_matching(&star).size() < k);
                assert_eq!(t, clique.edge_count().max(star.edge_count()));
            }
        }
    }

    #[test]
    fn largest_component_examples() {
        let k9 = Graph::complete(9);
        let c = largest_component(&k9).unwrap();
        assert_eq!(c.vertices, (1..=9).collect::<Vec<_>>());
        assert_eq!(c.edges.len(), 36);

        let mut edges = Vec::new();
        for a in 1..=4 {
            for b in a + 1..=4 {
                edges.push([a, b]);
            }
        }
        edges.extend([[5, 6], [5, 7], [6, 7]]);
        let g = Graph::new(7, edges).unwrap();
        assert_eq!(largest_component(&g).unwrap().vertices, vec![1, 2, 3, 4]);

        assert!(largest_component(&Graph::empty(4)).is_err());
    }

    #[test]
    fn largest_component_tie_break() {
        let g = Graph::new(6, [[4, 5], [1, 6]]).unwrap();
        assert_eq!(largest_component(&g).unwrap().vertices, vec![1, 6]);
    }

    #[test]
    fn graphmeet_on_complete() {
        let k9 = Graph::complete(9);
        let r = graphmeet_verify(&k9, &k9, MeetMode::Strict).unwrap();
        assert!(r.precondition_met);
        assert!(r.verdicts.all());
        assert_eq!(r.shared_edge, Some([1, 2]));
        assert_eq!(r.sides[0].matching.size(), 3);
        assert_eq!(r.verdicts, r.recompute_verdicts());
    }

    #[test]
    fn graphmeet_rejects_sparse_input() {
        // K_6 ∪ K_3 on 9 vertices: 15 + 3 = 18 edges, not above 20.
        let mut edges = Vec::new();
        for a in 1..=6 {
            for b in a + 1..=6 {
                edges.push([a, b]);
            }
        }
        edges.extend([[7, 8], [7, 9], [8, 9]]);
        let g = Graph::new(9, edges).unwrap();
        assert_eq!(g.edge_count(), 18);
        assert!(matches!(
            graphmeet_verify(&g, &g, MeetMode::Strict),
            Err(Error::Precondition(_))
        ));
        let observed = graphmeet_verify(&g, &g, MeetMode::Observe).unwrap();
        assert!(!observed.precondition_met);
        // The K_6 side covers exactly 2n/3 vertices, so (i) fails.
        assert!(!observed.verdicts.large_components);
        assert_eq!(observed.verdicts, observed.recompute_verdicts());
    }

    #[test]
    fn graphmeet_rejects_mismatched_sizes() {
        assert!(graphmeet_verify(&Graph::complete(9), &Graph::complete(6), MeetMode::Observe).is_err());
    }

    #[test]
    fn uncovered_vertices() {
        let m = GraphMatching {
            pairs: vec![[1, 4], [2, 5]],
        };
        assert_eq!(uncovered(&m, 6), vec![3, 6]);
    }
}
