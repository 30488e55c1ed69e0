//! Tight components: equivalence classes of edges under "shares two
//! vertices", computed with a union-find over the pair index.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Component;
use crate::hypergraph::{canonical, pairs_of, Hypergraph3, Triple, Vertex};

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Tight-component label of every edge, indexed by edge id. Ids are
/// contiguous and assigned in order of each component's first canonical edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightComponentLabeling {
    pub labels: Vec<usize>,
    pub component_count: usize,
    pub component_sizes: Vec<usize>,
}

impl TightComponentLabeling {
    pub fn label_of(&self, h: &Hypergraph3, e: Triple) -> Option<usize> {
        h.edge_id(e).map(|id| self.labels[id])
    }

    /// Id of the component with the most edges (smallest id on ties).
    pub fn largest(&self) -> Option<usize> {
        (0..self.component_count).max_by_key(|&c| (self.component_sizes[c], std::cmp::Reverse(c)))
    }
}

pub fn tight_components(h: &Hypergraph3) -> TightComponentLabeling {
    let m = h.edge_count();
    let mut uf = UnionFind::new(m);
    for (id, e) in h.edges().iter().enumerate() {
        for [a, b] in pairs_of(e) {
            let group = h.edges_with_pair(a, b);
            // Every edge of the group is united with the group's first edge,
            // so uniting `id` with it suffices.
            if let Some(&first) = group.first() {
                uf.union(first, id);
            }
        }
    }
    let mut root_label = vec![usize::MAX; m];
    let mut labels = Vec::with_capacity(m);
    let mut component_sizes = Vec::new();
    for id in 0..m {
        let r = uf.find(id);
        if root_label[r] == usize::MAX {
            root_label[r] = component_sizes.len();
            component_sizes.push(0);
        }
        let label = root_label[r];
        component_sizes[label] += 1;
        labels.push(label);
    }
    TightComponentLabeling {
        labels,
        component_count: component_sizes.len(),
        component_sizes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TightConnectivity {
    /// No edges at all; not tightly connected.
    Empty,
    Connected,
    Disconnected { components: usize },
}

impl TightConnectivity {
    pub fn is_connected(self) -> bool {
        self == TightConnectivity::Connected
    }
}

pub fn tight_connectivity(h: &Hypergraph3) -> TightConnectivity {
    match tight_components(h).component_count {
        0 => TightConnectivity::Empty,
        1 => TightConnectivity::Connected,
        c => TightConnectivity::Disconnected { components: c },
    }
}

pub fn is_tightly_connected(h: &Hypergraph3) -> bool {
    tight_connectivity(h).is_connected()
}

/// `C_u^*`: the edges `{u} ∪ p` for the edges `p` of the link component `c`.
pub fn component_star(h: &Hypergraph3, u: Vertex, c: &Component) -> Result<Vec<Triple>> {
    let link = h.link_graph(u)?;
    let mut vertices = c.vertices.clone();
    vertices.sort_unstable();
    let mut edges = c.edges.clone();
    edges.sort_unstable();
    let found = link
        .components()
        .into_iter()
        .any(|comp| comp.vertices == vertices && comp.edges == edges);
    if !found {
        return Err(Error::invalid(format!(
            "vertex set {:?} is not a component of the link graph of {u}",
            vertices
        )));
    }
    let mut star: Vec<Triple> = edges.iter().map(|&[a, b]| canonical([u, a, b])).collect();
    star.sort_unstable();
    Ok(star)
}

/// A shortest tight walk from `from` to `to`, or `None` when they lie in
/// different tight components.
pub fn tight_walk(h: &Hypergraph3, from: Triple, to: Triple) -> Option<Vec<Triple>> {
    let start = h.edge_id(from)?;
    let goal = h.edge_id(to)?;
    let mut prev = vec![usize::MAX; h.edge_count()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(id) = queue.pop_front() {
        if id == goal {
            let mut walk = vec![h.edge(id)];
            let mut cur = id;
            while cur != start {
                cur = prev[cur];
                walk.push(h.edge(cur));
            }
            walk.reverse();
            return Some(walk);
        }
        for [a, b] in pairs_of(&h.edge(id)) {
            for &next in h.edges_with_pair(a, b) {
                if prev[next] == usize::MAX {
                    prev[next] = id;
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[Triple]) -> Hypergraph3 {
        Hypergraph3::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn shared_pair_joins() {
        let l = tight_components(&h(4, &[[1, 2, 3], [2, 3, 4]]));
        assert_eq!(l.component_count, 1);
        assert_eq!(l.component_sizes, vec![2]);
    }

    #[test]
    fn disjoint_edges_split() {
        let g = h(6, &[[1, 2, 3], [4, 5, 6]]);
        let l = tight_components(&g);
        assert_eq!(l.component_count, 2);
        assert_eq!(l.labels, vec![0, 1]);
        assert_eq!(tight_connectivity(&g), TightConnectivity::Disconnected { components: 2 });
        assert!(!is_tightly_connected(&g));
    }

    #[test]
    fn single_shared_vertex_is_not_enough() {
        let l = tight_components(&h(5, &[[1, 2, 3], [3, 4, 5]]));
        assert_eq!(l.component_count, 2);
    }

    #[test]
    fn complete_graphs_are_tightly_connected() {
        assert!(is_tightly_connected(&Hypergraph3::complete(4)));
        assert_eq!(tight_components(&Hypergraph3::complete(5)).component_count, 1);
    }

    #[test]
    fn empty_is_reported_distinctly() {
        let g = Hypergraph3::empty(4);
        assert_eq!(tight_connectivity(&g), TightConnectivity::Empty);
        assert!(!is_tightly_connected(&g));
        assert_eq!(tight_components(&g).component_count, 0);
    }

    #[test]
    fn labels_follow_first_canonical_edge() {
        // {1,5,6} sorts first but lies in the second-listed group.
        let g = h(7, &[[2, 3, 4], [1, 5, 6], [1, 5, 7], [3, 4, 7]]);
        let l = tight_components(&g);
        assert_eq!(g.edges()[0], [1, 5, 6]);
        assert_eq!(l.labels[0], 0);
        assert_eq!(l.label_of(&g, [2, 3, 4]), Some(1));
        assert_eq!(l.label_of(&g, [7, 4, 3]), Some(1));
        assert_eq!(l.largest(), Some(0));
    }

    #[test]
    fn star_of_k4() {
        let g = Hypergraph3::complete(4);
        let link = g.link_graph(1).unwrap();
        let comp = link
            .components()
            .into_iter()
            .find(|c| c.vertices == vec![2, 3, 4])
            .unwrap();
        let star = component_star(&g, 1, &comp).unwrap();
        assert_eq!(star, vec![[1, 2, 3], [1, 2, 4], [1, 3, 4]]);
    }

    #[test]
    fn star_of_single_edge() {
        let g = h(6, &[[1, 2, 3], [4, 5, 6]]);
        let c = Component {
            vertices: vec![2, 3],
            edges: vec![[2, 3]],
        };
        assert_eq!(component_star(&g, 1, &c).unwrap(), vec![[1, 2, 3]]);
    }

    #[test]
    fn star_rejects_non_components() {
        let g = Hypergraph3::complete(4);
        let partial = Component {
            vertices: vec![2, 3],
            edges: vec![[2, 3]],
        };
        assert!(matches!(
            component_star(&g, 1, &partial),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn walk_reconstruction() {
        let g = h(6, &[[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 6]]);
        let walk = tight_walk(&g, [1, 2, 3], [4, 5, 6]).unwrap();
        assert_eq!(walk.len(), 4);
        for w in walk.windows(2) {
            let shared = w[0].iter().filter(|v| w[1].contains(v)).count();
            assert_eq!(shared, 2);
        }
        let g2 = h(6, &[[1, 2, 3], [4, 5, 6]]);
        assert!(tight_walk(&g2, [1, 2, 3], [4, 5, 6]).is_none());
        assert_eq!(tight_walk(&g2, [1, 2, 3], [1, 2, 3]).unwrap().len(), 1);
    }
}
