//! Simple graphs on `1..=n`, used for link graphs and matching work.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{parse_uniform, Pair, Vertex};

#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Pair>,
    edge_set: HashSet<Pair>,
    adj: Vec<Vec<Vertex>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// A connected component: sorted vertices and sorted edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Pair>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Pair>,
    {
        let mut sorted = Vec::new();
        for [a, b] in edges {
            let e = if a < b { [a, b] } else { [b, a] };
            if e[0] < 1 || e[1] > n {
                return Err(Error::invalid(format!("edge {:?} outside 1..={n}", e)));
            }
            if e[0] == e[1] {
                return Err(Error::invalid(format!("loop at {}", e[0])));
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self::from_sorted(n, sorted))
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<Pair>) -> Self {
        let mut adj = vec![Vec::new(); n + 1];
        for &[a, b] in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let edge_set = edges.iter().copied().collect();
        Graph {
            n,
            edges,
            edge_set,
            adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                edges.push([a, b]);
            }
        }
        Self::from_sorted(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Pair] {
        &self.edges
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        let e = if a < b { [a, b] } else { [b, a] };
        self.edge_set.contains(&e)
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// All connected components, isolated vertices included, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Component> {
        let mut comp_of = vec![usize::MAX; self.n + 1];
        let mut comps: Vec<Component> = Vec::new();
        for s in 1..=self.n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![s];
            comp_of[s] = id;
            let mut vertices = Vec::new();
            while let Some(v) = stack.pop() {
                vertices.push(v);
                for &w in &self.adj[v] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        stack.push(w);
                    }
                }
            }
            vertices.sort_unstable();
            comps.push(Component {
                vertices,
                edges: Vec::new(),
            });
        }
        for &e in &self.edges {
            comps[comp_of[e[0]]].edges.push(e);
        }
        comps
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("2 {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e[0], e[1]));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, edges) = parse_uniform::<2>(s)?;
        Ok(Graph::from_sorted(n, edges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn handshake_on_complete() {
        let g = Graph::complete(6);
        let total: usize = (1..=6).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new(3, [[1, 1]]).is_err());
        assert!(Graph::new(3, [[1, 2], [2, 1]]).is_err());
        assert!(Graph::new(3, [[1, 4]]).is_err());
    }

    #[test]
    fn components_include_isolated_vertices() {
        let g = Graph::new(5, [[1, 2], [4, 5]]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].vertices, vec![1, 2]);
        assert_eq!(comps[1].vertices, vec![3]);
        assert!(comps[1].edges.is_empty());
        assert_eq!(comps[2].edges, vec![[4, 5]]);
    }

    #[test]
    fn text_format() {
        let g: Graph = "# link\n2 4\n3 1\n2 3\n".parse().unwrap();
        assert_eq!(g.to_text(), "2 4\n1 3\n2 3\n");
        let err = "2 4\n1 2\n2 1\n".parse::<Graph>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!("3 4\n1 2 3\n".parse::<Graph>().is_err());
    }
}
