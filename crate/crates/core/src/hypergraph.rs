//! 3-uniform hypergraphs on the vertex set `1..=n`.
//!
//! Edges are stored as ascending triples in canonical (lexicographic) order.
//! Both an edge index and a pair index are built eagerly, so membership and
//! codegree queries are hash lookups.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::util::choose2;

pub type Vertex = usize;
pub type Triple = [Vertex; 3];
pub type Pair = [Vertex; 2];

/// Sorts a triple ascending.
pub fn canonical(mut t: Triple) -> Triple {
    t.sort_unstable();
    t
}

fn pair(a: Vertex, b: Vertex) -> Pair {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// The three 2-subsets of a canonical triple.
pub fn pairs_of(t: &Triple) -> [Pair; 3] {
    [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]]
}

#[derive(Clone)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<Triple>,
    index: HashMap<Triple, usize>,
    pair_index: HashMap<Pair, Vec<usize>>,
    vertex_degree: Vec<usize>,
}

impl PartialEq for Hypergraph3 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph3 {}

impl fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph3")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph3 {
    /// Builds a hypergraph, rejecting out-of-range vertices, repeated
    /// vertices within an edge and duplicate edges. Vertex order inside an
    /// edge is irrelevant.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Triple>,
    {
        let mut sorted = Vec::new();
        for e in edges {
            let e = canonical(e);
            if e[0] < 1 || e[2] > n {
                return Err(Error::invalid(format!(
                    "edge {:?} has a vertex outside 1..={n}",
                    e
                )));
            }
            if e[0] == e[1] || e[1] == e[2] {
                return Err(Error::invalid(format!("edge {:?} repeats a vertex", e)));
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self::from_sorted(n, sorted))
    }

    /// `edges` must already be canonical, sorted, distinct and in range.
    pub(crate) fn from_sorted(n: usize, edges: Vec<Triple>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut index = HashMap::with_capacity(edges.len());
        let mut pair_index: HashMap<Pair, Vec<usize>> = HashMap::new();
        let mut vertex_degree = vec![0; n + 1];
        for (id, e) in edges.iter().enumerate() {
            index.insert(*e, id);
            for p in pairs_of(e) {
                pair_index.entry(p).or_default().push(id);
            }
            for &v in e {
                vertex_degree[v] += 1;
            }
        }
        Hypergraph3 {
            n,
            edges,
            index,
            pair_index,
            vertex_degree,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    /// The complete 3-graph `K_n^(3)`.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    edges.push([a, b, c]);
                }
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

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Triple {
        self.edges[id]
    }

    /// Position of `e` (any vertex order) in the canonical edge list.
    pub fn edge_id(&self, e: Triple) -> Option<usize> {
        self.index.get(&canonical(e)).copied()
    }

    pub fn contains(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        self.index.contains_key(&canonical([a, b, c]))
    }

    /// Ids of the edges containing the pair `{a, b}`.
    pub fn edges_with_pair(&self, a: Vertex, b: Vertex) -> &[usize] {
        self.pair_index
            .get(&pair(a, b))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Unchecked vertex degree; `v` must lie in `1..=n`.
    pub fn vertex_degree(&self, v: Vertex) -> usize {
        self.vertex_degree[v]
    }

    pub fn pair_degree(&self, a: Vertex, b: Vertex) -> usize {
        self.edges_with_pair(a, b).len()
    }

    /// `d(S)`: number of edges containing the vertex set `S`, `|S| ∈ {1, 2}`.
    ///
    /// The signature takes a slice so that a `k`-uniform generalisation can
    /// accept larger sets without breaking callers.
    pub fn degree(&self, s: &[Vertex]) -> Result<usize> {
        if let Some(&v) = s.iter().find(|&&v| v < 1 || v > self.n) {
            return Err(Error::invalid(format!("vertex {v} outside 1..={}", self.n)));
        }
        match *s {
            [v] => Ok(self.vertex_degree(v)),
            [a, b] if a != b => Ok(self.pair_degree(a, b)),
            [_, _] => Err(Error::invalid("degree set repeats a vertex")),
            _ => Err(Error::invalid(format!(
                "degree set must have size 1 or 2, got {}",
                s.len()
            ))),
        }
    }

    /// `δ_s(H)` for `s ∈ {1, 2}`.
    pub fn min_degree(&self, s: usize) -> Result<usize> {
        match s {
            1 | 2 if self.n < s => Err(Error::invalid(format!(
                "minimum {s}-degree needs at least {s} vertices, have {}",
                self.n
            ))),
            1 => Ok((1..=self.n)
                .map(|v| self.vertex_degree(v))
                .min()
                .unwrap_or(0)),
            2 => {
                let mut best = usize::MAX;
                for a in 1..=self.n {
                    for b in a + 1..=self.n {
                        best = best.min(self.pair_degree(a, b));
                    }
                }
                Ok(best)
            }
            _ => Err(Error::invalid(format!("s must be 1 or 2, got {s}"))),
        }
    }

    /// Link graph `L(v)` on all `n` vertices; `v` itself stays isolated.
    pub fn link_graph(&self, v: Vertex) -> Result<Graph> {
        if v < 1 || v > self.n {
            return Err(Error::invalid(format!("vertex {v} outside 1..={}", self.n)));
        }
        let mut pairs = Vec::with_capacity(self.vertex_degree(v));
        for e in &self.edges {
            if e.contains(&v) {
                let mut rest = e.iter().copied().filter(|&x| x != v);
                let a = rest.next().unwrap();
                let b = rest.next().unwrap();
                pairs.push([a, b]);
            }
        }
        pairs.sort_unstable();
        Ok(Graph::from_sorted(self.n, pairs))
    }

    /// Sub-hypergraph keeping the edges whose ids satisfy `keep`; the vertex
    /// set is unchanged.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &Triple) -> bool) -> Hypergraph3 {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(id, e)| keep(*id, e))
            .map(|(_, e)| *e)
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Induced sub-hypergraph on `vertices`, relabelled to `1..=k` in the
    /// given order. Returns the new graph and the map new label -> old vertex
    /// (index 0 unused).
    pub fn induced(&self, vertices: &[Vertex]) -> (Hypergraph3, Vec<Vertex>) {
        let mut relabel = vec![0; self.n + 1];
        let mut back = vec![0; vertices.len() + 1];
        for (i, &v) in vertices.iter().enumerate() {
            relabel[v] = i + 1;
            back[i + 1] = v;
        }
        let mut edges: Vec<Triple> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| relabel[v] != 0))
            .map(|e| canonical([relabel[e[0]], relabel[e[1]], relabel[e[2]]]))
            .collect();
        edges.sort_unstable();
        (Self::from_sorted(vertices.len(), edges), back)
    }

    /// Copy of `self` with `e` added (no-op if already present).
    pub fn with_edge(&self, e: Triple) -> Result<Hypergraph3> {
        if self.edge_id(e).is_some() {
            return Ok(self.clone());
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Hypergraph3::new(self.n, edges)
    }

    /// Relative degree `d(v) / C(n-1, 2)`.
    pub fn relative_degree(&self, v: Vertex) -> Result<f64> {
        let d = self.degree(&[v])?;
        let denom = choose2(self.n.saturating_sub(1));
        if denom == 0 {
            return Err(Error::invalid("relative degree needs n >= 3"));
        }
        Ok(d as f64 / denom as f64)
    }

    /// Serialises to the `.3g` text format.
    pub fn to_text(&self) -> String {
        self.to_text_with_comment(None)
    }

    /// `.3g` text with an optional `#` comment line after the header.
    pub fn to_text_with_comment(&self, comment: Option<&str>) -> String {
        let mut out = format!("3 {}\n", self.n);
        if let Some(c) = comment {
            for line in c.lines() {
                out.push_str("# ");
                out.push_str(line);
                out.push('\n');
            }
        }
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e[0], e[1], e[2]));
        }
        out
    }
}

impl fmt::Display for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Shared reader for the `.3g` / `.2g` formats: a header `k n` followed by
/// one edge of `k` integers per line; `#` lines and blank lines are skipped.
pub(crate) fn parse_uniform<const K: usize>(text: &str) -> Result<(usize, Vec<[Vertex; K]>)> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen: HashMap<[Vertex; K], usize> = HashMap::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(n) = header else {
            if fields.len() != 2 {
                return Err(Error::parse(line_no, format!("expected header `{K} <n>`, got `{line}`")));
            }
            let k: usize = fields[0]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad arity `{}`", fields[0])))?;
            if k != K {
                return Err(Error::parse(line_no, format!("expected arity {K}, header says {k}")));
            }
            let n = fields[1]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad vertex count `{}`", fields[1])))?;
            header = Some(n);
            continue;
        };
        if fields.len() != K {
            return Err(Error::parse(
                line_no,
                format!("expected {K} vertices, found {}", fields.len()),
            ));
        }
        let mut e = [0; K];
        for (slot, tok) in e.iter_mut().zip(&fields) {
            let v: Vertex = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad vertex `{tok}`")))?;
            if v < 1 || v > n {
                return Err(Error::parse(line_no, format!("vertex {v} outside 1..={n}")));
            }
            *slot = v;
        }
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse(line_no, "edge repeats a vertex"));
        }
        if let Some(first) = seen.insert(e, line_no) {
            return Err(Error::parse(
                line_no,
                format!("duplicate edge {:?} (first seen at line {first})", e),
            ));
        }
        edges.push(e);
    }
    let n = header.ok_or_else(|| Error::parse(last_line.max(1), "missing header"))?;
    edges.sort_unstable();
    Ok((n, edges))
}

impl FromStr for Hypergraph3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, edges) = parse_uniform::<3>(s)?;
        Ok(Hypergraph3::from_sorted(n, edges))
    }
}

pub fn read_hypergraph(text: &str) -> Result<Hypergraph3> {
    text.parse()
}

pub fn write_hypergraph(h: &Hypergraph3) -> String {
    h.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Hypergraph3 {
        Hypergraph3::complete(4)
    }

    #[test]
    fn degrees_of_k4() {
        let h = k4();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.degree(&[1]).unwrap(), 3);
        assert_eq!(h.degree(&[1, 2]).unwrap(), 2);
        assert_eq!(h.degree(&[2, 1]).unwrap(), 2);
    }

    #[test]
    fn degree_rejects_bad_sets() {
        let h = k4();
        assert!(matches!(h.degree(&[]), Err(Error::InvalidArgument(_))));
        assert!(matches!(h.degree(&[1, 2, 3]), Err(Error::InvalidArgument(_))));
        assert!(matches!(h.degree(&[5]), Err(Error::InvalidArgument(_))));
        assert!(matches!(h.degree(&[0, 1]), Err(Error::InvalidArgument(_))));
        assert!(matches!(h.degree(&[2, 2]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(Hypergraph3::complete(5).min_degree(1).unwrap(), 6);
        assert_eq!(Hypergraph3::complete(5).min_degree(2).unwrap(), 3);
        assert_eq!(Hypergraph3::empty(5).min_degree(1).unwrap(), 0);
        assert!(Hypergraph3::empty(1).min_degree(2).is_err());
        assert!(Hypergraph3::empty(5).min_degree(3).is_err());
    }

    #[test]
    fn link_graph_of_k4() {
        let l = k4().link_graph(1).unwrap();
        assert_eq!(l.n(), 4);
        assert_eq!(l.edges(), &[[2, 3], [2, 4], [3, 4]]);
        assert_eq!(l.degree(1), 0);
    }

    #[test]
    fn link_graph_of_uncovered_vertex() {
        let h = Hypergraph3::new(4, [[1, 2, 3]]).unwrap();
        let l = h.link_graph(4).unwrap();
        assert_eq!(l.n(), 4);
        assert_eq!(l.edge_count(), 0);
        assert!(h.link_graph(5).is_err());
        assert!(h.link_graph(0).is_err());
    }

    #[test]
    fn construction_validates() {
        assert!(Hypergraph3::new(3, [[1, 2, 4]]).is_err());
        assert!(Hypergraph3::new(3, [[1, 1, 2]]).is_err());
        assert!(Hypergraph3::new(3, [[1, 2, 3], [3, 2, 1]]).is_err());
        let h = Hypergraph3::new(4, [[4, 2, 1]]).unwrap();
        assert_eq!(h.edges(), &[[1, 2, 4]]);
    }

    #[test]
    fn parse_example() {
        let h: Hypergraph3 = "3 4\n1 2 3\n1 2 4\n".parse().unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn parse_duplicate_reports_line() {
        let err = "3 3\n1 2 3\n1 2 3\n".parse::<Hypergraph3>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = "3 3\n1 2 3\n# c\n3 1 2\n".parse::<Hypergraph3>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("", 1),
            ("3\n", 1),
            ("2 4\n1 2\n", 1),
            ("3 x\n", 1),
            ("3 4\n1 2\n", 2),
            ("3 4\n1 2 5\n", 2),
            ("3 4\n1 2 2\n", 2),
            ("# hi\n3 4\n1 2 q\n", 3),
        ];
        for (text, line) in cases {
            match text.parse::<Hypergraph3>() {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn parse_accepts_comments_and_any_order() {
        let h: Hypergraph3 = "# generated\n3 5\n\n5 4 3\n# mid\n2 1 3\n".parse().unwrap();
        assert_eq!(h.edges(), &[[1, 2, 3], [3, 4, 5]]);
        assert_eq!(h.to_text(), "3 5\n1 2 3\n3 4 5\n");
    }

    #[test]
    fn canonical_text_round_trips_byte_identically() {
        let text = "3 6\n1 2 3\n1 4 6\n2 5 6\n";
        let h = read_hypergraph(text).unwrap();
        assert_eq!(write_hypergraph(&h), text);
    }

    #[test]
    fn induced_relabels() {
        let h = Hypergraph3::complete(5);
        let (g, back) = h.induced(&[5, 2, 3]);
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[[1, 2, 3]]);
        assert_eq!(&back[1..], &[5, 2, 3]);
    }
}
