//! Weak slices (random equipartitions with explicit pair graphs), relative
//! densities, weighted and thresholded reduced graphs, sampled irregularity
//! witnesses and the cluster-level degree inequality.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, Triple, Vertex};
use crate::util::{choose2, choose3, fmt_rational, ratio, stream_rng};

/// Bipartite pair graphs between clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairGraphs {
    /// Every crossing pair is present.
    Complete,
    /// Only the listed crossing pairs (stored ascending) are present.
    Explicit(HashSet<[Vertex; 2]>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSlice {
    pub n: usize,
    pub t: usize,
    pub m: usize,
    /// Cluster `i` (0-based) as a sorted vertex list.
    pub clusters: Vec<Vec<Vertex>>,
    pub deleted: Vec<Vertex>,
    pub pair_graphs: PairGraphs,
    cluster_of: Vec<Option<usize>>,
}

impl WeakSlice {
    /// Slice from explicit clusters; all clusters must have the same size and
    /// be pairwise disjoint.
    pub fn from_clusters(n: usize, clusters: Vec<Vec<Vertex>>, pair_graphs: PairGraphs) -> Result<Self> {
        let t = clusters.len();
        if t < 3 {
            return Err(Error::invalid(format!("need at least 3 clusters, got {t}")));
        }
        let m = clusters[0].len();
        if m == 0 || clusters.iter().any(|c| c.len() != m) {
            return Err(Error::invalid("clusters must be non-empty and of equal size"));
        }
        let mut cluster_of = vec![None; n + 1];
        let mut sorted = Vec::with_capacity(t);
        for (i, c) in clusters.into_iter().enumerate() {
            let mut c = c;
            c.sort_unstable();
            for &v in &c {
                if v < 1 || v > n {
                    return Err(Error::invalid(format!("vertex {v} outside 1..={n}")));
                }
                if cluster_of[v].is_some() {
                    return Err(Error::invalid(format!("vertex {v} in two clusters")));
                }
                cluster_of[v] = Some(i);
            }
            sorted.push(c);
        }
        let deleted = (1..=n).filter(|&v| cluster_of[v].is_none()).collect();
        Ok(WeakSlice {
            n,
            t,
            m,
            clusters: sorted,
            deleted,
            pair_graphs,
            cluster_of,
        })
    }

    pub fn cluster_of(&self, v: Vertex) -> Option<usize> {
        self.cluster_of.get(v).copied().flatten()
    }

    /// Whether the crossing pair `{u, v}` belongs to the pair graph.
    pub fn has_pair(&self, u: Vertex, v: Vertex) -> bool {
        match (self.cluster_of(u), self.cluster_of(v)) {
            (Some(a), Some(b)) if a != b => match &self.pair_graphs {
                PairGraphs::Complete => true,
                PairGraphs::Explicit(set) => set.contains(&if u < v { [u, v] } else { [v, u] }),
            },
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "t": self.t,
            "m": self.m,
            "clusters": self.clusters,
            "deleted": self.deleted,
            "pair_graphs": match &self.pair_graphs {
                PairGraphs::Complete => json!("complete"),
                PairGraphs::Explicit(set) => {
                    let mut v: Vec<_> = set.iter().copied().collect();
                    v.sort_unstable();
                    json!(v)
                }
            },
        })
    }
}

/// Deletes `n mod t` seed-chosen vertices and splits the rest uniformly at
/// random into `t` clusters of equal size, with complete pair graphs.
pub fn build_weak_slice(h: &Hypergraph3, t: usize, seed: u64) -> Result<WeakSlice> {
    let n = h.n();
    if t < 3 {
        return Err(Error::invalid(format!("t = {t} < 3")));
    }
    if t > n {
        return Err(Error::invalid(format!("t = {t} exceeds n = {n}")));
    }
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(&mut stream_rng(seed, 0));
    let drop = n % t;
    let m = n / t;
    let clusters = order[drop..].chunks(m).map(|c| c.to_vec()).collect();
    WeakSlice::from_clusters(n, clusters, PairGraphs::Complete)
}

/// Triangle and edge counts of the polyad spanned by `parts`, where each part
/// is a vertex list inside a distinct cluster.
fn polyad_counts(h: &Hypergraph3, s: &WeakSlice, parts: [&[Vertex]; 3]) -> (usize, usize) {
    let [p, q, r] = parts;
    let complete = matches!(s.pair_graphs, PairGraphs::Complete);
    let mut triangles = 0;
    let mut edges = 0;
    if complete {
        triangles = p.len() * q.len() * r.len();
        let in_r: HashSet<Vertex> = r.iter().copied().collect();
        for &x in p {
            for &y in q {
                for &id in h.edges_with_pair(x, y) {
                    let e = h.edge(id);
                    let z = e[0] + e[1] + e[2] - x - y;
                    if in_r.contains(&z) {
                        edges += 1;
                    }
                }
            }
        }
        return (triangles, edges);
    }
    for &x in p {
        for &y in q {
            if !s.has_pair(x, y) {
                continue;
            }
            for &z in r {
                if s.has_pair(x, z) && s.has_pair(y, z) {
                    triangles += 1;
                    if h.contains(x, y, z) {
                        edges += 1;
                    }
                }
            }
        }
    }
    (triangles, edges)
}

fn check_triple(s: &WeakSlice, x: [usize; 3]) -> Result<()> {
    if x.iter().any(|&c| c >= s.t) || x[0] == x[1] || x[0] == x[2] || x[1] == x[2] {
        return Err(Error::invalid(format!("{x:?} is not a 3-set of clusters below {}", s.t)));
    }
    Ok(())
}

fn density_of(triangles: usize, edges: usize) -> BigRational {
    if triangles == 0 {
        BigRational::zero()
    } else {
        ratio(edges, triangles)
    }
}

/// `|K_3(polyad) ∩ H| / |K_3(polyad)|`, zero when the polyad has no triangles.
pub fn relative_density(h: &Hypergraph3, s: &WeakSlice, x: [usize; 3]) -> Result<BigRational> {
    check_triple(s, x)?;
    let (tri, e) = polyad_counts(h, s, [&s.clusters[x[0]], &s.clusters[x[1]], &s.clusters[x[2]]]);
    Ok(density_of(tri, e))
}

/// All 3-subsets of `0..t` in colex order.
pub fn colex_triples(t: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(choose3(t));
    for k in 2..t {
        for j in 1..k {
            for i in 0..j {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Position of a sorted 3-set in [`colex_triples`] order.
pub fn colex_index(x: [usize; 3]) -> usize {
    choose3(x[2]) + choose2(x[1]) + x[0]
}

/// A sub-polyad on which the density deviates from the polyad density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrregularityWitness {
    pub clusters: [usize; 3],
    pub parts: [Vec<Vertex>; 3],
    pub triangles: usize,
    pub edges: usize,
    pub density: BigRational,
    pub reference_density: BigRational,
}

impl IrregularityWitness {
    /// Recomputes both densities from scratch and checks the sub-polyad is
    /// large enough and the gap exceeds `eps`.
    pub fn verify(&self, h: &Hypergraph3, s: &WeakSlice, eps: &BigRational) -> bool {
        let x = self.clusters;
        if check_triple(s, x).is_err() {
            return false;
        }
        for (part, &c) in self.parts.iter().zip(&x) {
            if part.iter().any(|&v| s.cluster_of(v) != Some(c)) {
                return false;
            }
        }
        let (tri_all, e_all) = polyad_counts(h, s, [&s.clusters[x[0]], &s.clusters[x[1]], &s.clusters[x[2]]]);
        let (tri, e) = polyad_counts(h, s, [&self.parts[0], &self.parts[1], &self.parts[2]]);
        let d_sub = density_of(tri, e);
        let gap = if d_sub > self.reference_density {
            &d_sub - &self.reference_density
        } else {
            &self.reference_density - &d_sub
        };
        tri == self.triangles
            && e == self.edges
            && d_sub == self.density
            && density_of(tri_all, e_all) == self.reference_density
            && BigRational::from_integer(tri.into()) > eps * BigRational::from_integer(tri_all.into())
            && &gap > eps
    }
}

/// Samples `samples` random induced sub-polyads `Q` of the polyad on `x`
/// with `|K_3(Q)| > eps·|K_3|` and returns the first whose density differs
/// from `d` by more than `eps`. `None` is not evidence of regularity.
pub fn irregularity_witness(
    h: &Hypergraph3,
    s: &WeakSlice,
    x: [usize; 3],
    d: &BigRational,
    eps: &BigRational,
    samples: usize,
    seed: u64,
) -> Result<Option<IrregularityWitness>> {
    check_triple(s, x)?;
    if !(eps > &BigRational::zero() && eps < &BigRational::one()) {
        return Err(Error::invalid("eps must lie in (0, 1)"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let (tri_all, _) = polyad_counts(h, s, [&s.clusters[x[0]], &s.clusters[x[1]], &s.clusters[x[2]]]);
    let floor = eps * BigRational::from_integer(tri_all.into());
    let mut rng = stream_rng(seed, colex_index(x) as u64);
    for _ in 0..samples {
        let parts: [Vec<Vertex>; 3] = std::array::from_fn(|i| {
            let cluster = &s.clusters[x[i]];
            let size = rng.gen_range(1..=cluster.len());
            let mut part: Vec<Vertex> = cluster.choose_multiple(&mut rng, size).copied().collect();
            part.sort_unstable();
            part
        });
        let (tri, e) = polyad_counts(h, s, [&parts[0], &parts[1], &parts[2]]);
        if BigRational::from_integer(tri.into()) <= floor {
            continue;
        }
        let dq = density_of(tri, e);
        let gap = if &dq > d { &dq - d } else { d - &dq };
        if &gap > eps {
            return Ok(Some(IrregularityWitness {
                clusters: x,
                parts,
                triangles: tri,
                edges: e,
                density: dq,
                reference_density: d.clone(),
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleEntry {
    pub x: [usize; 3],
    pub d: BigRational,
    pub regular: bool,
}

/// Densities and regular labels for every 3-set of clusters, in colex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub t: usize,
    pub m: usize,
    pub entries: Vec<TripleEntry>,
    pub d_threshold: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeInequalityRow {
    pub cluster: usize,
    /// Relative degree in the thresholded reduced graph.
    pub lhs: BigRational,
    /// Weighted relative degree minus `d` minus `ζ`.
    pub rhs: BigRational,
    pub holds: bool,
}

impl ReducedGraph {
    /// `densities` and `regular` are indexed in colex order.
    pub fn from_parts(
        t: usize,
        m: usize,
        densities: Vec<BigRational>,
        regular: Vec<bool>,
        d_threshold: BigRational,
    ) -> Result<Self> {
        if t < 3 {
            return Err(Error::invalid(format!("t = {t} < 3")));
        }
        let count = choose3(t);
        if densities.len() != count || regular.len() != count {
            return Err(Error::invalid(format!("expected {count} densities and labels")));
        }
        if densities.iter().any(|d| d < &BigRational::zero() || d > &BigRational::one()) {
            return Err(Error::invalid("densities must lie in [0, 1]"));
        }
        let entries = colex_triples(t)
            .into_iter()
            .zip(densities.into_iter().zip(regular))
            .map(|(x, (d, regular))| TripleEntry { x, d, regular })
            .collect();
        Ok(ReducedGraph {
            t,
            m,
            entries,
            d_threshold,
        })
    }

    pub fn entry(&self, x: [usize; 3]) -> &TripleEntry {
        let mut s = x;
        s.sort_unstable();
        &self.entries[colex_index(s)]
    }

    pub fn in_reduced(&self, e: &TripleEntry) -> bool {
        e.regular && e.d >= self.d_threshold
    }

    pub fn with_threshold(&self, d: BigRational) -> ReducedGraph {
        ReducedGraph {
            d_threshold: d,
            ..self.clone()
        }
    }

    fn containing(&self, y: usize) -> impl Iterator<Item = &TripleEntry> {
        self.entries.iter().filter(move |e| e.x.contains(&y))
    }

    fn norm(&self) -> BigRational {
        BigRational::from_integer(choose2(self.t - 1).into())
    }

    fn check_cluster(&self, y: usize) -> Result<()> {
        if y >= self.t {
            return Err(Error::invalid(format!("cluster {y} outside 0..{}", self.t)));
        }
        Ok(())
    }

    /// `Σ_{X ∋ y} d(X) / C(t-1, 2)`.
    pub fn weighted_reldeg(&self, y: usize) -> Result<BigRational> {
        self.check_cluster(y)?;
        let sum: BigRational = self.containing(y).map(|e| &e.d).sum();
        Ok(sum / self.norm())
    }

    /// Relative degree of `y` in the thresholded reduced graph.
    pub fn reduced_reldeg(&self, y: usize) -> Result<BigRational> {
        self.check_cluster(y)?;
        let c = self.containing(y).filter(|e| self.in_reduced(e)).count();
        Ok(BigRational::from_integer(c.into()) / self.norm())
    }

    pub fn irregular_count(&self, y: usize) -> usize {
        self.containing(y).filter(|e| !e.regular).count()
    }

    /// Fraction of 3-sets containing `y` labelled irregular.
    pub fn zeta(&self, y: usize) -> Result<BigRational> {
        self.check_cluster(y)?;
        Ok(BigRational::from_integer(self.irregular_count(y).into()) / self.norm())
    }

    /// `reduced_reldeg(y) ≥ weighted_reldeg(y) - d - zeta(y)` for every cluster.
    pub fn degree_inequality_check(&self) -> Vec<DegreeInequalityRow> {
        (0..self.t)
            .map(|y| {
                let lhs = self.reduced_reldeg(y).expect("valid cluster");
                let rhs = self.weighted_reldeg(y).expect("valid cluster")
                    - &self.d_threshold
                    - self.zeta(y).expect("valid cluster");
                DegreeInequalityRow {
                    cluster: y,
                    holds: lhs >= rhs,
                    lhs,
                    rhs,
                }
            })
            .collect()
    }

    /// The thresholded reduced graph as a 3-graph on `1..=t` (cluster `i` is
    /// vertex `i + 1`).
    pub fn reduced_hypergraph(&self) -> Hypergraph3 {
        let mut edges: Vec<Triple> = self
            .entries
            .iter()
            .filter(|e| self.in_reduced(e))
            .map(|e| [e.x[0] + 1, e.x[1] + 1, e.x[2] + 1])
            .collect();
        edges.sort_unstable();
        Hypergraph3::from_sorted(self.t, edges)
    }

    /// The thresholded reduced graph induced on `good` clusters, relabelled
    /// `1..=|good|` in the given order, with the map label -> cluster
    /// (index 0 unused).
    pub fn restricted(&self, good: &[usize]) -> (Hypergraph3, Vec<usize>) {
        let vertices: Vec<Vertex> = good.iter().map(|&c| c + 1).collect();
        let (h, back) = self.reduced_hypergraph().induced(&vertices);
        let mapping = std::iter::once(usize::MAX)
            .chain(back.into_iter().skip(1).map(|v| v - 1))
            .collect();
        (h, mapping)
    }

    pub fn regular_fraction(&self) -> BigRational {
        let r = self.entries.iter().filter(|e| e.regular).count();
        ratio(r, self.entries.len())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t,
            "m": self.m,
            "triples": self.entries.iter().map(|e| json!({
                "X": e.x,
                "d": fmt_rational(&e.d),
                "regular": e.regular,
            })).collect::<Vec<_>>(),
            "d_threshold": fmt_rational(&self.d_threshold),
        })
    }
}

/// Densities of every cluster triple, computed in parallel.
pub fn all_densities(h: &Hypergraph3, s: &WeakSlice) -> Vec<BigRational> {
    colex_triples(s.t)
        .into_par_iter()
        .map(|x| relative_density(h, s, x).expect("valid triple"))
        .collect()
}

/// Labels a triple regular when no witness is found in `samples` draws.
/// Each triple uses its own stream of `seed`.
pub fn build_reduced_graph(
    h: &Hypergraph3,
    s: &WeakSlice,
    d_threshold: BigRational,
    eps: &BigRational,
    samples: usize,
    seed: u64,
) -> Result<ReducedGraph> {
    let densities = all_densities(h, s);
    let regular: Vec<bool> = colex_triples(s.t)
        .into_par_iter()
        .zip(densities.par_iter())
        .map(|(x, d)| irregularity_witness(h, s, x, d, eps, samples, seed).map(|w| w.is_none()))
        .collect::<Result<_>>()?;
    ReducedGraph::from_parts(s.t, s.m, densities, regular, d_threshold)
}

/// Clusters lying in fewer than `threshold_fraction · C(t, 2)` irregular
/// triples, with the largest ids dropped until the count is divisible by 3.
pub fn good_clusters(r: &ReducedGraph, threshold_fraction: &BigRational) -> Vec<usize> {
    let limit = threshold_fraction * BigRational::from_integer(choose2(r.t).into());
    let mut good: Vec<usize> = (0..r.t)
        .filter(|&y| BigRational::from_integer(r.irregular_count(y).into()) < limit)
        .collect();
    good.truncate(good.len() - good.len() % 3);
    good
}

/// Mean of `d(v) / C(n-1, 2)` over the vertices of cluster `y`.
pub fn mean_vertex_reldeg(h: &Hypergraph3, s: &WeakSlice, y: usize) -> BigRational {
    let total: usize = s.clusters[y].iter().map(|&v| h.vertex_degree(v)).sum();
    ratio(total, choose2(h.n() - 1) * s.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_3graph;
    use crate::util::int;

    fn slice_of(n: usize, clusters: Vec<Vec<Vertex>>) -> WeakSlice {
        WeakSlice::from_clusters(n, clusters, PairGraphs::Complete).unwrap()
    }

    #[test]
    fn slice_shapes() {
        let s = build_weak_slice(&Hypergraph3::empty(12), 3, 9).unwrap();
        assert_eq!((s.t, s.m, s.deleted.len()), (3, 4, 0));
        let s = build_weak_slice(&Hypergraph3::empty(13), 3, 9).unwrap();
        assert_eq!((s.m, s.deleted.len()), (4, 1));
        assert_eq!(s.t * s.m + s.deleted.len(), 13);
        let mut seen: Vec<Vertex> = s.clusters.concat();
        seen.extend(&s.deleted);
        seen.sort_unstable();
        assert_eq!(seen, (1..=13).collect::<Vec<_>>());
    }

    #[test]
    fn slice_is_seed_deterministic() {
        let h = Hypergraph3::empty(20);
        assert_eq!(build_weak_slice(&h, 6, 1).unwrap(), build_weak_slice(&h, 6, 1).unwrap());
        assert_ne!(build_weak_slice(&h, 6, 1).unwrap(), build_weak_slice(&h, 6, 2).unwrap());
    }

    #[test]
    fn slice_rejects_bad_t() {
        let h = Hypergraph3::empty(5);
        assert!(build_weak_slice(&h, 2, 0).is_err());
        assert!(build_weak_slice(&h, 6, 0).is_err());
    }

    #[test]
    fn density_extremes() {
        let clusters = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
        let s = slice_of(6, clusters);
        let mut edges = Vec::new();
        for a in [1, 2] {
            for b in [3, 4] {
                for c in [5, 6] {
                    edges.push([a, b, c]);
                }
            }
        }
        let full = Hypergraph3::new(6, edges).unwrap();
        assert_eq!(relative_density(&full, &s, [0, 1, 2]).unwrap(), int(1));
        let inner = Hypergraph3::new(6, [[1, 2, 3], [3, 4, 5]]).unwrap();
        assert_eq!(relative_density(&inner, &s, [0, 1, 2]).unwrap(), int(0));
        assert!(relative_density(&inner, &s, [0, 0, 2]).is_err());
    }

    #[test]
    fn density_matches_brute_force_count() {
        let h = random_3graph(12, 0.4, 5).unwrap();
        let s = build_weak_slice(&h, 3, 5).unwrap();
        assert_eq!(s.m, 4);
        let mut count = 0;
        for &a in &s.clusters[0] {
            for &b in &s.clusters[1] {
                for &c in &s.clusters[2] {
                    if h.contains(a, b, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(relative_density(&h, &s, [0, 1, 2]).unwrap(), ratio(count, 64));
    }

    #[test]
    fn explicit_pair_graphs_restrict_triangles() {
        let clusters = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
        let pairs: HashSet<[Vertex; 2]> = [[1, 3], [1, 5], [3, 5], [2, 4]].into_iter().collect();
        let s = WeakSlice::from_clusters(6, clusters, PairGraphs::Explicit(pairs)).unwrap();
        let h = Hypergraph3::new(6, [[1, 3, 5], [2, 4, 6]]).unwrap();
        assert_eq!(relative_density(&h, &s, [0, 1, 2]).unwrap(), int(1));
        let none = WeakSlice::from_clusters(6, s.clusters.clone(), PairGraphs::Explicit(HashSet::new())).unwrap();
        assert_eq!(relative_density(&h, &none, [0, 1, 2]).unwrap(), int(0));
    }

    #[test]
    fn colex_order() {
        let all = colex_triples(5);
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], [0, 1, 2]);
        assert_eq!(all[1], [0, 1, 3]);
        assert_eq!(all[4], [0, 1, 4]);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(colex_index(*x), i);
        }
    }

    fn uniform(t: usize, d: BigRational, regular: bool, thr: BigRational) -> ReducedGraph {
        let c = choose3(t);
        ReducedGraph::from_parts(t, 1, vec![d; c], vec![regular; c], thr).unwrap()
    }

    #[test]
    fn relative_degrees_of_uniform_graphs() {
        let r = uniform(6, int(1), true, int(0));
        assert_eq!(r.weighted_reldeg(2).unwrap(), int(1));
        let half = uniform(6, ratio(1, 2), true, int(0));
        assert_eq!(half.weighted_reldeg(0).unwrap(), ratio(1, 2));
        assert!(r.weighted_reldeg(6).is_err());
        assert!(ReducedGraph::from_parts(2, 1, vec![], vec![], int(0)).is_err());
    }

    #[test]
    fn weighted_degree_matches_direct_sum() {
        let mut rng = stream_rng(3, 0);
        let t = 6;
        let ds: Vec<BigRational> = (0..choose3(t)).map(|_| ratio(rng.gen_range(0..=7), 7)).collect();
        let r = ReducedGraph::from_parts(t, 1, ds.clone(), vec![true; choose3(t)], int(0)).unwrap();
        for y in 0..t {
            let mut sum = BigRational::zero();
            for (x, d) in colex_triples(t).iter().zip(&ds) {
                if x.contains(&y) {
                    sum += d;
                }
            }
            assert_eq!(r.weighted_reldeg(y).unwrap(), sum / int(10));
        }
    }

    #[test]
    fn zeta_counts() {
        let t = 6;
        let all_regular = uniform(t, int(1), true, int(0));
        assert_eq!(all_regular.zeta(0).unwrap(), int(0));
        let all_irregular = uniform(t, int(1), false, int(0));
        assert_eq!(all_irregular.zeta(0).unwrap(), int(1));
        let mut labels = vec![true; choose3(t)];
        for x in [[0, 1, 2], [0, 3, 4], [0, 2, 5], [1, 2, 3]] {
            labels[colex_index(x)] = false;
        }
        let r = ReducedGraph::from_parts(t, 1, vec![int(1); choose3(t)], labels, int(0)).unwrap();
        assert_eq!(r.zeta(0).unwrap(), ratio(3, 10));
    }

    #[test]
    fn degree_inequality_trivial_cases() {
        let r = uniform(7, ratio(2, 3), true, int(0));
        assert!(r.degree_inequality_check().iter().all(|row| row.holds));
        let bad = uniform(7, ratio(2, 3), false, ratio(1, 2));
        for row in bad.degree_inequality_check() {
            assert!(row.holds);
            assert!(row.rhs <= int(0));
        }
    }

    #[test]
    fn threshold_monotonicity() {
        let mut rng = stream_rng(11, 0);
        let t = 7;
        let ds: Vec<BigRational> = (0..choose3(t)).map(|_| ratio(rng.gen_range(0..=10), 10)).collect();
        let labels: Vec<bool> = (0..choose3(t)).map(|_| rng.gen_bool(0.8)).collect();
        let r = ReducedGraph::from_parts(t, 1, ds, labels, int(0)).unwrap();
        for y in 0..t {
            let mut prev = r.reduced_reldeg(y).unwrap();
            for k in 1..=10 {
                let cur = r.with_threshold(ratio(k, 10)).reduced_reldeg(y).unwrap();
                assert!(cur <= prev);
                prev = cur;
            }
        }
    }

    #[test]
    fn reduced_hypergraph_and_restriction() {
        let t = 5;
        let mut ds = vec![int(1); choose3(t)];
        ds[colex_index([0, 1, 2])] = ratio(1, 100);
        let r = ReducedGraph::from_parts(t, 1, ds, vec![true; choose3(t)], ratio(1, 10)).unwrap();
        let rd = r.reduced_hypergraph();
        assert_eq!(rd.edge_count(), 9);
        assert!(!rd.contains(1, 2, 3));
        let (sub, map) = r.restricted(&[1, 2, 3]);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(&map[1..], &[1, 2, 3]);
    }

    #[test]
    fn witness_never_on_complete_or_empty() {
        let mut edges = Vec::new();
        let clusters = vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12]];
        for &a in &clusters[0] {
            for &b in &clusters[1] {
                for &c in &clusters[2] {
                    edges.push([a, b, c]);
                }
            }
        }
        let s = slice_of(12, clusters);
        let full = Hypergraph3::new(12, edges).unwrap();
        let eps = ratio(1, 10);
        assert!(irregularity_witness(&full, &s, [0, 1, 2], &int(1), &eps, 500, 1)
            .unwrap()
            .is_none());
        let empty = Hypergraph3::empty(12);
        assert!(irregularity_witness(&empty, &s, [0, 1, 2], &int(0), &eps, 500, 1)
            .unwrap()
            .is_none());
    }

    #[test]
    fn witness_on_planted_halves() {
        let clusters = vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12]];
        let mut edges = Vec::new();
        for a in [1, 2] {
            for b in [5, 6] {
                for c in [9, 10] {
                    edges.push([a, b, c]);
                }
            }
        }
        let h = Hypergraph3::new(12, edges).unwrap();
        let s = slice_of(12, clusters);
        let d = relative_density(&h, &s, [0, 1, 2]).unwrap();
        assert_eq!(d, ratio(1, 8));
        let eps = ratio(1, 10);
        let w = irregularity_witness(&h, &s, [0, 1, 2], &d, &eps, 1000, 4)
            .unwrap()
            .expect("witness");
        assert!(w.verify(&h, &s, &eps));
        // The halves themselves form a sub-polyad of density 1.
        let halves = IrregularityWitness {
            clusters: [0, 1, 2],
            parts: [vec![1, 2], vec![5, 6], vec![9, 10]],
            triangles: 8,
            edges: 8,
            density: int(1),
            reference_density: d.clone(),
        };
        assert!(halves.verify(&h, &s, &eps));
        let mut forged = w.clone();
        forged.edges += 1;
        assert!(!forged.verify(&h, &s, &eps));
    }

    #[test]
    fn witness_rejects_bad_parameters() {
        let s = slice_of(6, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        let h = Hypergraph3::empty(6);
        assert!(irregularity_witness(&h, &s, [0, 1, 2], &int(0), &int(0), 5, 0).is_err());
        assert!(irregularity_witness(&h, &s, [0, 1, 2], &int(0), &ratio(1, 2), 0, 0).is_err());
    }

    #[test]
    fn good_cluster_selection() {
        let t = 6;
        let all = uniform(t, int(1), true, int(0));
        assert_eq!(good_clusters(&all, &ratio(1, 10)), vec![0, 1, 2, 3, 4, 5]);
        let seven = uniform(7, int(1), true, int(0));
        assert_eq!(good_clusters(&seven, &ratio(1, 10)), vec![0, 1, 2, 3, 4, 5]);

        let mut labels = vec![true; choose3(t)];
        for x in colex_triples(t) {
            if x.contains(&2) && x[0] + x[1] + x[2] < 9 {
                labels[colex_index(x)] = false;
            }
        }
        let r = ReducedGraph::from_parts(t, 1, vec![int(1); choose3(t)], labels, int(0)).unwrap();
        // Cluster 2 sits in 7 irregular triples; the others in at most 4.
        assert_eq!(r.irregular_count(2), 7);
        assert_eq!(good_clusters(&r, &ratio(1, 3)), vec![0, 1, 3]);
        assert_eq!(good_clusters(&r, &int(0)), Vec::<usize>::new());
    }

    #[test]
    fn reduced_graph_json_shape() {
        let r = uniform(3, ratio(1, 2), true, ratio(1, 20));
        let v = r.to_json();
        assert_eq!(v["t"], 3);
        assert_eq!(v["triples"][0]["X"], json!([0, 1, 2]));
        assert_eq!(v["triples"][0]["d"], "1/2");
        assert_eq!(v["d_threshold"], "1/20");
    }
}
