//! Instance generators: the extremal "all triples meeting A" family, random
//! 3-graphs, degree-conditioned samplers and dense graph samplers.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{Hypergraph3, Pair, Triple, Vertex};
use crate::util::{choose2, stream_rng};

#[derive(Debug, Clone)]
pub struct ExtremalInstance {
    pub h: Hypergraph3,
    /// `1..=a`
    pub a_set: Vec<Vertex>,
    /// `a+1..=n`
    pub b_set: Vec<Vertex>,
    pub predicted_min_degree: usize,
    pub cycle_upper_bound: usize,
}

/// `C(n-1, 2) - C(|B|-1, 2)`, with `C(-1, 2) = 0` when `B` is empty.
pub fn extremal_min_degree(n: usize, a: usize) -> usize {
    let b = n - a;
    choose2(n.saturating_sub(1)) - choose2(b.saturating_sub(1))
}

/// All triples meeting `A = {1..a}`. Accepts `1 ≤ a ≤ n`; `a = n` gives the
/// complete 3-graph.
pub fn extremal(n: usize, a: usize) -> Result<ExtremalInstance> {
    if n < 3 {
        return Err(Error::invalid(format!("extremal instance needs n >= 3, got {n}")));
    }
    if a < 1 || a > n {
        return Err(Error::invalid(format!("|A| = {a} outside 1..={n}")));
    }
    let mut edges: Vec<Triple> = Vec::new();
    for x in 1..=n {
        for y in x + 1..=n {
            for z in y + 1..=n {
                if x <= a {
                    edges.push([x, y, z]);
                }
            }
        }
    }
    let h = Hypergraph3::from_sorted(n, edges);
    let predicted = extremal_min_degree(n, a);
    let actual = h.min_degree(1)?;
    if actual != predicted {
        return Err(Error::InvariantViolation {
            message: "extremal minimum degree differs from the closed formula".into(),
            witness: format!("n={n} a={a} predicted={predicted} actual={actual}"),
        });
    }
    Ok(ExtremalInstance {
        h,
        a_set: (1..=a).collect(),
        b_set: (a + 1..=n).collect(),
        predicted_min_degree: predicted,
        cycle_upper_bound: 3 * a,
    })
}

/// `|A| = floor(((1 - eta) n - 1) / 3)`.
pub fn extremal_size_from_eta(n: usize, eta: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::invalid(format!("eta = {eta} outside [0, 1)")));
    }
    let v = (((1.0 - eta) * n as f64 - 1.0) / 3.0).floor();
    if v < 1.0 {
        return Err(Error::invalid(format!("eta = {eta} gives |A| < 1 for n = {n}")));
    }
    Ok(v as usize)
}

pub fn extremal_from_eta(n: usize, eta: f64) -> Result<ExtremalInstance> {
    extremal(n, extremal_size_from_eta(n, eta)?)
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::invalid(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

fn sample_3graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Hypergraph3 {
    let mut edges = Vec::new();
    for x in 1..=n {
        for y in x + 1..=n {
            for z in y + 1..=n {
                if rng.gen_bool(p) {
                    edges.push([x, y, z]);
                }
            }
        }
    }
    Hypergraph3::from_sorted(n, edges)
}

/// Each triple independently with probability `p`.
pub fn random_3graph(n: usize, p: f64, seed: u64) -> Result<Hypergraph3> {
    check_p(p)?;
    Ok(sample_3graph(n, p, &mut stream_rng(seed, 0)))
}

/// Samples `G(n, p)` 3-graphs until `δ₁ ≥ delta_target`. After every failed
/// attempt `p` moves a fiftieth of the way towards one.
pub fn random_min_degree_3graph(
    n: usize,
    delta_target: usize,
    p_start: f64,
    seed: u64,
    max_attempts: usize,
) -> Result<Hypergraph3> {
    check_p(p_start)?;
    if n < 3 {
        return Err(Error::invalid(format!("n = {n} < 3")));
    }
    if delta_target > choose2(n - 1) {
        return Err(Error::invalid(format!(
            "target {delta_target} exceeds C({}, 2) = {}",
            n - 1,
            choose2(n - 1)
        )));
    }
    let mut p = p_start;
    let mut best = 0;
    for attempt in 0..max_attempts {
        let h = sample_3graph(n, p, &mut stream_rng(seed, attempt as u64));
        let delta = h.min_degree(1)?;
        if delta >= delta_target {
            return Ok(h);
        }
        best = best.max(delta);
        p += (1.0 - p) / 50.0;
    }
    Err(Error::GenerationFailed {
        attempts: max_attempts,
        best_min_degree: best,
    })
}

/// Uniformly random graph on `n` vertices with exactly `m` edges.
pub fn random_graph_with_edges<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let mut all: Vec<Pair> = Vec::with_capacity(choose2(n));
    for a in 1..=n {
        for b in a + 1..=n {
            all.push([a, b]);
        }
    }
    if m > all.len() {
        return Err(Error::invalid(format!("{m} edges exceed C({n}, 2)")));
    }
    let (chosen, _) = all.partial_shuffle(rng, m);
    let mut edges = chosen.to_vec();
    edges.sort_unstable();
    Ok(Graph::from_sorted(n, edges))
}

/// Smallest edge count strictly above `(5/9) C(n, 2)`.
pub fn five_ninths_edge_floor(n: usize) -> usize {
    5 * choose2(n) / 9 + 1
}

/// A graph with more than `(5/9) C(n, 2)` edges. Half the draws sit within
/// `n` edges of the threshold; the rest are spread up to `C(n, 2)`. A quarter
/// of the draws pack the edges into a clique on a random vertex subset plus
/// random extra edges, which produces disconnected-looking structure.
pub fn random_dense_graph(n: usize, seed: u64, stream: u64) -> Graph {
    let mut rng = stream_rng(seed, stream);
    let total = choose2(n);
    let lo = five_ninths_edge_floor(n);
    let m = if rng.gen_bool(0.5) {
        rng.gen_range(lo..=(lo + n).min(total))
    } else {
        rng.gen_range(lo..=total)
    };
    if rng.gen_bool(0.25) {
        let mut order: Vec<Vertex> = (1..=n).collect();
        order.shuffle(&mut rng);
        // Largest clique not exceeding m edges.
        let mut k = 1;
        while choose2(k + 1) <= m && k < n {
            k += 1;
        }
        let mut clique: Vec<Pair> = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (order[i], order[j]);
                clique.push(if a < b { [a, b] } else { [b, a] });
            }
        }
        let mut rest: Vec<Pair> = Vec::new();
        let inside: std::collections::HashSet<Pair> = clique.iter().copied().collect();
        for a in 1..=n {
            for b in a + 1..=n {
                if !inside.contains(&[a, b]) {
                    rest.push([a, b]);
                }
            }
        }
        let extra = m - clique.len();
        let (chosen, _) = rest.partial_shuffle(&mut rng, extra);
        let mut edges = clique;
        edges.extend_from_slice(chosen);
        edges.sort_unstable();
        return Graph::from_sorted(n, edges);
    }
    random_graph_with_edges(n, m, &mut rng).expect("m <= C(n, 2)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::choose3;

    #[test]
    fn extremal_nine_two() {
        let inst = extremal(9, 2).unwrap();
        assert_eq!(inst.h.edge_count(), choose3(9) - choose3(7));
        assert_eq!(inst.h.edge_count(), 49);
        assert_eq!(inst.predicted_min_degree, 13);
        assert_eq!(inst.h.degree(&[5]).unwrap(), 13);
        assert_eq!(inst.cycle_upper_bound, 6);
        assert_eq!(inst.a_set, vec![1, 2]);
        assert_eq!(inst.b_set.len(), 7);
    }

    #[test]
    fn extremal_full_a_is_complete() {
        let inst = extremal(7, 7).unwrap();
        assert_eq!(inst.h, Hypergraph3::complete(7));
        assert_eq!(inst.predicted_min_degree, choose2(6));
    }

    #[test]
    fn extremal_formula_matches_brute_force() {
        for n in 3..=12 {
            for a in 1..=n {
                let inst = extremal(n, a).unwrap();
                let brute = (1..=n)
                    .map(|v| {
                        let mut c = 0;
                        for x in 1..=n {
                            for y in x + 1..=n {
                                for z in y + 1..=n {
                                    let t = [x, y, z];
                                    if t.contains(&v) && t.iter().any(|&w| w <= a) {
                                        c += 1;
                                    }
                                }
                            }
                        }
                        c
                    })
                    .min()
                    .unwrap();
                assert_eq!(brute, inst.predicted_min_degree, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn extremal_rejects_bad_sizes() {
        assert!(extremal(9, 0).is_err());
        assert!(extremal(9, 10).is_err());
        assert!(extremal(2, 1).is_err());
    }

    #[test]
    fn eta_wrapper() {
        assert_eq!(extremal_size_from_eta(30, 0.0).unwrap(), 9);
        assert_eq!(extremal_size_from_eta(30, 0.2).unwrap(), 7);
        assert!(extremal_size_from_eta(3, 0.5).is_err());
    }

    #[test]
    fn random_extremes() {
        assert_eq!(random_3graph(6, 1.0, 3).unwrap(), Hypergraph3::complete(6));
        assert_eq!(random_3graph(6, 0.0, 3).unwrap().edge_count(), 0);
        assert!(random_3graph(6, 1.5, 3).is_err());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = random_3graph(10, 0.5, 42).unwrap();
        let b = random_3graph(10, 0.5, 42).unwrap();
        let c = random_3graph(10, 0.5, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn min_degree_sampler_pinned_seed() {
        let h = random_min_degree_3graph(12, 37, 0.62, 2024, 100).unwrap();
        assert!(h.min_degree(1).unwrap() >= 37);
        let again = random_min_degree_3graph(12, 37, 0.62, 2024, 100).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn min_degree_sampler_reports_best() {
        match random_min_degree_3graph(9, 28, 0.1, 1, 3) {
            Err(Error::GenerationFailed { attempts, best_min_degree }) => {
                assert_eq!(attempts, 3);
                assert!(best_min_degree < 28);
            }
            other => panic!("{other:?}"),
        }
        assert!(random_min_degree_3graph(9, 29, 0.5, 1, 3).is_err());
    }

    #[test]
    fn dense_graphs_are_dense() {
        for n in [9, 12, 15] {
            for s in 0..200 {
                let g = random_dense_graph(n, 5, s);
                assert!(9 * g.edge_count() > 5 * choose2(n), "n={n} s={s}");
            }
        }
        assert_eq!(random_dense_graph(12, 1, 2), random_dense_graph(12, 1, 2));
    }
}
