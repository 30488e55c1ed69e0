use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use tcl_core::cycle::{longest_tight_cycle, validate_cycle};
use tcl_core::fractional::{max_fractional_matching, perfect_or_certificate, PerfectOrCertificate};
use tcl_core::generators::random_dense_graph;
use tcl_core::lp::PackingLp;
use tcl_core::matching::{erdos_gallai_threshold, graphmeet_verify, max_matching, MeetMode};
use tcl_core::slice::{build_weak_slice, mean_vertex_reldeg, all_densities, ReducedGraph};
use tcl_core::tight::{component_star, tight_components};
use tcl_core::util::{choose3, ratio, stream_rng, to_f64};
use tcl_core::{Graph, Hypergraph3, Triple};

fn all_triples(n: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph3> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), choose3(n)).prop_map(move |keep| {
            let edges = all_triples(n).into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e);
            Hypergraph3::new(n, edges).unwrap()
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |keep| {
            let mut pairs = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    pairs.push([a, b]);
                }
            }
            Graph::new(n, pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p)).unwrap()
        })
    })
}

/// Tight components by pairwise comparison of edges.
fn oracle_component_count(h: &Hypergraph3) -> usize {
    let m = h.edge_count();
    let mut label: Vec<usize> = (0..m).collect();
    loop {
        let mut changed = false;
        for i in 0..m {
            for j in 0..m {
                let (e, f) = (h.edge(i), h.edge(j));
                let shared = e.iter().filter(|v| f.contains(v)).count();
                if shared >= 2 && label[j] < label[i] {
                    label[i] = label[j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut roots = label.clone();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn handshake_and_pair_index(h in hypergraph(8)) {
        let total: usize = (1..=h.n()).map(|v| h.degree(&[v]).unwrap()).sum();
        prop_assert_eq!(total, 3 * h.edge_count());
        for a in 1..=h.n() {
            for b in a + 1..=h.n() {
                let brute = h.edges().iter().filter(|e| e.contains(&a) && e.contains(&b)).count();
                prop_assert_eq!(h.edges_with_pair(a, b).len(), brute);
                prop_assert_eq!(h.degree(&[a, b]).unwrap(), brute);
            }
        }
    }

    #[test]
    fn link_graph_mirrors_edges(h in hypergraph(8)) {
        for v in 1..=h.n() {
            let link = h.link_graph(v).unwrap();
            prop_assert_eq!(link.n(), h.n());
            prop_assert_eq!(link.edge_count(), h.degree(&[v]).unwrap());
            for &[a, b] in link.edges() {
                prop_assert!(h.contains(v, a, b));
            }
        }
    }

    #[test]
    fn text_round_trip(h in hypergraph(8)) {
        let text = h.to_text();
        let back: Hypergraph3 = text.parse().unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, h);
    }

    #[test]
    fn tight_components_match_oracle(h in hypergraph(7)) {
        let l = tight_components(&h);
        prop_assert_eq!(l.component_count, oracle_component_count(&h));
        prop_assert_eq!(l.component_sizes.iter().sum::<usize>(), h.edge_count());
    }

    #[test]
    fn adding_an_edge_merges_at_most(h in hypergraph(7), pick in any::<prop::sample::Index>()) {
        let all = all_triples(h.n());
        let e = all[pick.index(all.len())];
        let bigger = h.with_edge(e).unwrap();
        let before = tight_components(&h).component_count;
        let after = tight_components(&bigger).component_count;
        if h.edge_id(e).is_none() {
            prop_assert!(after <= before + 1);
        } else {
            prop_assert_eq!(after, before);
        }
    }

    #[test]
    fn stars_lie_in_one_component(h in hypergraph(7)) {
        let labels = tight_components(&h);
        for u in 1..=h.n() {
            for comp in h.link_graph(u).unwrap().components() {
                if comp.edges.is_empty() {
                    continue;
                }
                let star = component_star(&h, u, &comp).unwrap();
                let first = labels.label_of(&h, star[0]);
                prop_assert!(star.iter().all(|&e| labels.label_of(&h, e) == first));
            }
        }
    }

    #[test]
    fn erdos_gallai_bound(g in graph(7)) {
        let n = g.n();
        let nu = max_matching(&g).size();
        for k in 1..=n.div_ceil(2) {
            if n < 2 * k - 1 {
                continue;
            }
            if g.edge_count() > erdos_gallai_threshold(n, k).unwrap() {
                prop_assert!(nu >= k);
            }
        }
    }

    #[test]
    fn fractional_matching_is_feasible(h in hypergraph(7)) {
        let labels = tight_components(&h);
        for c in 0..labels.component_count {
            let m = max_fractional_matching(&h, Some(c)).unwrap();
            prop_assert!(m.is_feasible());
            prop_assert!(m.total_weight <= ratio(h.n(), 3));
            prop_assert!(m.is_supported_in(&h, &labels, c));
        }
    }

    #[test]
    fn exact_and_float_optima_agree(h in hypergraph(7)) {
        let lp = PackingLp::new(h.n(), h.edges().iter().map(|e| e.iter().map(|&v| v - 1).collect()).collect());
        let exact = lp.solve_exact().unwrap();
        let float = lp.solve_float().unwrap();
        prop_assert!((to_f64(&exact.objective) - float.objective).abs() < 1e-7);
        // Strong duality.
        let dual: BigRational = exact.y.iter().sum();
        prop_assert_eq!(dual, exact.objective);
    }

    #[test]
    fn disjunction_always_verifiable(h in hypergraph(7)) {
        prop_assume!(h.n() % 3 == 0);
        let labels = tight_components(&h);
        for c in 0..labels.component_count {
            let edges: Vec<Triple> = h
                .edges()
                .iter()
                .zip(&labels.labels)
                .filter(|(_, &l)| l == c)
                .map(|(e, _)| *e)
                .collect();
            match perfect_or_certificate(&h, Some(c)).unwrap() {
                PerfectOrCertificate::Perfect(m) => {
                    prop_assert!(m.is_perfect() && m.is_feasible());
                    prop_assert!(m.loads().iter().skip(1).all(|l| l.is_one()));
                }
                PerfectOrCertificate::Certificate(cert) => {
                    prop_assert!(cert.verify(h.n(), &edges).is_ok());
                }
            }
        }
    }

    #[test]
    fn exact_cycle_is_valid_and_monotone(h in hypergraph(8), pick in any::<prop::sample::Index>()) {
        let len = |g: &Hypergraph3| longest_tight_cycle(g).unwrap().map_or(0, |c| {
            assert!(validate_cycle(g, &c.order).is_ok());
            c.length
        });
        let all = all_triples(h.n());
        let e = all[pick.index(all.len())];
        prop_assert!(len(&h.with_edge(e).unwrap()) >= len(&h));
    }

    #[test]
    fn degree_inequality_on_arbitrary_input(
        t in 4usize..=10,
        seed in any::<u64>(),
    ) {
        let mut rng = stream_rng(seed, 0);
        let c = choose3(t);
        let ds = (0..c).map(|_| { let q = rng.gen_range(1..=12); ratio(rng.gen_range(0..=q), q) }).collect();
        let regular = (0..c).map(|_| rng.gen_bool(0.7)).collect();
        let thr = ratio(rng.gen_range(0..=10), 10);
        let r = ReducedGraph::from_parts(t, 1, ds, regular, thr).unwrap();
        for row in r.degree_inequality_check() {
            prop_assert!(row.holds, "{:?}", row);
        }
        for y in 0..t {
            let w = r.weighted_reldeg(y).unwrap();
            prop_assert!(w >= BigRational::zero() && w <= BigRational::one());
        }
    }
}

#[test]
fn meet_verdicts_hold_on_dense_pairs() {
    for n in [9, 12, 15] {
        for i in 0..100 {
            let g1 = random_dense_graph(n, 17, 2 * i);
            let g2 = random_dense_graph(n, 17, 2 * i + 1);
            let report = graphmeet_verify(&g1, &g2, MeetMode::Strict).unwrap();
            assert!(report.verdicts.all(), "n={n} i={i}: {:?}", report.verdicts);
            assert_eq!(report.recompute_verdicts(), report.verdicts);
        }
    }
}

#[test]
fn degree_inheritance_on_random_graphs() {
    let (n, t) = (60, 6);
    let mut total = 0.0;
    let mut count = 0usize;
    for i in 0..100u64 {
        let p = 0.3 + 0.5 * (i as f64 / 100.0);
        let h = tcl_core::generators::random_3graph(n, p, 1000 + i).unwrap();
        let s = build_weak_slice(&h, t, i).unwrap();
        let ds = all_densities(&h, &s);
        let r = ReducedGraph::from_parts(t, s.m, ds, vec![true; choose3(t)], BigRational::zero()).unwrap();
        for y in 0..t {
            let diff = to_f64(&r.weighted_reldeg(y).unwrap()) - to_f64(&mean_vertex_reldeg(&h, &s, y));
            total += diff.abs();
            count += 1;
        }
    }
    let mean = total / count as f64;
    assert!(mean < 0.1, "mean gap {mean}");
}
