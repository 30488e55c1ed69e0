//! Verification campaigns: many seeded trials of one property, each checked
//! with independently recomputed evidence.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use tcl_core::cycle::{longest_tight_cycle, validate_cycle};
use tcl_core::fractional::{
    lemma_fracmatch, perfect_or_certificate, FarkasCertificate, PerfectOrCertificate,
};
use tcl_core::generators::{extremal, random_3graph, random_dense_graph, random_min_degree_3graph};
use tcl_core::matching::{erdos_gallai_threshold, graphmeet_verify, max_matching, GraphMeetReport, MeetMode};
use tcl_core::slice::ReducedGraph;
use tcl_core::tight::tight_components;
use tcl_core::util::{choose2, choose3, int, ratio, stream_rng};
use tcl_core::{Graph, Hypergraph3, Pair, Triple, Vertex};

/// Failures kept verbatim in a report; the count is always exact.
const KEPT_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub name: String,
    pub params: Value,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<String>,
    pub notes: Value,
}

impl CampaignReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }

    pub fn to_json(&self) -> Value {
        json!({
            "campaign": self.name,
            "params": self.params,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.trials - self.passed,
            "failures": self.failures,
            "notes": self.notes,
            "verdict": self.ok(),
        })
    }
}

fn collect(name: &str, params: Value, results: Vec<Result<(), String>>, notes: Value) -> CampaignReport {
    let trials = results.len();
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    CampaignReport {
        name: name.into(),
        params,
        trials,
        passed: trials - failures.len(),
        failures: failures.into_iter().take(KEPT_FAILURES).collect(),
        notes,
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Re-derives every claim of a meet report from the two graphs.
pub fn audit_meet_report(g1: &Graph, g2: &Graph, r: &GraphMeetReport) -> Result<(), String> {
    let n = g1.n();
    for (i, (g, side)) in [g1, g2].into_iter().zip(&r.sides).enumerate() {
        let c = &side.component;
        let vs: HashSet<Vertex> = c.vertices.iter().copied().collect();
        // A component: closed under adjacency, connected, and edges are exactly
        // the edges of g inside it.
        check(
            c.vertices.iter().all(|&v| g.neighbors(v).iter().all(|w| vs.contains(w))),
            || format!("side {i}: vertex set not closed"),
        )?;
        let inside: Vec<Pair> = g.edges().iter().copied().filter(|e| vs.contains(&e[0])).collect();
        check(inside == c.edges, || format!("side {i}: edge list mismatch"))?;
        let mut seen = HashSet::from([c.vertices[0]]);
        let mut stack = vec![c.vertices[0]];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        check(seen.len() == vs.len(), || format!("side {i}: component not connected"))?;
        let largest = g.components().iter().map(|c| c.vertices.len()).max().unwrap_or(0);
        check(c.vertices.len() == largest, || format!("side {i}: component not largest"))?;
        check(3 * c.vertices.len() > 2 * n, || format!("side {i}: (i) fails"))?;
        check(9 * c.edges.len() > 4 * choose2(n), || format!("side {i}: (ii) fails"))?;
        let mut covered = HashSet::new();
        for &[a, b] in &side.matching.pairs {
            check(c.edges.binary_search(&[a.min(b), a.max(b)]).is_ok(), || {
                format!("side {i}: matching edge {a}-{b} outside component")
            })?;
            check(covered.insert(a) && covered.insert(b), || format!("side {i}: matching not disjoint"))?;
        }
        check(side.matching.pairs.len() == n / 3, || format!("side {i}: (iii) fails"))?;
    }
    let e = r.shared_edge.ok_or("no shared edge: (iv) fails")?;
    for (i, side) in r.sides.iter().enumerate() {
        check(side.component.edges.binary_search(&e).is_ok(), || {
            format!("shared edge {e:?} missing from side {i}")
        })?;
    }
    Ok(())
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

pub fn graphmeet_campaign(n: usize, trials: usize, seed: u64, jobs: usize) -> CampaignReport {
    let results = pool(jobs).install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| {
                let g1 = random_dense_graph(n, seed, 2 * i);
                let g2 = random_dense_graph(n, seed, 2 * i + 1);
                let r = graphmeet_verify(&g1, &g2, MeetMode::Strict).map_err(|e| format!("trial {i}: {e}"))?;
                check(r.verdicts.all(), || format!("trial {i}: verdicts {:?}", r.verdicts))?;
                audit_meet_report(&g1, &g2, &r).map_err(|e| format!("trial {i}: {e}"))
            })
            .collect()
    });
    collect(
        "graphmeet",
        json!({ "n": n, "trials": trials, "seed": seed }),
        results,
        json!({}),
    )
}

/// Strict threshold `floor(5/9 C(n, 2)) + 1` on the minimum degree.
pub fn fracmatch_degree_target(n: usize) -> usize {
    5 * choose2(n) / 9 + 1
}

fn fracmatch_trial(n: usize, seed: u64, i: u64) -> Result<(), String> {
    let mut rng = stream_rng(seed, i);
    let p = rng.gen_range(0.55..0.85);
    let h = random_min_degree_3graph(n, fracmatch_degree_target(n), p, seed ^ (i << 20), 1000)
        .map_err(|e| format!("trial {i}: {e}"))?;
    let out = lemma_fracmatch(&h).map_err(|e| format!("trial {i}: {e}"))?;
    let m = &out.matching;
    check(m.total_weight == ratio(n, 3), || {
        format!("trial {i}: total weight {} is not {n}/3", m.total_weight)
    })?;
    let mut loads = vec![BigRational::zero(); n + 1];
    for we in &m.weights {
        check(!we.weight.is_negative(), || format!("trial {i}: negative weight"))?;
        for &v in &we.edge {
            loads[v] += &we.weight;
        }
    }
    check(loads.iter().skip(1).all(|l| l <= &BigRational::one()), || format!("trial {i}: overloaded vertex"))?;
    let labels = tight_components(&h);
    let label = m
        .weights
        .first()
        .and_then(|we| labels.label_of(&h, we.edge))
        .ok_or_else(|| format!("trial {i}: empty or foreign support"))?;
    check(
        m.weights.iter().all(|we| labels.label_of(&h, we.edge) == Some(label)),
        || format!("trial {i}: support spans several tight components"),
    )?;
    let sub = h.filter_edges(|id, _| labels.labels[id] == label);
    check(sub == out.sub, || format!("trial {i}: reported component differs"))?;
    let delta = sub.min_degree(1).map_err(|e| e.to_string())?;
    check(9 * delta >= 4 * choose2(n), || format!("trial {i}: component minimum degree {delta} too small"))
}

pub fn fracmatch_campaign(n: usize, trials: usize, seed: u64, jobs: usize) -> CampaignReport {
    let results = pool(jobs).install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| fracmatch_trial(n, seed, i))
            .collect()
    });
    collect(
        "fracmatch",
        json!({ "n": n, "trials": trials, "seed": seed }),
        results,
        json!({ "degree_target": fracmatch_degree_target(n) }),
    )
}

fn verify_certificate_independently(cert: &FarkasCertificate, n: usize, edges: &[Triple]) -> Result<(), String> {
    check(cert.a.len() == n + 1, || "certificate has wrong length".into())?;
    let total: BigRational = cert.a[1..].iter().sum();
    check(total.is_positive(), || format!("a·1 = {total} is not positive"))?;
    for e in edges {
        let s = &cert.a[e[0]] + &cert.a[e[1]] + &cert.a[e[2]];
        check(!s.is_positive(), || format!("a·χ({e:?}) = {s} > 0"))?;
    }
    Ok(())
}

/// One mixed instance: every fourth is extremal, the rest random.
pub fn farkas_instance(seed: u64, i: u64) -> (Hypergraph3, bool) {
    let mut rng = stream_rng(seed, i);
    let n = [6, 9, 12][rng.gen_range(0..3)];
    if i % 4 == 0 {
        let a = rng.gen_range(1..n / 3);
        (extremal(n, a).expect("valid size").h, true)
    } else {
        let p = rng.gen_range(0.1..0.9);
        (random_3graph(n, p, seed.wrapping_add(i)).expect("valid p"), false)
    }
}

fn farkas_trial(seed: u64, i: u64) -> Result<(bool, bool), String> {
    let (h, is_extremal) = farkas_instance(seed, i);
    let n = h.n();
    let labels = tight_components(&h);
    let target = labels.largest();
    let edges: Vec<Triple> = match target {
        Some(c) => h
            .edges()
            .iter()
            .zip(&labels.labels)
            .filter(|(_, &l)| l == c)
            .map(|(e, _)| *e)
            .collect(),
        None => Vec::new(),
    };
    let out = perfect_or_certificate(&h, target).map_err(|e| format!("trial {i}: {e}"))?;
    match out {
        PerfectOrCertificate::Perfect(m) => {
            check(!is_extremal, || format!("trial {i}: extremal instance gave a perfect matching"))?;
            check(m.total_weight == ratio(n, 3), || format!("trial {i}: weight {}", m.total_weight))?;
            let allowed: HashSet<Triple> = edges.iter().copied().collect();
            check(m.weights.iter().all(|we| allowed.contains(&we.edge)), || {
                format!("trial {i}: support leaves the component")
            })?;
            check(m.is_feasible(), || format!("trial {i}: infeasible"))?;
            Ok((true, false))
        }
        PerfectOrCertificate::Certificate(cert) => {
            verify_certificate_independently(&cert, n, &edges).map_err(|e| format!("trial {i}: {e}"))?;
            Ok((false, true))
        }
    }
}

pub fn farkas_campaign(trials: usize, seed: u64, jobs: usize) -> CampaignReport {
    let raw: Vec<Result<(bool, bool), String>> = pool(jobs).install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| farkas_trial(seed, i))
            .collect()
    });
    let perfect = raw.iter().filter(|r| matches!(r, Ok((true, _)))).count();
    let certs = raw.iter().filter(|r| matches!(r, Ok((_, true)))).count();
    let mut results: Vec<Result<(), String>> = raw.into_iter().map(|r| r.map(|_| ())).collect();
    // The reference instance: extremal n = 9, |A| = 2.
    let h = extremal(9, 2).expect("valid").h;
    results.push(
        match (
            tcl_core::fractional::max_fractional_matching(&h, Some(0)),
            perfect_or_certificate(&h, Some(0)),
        ) {
            (Ok(m), Ok(PerfectOrCertificate::Certificate(c))) if m.total_weight == int(2) => {
                verify_certificate_independently(&c, 9, h.edges())
            }
            other => Err(format!("extremal n=9 a=2: {other:?}")),
        },
    );
    collect(
        "farkas",
        json!({ "trials": trials, "seed": seed }),
        results,
        json!({ "perfect": perfect, "certificates": certs }),
    )
}

/// Maximum matching size of a graph on at most 16 vertices given by
/// adjacency bitmasks.
fn bitmask_matching(adj: &[u16], alive: u16) -> usize {
    if alive == 0 {
        return 0;
    }
    let v = alive.trailing_zeros() as usize;
    let rest = alive & !(1 << v);
    let mut best = bitmask_matching(adj, rest);
    let mut nb = adj[v] & rest;
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        best = best.max(1 + bitmask_matching(adj, rest & !(1 << u)));
    }
    best
}

fn erdos_gallai_check(g: &Graph) -> Result<(), String> {
    let n = g.n();
    let nu = max_matching(g);
    check(nu.is_valid_in(g), || format!("invalid matching in {:?}", g.edges()))?;
    for k in 1..=n.div_ceil(2) {
        if 2 * k > n + 1 {
            continue;
        }
        let thr = erdos_gallai_threshold(n, k).map_err(|e| e.to_string())?;
        check(g.edge_count() <= thr || nu.size() >= k, || {
            format!("N={n} k={k}: e={} > {thr} but matching {}", g.edge_count(), nu.size())
        })?;
    }
    Ok(())
}

/// Every graph on `N ≤ max_exhaustive` vertices, then `random` random graphs
/// on at most `max_random_n` vertices.
pub fn erdos_gallai_campaign(
    max_exhaustive: usize,
    random: usize,
    max_random_n: usize,
    seed: u64,
    jobs: usize,
) -> CampaignReport {
    let (trials, failures) = pool(jobs).install(|| {
        let mut trials = 0usize;
        let mut failures: Vec<String> = Vec::new();
        for n in 1..=max_exhaustive {
            let pairs: Vec<Pair> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| [a, b])).collect();
            let count = 1u64 << pairs.len();
            let bad: Vec<String> = (0..count)
                .into_par_iter()
                .filter_map(|mask| {
                    let edges: Vec<Pair> = (0..pairs.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| pairs[i])
                        .collect();
                    let mut adj = vec![0u16; n];
                    for &[a, b] in &edges {
                        adj[a - 1] |= 1 << (b - 1);
                        adj[b - 1] |= 1 << (a - 1);
                    }
                    let g = match Graph::new(n, edges) {
                        Ok(g) => g,
                        Err(e) => return Some(e.to_string()),
                    };
                    let oracle = bitmask_matching(&adj, ((1u32 << n) - 1) as u16);
                    check(max_matching(&g).size() == oracle, || {
                        format!("N={n} mask={mask}: blossom disagrees with oracle {oracle}")
                    })
                    .and_then(|_| erdos_gallai_check(&g))
                    .err()
                })
                .collect();
            trials += count as usize;
            failures.extend(bad);
        }
        let bad: Vec<String> = (0..random as u64)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = stream_rng(seed, i);
                let n = rng.gen_range(2..=max_random_n);
                let p: f64 = rng.gen_range(0.05..0.95);
                let mut edges = Vec::new();
                for a in 1..=n {
                    for b in a + 1..=n {
                        if rng.gen_bool(p) {
                            edges.push([a, b]);
                        }
                    }
                }
                Graph::new(n, edges)
                    .map_err(|e| e.to_string())
                    .and_then(|g| erdos_gallai_check(&g))
                    .err()
            })
            .collect();
        trials += random;
        failures.extend(bad);
        (trials, failures)
    });
    let sweep = matching_bound_sweep(SWEEP_MAX_N);
    let trials = trials + sweep.checked;
    let failures: Vec<String> = failures.into_iter().chain(sweep.violations.iter().cloned()).collect();
    CampaignReport {
        name: "erdos-gallai".into(),
        params: json!({
            "max_exhaustive_n": max_exhaustive,
            "random": random,
            "max_random_n": max_random_n,
            "seed": seed,
        }),
        trials,
        passed: trials - failures.len(),
        failures: failures.into_iter().take(KEPT_FAILURES).collect(),
        notes: json!({ "matching_bound_sweep": sweep.to_json() }),
    }
}

const SWEEP_MAX_N: usize = 300;

/// Result of checking, for every n divisible by 3 up to a bound and every
/// number j < n/3 of uncovered vertices, that a component on n - j vertices
/// with more than (5/9 - (j/n)^2) C(n,2) edges exceeds the matching threshold
/// for k = n/3.
#[derive(Debug, Clone)]
pub struct MatchingBoundSweep {
    pub max_n: usize,
    pub checked: usize,
    pub violations: Vec<String>,
    /// (n, j, margin / C(n,2)) at the smallest relative margin.
    pub tightest: Option<(usize, usize, BigRational)>,
}

impl MatchingBoundSweep {
    pub fn to_json(&self) -> Value {
        json!({
            "max_n": self.max_n,
            "checked": self.checked,
            "violations": self.violations.len(),
            "tightest": self.tightest.as_ref().map(|(n, j, m)| json!({
                "n": n,
                "uncovered": j,
                "relative_margin": tcl_core::util::fmt_rational(m),
                "relative_margin_approx": tcl_core::util::to_f64(m),
            })),
        })
    }
}

pub fn matching_bound_sweep(max_n: usize) -> MatchingBoundSweep {
    let mut out = MatchingBoundSweep {
        max_n,
        checked: 0,
        violations: Vec::new(),
        tightest: None,
    };
    for n in (3..=max_n).step_by(3) {
        let k = n / 3;
        let pairs = int(choose2(n) as i64);
        for j in 0..k {
            let lower = (ratio(5, 9) - ratio(j * j, n * n)) * &pairs;
            let threshold = erdos_gallai_threshold(n - j, k).expect("n - j >= 2k - 1");
            let margin = (lower - int(threshold as i64)) / &pairs;
            out.checked += 1;
            if !margin.is_positive() {
                out.violations.push(format!("n={n} uncovered={j}: margin {margin}"));
            }
            if out.tightest.as_ref().map_or(true, |t| margin < t.2) {
                out.tightest = Some((n, j, margin));
            }
        }
    }
    out
}

/// A random density/label configuration; the style cycles through uniform
/// noise and several adversarial patterns.
pub fn random_reduced_graph(seed: u64, i: u64) -> ReducedGraph {
    let mut rng = stream_rng(seed, i);
    let t = rng.gen_range(4..=10);
    let c = choose3(t);
    let thr = ratio(rng.gen_range(0..=20), 20);
    let (ds, labels): (Vec<BigRational>, Vec<bool>) = match i % 5 {
        0 => (0..c)
            .map(|_| {
                let q = rng.gen_range(1..=30);
                (ratio(rng.gen_range(0..=q), q), rng.gen_bool(0.8))
            })
            .unzip(),
        // All ones, everything irregular.
        1 => (vec![int(1); c], vec![false; c]),
        // Densities sitting exactly on the threshold, or just below it.
        2 => (0..c)
            .map(|_| {
                let d = if rng.gen_bool(0.5) || thr.is_zero() {
                    thr.clone()
                } else {
                    &thr - ratio(1, 1000)
                };
                (d, rng.gen_bool(0.5))
            })
            .unzip(),
        // Zero/one densities with random labels.
        3 => (0..c)
            .map(|_| (int(rng.gen_range(0..=1)), rng.gen_bool(0.5)))
            .unzip(),
        _ => (0..c)
            .map(|_| (ratio(rng.gen_range(0..=1000), 1000), rng.gen_bool(0.95)))
            .unzip(),
    };
    ReducedGraph::from_parts(t, 1, ds, labels, thr).expect("valid configuration")
}

pub fn lemma8_campaign(trials: usize, seed: u64, jobs: usize) -> CampaignReport {
    let results = pool(jobs).install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| {
                let r = random_reduced_graph(seed, i);
                for row in r.degree_inequality_check() {
                    // Independent recount.
                    let y = row.cluster;
                    let norm = BigRational::from_integer(choose2(r.t - 1).into());
                    let mut weighted = BigRational::zero();
                    let mut kept = 0usize;
                    let mut irregular = 0usize;
                    for e in r.entries.iter().filter(|e| e.x.contains(&y)) {
                        weighted += &e.d;
                        if !e.regular {
                            irregular += 1;
                        } else if e.d >= r.d_threshold {
                            kept += 1;
                        }
                    }
                    let lhs = BigRational::from_integer(kept.into()) / &norm;
                    let rhs = weighted / &norm - &r.d_threshold - BigRational::from_integer(irregular.into()) / &norm;
                    check(lhs == row.lhs && rhs == row.rhs, || format!("trial {i}: sides differ from recount"))?;
                    check(lhs >= rhs, || format!("trial {i}: cluster {y}: {lhs} < {rhs}"))?;
                }
                Ok(())
            })
            .collect()
    });
    collect("lemma8", json!({ "trials": trials, "seed": seed }), results, json!({}))
}

/// Expected longest tight cycle of the extremal instance: `min(3a, n)` when
/// that is at least 4.
pub fn extremal_expected_cycle(n: usize, a: usize) -> Option<usize> {
    let l = (3 * a).min(n);
    (l >= 4).then_some(l)
}

pub fn extremal_bound_campaign(max_n: usize, jobs: usize) -> CampaignReport {
    let cases: Vec<(usize, usize)> = (3..=max_n).flat_map(|n| (1..=n).map(move |a| (n, a))).collect();
    let results = pool(jobs).install(|| {
        cases
            .par_iter()
            .map(|&(n, a)| {
                let inst = extremal(n, a).map_err(|e| format!("n={n} a={a}: {e}"))?;
                let b = n - a;
                let formula = choose2(n - 1) - if b == 0 { 0 } else { choose2(b - 1) };
                let delta = inst.h.min_degree(1).map_err(|e| e.to_string())?;
                check(delta == formula, || format!("n={n} a={a}: δ={delta}, formula {formula}"))?;
                let got = longest_tight_cycle(&inst.h).map_err(|e| e.to_string())?;
                if let Some(c) = &got {
                    check(validate_cycle(&inst.h, &c.order).is_ok(), || format!("n={n} a={a}: invalid cycle"))?;
                }
                let got = got.map(|c| c.length);
                check(got == extremal_expected_cycle(n, a), || {
                    format!("n={n} a={a}: longest {got:?}, expected {:?}", extremal_expected_cycle(n, a))
                })?;
                check(got.unwrap_or(0) <= 3 * a, || format!("n={n} a={a}: exceeds 3a"))
            })
            .collect()
    });
    collect("extremal-bound", json!({ "max_n": max_n }), results, json!({}))
}

/// Longest tight cycle by depth-first search over tight paths that start at
/// their smallest vertex.
pub fn brute_force_longest_cycle(h: &Hypergraph3) -> usize {
    fn go(h: &Hypergraph3, path: &mut Vec<Vertex>, used: &mut [bool], best: &mut usize) {
        let l = path.len();
        if l >= 4 && l > *best && h.contains(path[l - 2], path[l - 1], path[0]) && h.contains(path[l - 1], path[0], path[1])
        {
            *best = l;
        }
        for v in path[0] + 1..=h.n() {
            if used[v] || (l >= 2 && !h.contains(path[l - 2], path[l - 1], v)) {
                continue;
            }
            used[v] = true;
            path.push(v);
            go(h, path, used, best);
            path.pop();
            used[v] = false;
        }
    }
    let mut best = 0;
    for s in 1..=h.n() {
        let mut used = vec![false; h.n() + 1];
        used[s] = true;
        go(h, &mut vec![s], &mut used, &mut best);
    }
    best
}

pub fn cycle_oracle_campaign(trials: usize, max_n: usize, seed: u64, jobs: usize) -> CampaignReport {
    let results = pool(jobs).install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(seed, i);
                let n = rng.gen_range(4..=max_n);
                let p = rng.gen_range(0.2..0.9);
                let h = random_3graph(n, p, seed.wrapping_mul(31).wrapping_add(i)).map_err(|e| e.to_string())?;
                let dp = longest_tight_cycle(&h).map_err(|e| e.to_string())?;
                if let Some(c) = &dp {
                    check(validate_cycle(&h, &c.order).is_ok(), || format!("trial {i}: invalid cycle"))?;
                }
                let dp = dp.map_or(0, |c| c.length);
                let brute = brute_force_longest_cycle(&h);
                check(dp == brute, || format!("trial {i}: n={n} exact {dp}, brute force {brute}"))
            })
            .collect()
    });
    collect(
        "cycle-oracle",
        json!({ "trials": trials, "max_n": max_n, "seed": seed }),
        results,
        json!({}),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_bound_holds_and_is_tightest_without_uncovered_vertices() {
        let sweep = matching_bound_sweep(60);
        assert!(sweep.violations.is_empty());
        assert_eq!(sweep.checked, (1..=20).sum::<usize>());
        let (n, j, m) = sweep.tightest.unwrap();
        assert_eq!((n, j), (60, 0));
        assert_eq!(m, ratio(10, 9 * 59));
    }

    #[test]
    fn small_campaigns_pass() {
        assert!(graphmeet_campaign(9, 30, 1, 2).ok());
        assert!(fracmatch_campaign(9, 5, 1, 2).ok());
        assert!(farkas_campaign(40, 1, 2).ok());
        assert!(lemma8_campaign(200, 1, 2).ok());
        assert!(erdos_gallai_campaign(5, 500, 10, 1, 2).ok());
        assert!(extremal_bound_campaign(8, 2).ok());
        assert!(cycle_oracle_campaign(50, 7, 1, 2).ok());
    }

    #[test]
    fn bitmask_oracle_basics() {
        // Path on 4 vertices.
        let adj = [0b0010, 0b0101, 0b1010, 0b0100];
        assert_eq!(bitmask_matching(&adj, 0b1111), 2);
        assert_eq!(bitmask_matching(&[0, 0, 0], 0b111), 0);
    }

    #[test]
    fn extremal_expectations() {
        assert_eq!(extremal_expected_cycle(9, 2), Some(6));
        assert_eq!(extremal_expected_cycle(9, 4), Some(9));
        assert_eq!(extremal_expected_cycle(6, 1), None);
    }

    #[test]
    fn audit_catches_tampering() {
        let g1 = random_dense_graph(9, 3, 0);
        let g2 = random_dense_graph(9, 3, 1);
        let mut r = graphmeet_verify(&g1, &g2, MeetMode::Strict).unwrap();
        assert!(audit_meet_report(&g1, &g2, &r).is_ok());
        r.sides[0].matching.pairs.pop();
        assert!(audit_meet_report(&g1, &g2, &r).is_err());
    }

    #[test]
    fn campaign_reports_are_deterministic() {
        assert_eq!(lemma8_campaign(50, 4, 1), lemma8_campaign(50, 4, 3));
        assert_eq!(graphmeet_campaign(12, 10, 4, 1), graphmeet_campaign(12, 10, 4, 3));
    }
}
