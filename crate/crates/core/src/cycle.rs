//! Tight cycles: validation, an exact longest-cycle search for small `n`, and
//! a matching-guided builder that winds around the support edges of a
//! fractional matching of the reduced graph.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fractional::FractionalMatching;
use crate::hypergraph::{canonical, Hypergraph3, Triple, Vertex};
use crate::slice::{ReducedGraph, WeakSlice};
use crate::tight::tight_components;
use crate::util::stream_rng;

/// Largest `n` accepted by [`longest_tight_cycle`].
pub const MAX_EXACT_N: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightCycle {
    pub order: Vec<Vertex>,
    pub length: usize,
}

impl TightCycle {
    pub fn to_json(&self) -> Value {
        json!({ "length": self.length, "order": self.order, "valid": true })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleViolation {
    OutOfRange { vertex: Vertex },
    DuplicateVertex { vertex: Vertex },
    TooShort { length: usize },
    /// Three vertices: the only window is a single edge.
    Degenerate,
    /// `window` (at cyclic position `position`) is not an edge.
    MissingWindow { position: usize, window: [Vertex; 3] },
}

impl std::fmt::Display for CycleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CycleViolation::OutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            CycleViolation::DuplicateVertex { vertex } => write!(f, "duplicate vertex {vertex}"),
            CycleViolation::TooShort { length } => write!(f, "length {length} is below 4"),
            CycleViolation::Degenerate => write!(f, "degenerate cycle of length 3"),
            CycleViolation::MissingWindow { position, window } => write!(
                f,
                "window ({}, {}, {}) at position {position} is not an edge",
                window[0], window[1], window[2]
            ),
        }
    }
}

fn check_vertices(h: &Hypergraph3, seq: &[Vertex]) -> std::result::Result<(), CycleViolation> {
    let mut seen = HashSet::with_capacity(seq.len());
    for &v in seq {
        if v < 1 || v > h.n() {
            return Err(CycleViolation::OutOfRange { vertex: v });
        }
        if !seen.insert(v) {
            return Err(CycleViolation::DuplicateVertex { vertex: v });
        }
    }
    Ok(())
}

/// Checks distinctness, length at least 4 and every cyclic window.
pub fn validate_cycle(h: &Hypergraph3, seq: &[Vertex]) -> std::result::Result<TightCycle, CycleViolation> {
    check_vertices(h, seq)?;
    let l = seq.len();
    if l < 3 {
        return Err(CycleViolation::TooShort { length: l });
    }
    if l == 3 {
        return Err(CycleViolation::Degenerate);
    }
    for i in 0..l {
        let w = [seq[i], seq[(i + 1) % l], seq[(i + 2) % l]];
        if !h.contains(w[0], w[1], w[2]) {
            return Err(CycleViolation::MissingWindow { position: i, window: w });
        }
    }
    Ok(TightCycle {
        order: seq.to_vec(),
        length: l,
    })
}

/// Distinct vertices with every consecutive (non-cyclic) window an edge.
pub fn is_tight_path(h: &Hypergraph3, seq: &[Vertex]) -> bool {
    check_vertices(h, seq).is_ok() && seq.windows(3).all(|w| h.contains(w[0], w[1], w[2]))
}

/// A longest tight cycle (length at least 4), or `None`.
///
/// For each smallest vertex `s` and second vertex `s2`, `dp[S][b]` holds the
/// set of possible penultimate vertices of tight paths `s, s2, ..., a, b`
/// with vertex set `S ∪ {s}`.
pub fn longest_tight_cycle(h: &Hypergraph3) -> Result<Option<TightCycle>> {
    let n = h.n();
    if n > MAX_EXACT_N {
        return Err(Error::SizeLimit(format!(
            "exact tight-cycle search supports n <= {MAX_EXACT_N}, got {n}; use the matching-guided builder"
        )));
    }
    let mut best: Option<Vec<Vertex>> = None;
    let mut best_len = 3;
    for s in 1..=n {
        let k = n - s;
        if k < best_len {
            break;
        }
        // Local index i is vertex s + 1 + i; index k stands for s itself.
        let vert = |i: usize| if i == k { s } else { s + 1 + i };
        let w = k + 1;
        let mut pm = vec![0u32; w * w];
        for b in 0..w {
            for c in 0..w {
                if b == c {
                    continue;
                }
                for a in 0..w {
                    if a != b && a != c && h.contains(vert(a), vert(b), vert(c)) {
                        pm[b * w + c] |= 1 << a;
                    }
                }
            }
        }
        let mut dp = vec![0u32; (1usize << k) * k];
        for s2 in 0..k {
            dp.iter_mut().for_each(|x| *x = 0);
            dp[(1usize << s2) * k + s2] = 1 << k;
            for set in 1usize..(1 << k) {
                if set & (1 << s2) == 0 {
                    continue;
                }
                let size = set.count_ones() as usize;
                for b in 0..k {
                    let mask = dp[set * k + b];
                    if mask == 0 {
                        continue;
                    }
                    if size >= 3 && size + 1 > best_len && mask & pm[b * w + k] != 0 && h.contains(vert(b), s, vert(s2))
                    {
                        best_len = size + 1;
                        best = Some(reconstruct(&dp, &pm, k, set, b, s2, &vert));
                    }
                    for c in 0..k {
                        if set & (1 << c) == 0 && mask & pm[b * w + c] != 0 {
                            dp[(set | (1 << c)) * k + c] |= 1 << b;
                        }
                    }
                }
            }
            if best_len == n {
                break;
            }
        }
        if best_len == n {
            break;
        }
    }
    match best {
        None => Ok(None),
        Some(order) => validate_cycle(h, &order).map(Some).map_err(|v| Error::InvariantViolation {
            message: "exact search produced an invalid cycle".into(),
            witness: format!("{order:?}: {v}"),
        }),
    }
}

fn reconstruct(
    dp: &[u32],
    pm: &[u32],
    k: usize,
    set: usize,
    b: usize,
    s2: usize,
    vert: &dyn Fn(usize) -> Vertex,
) -> Vec<Vertex> {
    let w = k + 1;
    let a = (dp[set * k + b] & pm[b * w + k]).trailing_zeros() as usize;
    let mut rev = vec![b, a];
    let mut rest = set ^ (1 << b);
    let (mut cur, mut next) = (a, b);
    while rest != 1 << s2 {
        let cand = dp[rest * k + cur] & pm[cur * w + next] & !(1u32 << k);
        let p = cand.trailing_zeros() as usize;
        rev.push(p);
        rest ^= 1 << cur;
        next = cur;
        cur = p;
    }
    let mut order = vec![vert(k)];
    order.extend(rev.into_iter().rev().map(vert));
    order
}

/// Greedily inserts vertices of `pool` between consecutive cycle vertices
/// wherever all three affected windows are edges, until nothing fits.
pub fn extend_cycle(h: &Hypergraph3, order: &[Vertex], pool: &[Vertex]) -> Vec<Vertex> {
    let mut cyc = order.to_vec();
    if cyc.len() < 3 {
        return cyc;
    }
    let mut inside: HashSet<Vertex> = cyc.iter().copied().collect();
    loop {
        let mut grew = false;
        for &u in pool {
            if inside.contains(&u) {
                continue;
            }
            let l = cyc.len();
            let slot = (0..l).find(|&i| {
                let p = cyc[(i + l - 1) % l];
                let a = cyc[i];
                let b = cyc[(i + 1) % l];
                let q = cyc[(i + 2) % l];
                h.contains(p, a, u) && h.contains(a, u, b) && h.contains(u, b, q)
            });
            if let Some(i) = slot {
                cyc.insert(i + 1, u);
                inside.insert(u);
                grew = true;
            }
        }
        if !grew {
            return cyc;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicParams {
    pub restarts: usize,
    pub node_budget: usize,
    pub seed: u64,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        HeuristicParams {
            restarts: 8,
            node_budget: 200_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterCoverage {
    pub cluster: usize,
    pub used: usize,
    /// `m · Σ_{X ∋ cluster} w_X`.
    pub target: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CycleOutcome {
    Found {
        cycle: TightCycle,
        coverage: Vec<ClusterCoverage>,
        /// Length before greedy insertion of leftover vertices.
        schedule_length: usize,
    },
    Failed {
        longest_path: Vec<Vertex>,
        reason: String,
    },
}

impl CycleOutcome {
    pub fn cycle(&self) -> Option<&TightCycle> {
        match self {
            CycleOutcome::Found { cycle, .. } => Some(cycle),
            CycleOutcome::Failed { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CycleOutcome::Found {
                cycle,
                coverage,
                schedule_length,
            } => {
                let cov: BTreeMap<String, usize> =
                    coverage.iter().map(|c| (c.cluster.to_string(), c.used)).collect();
                let targets: BTreeMap<String, String> = coverage
                    .iter()
                    .map(|c| (c.cluster.to_string(), format!("{:.3}", c.target)))
                    .collect();
                json!({
                    "length": cycle.length,
                    "order": cycle.order,
                    "valid": true,
                    "coverage": cov,
                    "coverage_target": targets,
                    "schedule_length": schedule_length,
                })
            }
            CycleOutcome::Failed { longest_path, reason } => json!({
                "valid": false,
                "reason": reason,
                "longest_path": longest_path,
                "longest_path_length": longest_path.len(),
            }),
        }
    }
}

/// Ordered-pair digraph of the thresholded reduced graph: `(p, q) → (q, r)`
/// whenever `{p, q, r}` is an edge. Clusters are 0-based.
struct PairDigraph<'a> {
    rd: &'a Hypergraph3,
}

impl PairDigraph<'_> {
    fn successors(&self, p: usize, q: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .rd
            .edges_with_pair(p + 1, q + 1)
            .iter()
            .map(|&id| {
                let e = self.rd.edge(id);
                e[0] + e[1] + e[2] - p - q - 3
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Clusters to append after a sequence ending `(p, q)` so that it ends in
    /// a pair accepted by `done`, using at least `min_steps` moves. The final
    /// `min_steps` clusters of the path are included.
    fn route(&self, start: (usize, usize), min_steps: usize, done: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        let mut prev: BTreeMap<(usize, usize, usize), (usize, usize, usize)> = BTreeMap::new();
        let origin = (start.0, start.1, 0);
        let mut queue = VecDeque::from([origin]);
        prev.insert(origin, origin);
        while let Some(state) = queue.pop_front() {
            let (p, q, depth) = state;
            if depth >= min_steps && done(p, q) {
                let mut path = Vec::new();
                let mut cur = state;
                while cur != origin {
                    path.push(cur.1);
                    cur = prev[&cur];
                }
                path.reverse();
                return Some(path);
            }
            for r in self.successors(p, q) {
                let next = (q, r, (depth + 1).min(min_steps));
                if let std::collections::btree_map::Entry::Vacant(v) = prev.entry(next) {
                    v.insert(state);
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Cluster sequence winding `windings[i]` times around `support[i]`, joined
/// by shortest routes and closed up.
fn build_schedule(pd: &PairDigraph, support: &[[usize; 3]], windings: &[usize]) -> Option<Vec<usize>> {
    let mut seq: Vec<usize> = Vec::new();
    for (x, &k) in support.iter().zip(windings) {
        if k == 0 {
            continue;
        }
        if seq.is_empty() {
            for _ in 0..k {
                seq.extend_from_slice(x);
            }
            continue;
        }
        let l = seq.len();
        let in_x = |p: usize, q: usize| x.contains(&p) && x.contains(&q);
        let route = pd.route((seq[l - 2], seq[l - 1]), 0, in_x)?;
        seq.extend(route);
        let l = seq.len();
        let (p, q) = (seq[l - 2], seq[l - 1]);
        let r = x[0] + x[1] + x[2] - p - q;
        seq.push(r);
        for _ in 1..k {
            seq.extend_from_slice(&[p, q, r]);
        }
    }
    if seq.len() < 3 {
        return None;
    }
    let l = seq.len();
    let (c0, c1) = (seq[0], seq[1]);
    let closing = pd.route((seq[l - 2], seq[l - 1]), 2, |p, q| p == c0 && q == c1)?;
    seq.extend_from_slice(&closing[..closing.len() - 2]);
    if seq.len() < 4 {
        return None;
    }
    Some(seq)
}

struct Realiser<'a> {
    h: &'a Hypergraph3,
    slice: &'a WeakSlice,
    schedule: &'a [usize],
    used: Vec<bool>,
    assign: Vec<Vertex>,
    nodes: usize,
    budget: usize,
    best: Vec<Vertex>,
}

impl Realiser<'_> {
    fn candidates(&self, i: usize, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
        let cluster = self.schedule[i];
        let mut out: Vec<Vertex> = if i < 2 {
            self.slice.clusters[cluster]
                .iter()
                .copied()
                .filter(|&v| !self.used[v])
                .collect()
        } else {
            let (a, b) = (self.assign[i - 2], self.assign[i - 1]);
            self.h
                .edges_with_pair(a, b)
                .iter()
                .map(|&id| {
                    let e = self.h.edge(id);
                    e[0] + e[1] + e[2] - a - b
                })
                .filter(|&v| !self.used[v] && self.slice.cluster_of(v) == Some(cluster))
                .collect()
        };
        out.sort_unstable();
        out.shuffle(rng);
        out
    }

    fn dfs(&mut self, i: usize, rng: &mut ChaCha8Rng) -> bool {
        let l = self.schedule.len();
        if i == l {
            return true;
        }
        for v in self.candidates(i, rng) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            if i == l - 1 {
                let (a, b) = (self.assign[0], self.assign[1]);
                if !self.h.contains(self.assign[l - 2], v, a) || !self.h.contains(v, a, b) {
                    continue;
                }
            }
            self.used[v] = true;
            self.assign.push(v);
            if self.assign.len() > self.best.len() {
                self.best = self.assign.clone();
            }
            if self.dfs(i + 1, rng) {
                return true;
            }
            self.assign.pop();
            self.used[v] = false;
        }
        false
    }
}

/// Builds a tight cycle by following the support of `matching`, a fractional
/// matching on a 3-graph whose vertex `i` is cluster `mapping[i]` of `slice`.
/// Each support edge `X` is wound around about `w_X · m` times; the cluster
/// schedule is realised vertex by vertex with seeded backtracking, and the
/// resulting cycle is greedily extended with leftover cluster vertices.
pub fn matching_guided_cycle(
    h: &Hypergraph3,
    slice: &WeakSlice,
    r: &ReducedGraph,
    matching: &FractionalMatching,
    mapping: &[usize],
    params: HeuristicParams,
) -> Result<CycleOutcome> {
    let rd = r.reduced_hypergraph();
    let labels = tight_components(&rd);
    let mut support: Vec<([usize; 3], BigRational)> = Vec::new();
    let mut component = None;
    for we in &matching.weights {
        let mut x = [0usize; 3];
        for (slot, &v) in x.iter_mut().zip(&we.edge) {
            *slot = *mapping
                .get(v)
                .filter(|&&c| c < r.t)
                .ok_or_else(|| Error::invalid(format!("matching vertex {v} has no cluster")))?;
        }
        x.sort_unstable();
        let rd_edge: Triple = canonical([x[0] + 1, x[1] + 1, x[2] + 1]);
        let label = labels
            .label_of(&rd, rd_edge)
            .ok_or_else(|| Error::invalid(format!("support edge {x:?} is not in the reduced graph")))?;
        match component {
            None => component = Some(label),
            Some(c) if c != label => {
                return Err(Error::invalid(
                    "matching support is not tightly connected in the reduced graph",
                ))
            }
            _ => {}
        }
        support.push((x, we.weight.clone()));
    }
    if support.is_empty() {
        return Err(Error::invalid("matching has empty support"));
    }
    let m = slice.m;
    let mut target = vec![0.0; r.t];
    for (x, w) in &support {
        let tw = w.to_f64().unwrap_or(0.0) * m as f64;
        for &c in x {
            target[c] += tw;
        }
    }
    let edges: Vec<[usize; 3]> = support.iter().map(|(x, _)| *x).collect();
    let base: Vec<BigRational> = support
        .iter()
        .map(|(_, w)| w * BigRational::from_integer(m.into()))
        .collect();
    let pd = PairDigraph { rd: &rd };
    let pool: Vec<Vertex> = slice.clusters.concat();
    let mut longest: Vec<Vertex> = Vec::new();
    let mut scale = BigRational::from_integer(1.into());
    let three_quarters = BigRational::new(3.into(), 4.into());
    let mut attempt = 0u64;
    loop {
        let mut windings: Vec<usize> = base
            .iter()
            .map(|b| (b * &scale).floor().to_integer().to_usize().unwrap_or(0))
            .collect();
        if windings.iter().all(|&k| k == 0) {
            // Still try a single pass around the heaviest edge.
            let heaviest = (0..support.len())
                .max_by(|&i, &j| support[i].1.cmp(&support[j].1).then(j.cmp(&i)))
                .expect("non-empty support");
            windings[heaviest] = 1;
        }
        let schedule = loop {
            let Some(seq) = build_schedule(&pd, &edges, &windings) else {
                break None;
            };
            let mut usage = vec![0usize; r.t];
            for &c in &seq {
                usage[c] += 1;
            }
            let Some(over) = (0..r.t).find(|&c| usage[c] > m) else {
                break Some(seq);
            };
            let pick = (0..edges.len())
                .filter(|&i| edges[i].contains(&over) && windings[i] > 0)
                .max_by_key(|&i| (windings[i], std::cmp::Reverse(i)));
            match pick {
                Some(i) => windings[i] -= 1,
                None => break None,
            }
            if windings.iter().all(|&k| k == 0) {
                break None;
            }
        };
        if let Some(schedule) = schedule {
            for restart in 0..params.restarts {
                let mut rng = stream_rng(params.seed, attempt * 1_000 + restart as u64);
                let mut re = Realiser {
                    h,
                    slice,
                    schedule: &schedule,
                    used: vec![false; h.n() + 1],
                    assign: Vec::with_capacity(schedule.len()),
                    nodes: 0,
                    budget: params.node_budget,
                    best: Vec::new(),
                };
                let ok = re.dfs(0, &mut rng);
                if re.best.len() > longest.len() {
                    longest = re.best.clone();
                }
                if ok {
                    let extended = extend_cycle(h, &re.assign, &pool);
                    let cycle = validate_cycle(h, &extended).map_err(|v| Error::InvariantViolation {
                        message: "matching-guided builder produced an invalid cycle".into(),
                        witness: format!("{extended:?}: {v}"),
                    })?;
                    let mut used = vec![0usize; r.t];
                    for &v in &cycle.order {
                        if let Some(c) = slice.cluster_of(v) {
                            used[c] += 1;
                        }
                    }
                    let coverage = (0..r.t)
                        .map(|c| ClusterCoverage {
                            cluster: c,
                            used: used[c],
                            target: target[c],
                        })
                        .collect();
                    return Ok(CycleOutcome::Found {
                        cycle,
                        coverage,
                        schedule_length: schedule.len(),
                    });
                }
            }
        }
        attempt += 1;
        if base.iter().all(|b| (b * &scale) < BigRational::from_integer(1.into())) || attempt > 24 {
            if !longest.is_empty() && !is_tight_path(h, &longest) {
                return Err(Error::InvariantViolation {
                    message: "recorded longest path is not tight".into(),
                    witness: format!("{longest:?}"),
                });
            }
            return Ok(CycleOutcome::Failed {
                longest_path: longest,
                reason: "no schedule could be realised within the node budget".into(),
            });
        }
        scale = &scale * &three_quarters;
        if scale.is_zero() {
            unreachable!();
        }
    }
}
