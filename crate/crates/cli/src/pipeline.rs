//! The end-to-end reduction: slice, densities, labels, good clusters,
//! fractional matching on the restricted reduced graph, then a long tight
//! cycle guided by that matching.

use std::time::Instant;

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use tcl_core::cycle::{matching_guided_cycle, validate_cycle, CycleOutcome, HeuristicParams};
use tcl_core::fractional::lemma_fracmatch;
use tcl_core::lp::rational_from_f64;
use tcl_core::slice::{build_reduced_graph, build_weak_slice, good_clusters};
use tcl_core::util::{choose2, choose3, fmt_rational, int, ratio, to_f64};
use tcl_core::Hypergraph3;

#[derive(Debug, Clone)]
pub struct PipelineParams {
    pub t: usize,
    pub d: BigRational,
    pub eps: BigRational,
    pub samples: usize,
    pub seed: u64,
    pub restarts: usize,
    pub node_budget: usize,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            t: 6,
            d: ratio(1, 20),
            eps: ratio(1, 10),
            samples: 100,
            seed: 0,
            restarts: 8,
            node_budget: 200_000,
        }
    }
}

/// Parameters the asymptotic argument would demand for a given slack `eta`:
/// density threshold eta/20, regularity eta^2/10^4 and at least
/// max{100/eta, 4/sqrt(eps)} clusters. Far beyond desk scale for any useful
/// eta, so the defaults above are chosen independently.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceConstants {
    pub d: BigRational,
    pub eps: BigRational,
    pub min_clusters: usize,
}

pub fn reference_constants(eta: &BigRational) -> ReferenceConstants {
    let d = eta / int(20);
    let eps = eta * eta / int(10_000);
    let by_eta = (int(100) / eta).ceil().to_integer();
    let by_eps = (4.0 / to_f64(&eps).sqrt()).ceil() as usize;
    let by_eta: usize = by_eta.try_into().unwrap_or(usize::MAX);
    ReferenceConstants {
        d,
        eps,
        min_clusters: by_eta.max(by_eps),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageStatus {
    Ok,
    Failed,
    Skipped,
}

impl StageStatus {
    fn as_str(self) -> &'static str {
        match self {
            StageStatus::Ok => "ok",
            StageStatus::Failed => "failed",
            StageStatus::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    /// Everything except timings; keys are sorted, so serialisation is
    /// canonical.
    pub body: Value,
    pub timings_ms: Vec<(String, f64)>,
    pub failed_stage: Option<String>,
    pub cycle_length: Option<usize>,
}

impl PipelineReport {
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&self.body).expect("report serialises")
    }

    pub fn canonical_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn succeeded(&self) -> bool {
        self.failed_stage.is_none()
    }

    /// The canonical body plus its hash and the timings.
    pub fn to_json(&self) -> Value {
        let mut out = match self.body.clone() {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        out.insert("canonical_sha256".into(), json!(self.canonical_hash()));
        let timings: Map<String, Value> = self
            .timings_ms
            .iter()
            .map(|(k, v)| (k.clone(), json!((v * 1000.0).round() / 1000.0)))
            .collect();
        out.insert("timings_ms".into(), Value::Object(timings));
        Value::Object(out)
    }
}

struct Stages {
    list: Vec<Value>,
    timings: Vec<(String, f64)>,
    failed: Option<String>,
    clock: Instant,
}

impl Stages {
    fn done(&mut self, name: &str, status: StageStatus, message: Option<String>) {
        let elapsed = self.clock.elapsed().as_secs_f64() * 1000.0;
        self.timings.push((name.to_string(), elapsed));
        self.clock = Instant::now();
        if status == StageStatus::Failed && self.failed.is_none() {
            self.failed = Some(name.to_string());
        }
        let mut v = json!({ "name": name, "status": status.as_str() });
        if let Some(m) = message {
            v["message"] = json!(m);
        }
        self.list.push(v);
    }
}

const STAGES: [&str; 6] = ["input", "slice", "reduce", "good_clusters", "fracmatch", "cycle"];

pub fn run_pipeline(h: &Hypergraph3, p: &PipelineParams) -> PipelineReport {
    let mut st = Stages {
        list: Vec::new(),
        timings: Vec::new(),
        failed: None,
        clock: Instant::now(),
    };
    let mut body = Map::new();
    body.insert(
        "params".into(),
        json!({
            "t": p.t,
            "d": fmt_rational(&p.d),
            "eps": fmt_rational(&p.eps),
            "samples": p.samples,
            "seed": p.seed,
            "restarts": p.restarts,
            "node_budget": p.node_budget,
        }),
    );
    let n = h.n();
    let delta = h.min_degree(1).unwrap_or(0);
    body.insert(
        "input".into(),
        json!({
            "n": n,
            "edges": h.edge_count(),
            "min_degree": delta,
            "min_degree_relative": if n >= 3 { delta as f64 / choose2(n - 1) as f64 } else { 0.0 },
            "edge_density": if n >= 3 { h.edge_count() as f64 / choose3(n) as f64 } else { 0.0 },
        }),
    );
    st.done("input", StageStatus::Ok, None);

    let result = stages(h, p, &mut st, &mut body);
    if let Err(msg) = result {
        let name = STAGES[st.list.len()];
        st.done(name, StageStatus::Failed, Some(msg));
    }
    while st.list.len() < STAGES.len() {
        let name = STAGES[st.list.len()];
        st.done(name, StageStatus::Skipped, None);
    }
    let cycle_length = body.get("cycle").and_then(|c| c["length"].as_u64()).map(|l| l as usize);
    body.insert("stages".into(), Value::Array(st.list));
    body.insert(
        "failed_stage".into(),
        st.failed.clone().map_or(Value::Null, Value::String),
    );
    PipelineReport {
        body: Value::Object(body),
        timings_ms: st.timings,
        failed_stage: st.failed,
        cycle_length,
    }
}

fn stages(h: &Hypergraph3, p: &PipelineParams, st: &mut Stages, body: &mut Map<String, Value>) -> Result<(), String> {
    let slice = build_weak_slice(h, p.t, p.seed).map_err(|e| e.to_string())?;
    body.insert(
        "slice".into(),
        json!({
            "t": slice.t,
            "m": slice.m,
            "deleted": slice.deleted,
            "clusters": slice.clusters,
        }),
    );
    st.done("slice", StageStatus::Ok, None);

    let r = build_reduced_graph(h, &slice, p.d.clone(), &p.eps, p.samples, p.seed).map_err(|e| e.to_string())?;
    let rows = r.degree_inequality_check();
    let rd = r.reduced_hypergraph();
    body.insert(
        "reduced".into(),
        json!({
            "d_threshold": fmt_rational(&r.d_threshold),
            "regular_fraction": fmt_rational(&r.regular_fraction()),
            "reduced_edges": rd.edge_count(),
            "min_density": r.entries.iter().map(|e| &e.d).min().map(fmt_rational),
            "degree_inequality_holds": rows.iter().all(|row| row.holds),
            "triples": r.to_json()["triples"].clone(),
        }),
    );
    if !rows.iter().all(|row| row.holds) {
        return Err("cluster degree inequality violated".into());
    }
    st.done("reduce", StageStatus::Ok, None);

    let threshold = rational_from_f64(2.0 * to_f64(&p.eps).sqrt());
    let good = good_clusters(&r, &threshold);
    body.insert(
        "good_clusters".into(),
        json!({
            "threshold_fraction": format!("{:.6}", to_f64(&threshold)),
            "clusters": good,
            "count": good.len(),
        }),
    );
    if good.len() < 3 {
        return Err(format!("only {} good clusters", good.len()));
    }
    st.done("good_clusters", StageStatus::Ok, None);

    let (restricted, mapping) = r.restricted(&good);
    let rdelta = restricted.min_degree(1).unwrap_or(0);
    let k = good.len();
    let mut matching_info = json!({
        "reduced_n": k,
        "reduced_edges": restricted.edge_count(),
        "reduced_min_degree": rdelta,
        "five_ninths_bound": format!("{:.3}", 5.0 * choose2(k) as f64 / 9.0),
    });
    let outcome = lemma_fracmatch(&restricted);
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            body.insert("matching".into(), matching_info);
            return Err(e.to_string());
        }
    };
    matching_info["total_weight"] = json!(fmt_rational(&outcome.matching.total_weight));
    matching_info["component"] = json!(outcome.component);
    matching_info["component_min_degree"] = json!(outcome.sub_min_degree);
    matching_info["edges"] = json!(outcome
        .matching
        .weights
        .iter()
        .map(|we| json!({
            "X": we.edge.iter().map(|&v| mapping[v]).collect::<Vec<_>>(),
            "w": fmt_rational(&we.weight),
        }))
        .collect::<Vec<_>>());
    body.insert("matching".into(), matching_info);
    st.done("fracmatch", StageStatus::Ok, None);

    let params = HeuristicParams {
        restarts: p.restarts,
        node_budget: p.node_budget,
        seed: p.seed,
    };
    let out = matching_guided_cycle(h, &slice, &r, &outcome.matching, &mapping, params).map_err(|e| e.to_string())?;
    if let Some(c) = out.cycle() {
        if validate_cycle(h, &c.order).is_err() {
            return Err("cycle failed validation".into());
        }
    }
    body.insert("cycle".into(), out.to_json());
    match out {
        CycleOutcome::Found { .. } => {
            st.done("cycle", StageStatus::Ok, None);
            Ok(())
        }
        CycleOutcome::Failed { reason, .. } => Err(reason),
    }
}
