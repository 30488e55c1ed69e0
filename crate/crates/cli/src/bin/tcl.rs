use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use tcl_cli::campaigns::{
    cycle_oracle_campaign, erdos_gallai_campaign, extremal_bound_campaign, farkas_campaign, fracmatch_campaign,
    graphmeet_campaign, lemma8_campaign, CampaignReport,
};
use tcl_cli::pipeline::{run_pipeline, PipelineParams};
use tcl_cli::render::{render, Format};
use tcl_core::cycle::{longest_tight_cycle, validate_cycle};
use tcl_core::fractional::{lemma_fracmatch, max_fractional_matching, perfect_or_certificate};
use tcl_core::generators::{extremal, extremal_size_from_eta, random_3graph, random_min_degree_3graph};
use tcl_core::matching::{erdos_gallai_threshold, graphmeet_verify, largest_component, max_matching, MeetMode};
use tcl_core::slice::{build_reduced_graph, build_weak_slice, good_clusters};
use tcl_core::tight::{tight_components, tight_connectivity};
use tcl_core::util::{fmt_rational, parse_rational};
use tcl_core::{Graph, Hypergraph3};

#[derive(Parser)]
#[command(name = "tcl", version, about = "3-uniform hypergraph laboratory")]
struct Cli {
    /// Report format; generators emit `.3g` text unless this is given.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

#[derive(Subcommand)]
enum Cmd {
    /// Size, degrees and tight connectivity of a `.3g` file.
    Info { file: String },
    /// Link graph of a vertex as `.2g` data.
    Link {
        file: String,
        #[arg(long)]
        v: usize,
    },
    /// Tight components.
    Components { file: String },
    /// Maximum matching of a `.2g` graph.
    Match { file: String },
    /// Erdős–Gallai threshold, or check a `.2g` graph against it.
    Egcheck {
        file: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Verify the two-graph component lemma on a pair of `.2g` graphs.
    Graphmeet {
        first: String,
        second: String,
        /// Run even when the density precondition fails.
        #[arg(long)]
        observe: bool,
    },
    /// Perfect fractional matching or a Farkas certificate.
    Fracmatch {
        file: String,
        /// Tight component id (default: the largest).
        #[arg(long)]
        component: Option<usize>,
        /// Run the full minimum-degree lemma instead.
        #[arg(long)]
        lemma: bool,
    },
    /// Longest tight cycle (n ≤ 22), or validate `--order`.
    Cycle {
        file: String,
        /// Comma-separated cyclic vertex order to validate.
        #[arg(long)]
        order: Option<String>,
    },
    /// All triples meeting A = {1..a}.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "eta")]
        a: Option<usize>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random 3-graph, optionally conditioned on minimum degree.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, env = "TCL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        max_attempts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random equipartition into clusters.
    Slice {
        file: String,
        #[arg(long, default_value_t = 6)]
        t: usize,
        #[arg(long, env = "TCL_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Densities, regular labels, degree inequality and good clusters.
    Reduce {
        file: String,
        #[command(flatten)]
        opts: ReduceOpts,
    },
    /// Full reduction pipeline ending in a tight cycle.
    Pipeline {
        file: String,
        #[command(flatten)]
        opts: ReduceOpts,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 200_000)]
        node_budget: usize,
    },
    /// Seeded verification campaign.
    Verify {
        campaign: Campaign,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, env = "TCL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
}

#[derive(clap::Args)]
struct ReduceOpts {
    #[arg(long, default_value_t = 6)]
    t: usize,
    #[arg(long, default_value = "0.05", value_parser = rational)]
    d: BigRational,
    #[arg(long, default_value = "0.1", value_parser = rational)]
    eps: BigRational,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, env = "TCL_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Campaign {
    Graphmeet,
    Fracmatch,
    Farkas,
    #[value(name = "lemma8")]
    DegreeInequality,
    ErdosGallai,
    ExtremalBound,
    CycleOracle,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_h(path: &str) -> anyhow::Result<Hypergraph3> {
    Ok(read_input(path)?.parse::<Hypergraph3>()?)
}

fn read_g(path: &str) -> anyhow::Result<Graph> {
    Ok(read_input(path)?.parse::<Graph>()?)
}

/// What a command produced: a report and whether its verdict held.
struct Outcome {
    report: Value,
    verdict: bool,
    /// Raw text emitted when no `--format` was requested.
    raw: Option<String>,
}

fn report(report: Value) -> Outcome {
    Outcome {
        report,
        verdict: true,
        raw: None,
    }
}

fn campaign(r: CampaignReport) -> Outcome {
    let mut v = r.to_json();
    v["summary"] = json!(format!("{}/{} passed", r.passed, r.trials));
    Outcome {
        report: v,
        verdict: r.ok(),
        raw: None,
    }
}

fn run(cmd: Cmd) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Cmd::Info { file } => {
            let h = read_h(&file)?;
            let labels = tight_components(&h);
            report(json!({
                "n": h.n(),
                "edges": h.edge_count(),
                "min_degree": h.min_degree(1)?,
                "min_codegree": if h.n() >= 2 { Some(h.min_degree(2)?) } else { None },
                "tightly_connected": tight_connectivity(&h).is_connected(),
                "tight_components": labels.component_count,
            }))
        }
        Cmd::Link { file, v } => {
            let h = read_h(&file)?;
            let link = h.link_graph(v)?;
            let largest = largest_component(&link).ok();
            Outcome {
                raw: Some(link.to_text()),
                ..report(json!({
                    "v": v,
                    "n": link.n(),
                    "edges": link.edges(),
                    "edge_count": link.edge_count(),
                    "largest_component": largest.map(|c| c.vertices),
                }))
            }
        }
        Cmd::Components { file } => {
            let h = read_h(&file)?;
            let l = tight_components(&h);
            report(json!({
                "count": l.component_count,
                "sizes": l.component_sizes,
                "largest": l.largest(),
                "labels": h.edges().iter().zip(&l.labels)
                    .map(|(e, c)| json!({ "e": e, "component": c }))
                    .collect::<Vec<_>>(),
            }))
        }
        Cmd::Match { file } => {
            let g = read_g(&file)?;
            let m = max_matching(&g);
            report(json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "matching_size": m.size(),
                "matching": m.pairs,
            }))
        }
        Cmd::Egcheck { file, n, k } => match (file, n) {
            (Some(file), _) => {
                let g = read_g(&file)?;
                let thr = erdos_gallai_threshold(g.n(), k)?;
                let nu = max_matching(&g).size();
                let above = g.edge_count() > thr;
                let verdict = !above || nu >= k;
                Outcome {
                    verdict,
                    ..report(json!({
                        "N": g.n(),
                        "k": k,
                        "edges": g.edge_count(),
                        "threshold": thr,
                        "above_threshold": above,
                        "matching_size": nu,
                        "verdict": verdict,
                    }))
                }
            }
            (None, Some(n)) => report(json!({ "N": n, "k": k, "threshold": erdos_gallai_threshold(n, k)? })),
            (None, None) => bail!("egcheck needs a graph file or --n"),
        },
        Cmd::Graphmeet { first, second, observe } => {
            let (g1, g2) = (read_g(&first)?, read_g(&second)?);
            let mode = if observe { MeetMode::Observe } else { MeetMode::Strict };
            let r = graphmeet_verify(&g1, &g2, mode)?;
            let sides: Vec<Value> = r
                .sides
                .iter()
                .map(|s| {
                    json!({
                        "component": s.component.vertices,
                        "component_edges": s.component.edges.len(),
                        "matching": s.matching.pairs,
                        "outside_fraction": s.outside_fraction,
                    })
                })
                .collect();
            Outcome {
                verdict: r.verdicts.all(),
                ..report(json!({
                    "n": r.n,
                    "precondition_met": r.precondition_met,
                    "sides": sides,
                    "shared_edge": r.shared_edge,
                    "verdicts": {
                        "large_components": r.verdicts.large_components,
                        "dense_components": r.verdicts.dense_components,
                        "matchings": r.verdicts.matchings,
                        "shared_edge": r.verdicts.shared_edge,
                    },
                    "verdict": r.verdicts.all(),
                }))
            }
        }
        Cmd::Fracmatch { file, component, lemma } => {
            let h = read_h(&file)?;
            if lemma {
                let out = lemma_fracmatch(&h)?;
                report(json!({
                    "component": out.component,
                    "component_edges": out.sub.edge_count(),
                    "component_min_degree": out.sub_min_degree,
                    "matching": out.matching.to_json(),
                }))
            } else {
                let c = component.or_else(|| tight_components(&h).largest());
                let best = max_fractional_matching(&h, c)?;
                let mut v = perfect_or_certificate(&h, c)?.to_json();
                v["component"] = json!(c);
                v["max_weight"] = json!(fmt_rational(&best.total_weight));
                report(v)
            }
        }
        Cmd::Cycle { file, order } => {
            let h = read_h(&file)?;
            match order {
                Some(order) => {
                    let seq: Vec<usize> = order
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .context("--order must be comma-separated vertices")?;
                    match validate_cycle(&h, &seq) {
                        Ok(c) => report(c.to_json()),
                        Err(v) => Outcome {
                            verdict: false,
                            ..report(json!({
                                "valid": false,
                                "violation": v.to_string(),
                                "order": seq,
                            }))
                        },
                    }
                }
                None => match longest_tight_cycle(&h)? {
                    Some(c) => report(c.to_json()),
                    None => report(json!({ "length": 0, "order": null, "valid": false })),
                },
            }
        }
        Cmd::Extremal { n, a, eta, out } => {
            let a = match (a, eta) {
                (Some(a), _) => a,
                (None, Some(eta)) => extremal_size_from_eta(n, eta)?,
                (None, None) => bail!("extremal needs --a or --eta"),
            };
            let inst = extremal(n, a)?;
            let text = inst.h.to_text_with_comment(Some(&format!(
                "extremal n={n} a={a} min_degree={} cycle_upper_bound={}",
                inst.predicted_min_degree, inst.cycle_upper_bound
            )));
            generated(
                text,
                out,
                json!({
                    "n": n,
                    "a": a,
                    "edges": inst.h.edge_count(),
                    "predicted_min_degree": inst.predicted_min_degree,
                    "cycle_upper_bound": inst.cycle_upper_bound,
                }),
            )?
        }
        Cmd::Random {
            n,
            p,
            seed,
            min_degree,
            max_attempts,
            out,
        } => {
            let (h, comment) = match min_degree {
                Some(target) => (
                    random_min_degree_3graph(n, target, p, seed, max_attempts)?,
                    format!("random n={n} p_start={p} seed={seed} min_degree>={target}"),
                ),
                None => (random_3graph(n, p, seed)?, format!("random n={n} p={p} seed={seed}")),
            };
            let text = h.to_text_with_comment(Some(&comment));
            generated(
                text,
                out,
                json!({ "n": n, "edges": h.edge_count(), "min_degree": h.min_degree(1)?, "seed": seed }),
            )?
        }
        Cmd::Slice { file, t, seed } => {
            let h = read_h(&file)?;
            report(build_weak_slice(&h, t, seed)?.to_json())
        }
        Cmd::Reduce { file, opts } => {
            let h = read_h(&file)?;
            let s = build_weak_slice(&h, opts.t, opts.seed)?;
            let r = build_reduced_graph(&h, &s, opts.d.clone(), &opts.eps, opts.samples, opts.seed)?;
            let rows = r.degree_inequality_check();
            let threshold = tcl_core::lp::rational_from_f64(2.0 * tcl_core::util::to_f64(&opts.eps).sqrt());
            let holds = rows.iter().all(|row| row.holds);
            let mut v = r.to_json();
            v["degree_inequality"] = json!(rows
                .iter()
                .map(|row| json!({
                    "cluster": row.cluster,
                    "lhs": fmt_rational(&row.lhs),
                    "rhs": fmt_rational(&row.rhs),
                    "holds": row.holds,
                }))
                .collect::<Vec<_>>());
            v["good_clusters"] = json!(good_clusters(&r, &threshold));
            Outcome {
                verdict: holds,
                ..report(v)
            }
        }
        Cmd::Pipeline {
            file,
            opts,
            restarts,
            node_budget,
        } => {
            let h = read_h(&file)?;
            if opts.t < 3 {
                bail!("--t must be at least 3");
            }
            let p = PipelineParams {
                t: opts.t,
                d: opts.d,
                eps: opts.eps,
                samples: opts.samples,
                seed: opts.seed,
                restarts,
                node_budget,
            };
            let r = run_pipeline(&h, &p);
            Outcome {
                verdict: r.succeeded(),
                ..report(r.to_json())
            }
        }
        Cmd::Verify {
            campaign: which,
            n,
            trials,
            seed,
            jobs,
        } => {
            let jobs = jobs.max(1);
            campaign(match which {
                Campaign::Graphmeet => graphmeet_campaign(n.unwrap_or(9), trials.unwrap_or(1000), seed, jobs),
                Campaign::Fracmatch => fracmatch_campaign(n.unwrap_or(9), trials.unwrap_or(200), seed, jobs),
                Campaign::Farkas => farkas_campaign(trials.unwrap_or(1000), seed, jobs),
                Campaign::DegreeInequality => lemma8_campaign(trials.unwrap_or(10_000), seed, jobs),
                Campaign::ErdosGallai => {
                    erdos_gallai_campaign(n.unwrap_or(7), trials.unwrap_or(100_000), 12, seed, jobs)
                }
                Campaign::ExtremalBound => extremal_bound_campaign(n.unwrap_or(12), jobs),
                Campaign::CycleOracle => cycle_oracle_campaign(trials.unwrap_or(1000), n.unwrap_or(9), seed, jobs),
            })
        }
    })
}

fn generated(text: String, out: Option<PathBuf>, summary: Value) -> anyhow::Result<Outcome> {
    match out {
        Some(path) => {
            std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(report(summary))
        }
        None => Ok(Outcome {
            raw: Some(text),
            ..report(summary)
        }),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<tcl_core::Error>() {
        Some(tcl_core::Error::InvariantViolation { .. }) | Some(tcl_core::Error::GenerationFailed { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.cmd) {
        Ok(out) => {
            let text = match (format, out.raw) {
                (None, Some(raw)) => raw,
                (f, _) => render(&out.report, f.unwrap_or(Format::Json)),
            };
            print!("{text}");
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("tcl: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
