use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use bireg::clustering::{accuracy, cluster_csv, rsbm_thresholds, spectral_cluster};
use bireg::codes::{
    corollary_bound, janwa_lal_bound, min_distance_bruteforce, ComponentCode, DistanceBoundReport, TannerCode,
};
use bireg::completion::{
    certify, random_sign_rank_one, solve_trace_norm_with, trace_norm, CompletionInstance, InstanceFile, SolverOptions,
};
use bireg::graphgen::{
    conditional_edge_probability, sample_configuration, sample_exploration, sample_frame_graph, sample_simple,
    tangle_free, BipartiteGraph, Frame, FrameGraphFile, GraphFile, DEFAULT_MAX_ATTEMPTS,
};
use bireg::numkernel::{DenseMatrix, RngStream};
use bireg::spectra::{
    adjacency_csv, adjacency_spectrum, build_b, gap_certificate, ihara_bass_residual, nonbacktracking_csv,
    perron_check, spectrum_b_from_a, CheckStatus, GapCertificate,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::output::{num, Outcome};
use crate::UsageError;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())).into())
}

/// Accept a bare record or a full output envelope carrying it under
/// `result.<key>`.
fn unwrap_envelope(text: &str, key: &str) -> Result<serde_json::Value> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| usage(format!("bad JSON: {e}")))?;
    match v.get("result").and_then(|r| r.get(key)) {
        Some(inner) => Ok(inner.clone()),
        None => Ok(v),
    }
}

fn read_graph(path: &Path) -> Result<BipartiteGraph> {
    let v = unwrap_envelope(&read(path)?, "graph")?;
    let file: GraphFile = serde_json::from_value(v).map_err(|e| usage(format!("bad graph file: {e}")))?;
    Ok(file.to_graph()?)
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Resolve a graph from a file or by sampling; returns the graph and the
/// number of sampling attempts (0 for files).
fn load_graph(src: &GraphSource) -> Result<(BipartiteGraph, usize)> {
    if let Some(path) = &src.graph {
        return Ok((read_graph(path)?, 0));
    }
    match (src.n, src.m, src.d1, src.d2, src.seed) {
        (Some(n), Some(m), Some(d1), Some(d2), Some(seed)) => {
            let s = sample_simple(n, m, d1, d2, &mut RngStream::new(seed), DEFAULT_MAX_ATTEMPTS)?;
            Ok((s.graph, s.attempts))
        }
        _ => Err(usage("give --graph FILE, or all of --n --m --d1 --d2 --seed")),
    }
}

fn graph_metadata(g: &BipartiteGraph) -> Vec<(String, String)> {
    vec![
        ("n".into(), g.n().to_string()),
        ("m".into(), g.m().to_string()),
        ("d1".into(), g.d1().to_string()),
        ("d2".into(), g.d2().to_string()),
    ]
}

pub fn sample(a: &SampleArgs) -> Result<Outcome> {
    let GraphParams { n, m, d1, d2 } = a.graph;
    let mut rng = RngStream::new(a.seed);
    let (g, attempts) = if a.simple {
        let s = sample_simple(n, m, d1, d2, &mut rng, a.max_attempts)?;
        (s.graph, Some(s.attempts))
    } else {
        let g = match a.method {
            Method::Configuration => sample_configuration(n, m, d1, d2, &mut rng)?,
            Method::Exploration => sample_exploration(n, m, d1, d2, &mut rng)?,
        };
        (g, None)
    };
    let mut table = String::from("left,right\n");
    for &(l, r) in g.edges() {
        let _ = writeln!(table, "{l},{r}");
    }
    let result = json!({
        "graph": GraphFile::from(&g),
        "simple": g.is_simple(),
        "attempts": attempts,
    });
    Ok(Outcome::new(Some(a.seed), result)?.table("edges.csv", table))
}

#[derive(Serialize)]
struct NbEntry {
    re: f64,
    im: f64,
    category: &'static str,
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome> {
    let (g, attempts) = load_graph(&a.source)?;
    let spec = adjacency_spectrum(&g)?;
    let mut meta = graph_metadata(&g);
    if let Some(seed) = a.source.seed {
        meta.push(("seed".into(), seed.to_string()));
    }
    let mut outcome_tables = vec![("adjacency.csv".to_string(), adjacency_csv(&spec, &meta))];
    let perron = perron_check(&build_b(&g)?, g.d1(), g.d2());
    let nb = match spectrum_b_from_a(&spec, g.d1(), g.d2()) {
        Ok(nb) => {
            outcome_tables.push(("nonbacktracking.csv".to_string(), nonbacktracking_csv(&nb, &meta)));
            let entries: Vec<NbEntry> =
                nb.entries.iter().map(|e| NbEntry { re: e.re, im: e.im, category: e.category.label() }).collect();
            json!({
                "perron": nb.perron(),
                "circle_radius": nb.circle_radius(),
                "lambda2_modulus": nb.lambda2_modulus(),
                "entries": entries,
            })
        }
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let result = json!({
        "n": g.n(), "m": g.m(), "d1": g.d1(), "d2": g.d2(),
        "attempts": attempts,
        "leading": spec.leading(),
        "eta": spec.eta,
        "eta_min_plus": spec.eta_min_plus,
        "rank": spec.rank_r,
        "perron_residual": perron.max_residual(),
        "adjacency": spec.values,
        "nonbacktracking": nb,
    });
    let mut outcome = Outcome::new(a.source.seed, result)?;
    outcome.tables = outcome_tables;
    Ok(outcome)
}

#[derive(Serialize)]
struct CheckRate {
    name: String,
    pass: usize,
    fail: usize,
    no_information: usize,
    /// `pass / (pass + fail)`, absent when every sample was uninformative.
    rate: Option<f64>,
}

#[derive(Serialize)]
struct Spread {
    min: f64,
    max: f64,
    mean: f64,
}

fn spread(xs: impl Iterator<Item = f64>) -> Option<Spread> {
    let v: Vec<f64> = xs.collect();
    if v.is_empty() {
        return None;
    }
    Some(Spread {
        min: v.iter().cloned().fold(f64::INFINITY, f64::min),
        max: v.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        mean: v.iter().sum::<f64>() / v.len() as f64,
    })
}

pub fn gap_check(a: &GapCheckArgs) -> Result<Outcome> {
    let GraphParams { n, m, d1, d2 } = a.graph;
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let runs: Vec<(usize, GapCertificate)> = (0..a.samples)
        .into_par_iter()
        .map(|i| -> Result<_> {
            let mut rng = RngStream::derive(a.seed, i as u64);
            let s = sample_simple(n, m, d1, d2, &mut rng, DEFAULT_MAX_ATTEMPTS)?;
            Ok((s.attempts, gap_certificate(&s.graph, a.epsilon)?))
        })
        .collect::<Result<_>>()?;

    let names: Vec<String> = runs[0].1.checks.iter().map(|c| c.name.clone()).collect();
    let rates: Vec<CheckRate> = names
        .iter()
        .map(|name| {
            let statuses: Vec<CheckStatus> =
                runs.iter().filter_map(|(_, c)| c.check(name)).map(|c| c.status).collect();
            let count = |s: CheckStatus| statuses.iter().filter(|&&x| x == s).count();
            let (pass, fail) = (count(CheckStatus::Pass), count(CheckStatus::Fail));
            CheckRate {
                name: name.clone(),
                pass,
                fail,
                no_information: count(CheckStatus::NoInformation),
                rate: (pass + fail > 0).then(|| pass as f64 / (pass + fail) as f64),
            }
        })
        .collect();
    let ok = rates.iter().all(|r| r.rate.is_none_or(|x| x >= a.min_pass_rate));

    let mut table = String::from("sample,attempts,leading,eta,eta_min_plus,rank,lambda2_b,perron_residual");
    for name in &names {
        let _ = write!(table, ",{name}");
    }
    table.push('\n');
    for (i, (attempts, c)) in runs.iter().enumerate() {
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        let _ = write!(
            table,
            "{i},{attempts},{},{},{},{},{},{}",
            c.leading,
            c.eta,
            opt(c.eta_min_plus),
            c.rank_r,
            opt(c.lambda2_b),
            num(c.perron_residual)
        );
        for ch in &c.checks {
            let _ = write!(table, ",{}", serde_json::to_value(ch.status)?.as_str().unwrap_or(""));
        }
        table.push('\n');
    }

    let result = json!({
        "samples": a.samples,
        "epsilon": a.epsilon,
        "min_pass_rate": a.min_pass_rate,
        "all_rates_met": ok,
        "pass_rates": rates,
        "eta": spread(runs.iter().map(|(_, c)| c.eta)),
        "eta_min_plus": spread(runs.iter().filter_map(|(_, c)| c.eta_min_plus)),
        "lambda2_b": spread(runs.iter().filter_map(|(_, c)| c.lambda2_b)),
        "rank": spread(runs.iter().map(|(_, c)| c.rank_r as f64)),
        "certificates": a.full.then(|| runs.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>()),
    });
    Ok(Outcome::new(Some(a.seed), result)?.table("gap_check.csv", table).passed(ok))
}

pub fn tangle_check(a: &TangleArgs) -> Result<Outcome> {
    let (g, _) = load_graph(&a.source)?;
    let report = tangle_free(&g, a.ell);
    let ok = report.tangle_free;
    Ok(Outcome::new(a.source.seed, report)?.passed(ok))
}

/// Random test points keep this distance from the roots at `+-1`.
const SAMPLE_GAP: f64 = 0.1;

pub fn ihara_verify(a: &IharaArgs) -> Result<Outcome> {
    let (g, _) = load_graph(&a.source)?;
    let mut points: Vec<Complex64> = a.lambdas.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    if a.points > 0 {
        let seed = a.source.seed.ok_or_else(|| usage("random points need --seed"))?;
        let mut rng = RngStream::derive(seed, 1);
        while points.len() < a.lambdas.len() + a.points {
            let r = 0.5 + 2.5 * rng.uniform();
            let theta = std::f64::consts::TAU * rng.uniform();
            let z = Complex64::from_polar(r, theta);
            if (z - 1.0).norm() >= SAMPLE_GAP && (z + 1.0).norm() >= SAMPLE_GAP {
                points.push(z);
            }
        }
    }
    let residuals = points.iter().map(|&z| ihara_bass_residual(&g, z)).collect::<bireg::Result<Vec<_>>>()?;
    let worst = residuals.iter().map(|r| r.max_discrepancy()).fold(0.0, f64::max);
    let mut table = String::from("re,im,log_modulus_rel,argument_diff\n");
    for r in &residuals {
        let _ = writeln!(
            table,
            "{},{},{},{}",
            num(r.lambda_re),
            num(r.lambda_im),
            num(r.log_modulus_rel),
            num(r.argument_diff)
        );
    }
    let ok = worst <= a.tol;
    let result = json!({ "tol": a.tol, "max_discrepancy": worst, "residuals": residuals });
    Ok(Outcome::new(a.source.seed, result)?.table("ihara.csv", table).passed(ok))
}

fn load_frame(spec: &FrameSpec) -> Result<Frame> {
    match (&spec.frame, spec.rsbm) {
        (Some(path), None) => {
            let frame: Frame = serde_json::from_str(&read(path)?).map_err(|e| usage(format!("bad frame file: {e}")))?;
            frame.validate()?;
            Ok(frame)
        }
        (None, Some((d_in, d_out))) => Ok(Frame::regular_sbm(d_in, d_out)?),
        _ => Err(usage("give exactly one of --frame FILE or --rsbm D_IN,D_OUT")),
    }
}

pub fn frame_sample(a: &FrameSampleArgs) -> Result<Outcome> {
    let frame = load_frame(&a.frame)?;
    let fg = sample_frame_graph(a.frame.n_total, &frame, &mut RngStream::new(a.seed), a.max_attempts)?;
    let mut table = String::from("u,v\n");
    for &(u, v) in &fg.edges {
        let _ = writeln!(table, "{u},{v}");
    }
    let result = json!({
        "class_sizes": frame.class_sizes(a.frame.n_total)?,
        "graph": FrameGraphFile::from(&fg),
    });
    Ok(Outcome::new(Some(a.seed), result)?.table("edges.csv", table))
}

#[derive(Serialize)]
struct ClusterRun {
    sample: usize,
    accuracy: f64,
    num_clusters: usize,
    reliable: bool,
    eigengap: Option<f64>,
    eigenvalues: Vec<f64>,
    warnings: Vec<String>,
}

pub fn cluster(a: &ClusterArgs) -> Result<Outcome> {
    let frame = load_frame(&a.frame)?;
    let k = a.k.unwrap_or(frame.num_classes());
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let runs: Vec<(ClusterRun, String)> = (0..a.samples)
        .into_par_iter()
        .map(|i| -> Result<_> {
            let mut rng = if a.samples == 1 { RngStream::new(a.seed) } else { RngStream::derive(a.seed, i as u64) };
            let fg = sample_frame_graph(a.frame.n_total, &frame, &mut rng, a.max_attempts)?;
            let res = spectral_cluster(&fg, k, a.tol)?;
            let acc = accuracy(&res.assignment, &fg.labels)?;
            let csv = cluster_csv(&res, Some(&fg.labels));
            let run = ClusterRun {
                sample: i,
                accuracy: acc,
                num_clusters: res.num_clusters,
                reliable: res.reliable,
                eigengap: res.eigengap,
                eigenvalues: res.eigenvalues,
                warnings: res.warnings,
            };
            Ok((run, csv))
        })
        .collect::<Result<_>>()?;
    let mean = runs.iter().map(|(r, _)| r.accuracy).sum::<f64>() / runs.len() as f64;
    let exact = runs.iter().filter(|(r, _)| r.accuracy == 1.0).count() as f64 / runs.len() as f64;
    let ok = a.min_accuracy.is_none_or(|t| mean >= t);
    let table = if runs.len() == 1 {
        runs[0].1.clone()
    } else {
        let mut t = String::from("sample,accuracy,num_clusters,reliable\n");
        for (r, _) in &runs {
            let _ = writeln!(t, "{},{},{},{}", r.sample, r.accuracy, r.num_clusters, r.reliable);
        }
        t
    };
    let result = json!({
        "k": k,
        "mean_accuracy": mean,
        "exact_recovery_fraction": exact,
        "runs": runs.iter().map(|(r, _)| r).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(Some(a.seed), result)?.table("cluster.csv", table).passed(ok))
}

pub fn rsbm(a: &RsbmArgs) -> Result<Outcome> {
    Outcome::new(None, rsbm_thresholds(a.d1, a.d2)?)
}

#[derive(Serialize)]
struct TannerActual {
    length: usize,
    dimension: usize,
    rate: f64,
    min_distance: Option<usize>,
}

pub fn tanner_bound(a: &TannerArgs) -> Result<Outcome> {
    if a.paper_example {
        let report = corollary_bound(216, 14, 9, 7.0, 6.0, a.epsilon)?.with_rate(8, 4);
        let result = json!({ "example": "n=216, (14,9)-biregular, [14,8,7] and [9,4,6] components", "report": report });
        return Outcome::new(None, result);
    }
    let graph = a.graph.as_deref().map(read_graph).transpose()?;
    let dims = graph.as_ref().map(|g| (g.n(), g.d1(), g.d2()));
    let pick = |flag: Option<usize>, from_graph: Option<usize>, name: &str| -> Result<usize> {
        match (flag, from_graph) {
            (Some(x), Some(y)) if x != y => Err(usage(format!("--{name} {x} disagrees with the graph ({y})"))),
            (Some(x), _) | (None, Some(x)) => Ok(x),
            (None, None) => Err(usage(format!("--{name} is required"))),
        }
    };
    let n = pick(a.n, dims.map(|d| d.0), "n")?;
    let d1 = pick(a.d1, dims.map(|d| d.1), "d1")?;
    let d2 = pick(a.d2, dims.map(|d| d.2), "d2")?;

    let code = match (&graph, &a.c1, &a.c2) {
        (Some(g), Some(c1), Some(c2)) => {
            Some(TannerCode::new(g.clone(), ComponentCode::by_name(c1, d1)?, ComponentCode::by_name(c2, d2)?)?)
        }
        (_, None, None) => None,
        _ => return Err(usage("--c1 and --c2 go together")),
    };
    let delta1 = a.delta1.or(code.as_ref().map(|c| c.c1().distance as f64)).ok_or_else(|| usage("--delta1 is required"))?;
    let delta2 = a.delta2.or(code.as_ref().map(|c| c.c2().distance as f64)).ok_or_else(|| usage("--delta2 is required"))?;
    let k1 = a.k1.or(code.as_ref().map(|c| c.c1().dimension));
    let k2 = a.k2.or(code.as_ref().map(|c| c.c2().dimension));

    let bound = match (&graph, a.eta) {
        (Some(g), _) => {
            let eta = adjacency_spectrum(g)?.singulars.get(1).copied().unwrap_or(0.0);
            janwa_lal_bound(n, d1, d2, delta1, delta2, eta)
        }
        (None, Some(eta)) => janwa_lal_bound(n, d1, d2, delta1, delta2, eta),
        (None, None) => corollary_bound(n, d1, d2, delta1, delta2, a.epsilon),
    };
    let report: Option<DistanceBoundReport> = match bound {
        Ok(r) => Some(match (k1, k2) {
            (Some(k1), Some(k2)) => r.with_rate(k1, k2),
            _ => r,
        }),
        Err(bireg::Error::Hypothesis(msg)) => {
            let result = json!({ "hypothesis_violated": msg });
            return Ok(Outcome::new(None, result)?.passed(false));
        }
        Err(e) => return Err(e.into()),
    };
    let actual = code
        .as_ref()
        .map(|c| -> Result<_> {
            let dimension = c.dimension();
            Ok(TannerActual {
                length: c.length(),
                dimension,
                rate: dimension as f64 / c.length() as f64,
                min_distance: min_distance_bruteforce(c, a.max_dim)?,
            })
        })
        .transpose()?;
    let ok = match (&actual, &report) {
        (Some(TannerActual { min_distance: Some(d), .. }), Some(r)) => *d as f64 >= r.distance_lb - 1e-9,
        _ => true,
    };
    Ok(Outcome::new(None, json!({ "report": report, "code": actual }))?.passed(ok))
}

fn load_instance(src: &InstanceSource) -> Result<CompletionInstance> {
    if let Some(path) = &src.instance {
        let file: InstanceFile = serde_json::from_value(unwrap_envelope(&read(path)?, "instance")?)
            .map_err(|e| usage(format!("bad instance file: {e}")))?;
        let inst = file.to_instance()?;
        return Ok(if src.delta > 0.0 && inst.delta == 0.0 {
            let z = inst.observed();
            inst.with_noise(z, src.delta)?
        } else {
            inst
        });
    }
    match (src.n, src.m, src.d1, src.d2, src.seed) {
        (Some(n), Some(m), Some(d1), Some(d2), Some(seed)) => {
            let mut rng = RngStream::new(seed);
            let mask = sample_simple(n, m, d1, d2, &mut rng, DEFAULT_MAX_ATTEMPTS)?.graph;
            let inst = CompletionInstance::new(random_sign_rank_one(n, m, &mut rng), mask)?;
            Ok(if src.delta > 0.0 { inst.with_uniform_noise(src.delta, &mut rng)? } else { inst })
        }
        _ => Err(usage("give --instance FILE, or all of --n --m --d1 --d2 --seed")),
    }
}

fn matrix_csv(x: &DenseMatrix) -> String {
    let mut out = String::new();
    for row in x.to_rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn complete(a: &CompleteArgs) -> Result<Outcome> {
    let inst = load_instance(&a.source)?;
    let opts = SolverOptions { max_iter: a.max_iter, tol: a.tol, decay: a.decay };
    let c = solve_trace_norm_with(&inst, opts)?;
    let result = json!({
        "instance": InstanceFile::from(&inst),
        "solver": {
            "objective": "trace_norm",
            "iterations": c.iterations,
            "converged": c.converged,
            "residual_rms": c.residual_rms,
            "final_mu": c.final_mu,
            "trace_norm": c.trace_norm,
            "target_trace_norm": trace_norm(&inst.y)?,
        },
        "x": c.x.to_rows(),
    });
    Ok(Outcome::new(a.source.seed, result)?.table("x.csv", matrix_csv(&c.x)).passed(c.converged))
}

pub fn certify_cmd(a: &CertifyArgs) -> Result<Outcome> {
    let (inst, x, seed) = match &a.input {
        Some(path) => {
            let v: serde_json::Value =
                serde_json::from_str(&read(path)?).map_err(|e| usage(format!("bad input file: {e}")))?;
            let result = v.get("result").unwrap_or(&v);
            let file: InstanceFile = serde_json::from_value(result.get("instance").cloned().unwrap_or_default())
                .map_err(|e| usage(format!("input has no usable instance: {e}")))?;
            let rows: Vec<Vec<f64>> = serde_json::from_value(result.get("x").cloned().unwrap_or_default())
                .map_err(|e| usage(format!("input has no usable x: {e}")))?;
            let seed = v.get("seed").and_then(|s| s.as_u64());
            (file.to_instance()?, DenseMatrix::from_rows(&rows)?, seed)
        }
        None => {
            let inst = load_instance(&a.source)?;
            let c = solve_trace_norm_with(&inst, SolverOptions::default())?;
            if !c.converged {
                return Err(bireg::Error::NoConvergence { method: "trace-norm soft-thresholding", iterations: c.iterations }.into());
            }
            (inst, c.x, a.source.seed)
        }
    };
    let cert = certify(&inst, &x, a.epsilon)?;
    let ok = cert.satisfied;
    Ok(Outcome::new(seed, cert)?.passed(ok))
}

pub fn edge_prob(a: &EdgeProbArgs) -> Result<Outcome> {
    let GraphParams { n, m, d1, d2 } = a.graph;
    let est = conditional_edge_probability(n, m, d1, d2, &a.h, a.edge, a.samples, a.max_raw, &mut RngStream::new(a.seed))
        .context("edge probability estimate")?;
    let reference = d2 as f64 / n as f64;
    let z = if est.std_error > 0.0 { Some((est.estimate - reference) / est.std_error) } else { None };
    let result = json!({ "estimate": est, "isolated_edge_reference": reference, "z_score": z });
    Outcome::new(Some(a.seed), result)
}
