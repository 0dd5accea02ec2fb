use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "bireg", version, about = "Experiments on bipartite biregular random graphs")]
pub struct Cli {
    /// Write the output here instead of stdout (a directory for `spectrum --csv`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit tabular payloads as CSV instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a graph from G(n, m, d1, d2).
    Sample(SampleArgs),
    /// Adjacency and non-backtracking spectra of one sample.
    Spectrum(SpectrumArgs),
    /// Spectral-gap certificates over many samples.
    GapCheck(GapCheckArgs),
    /// Check whether every radius-ell ball has at most one cycle.
    TangleCheck(TangleArgs),
    /// Compare both sides of the Ihara-Bass determinant identity.
    IharaVerify(IharaArgs),
    /// Sample a graph from a frame model.
    FrameSample(FrameSampleArgs),
    /// Spectral clustering of a frame-model sample.
    Cluster(ClusterArgs),
    /// Recovery thresholds of the regular stochastic block model.
    RsbmThresholds(RsbmArgs),
    /// Rate and distance bounds for a Tanner code.
    TannerBound(TannerArgs),
    /// Trace-norm completion of a matrix observed on a biregular mask.
    Complete(CompleteArgs),
    /// Error certificate for a completed matrix.
    Certify(CertifyArgs),
    /// Monte Carlo estimate of a conditional edge probability.
    EdgeProb(EdgeProbArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sample(_) => "sample",
            Command::Spectrum(_) => "spectrum",
            Command::GapCheck(_) => "gap-check",
            Command::TangleCheck(_) => "tangle-check",
            Command::IharaVerify(_) => "ihara-verify",
            Command::FrameSample(_) => "frame-sample",
            Command::Cluster(_) => "cluster",
            Command::RsbmThresholds(_) => "rsbm-thresholds",
            Command::TannerBound(_) => "tanner-bound",
            Command::Complete(_) => "complete",
            Command::Certify(_) => "certify",
            Command::EdgeProb(_) => "edge-prob",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphParams {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub d1: usize,
    #[arg(long)]
    pub d2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Configuration,
    Exploration,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphParams,
    #[arg(long)]
    pub seed: u64,
    /// Reject until the sample has no parallel edges.
    #[arg(long)]
    pub simple: bool,
    /// Sampler for multigraphs (ignored with --simple).
    #[arg(long, value_enum, default_value = "configuration")]
    pub method: Method,
    #[arg(long, default_value_t = bireg::graphgen::DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: usize,
}

/// A graph given either by file or by sampling parameters.
#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphSource {
    /// Graph JSON as written by `sample`.
    #[arg(long, conflicts_with_all = ["n", "m", "d1", "d2"])]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d1: Option<usize>,
    #[arg(long)]
    pub d2: Option<usize>,
    /// Seed for sampling a simple graph when no --graph is given.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: GraphSource,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GapCheckArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphParams,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.3)]
    pub epsilon: f64,
    /// Exit 1 when some check passes in a smaller fraction of samples.
    #[arg(long, default_value_t = 0.95)]
    pub min_pass_rate: f64,
    /// Include every per-sample certificate in the JSON output.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TangleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: GraphSource,
    #[arg(long)]
    pub ell: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IharaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: GraphSource,
    /// Number of random spectral parameters (|lambda| in [0.5, 3]).
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// Extra points `re,im`; may be repeated.
    #[arg(long = "lambda", value_parser = parse_complex)]
    pub lambdas: Vec<(f64, f64)>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    Ok((parse(re)?, parse(im)?))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FrameSpec {
    /// Frame JSON `{"names":[..], "p":[..], "degrees":[[..],..]}`.
    #[arg(long, conflicts_with = "rsbm")]
    pub frame: Option<PathBuf>,
    /// Regular stochastic block model `d_in,d_out`.
    #[arg(long, value_parser = parse_pair)]
    pub rsbm: Option<(usize, usize)>,
    /// Total number of vertices.
    #[arg(long)]
    pub n_total: usize,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected 'a,b', got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FrameSampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub frame: FrameSpec,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = bireg::graphgen::DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClusterArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub frame: FrameSpec,
    #[arg(long)]
    pub seed: u64,
    /// Number of eigenvectors (defaults to the number of classes).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = bireg::clustering::DEFAULT_GROUP_TOL)]
    pub tol: f64,
    /// Independent samples; sample `i` uses the stream derived from `(seed, i)`.
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    /// Exit 1 when the mean accuracy falls below this.
    #[arg(long)]
    pub min_accuracy: Option<f64>,
    #[arg(long, default_value_t = bireg::graphgen::DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RsbmArgs {
    #[arg(long)]
    pub d1: usize,
    #[arg(long)]
    pub d2: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TannerArgs {
    /// The worked example: n = 216, (14, 9)-biregular, [14, 8, 7] and [9, 4, 6] components.
    #[arg(long, conflicts_with_all = ["n", "d1", "d2", "delta1", "delta2", "k1", "k2", "graph"])]
    pub paper_example: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d1: Option<usize>,
    #[arg(long)]
    pub d2: Option<usize>,
    /// Minimum distance of the left component code.
    #[arg(long)]
    pub delta1: Option<f64>,
    /// Minimum distance of the right component code.
    #[arg(long)]
    pub delta2: Option<f64>,
    #[arg(long)]
    pub k1: Option<usize>,
    #[arg(long)]
    pub k2: Option<usize>,
    /// Use this eta instead of `sqrt(d1-1) + sqrt(d2-1) + epsilon`.
    #[arg(long, conflicts_with = "graph")]
    pub eta: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// Graph JSON: bound with the measured eta, and with --c1/--c2 the
    /// actual code's dimension and brute-force distance.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Component code on left vertices (repetition, spc, full, hamming, simplex, extended_hamming).
    #[arg(long, requires = "graph")]
    pub c1: Option<String>,
    #[arg(long, requires = "graph")]
    pub c2: Option<String>,
    #[arg(long, default_value_t = bireg::codes::DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

/// A completion instance given by file or generated as a random rank-one
/// sign matrix on a sampled mask.
#[derive(Debug, Clone, Args, Serialize)]
pub struct InstanceSource {
    /// Instance JSON `{"y": [[..]], "mask": <graph>, "observations"?: [..], "delta"?: x}`.
    #[arg(long, conflicts_with_all = ["n", "m", "d1", "d2"])]
    pub instance: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d1: Option<usize>,
    #[arg(long)]
    pub d2: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Noise budget; generated instances get uniform noise in [-delta, delta].
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompleteArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: InstanceSource,
    #[arg(long, default_value_t = 5000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 0.97)]
    pub decay: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CertifyArgs {
    /// Output of `complete`; without it the instance is built and solved here.
    #[arg(long, conflicts_with_all = ["instance", "n", "m", "d1", "d2"])]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub source: InstanceSource,
    /// Slack in the random-graph eta of the second bound.
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EdgeProbArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphParams,
    /// Conditioning edges `l,r`; may be repeated.
    #[arg(long = "h", value_parser = parse_pair)]
    pub h: Vec<(usize, usize)>,
    /// Candidate edge `l,r`.
    #[arg(long, value_parser = parse_pair)]
    pub edge: (usize, usize),
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = bireg::graphgen::DEFAULT_RAW_BUDGET)]
    pub max_raw: u64,
    #[arg(long)]
    pub seed: u64,
}
