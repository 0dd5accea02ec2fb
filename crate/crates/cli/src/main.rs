mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Bad flags or parameter combinations; exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn is_usage(err: &anyhow::Error) -> bool {
    if err.is::<UsageError>() {
        return true;
    }
    matches!(
        err.downcast_ref::<bireg::Error>(),
        Some(
            bireg::Error::DegreeMismatch { .. }
                | bireg::Error::InvalidParameters(_)
                | bireg::Error::DimensionMismatch(_)
                | bireg::Error::Parse(_)
                | bireg::Error::Unbalanced { .. }
                | bireg::Error::NonIntegralClass { .. }
                | bireg::Error::InvalidVertex(_)
                | bireg::Error::ExcludedLambda(_)
                | bireg::Error::DimensionOverBudget { .. }
        )
    )
}

fn configure_threads() {
    if let Some(n) = std::env::var("BIREG_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let (config, outcome) = match &cli.command {
        Command::Sample(a) => (serde_json::to_value(a)?, commands::sample(a)?),
        Command::Spectrum(a) => (serde_json::to_value(a)?, commands::spectrum(a)?),
        Command::GapCheck(a) => (serde_json::to_value(a)?, commands::gap_check(a)?),
        Command::TangleCheck(a) => (serde_json::to_value(a)?, commands::tangle_check(a)?),
        Command::IharaVerify(a) => (serde_json::to_value(a)?, commands::ihara_verify(a)?),
        Command::FrameSample(a) => (serde_json::to_value(a)?, commands::frame_sample(a)?),
        Command::Cluster(a) => (serde_json::to_value(a)?, commands::cluster(a)?),
        Command::RsbmThresholds(a) => (serde_json::to_value(a)?, commands::rsbm(a)?),
        Command::TannerBound(a) => (serde_json::to_value(a)?, commands::tanner_bound(a)?),
        Command::Complete(a) => (serde_json::to_value(a)?, commands::complete(a)?),
        Command::Certify(a) => (serde_json::to_value(a)?, commands::certify_cmd(a)?),
        Command::EdgeProb(a) => (serde_json::to_value(a)?, commands::edge_prob(a)?),
    };
    output::emit(cli.command.name(), &config, &outcome, cli.csv, cli.out.as_deref())?;
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
