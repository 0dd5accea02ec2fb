use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::UsageError;

/// What a subcommand produced.
pub struct Outcome {
    pub seed: Option<u64>,
    pub result: Value,
    /// CSV payloads `(file name, body)` available under `--csv`.
    pub tables: Vec<(String, String)>,
    /// False when the run's check failed (exit status 1).
    pub passed: bool,
}

impl Outcome {
    pub fn new(seed: Option<u64>, result: impl Serialize) -> Result<Self> {
        Ok(Self { seed, result: serde_json::to_value(result)?, tables: Vec::new(), passed: true })
    }

    pub fn table(mut self, name: &str, body: String) -> Self {
        self.tables.push((name.to_string(), body));
        self
    }

    pub fn passed(mut self, ok: bool) -> Self {
        self.passed = ok;
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    seed: Option<u64>,
    config: &'a Value,
    result: &'a Value,
}

fn csv_header(command: &str, seed: Option<u64>, config: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# tool=bireg");
    let _ = writeln!(out, "# version={}", bireg::VERSION);
    let _ = writeln!(out, "# command={command}");
    match seed {
        Some(s) => {
            let _ = writeln!(out, "# seed={s}");
        }
        None => out.push_str("# seed=none\n"),
    }
    let _ = writeln!(out, "# config={config}");
    out
}

pub fn emit(command: &str, config: &Value, outcome: &Outcome, csv: bool, out: Option<&Path>) -> Result<()> {
    if !csv {
        let env = Envelope {
            tool: "bireg",
            version: bireg::VERSION,
            command,
            seed: outcome.seed,
            config,
            result: &outcome.result,
        };
        let mut text = serde_json::to_string_pretty(&env)?;
        text.push('\n');
        return write_to(out, &text);
    }
    if outcome.tables.is_empty() {
        return Err(UsageError(format!("`{command}` has no tabular output; drop --csv")).into());
    }
    let header = csv_header(command, outcome.seed, config);
    match out {
        Some(dir) if outcome.tables.len() > 1 => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, body) in &outcome.tables {
                let path = dir.join(name);
                fs::write(&path, format!("{header}{body}")).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(())
        }
        _ => {
            let text: Vec<String> = outcome.tables.iter().map(|(_, body)| format!("{header}{body}")).collect();
            write_to(out, &text.join("\n"))
        }
    }
}

fn write_to(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

/// Plain decimal for moderate magnitudes, scientific otherwise.
pub fn num(x: f64) -> String {
    if x == 0.0 || (1e-4..1e15).contains(&x.abs()) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}
