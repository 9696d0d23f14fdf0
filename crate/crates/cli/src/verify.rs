use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use fueter_core::quadrature::convergence_csv;
use fueter_core::verify::{self as harness, Mode, Suite, VerifyConfig};

use crate::Failure;

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: Option<String>,
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub beta: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// exact or float.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json, text or csv (csv: quadrature convergence table only).
    #[arg(long)]
    pub format: Option<String>,
    /// Largest half-dimension for the appendix identities.
    #[arg(long)]
    pub hn_max: Option<u64>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// JSON file with the same keys; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum Dims {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    suite: Option<String>,
    n: Option<Dims>,
    m: Option<u64>,
    beta: Option<u64>,
    trials: Option<usize>,
    mode: Option<String>,
    seed: Option<u64>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    format: Option<String>,
    #[serde(alias = "hn-max")]
    hn_max: Option<u64>,
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Csv,
}

fn parse_format(s: &str) -> Result<Format, Failure> {
    match s {
        "json" => Ok(Format::Json),
        "text" => Ok(Format::Text),
        "csv" => Ok(Format::Csv),
        _ => Err(Failure::config(format!("unknown format '{s}'"))),
    }
}

fn read_config(path: &Path) -> Result<FileConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::config(format!("bad config {}: {e}", path.display())))
}

#[derive(Debug)]
struct Plan {
    config: VerifyConfig,
    format: Format,
    out: Option<PathBuf>,
}

fn plan(args: &VerifyArgs) -> Result<Plan, Failure> {
    let file = match &args.config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let suite_name = args
        .suite
        .clone()
        .or(file.suite)
        .ok_or_else(|| Failure::config("--suite is required"))?;
    let suite: Suite = suite_name.parse()?;
    let mut config = VerifyConfig::new(suite);
    if let Some(n) = args.n.clone().or(file.n.map(|d| match d {
        Dims::One(n) => vec![n],
        Dims::Many(v) => v,
    })) {
        config.n = n;
    }
    config.m = args.m.or(file.m);
    config.beta = args.beta.or(file.beta);
    if let Some(t) = args.trials.or(file.trials) {
        config.trials = t;
    }
    if let Some(mode) = args.mode.clone().or(file.mode) {
        config.mode = mode.parse::<Mode>()?;
    }
    if let Some(seed) = args.seed.or(file.seed) {
        config.seed = seed;
    }
    if let Some(tol) = args.tol.or(file.tol) {
        config.tol = tol;
    }
    if let Some(h) = args.hn_max.or(file.hn_max) {
        config.hn_max = h;
    }
    config.jobs = args.jobs.or(file.jobs);
    if config.jobs == Some(0) {
        return Err(Failure::config("--jobs must be positive"));
    }
    let format = match args.format.clone().or(file.format) {
        Some(f) => parse_format(&f)?,
        None => Format::Json,
    };
    if format == Format::Csv && suite != Suite::Quadrature {
        return Err(Failure::config(
            "csv output is only available for the quadrature suite",
        ));
    }
    config.validate()?;
    Ok(Plan {
        config,
        format,
        out: args.out.clone().or(file.out),
    })
}

pub fn run(args: &VerifyArgs) -> Result<u8, Failure> {
    let plan = plan(args)?;
    let report = harness::run(&plan.config)?;
    let body = match plan.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| Failure::config(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => report.to_text(),
        Format::Csv => convergence_csv(report.convergence.as_deref().unwrap_or(&[])),
    };
    match &plan.out {
        Some(path) => {
            std::fs::write(path, body)
                .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))?;
            eprint!(
                "{}",
                report
                    .to_text()
                    .lines()
                    .next()
                    .map(|l| format!("{l}\n"))
                    .unwrap_or_default()
            );
        }
        None => print!("{body}"),
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}
