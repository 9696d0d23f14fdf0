//! Verification suites and the machine-readable report they produce.
//!
//! Each suite expands into independent cases, runs them (possibly in
//! parallel) and sorts the results by case key, so a report depends only on
//! its configuration.

mod points;
mod suites;

pub use points::{ball_point, kernel_point, series_point, COORD_BOUND};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::{Paravector, TextCoeff};
use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::quadrature::ConvergenceRow;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremD,
    TheoremDbar,
    Lemmas,
    SpecialCases,
    Appendix,
    Monogenic,
    Polyharmonic,
    Forms,
    Series,
    Catalog,
    Quadrature,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::TheoremD,
        Suite::TheoremDbar,
        Suite::Lemmas,
        Suite::SpecialCases,
        Suite::Appendix,
        Suite::Monogenic,
        Suite::Polyharmonic,
        Suite::Forms,
        Suite::Series,
        Suite::Catalog,
        Suite::Quadrature,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::TheoremD => "theorem-d",
            Suite::TheoremDbar => "theorem-dbar",
            Suite::Lemmas => "lemmas",
            Suite::SpecialCases => "special-cases",
            Suite::Appendix => "appendix",
            Suite::Monogenic => "monogenic",
            Suite::Polyharmonic => "polyharmonic",
            Suite::Forms => "forms",
            Suite::Series => "series",
            Suite::Catalog => "catalog",
            Suite::Quadrature => "quadrature",
        }
    }

    /// Dimensions used when none are configured.
    pub fn default_dims(&self) -> Vec<usize> {
        match self {
            Suite::SpecialCases | Suite::Forms => vec![3, 5, 7, 9],
            Suite::Catalog => vec![3, 5],
            Suite::Quadrature => vec![3, 5],
            Suite::Appendix => vec![],
            _ => vec![3, 5, 7],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(Error::InvalidParams(format!("unknown mode '{s}'"))),
        }
    }
}

/// Dimensions above this are always checked in floating point.
pub const MAX_EXACT_DIM: usize = 7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub n: Vec<usize>,
    /// Restricts the Laplacian exponent (or lemma exponent) when set.
    pub m: Option<u64>,
    /// Restricts the Dirac power when set.
    pub beta: Option<u64>,
    pub trials: usize,
    pub mode: Mode,
    pub seed: u64,
    pub tol: f64,
    pub hn_max: u64,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl VerifyConfig {
    pub fn new(suite: Suite) -> Self {
        VerifyConfig {
            suite,
            n: suite.default_dims(),
            m: None,
            beta: None,
            trials: 10,
            mode: Mode::Exact,
            seed: 0,
            tol: 1e-10,
            hn_max: 12,
            jobs: None,
        }
    }

    pub fn execution(&self) -> Execution {
        Execution::with_jobs(self.jobs)
    }

    pub fn validate(&self) -> Result<()> {
        for &n in &self.n {
            if n < 3 || n % 2 == 0 || n > 15 {
                return Err(Error::InvalidParams(format!(
                    "n must be odd in 3..=15, got {n}"
                )));
            }
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(Error::InvalidParams(
                "tol must be a non-negative number".into(),
            ));
        }
        if self.trials == 0 && self.suite != Suite::Appendix {
            return Err(Error::InvalidParams("trials must be positive".into()));
        }
        Ok(())
    }

    /// Mode actually used at dimension `n`.
    pub fn mode_for(&self, n: usize) -> Mode {
        if n > MAX_EXACT_DIM {
            Mode::Float
        } else {
            self.mode
        }
    }
}

/// `s` and `x` in the `x0,x1,...,xn` text form. Quadrature cases have no `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasePoint {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<String>,
    pub x: String,
}

impl CasePoint {
    pub fn new<R: TextCoeff>(s: &Paravector<R>, x: &Paravector<R>) -> Self {
        CasePoint {
            s: Some(paravector_text(s)),
            x: paravector_text(x),
        }
    }

    pub fn x_only<R: TextCoeff>(x: &Paravector<R>) -> Self {
        CasePoint {
            s: None,
            x: paravector_text(x),
        }
    }
}

pub fn paravector_text<R: TextCoeff>(p: &Paravector<R>) -> String {
    p.components()
        .iter()
        .map(|c| c.to_text())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub key: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub point: Option<CasePoint>,
    /// Norm of the difference; `null` when the case could not be evaluated.
    pub residual: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    /// Seconds.
    pub wall_time: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub flagged_known_discrepancies: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: Suite,
    pub config: VerifyConfig,
    pub cases: Vec<Case>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub convergence: Option<Vec<ConvergenceRow>>,
}

impl VerificationReport {
    fn assemble(
        config: VerifyConfig,
        mut cases: Vec<Case>,
        convergence: Option<Vec<ConvergenceRow>>,
    ) -> Self {
        cases.sort_by(|a, b| a.key.cmp(&b.key));
        let passed = cases.iter().filter(|c| c.pass).count();
        let flagged = cases
            .iter()
            .filter(|c| c.pass && c.expected_match == Some(false))
            .count();
        VerificationReport {
            schema: REPORT_SCHEMA,
            suite: config.suite,
            summary: Summary {
                total: cases.len(),
                passed,
                failed: cases.len() - passed,
                flagged_known_discrepancies: flagged,
            },
            config,
            cases,
            convergence,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Human-readable summary with one line per failing case.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} cases, {} passed, {} failed, {} flagged known discrepancies\n",
            self.suite,
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            self.summary.flagged_known_discrepancies
        );
        for c in &self.cases {
            let flagged = c.expected_match == Some(false);
            if !c.pass || flagged {
                let status = if c.pass { "FLAGGED" } else { "FAIL" };
                let residual = c
                    .residual
                    .map(|r| format!("{r:e}"))
                    .unwrap_or_else(|| "n/a".into());
                out.push_str(&format!("{status} {} residual={residual}", c.key));
                if let Some(d) = &c.detail {
                    out.push_str(&format!(" ({d})"));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Runs a suite.
pub fn run(config: &VerifyConfig) -> Result<VerificationReport> {
    config.validate()?;
    let (cases, convergence) = match config.suite {
        Suite::TheoremD => (suites::theorem(config, false)?, None),
        Suite::TheoremDbar => (suites::theorem(config, true)?, None),
        Suite::Lemmas => (suites::lemmas(config)?, None),
        Suite::SpecialCases => (suites::special_cases(config)?, None),
        Suite::Appendix => (suites::appendix(config)?, None),
        Suite::Monogenic => (suites::monogenic(config)?, None),
        Suite::Polyharmonic => (suites::polyharmonic(config)?, None),
        Suite::Forms => (suites::forms(config)?, None),
        Suite::Series => (suites::series(config)?, None),
        Suite::Catalog => (suites::catalog(config)?, None),
        Suite::Quadrature => {
            let (cases, table) = suites::quadrature(config)?;
            (cases, Some(table))
        }
    };
    Ok(VerificationReport::assemble(
        config.clone(),
        cases,
        convergence,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(
                serde_json::to_string(&s).unwrap(),
                format!("\"{}\"", s.name())
            );
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn invalid_dimension_is_a_config_error() {
        let mut c = VerifyConfig::new(Suite::Forms);
        c.n = vec![4];
        assert!(matches!(run(&c).unwrap_err(), Error::InvalidParams(_)));
    }

    #[test]
    fn summary_counts_match_cases() {
        let mut c = VerifyConfig::new(Suite::Forms);
        c.n = vec![3];
        c.trials = 2;
        let r = run(&c).unwrap();
        assert_eq!(r.summary.total, r.cases.len());
        assert_eq!(r.summary.passed + r.summary.failed, r.summary.total);
        assert!(r.all_passed());
        let keys: Vec<_> = r.cases.iter().map(|c| c.key.clone()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn reports_are_deterministic_across_schedules() {
        let mut c = VerifyConfig::new(Suite::Lemmas);
        c.n = vec![3];
        c.trials = 2;
        c.m = Some(2);
        c.jobs = Some(1);
        let a = run(&c).unwrap();
        c.jobs = Some(3);
        let b = run(&c).unwrap();
        let strip = |r: &VerificationReport| {
            r.cases
                .iter()
                .map(|c| (c.key.clone(), c.residual, c.pass, c.point.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
    }
}
