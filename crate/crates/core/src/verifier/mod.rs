//! Property suites for the finite-sample consequences of the construction.
//!
//! Every suite is a deterministic function of its inputs and seed and returns a
//! [`VerificationReport`] whose failures carry machine-readable witnesses.

mod calibration;
mod codim;
mod covering;
mod derivative;
mod geometry;

pub use calibration::check_calibration;
pub use codim::{check_codim_count, codim_count, limit_ratio, m_j, n_n, CodimRow};
pub use covering::{check_covering, CoveringFamily};
pub use derivative::{check_derivative_bound, check_schwarz_bound};
pub use geometry::{check_cusp_geometry, pinch_bracket, GEOMETRY_TOL, PINCH_T_MAX, PINCH_T_MIN};

use crate::error::{Error, Result};
use crate::maps::SymbolParams;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1729;

/// Witnesses kept per report; the count of all violations is kept separately.
pub const MAX_WITNESSES: usize = 16;

/// One failing evaluation, with everything needed to repeat it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Name of the violated check.
    pub check: String,
    /// Inputs of the failing evaluation.
    pub inputs: BTreeMap<String, f64>,
    /// Computed left-hand side.
    pub value: f64,
    /// Bound it had to respect.
    pub bound: f64,
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Suite name.
    pub suite: String,
    /// Seed of the sampler.
    pub seed: u64,
    /// Number of samples or trials tested.
    pub samples: usize,
    /// Total number of violations.
    pub violation_count: usize,
    /// The first few violations.
    pub violations: Vec<Witness>,
    /// Estimated constants and margins.
    pub constants: BTreeMap<String, f64>,
    /// True iff there are no violations.
    pub pass: bool,
}

/// Reports of a full run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationSummary {
    /// Seed shared by all suites.
    pub seed: u64,
    /// True iff every suite passed.
    pub pass: bool,
    /// Reports ordered by suite name.
    pub reports: Vec<VerificationReport>,
}

pub(crate) struct ReportBuilder {
    report: VerificationReport,
}

impl ReportBuilder {
    pub(crate) fn new(suite: &str, seed: u64) -> Self {
        Self {
            report: VerificationReport {
                suite: suite.to_string(),
                seed,
                samples: 0,
                violation_count: 0,
                violations: Vec::new(),
                constants: BTreeMap::new(),
                pass: true,
            },
        }
    }

    pub(crate) fn sample(&mut self) {
        self.report.samples += 1;
    }

    /// Records a violation unless `value ≤ bound`.
    pub(crate) fn check_le(&mut self, check: &str, value: f64, bound: f64, inputs: &[(&str, f64)]) -> bool {
        if value <= bound {
            return true;
        }
        self.violation(check, value, bound, inputs);
        false
    }

    pub(crate) fn violation(&mut self, check: &str, value: f64, bound: f64, inputs: &[(&str, f64)]) {
        self.report.violation_count += 1;
        if self.report.violations.len() < MAX_WITNESSES {
            self.report.violations.push(Witness {
                check: check.to_string(),
                inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                value,
                bound,
            });
        }
    }

    pub(crate) fn constant(&mut self, name: &str, v: f64) {
        self.report.constants.insert(name.to_string(), v);
    }

    pub(crate) fn finish(mut self) -> VerificationReport {
        self.report.pass = self.report.violation_count == 0;
        self.report
    }
}

/// Sample counts and parameters for [`run_all`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Calibrated symbol parameters.
    pub params: SymbolParams,
    /// Seed shared by all samplers.
    pub seed: u64,
    /// Samples for the geometry suite and for each covering run.
    pub sample_count: usize,
    /// Interior samples for the calibration suite.
    pub calibration_count: usize,
    /// Trials for each of the derivative and Schwarz suites.
    pub trial_count: usize,
    /// Values of `n` for the covering suite.
    pub covering_ns: Vec<usize>,
    /// Values of `n` for the codimension count.
    pub codim_ns: Vec<usize>,
}

impl VerifyConfig {
    /// Default counts: 1e5 geometry and covering samples, 1e6 calibration samples,
    /// 1000 trials, `n ∈ {10, 100, 1000}` for the covering and `10 … 10⁴` for the count.
    pub fn new(params: SymbolParams) -> Self {
        Self {
            params,
            seed: DEFAULT_SEED,
            sample_count: 100_000,
            calibration_count: 1_000_000,
            trial_count: 1000,
            covering_ns: vec![10, 100, 1000],
            codim_ns: vec![10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10_000],
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("sample_count", self.sample_count),
            ("calibration_count", self.calibration_count),
            ("trial_count", self.trial_count),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.sample_count < 10_000 {
            return Err(Error::Config(format!("sample_count = {} is below 1e4", self.sample_count)));
        }
        if self.covering_ns.iter().chain(&self.codim_ns).any(|&n| n < 2) {
            return Err(Error::Config("every n must be at least 2".into()));
        }
        Ok(())
    }
}

/// Runs every suite and sorts the reports by name.
pub fn run_all(config: &VerifyConfig) -> Result<VerificationSummary> {
    config.validate()?;
    let seed = config.seed;
    let mut reports = vec![
        check_cusp_geometry(config.sample_count, seed)?,
        check_calibration(&config.params, config.calibration_count, seed)?,
        check_derivative_bound(config.trial_count, seed)?,
        check_schwarz_bound(config.trial_count, seed)?,
    ];
    for &n in &config.covering_ns {
        reports.push(check_covering(&config.params, n, config.sample_count, seed)?);
    }
    let mut codim = check_codim_count(&config.codim_ns, config.params.theta())?;
    codim.seed = seed;
    reports.push(codim);
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(VerificationSummary { seed, pass: reports.iter().all(|r| r.pass), reports })
}
