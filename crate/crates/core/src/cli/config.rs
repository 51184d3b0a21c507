//! Flat `key = value` run configuration.

use crate::error::{Error, Result};
use crate::hardy::{SymbolChoice, TruncationSpec};
use crate::maps::GKind;
use crate::verifier::DEFAULT_SEED;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Environment variable overriding the output directory.
pub const OUT_DIR_ENV: &str = "CUSP_BIDISK_OUT_DIR";

/// Arithmetic used by the map chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// Double precision.
    Double,
    /// 256-bit chain, rounded to double.
    Extended,
}

impl FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "double" => Ok(Self::Double),
            "extended" => Ok(Self::Extended),
            _ => Err(Error::Config(format!("unknown precision '{s}'"))),
        }
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Double => "double",
            Self::Extended => "extended",
        })
    }
}

/// Everything a run depends on.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Exponent of the perturbation.
    pub theta: f64,
    /// Inert factor of the second coordinate.
    pub g_kind: GKind,
    /// Fixed amplitude instead of calibration.
    pub c: Option<f64>,
    /// Fixed `K̂` instead of estimation.
    pub k_hat: Option<f64>,
    /// First covering index.
    pub j0: u32,
    /// Per-variable truncation degree.
    pub degree: usize,
    /// Quadrature resolution.
    pub quad: usize,
    /// Symbol analysed by `matrix` and `spectrum`.
    pub symbol: SymbolChoice,
    /// Add the diagonal symbol to `spectrum`.
    pub include_diagonal: bool,
    /// Add the one-variable contrast to `spectrum`.
    pub include_one_dim: bool,
    /// Exponent `N` of the schedule `a_{n^N}`.
    pub fit_power: u32,
    /// Sample size of the `K` estimate.
    pub k_sample_count: usize,
    /// Validation points of the calibration.
    pub calibration_count: usize,
    /// Samples of the geometry and covering suites.
    pub sample_count: usize,
    /// Trials of the derivative and Schwarz suites.
    pub trial_count: usize,
    /// `n` values of the covering suite.
    pub covering_ns: Vec<usize>,
    /// `n` values of the count.
    pub codim_ns: Vec<usize>,
    /// Seed of every sampler.
    pub seed: u64,
    /// Output directory.
    pub out_dir: PathBuf,
    /// Map-chain arithmetic.
    pub precision: Precision,
    /// Calibrated parameters written by `calibrate`.
    pub params_file: Option<PathBuf>,
    /// Also write the matrix as CSV.
    pub matrix_csv: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            theta: 0.5,
            g_kind: GKind::IdentityInZ2,
            c: None,
            k_hat: None,
            j0: 21,
            degree: 48,
            quad: 1024,
            symbol: SymbolChoice::Paper,
            include_diagonal: false,
            include_one_dim: false,
            fit_power: 2,
            k_sample_count: 100_000,
            calibration_count: 1_000_000,
            sample_count: 100_000,
            trial_count: 1000,
            covering_ns: vec![10, 100, 1000],
            codim_ns: vec![10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10_000],
            seed: DEFAULT_SEED,
            out_dir: PathBuf::from("out"),
            precision: Precision::Double,
            params_file: None,
            matrix_csv: false,
        }
    }
}

/// Values given on the command line; they take precedence over everything else.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    /// `--seed`.
    pub seed: Option<u64>,
    /// `--degree`.
    pub degree: Option<usize>,
    /// `--quad`.
    pub quad: Option<usize>,
    /// `--symbol`.
    pub symbol: Option<SymbolChoice>,
    /// `--out`.
    pub out: Option<PathBuf>,
}

fn list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"))).collect()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "auto".to_string(), |x| x.to_string())
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("'{s}' is not a boolean")),
    }
}

fn num<T: FromStr>(s: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse::<T>().map_err(|e| format!("'{s}': {e}"))
}

fn opt_num<T: FromStr>(s: &str) -> std::result::Result<Option<T>, String>
where
    T::Err: std::fmt::Display,
{
    if s == "auto" {
        Ok(None)
    } else {
        num(s).map(Some)
    }
}

impl RunConfig {
    /// Applies one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let v = value.trim();
        match key.trim() {
            "theta" => self.theta = num(v)?,
            "g_kind" => self.g_kind = v.parse().map_err(|e: Error| e.to_string())?,
            "c" => self.c = opt_num(v)?,
            "k_hat" => self.k_hat = opt_num(v)?,
            "j0" => self.j0 = num(v)?,
            "degree" => self.degree = num(v)?,
            "quad" => self.quad = num(v)?,
            "symbol" => self.symbol = v.parse().map_err(|e: Error| e.to_string())?,
            "include_diagonal" => self.include_diagonal = parse_bool(v)?,
            "include_one_dim" => self.include_one_dim = parse_bool(v)?,
            "fit_power" => self.fit_power = num(v)?,
            "k_sample_count" => self.k_sample_count = num(v)?,
            "calibration_count" => self.calibration_count = num(v)?,
            "sample_count" => self.sample_count = num(v)?,
            "trial_count" => self.trial_count = num(v)?,
            "covering_ns" => self.covering_ns = list(v)?,
            "codim_ns" => self.codim_ns = list(v)?,
            "seed" => self.seed = num(v)?,
            "out_dir" => self.out_dir = PathBuf::from(v),
            "precision" => self.precision = v.parse().map_err(|e: Error| e.to_string())?,
            "params_file" => self.params_file = if v.is_empty() || v == "auto" { None } else { Some(PathBuf::from(v)) },
            "matrix_csv" => self.matrix_csv = parse_bool(v)?,
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Parses a config file over the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: i + 1, message: format!("expected key = value, got '{line}'") })?;
            cfg.set(k, v).map_err(|message| Error::Parse { line: i + 1, message })?;
        }
        Ok(cfg)
    }

    /// Defaults, then the config file, then the environment, then the flags; validated.
    pub fn resolve(path: Option<&Path>, env_out: Option<String>, flags: &Overrides) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => Self::parse(&std::fs::read_to_string(p).map_err(|e| {
                Error::Config(format!("cannot read config {}: {e}", p.display()))
            })?)?,
            None => Self::default(),
        };
        if let Some(dir) = env_out.filter(|d| !d.is_empty()) {
            cfg.out_dir = PathBuf::from(dir);
        }
        if let Some(s) = flags.seed {
            cfg.seed = s;
        }
        if let Some(d) = flags.degree {
            cfg.degree = d;
        }
        if let Some(q) = flags.quad {
            cfg.quad = q;
        }
        if let Some(s) = flags.symbol {
            cfg.symbol = s;
        }
        if let Some(o) = &flags.out {
            cfg.out_dir = o.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Re-checks every constraint of the parameters and the truncation.
    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::Config(format!("theta = {} must lie in (0, 1)", self.theta)));
        }
        if let Some(c) = self.c {
            if !(c > 0.0 && c < 1.0) {
                return Err(Error::Config(format!("c = {c} must lie in (0, 1)")));
            }
        }
        if let Some(k) = self.k_hat {
            if !(k >= 1.0 && k.is_finite()) {
                return Err(Error::Config(format!("k_hat = {k} must be a finite value >= 1")));
            }
        }
        crate::maps::SymbolParams::new(self.theta, 0.5, self.j0, self.k_hat.unwrap_or(1.0), self.g_kind)?;
        TruncationSpec::new(self.degree, self.quad)?;
        for (name, v) in [
            ("k_sample_count", self.k_sample_count),
            ("calibration_count", self.calibration_count),
            ("sample_count", self.sample_count),
            ("trial_count", self.trial_count),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.fit_power == 0 {
            return Err(Error::Config("fit_power must be positive".into()));
        }
        Ok(())
    }

    /// Canonical text of every key that affects results; the output directory is excluded.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("theta", format!("{:e}", self.theta));
        kv("g_kind", self.g_kind.to_string());
        kv("c", opt(&self.c.map(|c| format!("{c:e}"))));
        kv("k_hat", opt(&self.k_hat.map(|k| format!("{k:e}"))));
        kv("j0", self.j0.to_string());
        kv("degree", self.degree.to_string());
        kv("quad", self.quad.to_string());
        kv("symbol", self.symbol.to_string());
        kv("include_diagonal", self.include_diagonal.to_string());
        kv("include_one_dim", self.include_one_dim.to_string());
        kv("fit_power", self.fit_power.to_string());
        kv("k_sample_count", self.k_sample_count.to_string());
        kv("calibration_count", self.calibration_count.to_string());
        kv("sample_count", self.sample_count.to_string());
        kv("trial_count", self.trial_count.to_string());
        kv("covering_ns", join(&self.covering_ns));
        kv("codim_ns", join(&self.codim_ns));
        kv("seed", self.seed.to_string());
        kv("precision", self.precision.to_string());
        kv("params_file", opt(&self.params_file.as_ref().map(|p| p.display().to_string())));
        kv("matrix_csv", self.matrix_csv.to_string());
        s
    }

    /// Hex SHA-256 of [`RunConfig::canonical`].
    pub fn hash(&self) -> String {
        sha256_hex(self.canonical().as_bytes())
    }

    /// Truncation of the run.
    pub fn truncation(&self) -> Result<TruncationSpec> {
        TruncationSpec::new(self.degree, self.quad)
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_canonical_text() {
        let c = RunConfig {
            symbol: SymbolChoice::Scaled(0.5),
            c: Some(1e-3),
            covering_ns: vec![10, 20],
            ..Default::default()
        };
        let back = RunConfig::parse(&c.canonical()).unwrap();
        assert_eq!(back, RunConfig { out_dir: back.out_dir.clone(), ..c.clone() });
        assert_eq!(back.hash(), c.hash());
    }

    #[test]
    fn unknown_keys_and_bad_values_report_lines() {
        match RunConfig::parse("theta = 0.5\n\nbogus = 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match RunConfig::parse("# comment\ndegree = many") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        std::fs::write(&p, "out_dir = from_file\nseed = 5\n").unwrap();
        let c = RunConfig::resolve(Some(&p), None, &Overrides::default()).unwrap();
        assert_eq!((c.out_dir.to_str().unwrap(), c.seed), ("from_file", 5));
        let c = RunConfig::resolve(Some(&p), Some("from_env".into()), &Overrides::default()).unwrap();
        assert_eq!(c.out_dir.to_str().unwrap(), "from_env");
        let f = Overrides { out: Some("from_flag".into()), seed: Some(9), ..Default::default() };
        let c = RunConfig::resolve(Some(&p), Some("from_env".into()), &f).unwrap();
        assert_eq!((c.out_dir.to_str().unwrap(), c.seed), ("from_flag", 9));
    }

    #[test]
    fn invalid_values_are_rejected() {
        assert!(RunConfig { theta: 1.5, ..Default::default() }.validate().is_err());
        assert!(RunConfig { j0: 5, ..Default::default() }.validate().is_err());
        let c = RunConfig { sample_count: 0, ..Default::default() };
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }
}
