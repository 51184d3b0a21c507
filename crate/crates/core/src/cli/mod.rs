//! Command-line front end: `map-eval`, `calibrate`, `matrix`, `spectrum`, `verify`, `report`.
//!
//! Every verb resolves a [`RunConfig`], writes its outputs under the output directory and
//! stamps them with the config hash and seed. Exit codes: 0 success, 1 property violation
//! or numerical failure, 2 configuration or parse error.

mod config;
mod output;

pub use config::{Overrides, Precision, RunConfig, OUT_DIR_ENV};
pub use output::{parse_complex, CommandOutput};

use crate::error::{Error, Result};
use crate::hardy::{
    assemble_matrix, hs_norm_squared, window_integral_i, window_integral_i0, BidiskSymbol, SymbolChoice, TruncationSpec,
};
use crate::maps::{
    calibrate_c, cusp, cusp_extended, estimate_k, phi_from_one_minus, validate_c, Calibration, SymbolParams,
    UnitDiskPoint, C64,
};
use crate::spectrum::{
    approximation_numbers, beta_estimate, fit_decay, least_squares, one_dim_contrast, singular_values, BetaReport,
    DecayFit, FitPoint, SingularSpectrum, NOISE_FACTOR, ONE_DIM_DEGREE,
};
use crate::verifier::{run_all, VerificationReport, VerifyConfig};
use clap::{Parser, Subcommand};
use output::{csv_header, fmt_c, Outputs};
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::path::PathBuf;

const EXTENDED_BITS: usize = 256;
const TREND_NS: [usize; 4] = [8, 16, 32, 64];

/// Command line.
#[derive(Debug, Parser)]
#[command(name = "cusp-bidisk", version, about = "Cusp-map composition operators on the bidisk")]
pub struct Cli {
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed of every sampler.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Per-variable truncation degree.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Quadrature resolution.
    #[arg(long, global = true)]
    pub quad: Option<usize>,
    /// paper, diagonal, one-dim or scaled:r.
    #[arg(long, global = true, value_parser = parse_symbol)]
    pub symbol: Option<SymbolChoice>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Verb.
    #[command(subcommand)]
    pub command: Command,
}

fn parse_symbol(s: &str) -> std::result::Result<SymbolChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Verbs.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate χ₀, χ, φ∘χ and Φ at points.
    MapEval {
        /// Point `z₁` such as `0.3-0.2i` or `0.3,-0.2`; repeatable.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
        /// Second variable for inline points.
        #[arg(long, allow_hyphen_values = true)]
        z2: Option<String>,
        /// File with one `z₁ [z₂]` per line.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Estimate K̂, calibrate c and write params.json.
    Calibrate,
    /// Assemble the truncated operator matrix.
    Matrix,
    /// Singular values, approximation-number intervals and decay fits.
    Spectrum {
        /// Also analyse the diagonal symbol.
        #[arg(long)]
        diagonal: bool,
        /// Also emit the one-variable trend table.
        #[arg(long)]
        one_dim: bool,
    },
    /// Run every property suite.
    Verify,
    /// Window integrals, the Hilbert–Schmidt norm and a summary of earlier outputs.
    Report,
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides { seed: self.seed, degree: self.degree, quad: self.quad, symbol: self.symbol, out: self.out.clone() }
    }
}

/// Parses `args`, runs the verb and returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let env = std::env::var(OUT_DIR_ENV).ok();
    let result = RunConfig::resolve(cli.config.as_deref(), env, &cli.overrides()).and_then(|mut cfg| {
        if let Command::Spectrum { diagonal, one_dim } = cli.command {
            cfg.include_diagonal |= diagonal;
            cfg.include_one_dim |= one_dim;
        }
        run(&cli.command, &cfg)
    });
    match result {
        Ok(out) => {
            println!("{}", out.summary);
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one verb under a resolved configuration.
pub fn run(command: &Command, cfg: &RunConfig) -> Result<CommandOutput> {
    match command {
        Command::MapEval { points, z2, input } => {
            let mut rows = Vec::new();
            for p in points {
                rows.push(MapInput { z1: inline(p)?, z2: z2.as_deref().map(inline).transpose()? });
            }
            if let Some(path) = input {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                rows.extend(parse_map_input(&text)?);
            }
            map_eval(cfg, &rows)
        }
        Command::Calibrate => calibrate(cfg),
        Command::Matrix => matrix(cfg),
        Command::Spectrum { .. } => spectrum(cfg),
        Command::Verify => verify(cfg),
        Command::Report => report(cfg),
    }
}

fn inline(s: &str) -> Result<C64> {
    parse_complex(s).ok_or_else(|| Error::InvalidInput(format!("cannot parse complex number '{s}'")))
}

/// One `map-eval` input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapInput {
    /// First variable.
    pub z1: C64,
    /// Second variable; zero when absent.
    pub z2: Option<C64>,
}

/// Parses `z₁ [z₂]` lines; `#` starts a comment.
pub fn parse_map_input(text: &str) -> Result<Vec<MapInput>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |t: &str| Error::Parse { line: i + 1, message: format!("cannot parse complex number '{t}'") };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() > 2 {
            return Err(Error::Parse { line: i + 1, message: format!("expected at most two values, got {}", toks.len()) });
        }
        let z1 = parse_complex(toks[0]).ok_or_else(|| bad(toks[0]))?;
        let z2 = toks.get(1).map(|t| parse_complex(t).ok_or_else(|| bad(t))).transpose()?;
        for z in std::iter::once(z1).chain(z2) {
            UnitDiskPoint::new(z).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })?;
        }
        out.push(MapInput { z1, z2 });
    }
    Ok(out)
}

/// Parameters written by `calibrate`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsFile {
    /// Hash of the producing configuration.
    pub config_hash: String,
    /// Seed of the producing run.
    pub seed: u64,
    /// Frozen parameters.
    pub params: SymbolParams,
    /// Calibration details when `c` was calibrated.
    pub calibration: Option<Calibration>,
}

/// Parameters from `params_file`, the fixed `c`/`k_hat` overrides, or a fresh calibration.
pub fn resolve_params(cfg: &RunConfig) -> Result<(SymbolParams, Option<Calibration>)> {
    if let Some(path) = &cfg.params_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read params file {}: {e}", path.display())))?;
        let pf: ParamsFile =
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("bad params file {}: {e}", path.display())))?;
        let p = pf.params;
        let params = SymbolParams::new(
            p.theta(),
            cfg.c.unwrap_or(p.c()),
            p.j0(),
            cfg.k_hat.unwrap_or(p.k_hat()),
            p.g_kind(),
        )?;
        return Ok((params, pf.calibration));
    }
    let k_hat = match cfg.k_hat {
        Some(k) => k,
        None => estimate_k(cfg.k_sample_count)?,
    };
    match cfg.c {
        Some(c) => {
            let params = SymbolParams::new(cfg.theta, c, cfg.j0, k_hat, cfg.g_kind)?;
            validate_c(&params, cfg.calibration_count)?;
            Ok((params, None))
        }
        None => {
            let cal = calibrate_c(cfg.theta, k_hat, cfg.j0, cfg.g_kind, cfg.calibration_count)?;
            Ok((cal.params, Some(cal)))
        }
    }
}

fn bidisk_symbol(choice: SymbolChoice, cfg: &RunConfig) -> Result<BidiskSymbol> {
    Ok(match choice {
        SymbolChoice::Paper => BidiskSymbol::Paper(resolve_params(cfg)?.0),
        SymbolChoice::Diagonal => BidiskSymbol::Diagonal,
        SymbolChoice::Scaled(r) => BidiskSymbol::Scaled { r },
        SymbolChoice::OneDim => {
            return Err(Error::Config("the one-dim symbol acts on H2(D), not on the bidisk".into()));
        }
    })
}

/// Evaluates the chain and the configured symbol at each input.
pub fn map_eval(cfg: &RunConfig, rows: &[MapInput]) -> Result<CommandOutput> {
    if rows.is_empty() {
        return Err(Error::Config("map-eval needs --point or --input".into()));
    }
    let symbol = match cfg.symbol {
        SymbolChoice::OneDim => None,
        s => Some(bidisk_symbol(s, cfg)?),
    };
    let mut out = Outputs::new(cfg)?;
    let mut csv = csv_header(cfg, &[("symbol", cfg.symbol.to_string()), ("precision", cfg.precision.to_string())]);
    csv.push_str("z_re,z_im,chi0_re,chi0_im,chi_re,chi_im,phi_re,phi_im,w1_re,w1_im,w2_re,w2_im\n");
    for r in rows {
        let p = UnitDiskPoint::new(r.z1).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let q = UnitDiskPoint::new(r.z2.unwrap_or_default()).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let t = match cfg.precision {
            Precision::Double => cusp(&p),
            Precision::Extended => cusp_extended(&p, EXTENDED_BITS),
        };
        let phi = phi_from_one_minus(t.chi3, cfg.theta);
        let (w1, w2) = match &symbol {
            Some(s) => {
                let w = s.eval(&p, &q);
                (fmt_c(w.w1), fmt_c(w.w2))
            }
            None => (fmt_c(t.chi), ",".to_string()),
        };
        csv.push_str(&format!("{},{},{},{},{w1},{w2}\n", fmt_c(r.z1), fmt_c(t.chi0), fmt_c(t.chi), fmt_c(phi)));
    }
    out.text("map_eval.csv", &csv)?;
    Ok(out.finish(true, format!("map-eval: {} points", rows.len())))
}

/// Estimates `K̂`, calibrates `c` and writes `params.json`.
pub fn calibrate(cfg: &RunConfig) -> Result<CommandOutput> {
    let (params, calibration) = resolve_params(cfg)?;
    let mut out = Outputs::new(cfg)?;
    let pf = ParamsFile { config_hash: cfg.hash(), seed: cfg.seed, params, calibration };
    out.json("params.json", &pf)?;
    Ok(out.finish(
        true,
        format!("calibrate: c = {:.9e}, k_hat = {:.8}, theta = {}", params.c(), params.k_hat(), params.theta()),
    ))
}

#[derive(Serialize)]
struct MatrixSummary {
    config_hash: String,
    seed: u64,
    symbol: String,
    degree: usize,
    quad: usize,
    dim: usize,
    params_hash: String,
    tail_hs: f64,
}

/// Assembles the matrix and writes `matrix.cbom`, `matrix.json` and optionally `matrix.csv`.
pub fn matrix(cfg: &RunConfig) -> Result<CommandOutput> {
    let symbol = bidisk_symbol(cfg.symbol, cfg)?;
    let spec = cfg.truncation()?;
    let m = assemble_matrix(&symbol, &spec)?;
    let mut out = Outputs::new(cfg)?;
    let path = out.path("matrix.cbom");
    m.write_binary_tagged(&path, &cfg.hash(), cfg.seed)?;
    out.record(path);
    if cfg.matrix_csv {
        let path = out.path("matrix.csv");
        m.write_csv(&path, &[("config_hash", cfg.hash()), ("seed", cfg.seed.to_string())])?;
        out.record(path);
    }
    let summary = MatrixSummary {
        config_hash: cfg.hash(),
        seed: cfg.seed,
        symbol: cfg.symbol.to_string(),
        degree: spec.max_degree(),
        quad: spec.quad_points(),
        dim: spec.dim(),
        params_hash: m.params_hash().to_string(),
        tail_hs: m.tail_hs(),
    };
    out.json("matrix.json", &summary)?;
    Ok(out.finish(true, format!("matrix: dim {}, tail {:.3e}", spec.dim(), m.tail_hs())))
}

/// Spectral analysis of one bidisk symbol.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolSpectrum {
    /// Symbol name.
    pub symbol: String,
    /// Sum of squared singular values of the truncation.
    pub truncated_hs_squared: f64,
    /// Hilbert–Schmidt norm of the discarded part.
    pub tail_hs: f64,
    /// Rounding floor added to upper endpoints.
    pub floor: f64,
    /// `(n, a_{n^N})` intervals for every admissible `n`.
    pub points: Vec<FitPoint>,
    /// Decay fit, when at least four points are usable.
    pub fit: Option<DecayFit>,
    /// Why the fit is missing.
    pub fit_error: Option<String>,
    /// Decay rate of the fit.
    pub tau: Option<f64>,
    /// `[a_{n^N}]^{1/n}` extremes.
    pub beta: Option<BetaReport>,
}

/// Assembles, decomposes and fits one symbol.
pub fn analyse_symbol(symbol: &BidiskSymbol, name: &str, spec: &TruncationSpec, power: u32) -> Result<SymbolSpectrum> {
    let m = assemble_matrix(symbol, spec)?;
    let s = singular_values(&m)?;
    Ok(analyse_spectrum(&s, name, power))
}

/// Fit and proxies from a computed spectrum.
pub fn analyse_spectrum(s: &SingularSpectrum, name: &str, power: u32) -> SymbolSpectrum {
    let n_max = (1..).take_while(|n: &usize| n.checked_pow(power).is_some_and(|i| i <= s.len())).last().unwrap_or(0);
    let points: Vec<FitPoint> = (1..=n_max)
        .filter_map(|n| {
            let index = n.pow(power);
            approximation_numbers(s, index).ok().map(|iv| FitPoint { n, index, lower: iv.lower, upper: iv.upper })
        })
        .collect();
    let (fit, fit_error) = match fit_decay(s, power, 1..=n_max) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let range = fit.as_ref().map_or(1..=n_max, |f| f.n_range.0..=f.n_range.1);
    SymbolSpectrum {
        symbol: name.to_string(),
        truncated_hs_squared: s.values().iter().map(|v| v * v).sum(),
        tail_hs: s.tail_bound(),
        floor: s.floor(),
        points,
        tau: fit.as_ref().map(|f| f.tau),
        beta: beta_estimate(s, power, range).ok(),
        fit,
        fit_error,
    }
}

/// Row of the one-variable table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OneDimRow {
    /// Index.
    pub n: usize,
    /// `a_n(C_χ)` lower endpoint.
    pub cusp_lower: f64,
    /// `a_n(C_χ)` upper endpoint.
    pub cusp_upper: f64,
    /// `a_n(C_χ)^{1/n}` from the lower endpoint.
    pub cusp_root: f64,
    /// `a_n(C_{χ(r·)})`, when computed.
    pub shrunk: Option<f64>,
    /// Its `n`-th root.
    pub shrunk_root: Option<f64>,
}

#[derive(Serialize)]
struct SpectrumFile {
    config_hash: String,
    seed: u64,
    degree: usize,
    quad: usize,
    fit_power: u32,
    noise_factor: f64,
    main: Option<SymbolSpectrum>,
    beta2_plus: Option<f64>,
    beta2_plus_upper: Option<f64>,
    beta2_minus: Option<f64>,
    diagonal: Option<SymbolSpectrum>,
    one_dim: Option<Vec<OneDimRow>>,
    one_dim_radius: Option<f64>,
}

fn one_dim_rows(spec: &TruncationSpec) -> Result<(Vec<OneDimRow>, f64)> {
    let c = one_dim_contrast(spec)?;
    let rows = (1..=c.cusp.len())
        .filter_map(|n| {
            let iv = approximation_numbers(&c.cusp, n).ok()?;
            let shrunk = c.shrunk.value(n).ok();
            let root = |v: f64| v.max(0.0).powf(1.0 / n as f64);
            Some(OneDimRow {
                n,
                cusp_lower: iv.lower,
                cusp_upper: iv.upper,
                cusp_root: root(iv.lower),
                shrunk,
                shrunk_root: shrunk.map(root),
            })
        })
        .collect();
    Ok((rows, c.radius))
}

fn one_dim_csv(rows: &[OneDimRow]) -> String {
    let opt = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.17e}"));
    let mut csv = String::from("n,cusp_lower,cusp_upper,cusp_root,shrunk,shrunk_root\n");
    for r in rows {
        csv.push_str(&format!(
            "{},{:.17e},{:.17e},{:.17e},{},{}\n",
            r.n,
            r.cusp_lower,
            r.cusp_upper,
            r.cusp_root,
            opt(r.shrunk),
            opt(r.shrunk_root)
        ));
    }
    csv
}

/// Writes `spectrum.csv` and `spectrum.json`; fails with exit 1 when the main fit is impossible.
pub fn spectrum(cfg: &RunConfig) -> Result<CommandOutput> {
    let spec = cfg.truncation()?;
    let mut out = Outputs::new(cfg)?;
    let mut file = SpectrumFile {
        config_hash: cfg.hash(),
        seed: cfg.seed,
        degree: spec.max_degree(),
        quad: spec.quad_points(),
        fit_power: cfg.fit_power,
        noise_factor: NOISE_FACTOR,
        main: None,
        beta2_plus: None,
        beta2_plus_upper: None,
        beta2_minus: None,
        diagonal: None,
        one_dim: None,
        one_dim_radius: None,
    };
    let mut csv = csv_header(cfg, &[("symbol", cfg.symbol.to_string())]);
    let mut failure = None;
    let summary;
    if cfg.symbol == SymbolChoice::OneDim {
        let (rows, radius) = one_dim_rows(&spec)?;
        csv.push_str(&one_dim_csv(&rows));
        summary = TREND_NS
            .iter()
            .filter_map(|&n| rows.get(n - 1))
            .map(|r| format!("n={} root={:.6}", r.n, r.cusp_root))
            .collect::<Vec<_>>()
            .join(", ");
        file.one_dim = Some(rows);
        file.one_dim_radius = Some(radius);
    } else {
        let symbol = bidisk_symbol(cfg.symbol, cfg)?;
        let main = analyse_symbol(&symbol, &cfg.symbol.to_string(), &spec, cfg.fit_power)?;
        csv.push_str("n,index,lower,upper,usable\n");
        for p in &main.points {
            let usable = p.lower > 0.0 && p.lower > NOISE_FACTOR * (p.upper - p.lower);
            csv.push_str(&format!("{},{},{:.17e},{:.17e},{usable}\n", p.n, p.index, p.lower, p.upper));
        }
        if let Some(e) = &main.fit_error {
            failure = Some(e.clone());
        }
        file.beta2_plus = main.beta.as_ref().map(|b| b.beta_plus);
        file.beta2_plus_upper = main.beta.as_ref().map(|b| b.beta_plus_upper);
        file.beta2_minus = main.beta.as_ref().map(|b| b.beta_minus);
        summary = match &main.fit {
            Some(f) => format!("tau = {:.6}, r2 = {:.5}, n in {}..={}", f.tau, f.r_squared, f.n_range.0, f.n_range.1),
            None => "no fit".into(),
        };
        file.main = Some(main);
        if cfg.include_diagonal {
            file.diagonal = Some(analyse_symbol(&BidiskSymbol::Diagonal, "diagonal", &spec, cfg.fit_power)?);
        }
        if cfg.include_one_dim {
            let (rows, radius) = one_dim_rows(&TruncationSpec::new(ONE_DIM_DEGREE, 8 * ONE_DIM_DEGREE)?)?;
            let mut t = csv_header(cfg, &[("symbol", "one-dim".into()), ("degree", ONE_DIM_DEGREE.to_string())]);
            t.push_str(&one_dim_csv(&rows));
            out.text("one_dim.csv", &t)?;
            file.one_dim = Some(rows);
            file.one_dim_radius = Some(radius);
        }
    }
    out.text("spectrum.csv", &csv)?;
    out.json("spectrum.json", &file)?;
    if let Some(e) = failure {
        out.report();
        return Err(Error::InsufficientData(format!("decay fit impossible: {e}")));
    }
    Ok(out.finish(true, format!("spectrum: {summary}")))
}

#[derive(Serialize)]
struct VerifyFile {
    config_hash: String,
    seed: u64,
    pass: bool,
    reports: Vec<VerificationReport>,
}

/// Runs every property suite and writes `verify.json`; passes iff every suite passes.
pub fn verify(cfg: &RunConfig) -> Result<CommandOutput> {
    let (params, _) = resolve_params(cfg)?;
    let vc = VerifyConfig {
        params,
        seed: cfg.seed,
        sample_count: cfg.sample_count,
        calibration_count: cfg.calibration_count,
        trial_count: cfg.trial_count,
        covering_ns: cfg.covering_ns.clone(),
        codim_ns: cfg.codim_ns.clone(),
    };
    let s = run_all(&vc)?;
    let mut out = Outputs::new(cfg)?;
    let lines: Vec<String> = s
        .reports
        .iter()
        .map(|r| format!("{} {} ({} violations)", if r.pass { "PASS" } else { "FAIL" }, r.suite, r.violation_count))
        .collect();
    out.json("verify.json", &VerifyFile { config_hash: cfg.hash(), seed: cfg.seed, pass: s.pass, reports: s.reports })?;
    Ok(out.finish(s.pass, lines.join("\n")))
}

/// Least-squares line of `log y` against `1/h`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WindowRegression {
    /// Slope.
    pub slope: f64,
    /// Intercept.
    pub intercept: f64,
    /// Coefficient of determination.
    pub r_squared: f64,
}

fn regress(rows: &[(f64, f64)]) -> Option<WindowRegression> {
    let pts: Vec<(f64, f64)> = rows.iter().filter(|(_, v)| *v > 0.0).map(|&(h, v)| (1.0 / h, v.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    let (slope, intercept, r_squared) = least_squares(&xs, &ys);
    Some(WindowRegression { slope, intercept, r_squared })
}

#[derive(Serialize)]
struct ReportFile {
    config_hash: String,
    seed: u64,
    symbol: String,
    hs_norm_squared: Option<crate::hardy::HsNorm>,
    windows: Vec<WindowRow>,
    i0_regression: Option<WindowRegression>,
    i_regression: Option<WindowRegression>,
    previous: std::collections::BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Copy, Serialize)]
struct WindowRow {
    h: f64,
    i0: f64,
    i: Option<f64>,
}

/// Window sizes `1/5, 1/6, …, 1/40`.
pub fn window_sizes() -> Vec<f64> {
    (5..=40).map(|k| 1.0 / k as f64).collect()
}

/// Window integrals, the Hilbert–Schmidt norm, and whatever earlier verbs left in the output directory.
pub fn report(cfg: &RunConfig) -> Result<CommandOutput> {
    let spec = cfg.truncation()?;
    let symbol = match cfg.symbol {
        SymbolChoice::OneDim => None,
        s => Some(bidisk_symbol(s, cfg)?),
    };
    let hs = match &symbol {
        Some(s) if s.is_hilbert_schmidt() => Some(hs_norm_squared(s, &spec)?),
        _ => None,
    };
    let mut windows = Vec::new();
    for h in window_sizes() {
        let i0 = window_integral_i0(h)?.value;
        let i = match &symbol {
            Some(s) if s.is_hilbert_schmidt() => Some(window_integral_i(h, s, &spec)?.value),
            _ => None,
        };
        windows.push(WindowRow { h, i0, i });
    }
    let i0_regression = regress(&windows.iter().map(|w| (w.h, w.i0)).collect::<Vec<_>>());
    let i_regression = regress(&windows.iter().filter_map(|w| w.i.map(|v| (w.h, v))).collect::<Vec<_>>());
    let mut out = Outputs::new(cfg)?;
    let mut previous = std::collections::BTreeMap::new();
    for name in ["params.json", "matrix.json", "spectrum.json", "verify.json"] {
        if let Ok(text) = std::fs::read_to_string(out.path(name)) {
            let v: serde_json::Value = serde_json::from_str(&text)?;
            previous.insert(name.to_string(), v);
        }
    }
    let mut csv = csv_header(cfg, &[("symbol", cfg.symbol.to_string())]);
    csv.push_str("h,i0,i\n");
    for w in &windows {
        csv.push_str(&format!("{:.17e},{:.17e},{}\n", w.h, w.i0, w.i.map_or(String::new(), |v| format!("{v:.17e}"))));
    }
    out.text("window.csv", &csv)?;
    let summary = format!(
        "report: hs = {}, I0 slope = {}, I slope = {}, {} earlier outputs",
        hs.map_or("n/a".into(), |h| format!("{:.6}", h.value)),
        i0_regression.map_or("n/a".into(), |r| format!("{:.4}", r.slope)),
        i_regression.map_or("n/a".into(), |r| format!("{:.4}", r.slope)),
        previous.len()
    );
    let stable = hs.is_none_or(|h| h.stable);
    out.json(
        "report.json",
        &ReportFile {
            config_hash: cfg.hash(),
            seed: cfg.seed,
            symbol: cfg.symbol.to_string(),
            hs_norm_squared: hs,
            windows,
            i0_regression,
            i_regression,
            previous,
        },
    )?;
    Ok(out.finish(stable, summary))
}
