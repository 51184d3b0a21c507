//! Log-linear decay fits along `n ↦ n^N` and the finite-`n` proxies for `β_N^±`.

use super::{approximation_numbers, SingularSpectrum};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;

/// Points are usable when the lower endpoint exceeds ten times the interval width.
pub const NOISE_FACTOR: f64 = 10.0;

/// One schedule point `(n, a_{n^N})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    /// Schedule parameter.
    pub n: usize,
    /// Index `n^N`.
    pub index: usize,
    /// Lower endpoint of `a_{n^N}`.
    pub lower: f64,
    /// Upper endpoint of `a_{n^N}`.
    pub upper: f64,
}

/// Least-squares line `log a_{n^N} ≈ log_c − τ n` through the usable upper endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Intercept.
    pub log_c: f64,
    /// Decay rate, the negated slope.
    pub tau: f64,
    /// Coefficient of determination, in `[0, 1]`.
    pub r_squared: f64,
    /// Smallest and largest usable `n`.
    pub n_range: (usize, usize),
    /// Exponent `N` of the schedule.
    pub power: u32,
    /// Usable points.
    pub points: Vec<FitPoint>,
}

/// `[a_{n^N}]^{1/n}` extremes over the upper half of a range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaReport {
    /// Exponent `N`.
    pub power: u32,
    /// Range the half was taken from.
    pub n_range: (usize, usize),
    /// Minimum over lower endpoints.
    pub beta_minus: f64,
    /// Maximum over lower endpoints.
    pub beta_plus: f64,
    /// Maximum over upper endpoints.
    pub beta_plus_upper: f64,
}

fn index(n: usize, power: u32) -> Option<usize> {
    n.checked_pow(power)
}

fn point(spec: &SingularSpectrum, n: usize, power: u32) -> Option<FitPoint> {
    let index = index(n, power)?;
    let iv = approximation_numbers(spec, index).ok()?;
    Some(FitPoint { n, index, lower: iv.lower, upper: iv.upper })
}

/// Fits `log a_{n^N}` against `n` over the usable points of `n_range`.
pub fn fit_decay(spec: &SingularSpectrum, power: u32, n_range: RangeInclusive<usize>) -> Result<DecayFit> {
    let points: Vec<FitPoint> = n_range
        .filter_map(|n| point(spec, n, power))
        .filter(|p| p.lower > 0.0 && p.lower > NOISE_FACTOR * (p.upper - p.lower))
        .collect();
    if points.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} usable points above the truncation noise, need 4",
            points.len()
        )));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.upper.ln()).collect();
    let (slope, intercept, r2) = least_squares(&xs, &ys);
    Ok(DecayFit {
        log_c: intercept,
        tau: -slope,
        r_squared: r2,
        n_range: (points[0].n, points[points.len() - 1].n),
        power,
        points,
    })
}

/// `(slope, intercept, r²)` of the ordinary least-squares line.
pub(crate) fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r2 = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    (slope, intercept, r2)
}

/// Extremes of `[a_{n^N}]^{1/n}` over the upper half of the admissible part of `n_range`,
/// clamped to `[0, 1]`.
pub fn beta_estimate(spec: &SingularSpectrum, power: u32, n_range: RangeInclusive<usize>) -> Result<BetaReport> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    let pts: Vec<FitPoint> = n_range.filter(|&n| n >= 1).filter_map(|n| point(spec, n, power)).collect();
    if pts.is_empty() {
        return Err(Error::Range(format!("no n in {lo}..={hi} with n^{power} within {} values", spec.len())));
    }
    let half = &pts[pts.len() / 2..];
    let root = |v: f64, n: usize| v.max(0.0).powf(1.0 / n as f64).clamp(0.0, 1.0);
    let lows: Vec<f64> = half.iter().map(|p| root(p.lower, p.n)).collect();
    Ok(BetaReport {
        power,
        n_range: (lo, hi),
        beta_minus: lows.iter().copied().fold(f64::INFINITY, f64::min),
        beta_plus: lows.iter().copied().fold(0.0, f64::max),
        beta_plus_upper: half.iter().map(|p| root(p.upper, p.n)).fold(0.0, f64::max),
    })
}
