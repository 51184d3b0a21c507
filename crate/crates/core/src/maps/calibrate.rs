//! Estimation of `K` and calibration of the amplitude `c`.

use super::sampling::{clustered_grid, sunflower};
use super::{cusp, perturbation, GKind, SymbolParams, UnitDiskPoint};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Radius cap keeping the `K` sample off the boundary.
pub const K_RADIUS_CAP: f64 = 1.0 - 1e-6;
/// Multiplicative safety factor on the sampled supremum.
pub const K_SAFETY: f64 = 1.05;

/// Outcome of a calibration run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Frozen parameters.
    pub params: SymbolParams,
    /// Largest grid value below which the smallness condition holds.
    pub eta: f64,
    /// Sampled supremum of `|1 − χ|/(1 − |χ|)` before the safety factor.
    pub k_sup: f64,
    /// Number of validation points.
    pub validation_count: usize,
    /// `min (1 − |χ| − 2c|φ∘χ|)` over the validation points.
    pub margin_abs: f64,
    /// `min (1 − 2c|φ∘χ|/(1 − |χ|))` over the validation points.
    pub margin_rel: f64,
}

/// `1.05 ×` the supremum of `|1 − χ(z)|/(1 − |χ(z)|)` over a sunflower sample of
/// `sample_count` points (radius cap `1 − 1e−6`) together with the origin.
pub fn estimate_k(sample_count: usize) -> Result<f64> {
    Ok(K_SAFETY * sampled_k_sup(sample_count)?.max(1.0))
}

fn sampled_k_sup(sample_count: usize) -> Result<f64> {
    if sample_count < 10_000 {
        return Err(Error::Config(format!("K estimation needs at least 1e4 samples, got {sample_count}")));
    }
    let sup = sunflower(sample_count, K_RADIUS_CAP)
        .iter()
        .map(|p| {
            let t = cusp(p);
            t.one_minus_chi().norm() / t.one_minus_abs()
        })
        .filter(|r| r.is_finite())
        .fold(f64::NAN, f64::max);
    if sup.is_nan() {
        return Err(Error::Estimation("no finite ratio in the K sample".into()));
    }
    Ok(sup)
}

/// Largest `η = 2^{−j/16}` such that `2 exp(−δ X^{−θ}) < X/K` at every grid value `X ≤ η`.
fn eta_on_grid(theta: f64, k_hat: f64) -> Result<f64> {
    let delta = (std::f64::consts::PI * theta / 2.0).cos();
    let ok = |x: f64| 2.0 * (-delta * x.powf(-theta)).exp() < x / k_hat;
    let mut eta = None;
    for j in (0..=16 * 64).rev() {
        let x = (-(j as f64) / 16.0).exp2();
        if ok(x) {
            eta = Some(x);
        } else {
            break;
        }
    }
    eta.ok_or_else(|| Error::Estimation("smallness condition fails at the smallest grid value".into()))
}

/// Runs the calibration: `c = η/(4K̂)`, validated on `validation_count` interior points.
pub fn calibrate_c(theta: f64, k_hat: f64, j0: u32, g_kind: GKind, validation_count: usize) -> Result<Calibration> {
    let eta = eta_on_grid(theta, k_hat)?;
    let c = (eta / (4.0 * k_hat)).min(1.0 - f64::EPSILON);
    let params = SymbolParams::new(theta, c, j0, k_hat, g_kind)?;
    let (margin_abs, margin_rel) = validate_c(&params, validation_count)?;
    Ok(Calibration { params, eta, k_sup: k_hat / K_SAFETY, validation_count, margin_abs, margin_rel })
}

/// Checks `|χ(z)| + 2c|φ(χ(z))| < 1` on the clustered interior grid and returns the
/// absolute and relative margins; the first violation is returned as a witness.
pub fn validate_c(params: &SymbolParams, validation_count: usize) -> Result<(f64, f64)> {
    if validation_count == 0 {
        return Err(Error::Config("validation_count must be positive".into()));
    }
    let mut margin_abs = f64::INFINITY;
    let mut margin_rel = f64::INFINITY;
    for p in clustered_grid(validation_count) {
        let (a, r) = calibration_margin(&p, params);
        if !(a > 0.0) {
            let z = p.value();
            return Err(Error::Calibration {
                re: z.re,
                im: z.im,
                message: format!("|chi| + 2c|phi(chi)| >= 1 (margin {a:e}) with c = {}", params.c()),
            });
        }
        margin_abs = margin_abs.min(a);
        margin_rel = margin_rel.min(r);
    }
    Ok((margin_abs, margin_rel))
}

/// `(1 − |χ| − 2c|φ∘χ|, 1 − 2c|φ∘χ|/(1 − |χ|))` at one point.
pub(crate) fn calibration_margin(p: &UnitDiskPoint, params: &SymbolParams) -> (f64, f64) {
    let t = cusp(p);
    let gap = t.one_minus_abs();
    let bump = 2.0 * perturbation(&t, params).norm();
    (gap - bump, 1.0 - bump / gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::C64;

    #[test]
    fn origin_ratio_is_one() {
        let t = cusp(&UnitDiskPoint::new(C64::new(0.0, 0.0)).unwrap());
        let ratio = t.one_minus_chi().norm() / t.one_minus_abs();
        assert!((ratio - 1.0).abs() < 1e-15);
    }

    #[test]
    fn k_estimate_is_in_range_and_rejects_small_samples() {
        let k = estimate_k(20_000).unwrap();
        assert!((1.0..=20.0).contains(&k));
        assert!(estimate_k(100).is_err());
    }

    #[test]
    fn large_c_is_rejected() {
        let p = SymbolParams::new(0.5, 0.999, 21, 2.5, GKind::IdentityInZ2).unwrap();
        match validate_c(&p, 10_000) {
            Err(Error::Calibration { .. }) => {}
            other => panic!("expected calibration failure, got {other:?}"),
        }
    }

    #[test]
    fn eta_respects_the_smallness_condition() {
        let eta = eta_on_grid(0.5, 2.5).unwrap();
        assert!(eta > 0.0 && eta <= 1.0);
        let delta = (std::f64::consts::PI / 4.0).cos();
        assert!(2.0 * (-delta * eta.powf(-0.5)).exp() < eta / 2.5);
    }
}
