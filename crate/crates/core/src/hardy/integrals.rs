//! Hilbert–Schmidt norms, truncation tails and the window integrals `I₀(h)`, `I(h)`.

use super::quadrature::{half_circle, DEEP_DEPTH};
use super::{basis, binomial, AffineNode, BidiskSymbol, CircleRule, TruncationSpec};
use crate::error::{Error, Result};
use crate::maps::{cusp, UnitDiskPoint, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Relative change under `Q → 2Q` above which a value is flagged.
pub const DOUBLING_GATE: f64 = 0.01;
const WINDOW_ORDER: usize = 16;

/// `‖C_Φ‖²_{S₂}` at two resolutions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HsNorm {
    /// Value at the requested resolution.
    pub value: f64,
    /// Value with `Q` doubled.
    pub doubled: f64,
    /// `|doubled − value| / value`.
    pub relative_change: f64,
    /// False when the relative change exceeds the doubling gate.
    pub stable: bool,
}

/// Window integral with its integration limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowIntegral {
    /// Window size.
    pub h: f64,
    /// Integral value.
    pub value: f64,
    /// The window is `|t| ≤ t_star`.
    pub t_star: f64,
    /// Set when the window contains no resolvable angle.
    pub empty: bool,
}

fn require_hs(symbol: &BidiskSymbol) -> Result<()> {
    if symbol.is_hilbert_schmidt() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{symbol:?} does not induce a Hilbert-Schmidt operator")))
    }
}

fn t2_nodes(node: &AffineNode, spec: &TruncationSpec) -> Vec<C64> {
    let m = if node.w2_modulus_constant() { 1 } else { (spec.quad_points() / 16).max(64) };
    (0..m).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)).collect()
}

fn hs_on_rule(symbol: &BidiskSymbol, rule: &CircleRule) -> f64 {
    rule.integrate(|t| {
        let a = symbol.affine_at(t);
        a.mean_inverse_om_w2() / a.om_f
    })
}

/// `∫ dm_Φ / ((1 − |w₁|²)(1 − |w₂|²))` on the graded rule, at `Q` and `2Q`.
pub fn hs_norm_squared(symbol: &BidiskSymbol, spec: &TruncationSpec) -> Result<HsNorm> {
    require_hs(symbol)?;
    let value = hs_on_rule(symbol, &CircleRule::for_spec(spec));
    let doubled = hs_on_rule(symbol, &CircleRule::for_spec(&spec.doubled()));
    if !(value.is_finite() && doubled.is_finite()) {
        return Err(Error::Computation("Hilbert-Schmidt integral is not finite".into()));
    }
    let relative_change = (doubled - value).abs() / value;
    Ok(HsNorm { value, doubled, relative_change, stable: relative_change < DOUBLING_GATE })
}

/// `E_{t₂} |P + Q e^{it₂}|^{2j}` for `j ≤ d`, exactly, by Parseval.
pub(crate) fn w2_moments(node: &AffineNode, d: usize) -> Vec<f64> {
    let p2 = node.p.norm_sqr();
    let q2 = node.q.norm_sqr();
    let mut pp = vec![1.0; d + 1];
    let mut qp = vec![1.0; d + 1];
    for j in 1..=d {
        pp[j] = pp[j - 1] * p2;
        qp[j] = qp[j - 1] * q2;
    }
    (0..=d)
        .map(|j| {
            if q2 == 0.0 {
                return pp[j];
            }
            (0..=j).map(|k| binomial(j, k).powi(2) * pp[j - k] * qp[k]).sum()
        })
        .collect()
}

fn column_norms_on_rule(symbol: &BidiskSymbol, rule: &CircleRule, d: usize) -> Vec<f64> {
    let idx = basis(d);
    let mut out = vec![0.0; idx.len()];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let a = symbol.affine_at(t);
        let m = w2_moments(&a, d);
        let f2 = a.f.norm_sqr();
        let mut fp = vec![1.0; d + 1];
        for i in 1..=d {
            fp[i] = fp[i - 1] * f2;
        }
        for (o, al) in out.iter_mut().zip(&idx) {
            *o += w * fp[al.alpha1] * m[al.alpha2];
        }
    }
    out
}

/// `‖C_Φ e_α‖²` for every `α` with `max α ≤ D`, in basis order.
pub fn column_norms_squared(symbol: &BidiskSymbol, spec: &TruncationSpec) -> Vec<f64> {
    column_norms_on_rule(symbol, &CircleRule::for_spec(spec), spec.max_degree())
}

/// `Σ_{max α > D} ‖C_Φ e_α‖²`, integrated as a positive quantity.
pub(crate) fn tail_squared_on_rule(symbol: &BidiskSymbol, rule: &CircleRule, spec: &TruncationSpec) -> f64 {
    let d = spec.max_degree();
    rule.integrate(|t| {
        let a = symbol.affine_at(t);
        let x = a.f.norm_sqr();
        let low: f64 = w2_moments(&a, d).iter().sum();
        let es = t2_nodes(&a, spec);
        let high = es
            .iter()
            .map(|e| {
                let om = a.om_w2(*e);
                (1.0 - om).max(0.0).powi(d as i32 + 1) / om
            })
            .sum::<f64>()
            / es.len() as f64;
        x.powi(d as i32 + 1) / a.om_f * low + high / a.om_f
    })
}

/// Hilbert–Schmidt norm of `C_Φ` restricted to `span{e_α : max α > D}`.
pub fn matrix_truncation_error(symbol: &BidiskSymbol, spec: &TruncationSpec) -> Result<f64> {
    require_hs(symbol)?;
    let rule = CircleRule::for_spec(spec);
    let hs = hs_on_rule(symbol, &rule);
    let cols: f64 = column_norms_on_rule(symbol, &rule, spec.max_degree()).iter().sum();
    if hs - cols < -1e-10 {
        return Err(Error::Inconsistency(format!(
            "column norms {cols} exceed the Hilbert-Schmidt integral {hs}"
        )));
    }
    Ok(tail_squared_on_rule(symbol, &rule, spec).max(0.0).sqrt())
}

/// Largest `t ∈ (0, π]` with `|χ(e^{it}) − 1| ≤ h`, or `None` when none is resolvable.
fn window_limit(h: f64) -> Option<f64> {
    let gap = |l: f64| cusp(&UnitDiskPoint::from_angle((-l).exp())).one_minus_chi().norm();
    let l_pi = -PI.ln();
    if gap(l_pi) <= h {
        return Some(PI);
    }
    if gap(DEEP_DEPTH) > h {
        return None;
    }
    let (mut lo, mut hi) = (l_pi, DEEP_DEPTH);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) <= h {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    Some((-hi).exp())
}

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && h <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("window size h = {h} must lie in (0, 1]")))
    }
}

/// `I₀(h) = ∫_{|χ(e^{it}) − 1| ≤ h} dt / (1 − |χ(e^{it})|)²`, raw `dt`.
pub fn window_integral_i0(h: f64) -> Result<WindowIntegral> {
    check_h(h)?;
    let Some(t_star) = window_limit(h) else {
        return Ok(WindowIntegral { h, value: 0.0, t_star: 0.0, empty: true });
    };
    let (x, w) = half_circle(t_star, WINDOW_ORDER, DEEP_DEPTH);
    let value = 2.0
        * x.iter()
            .zip(&w)
            .map(|(&t, &wt)| {
                let g = cusp(&UnitDiskPoint::from_angle(t)).one_minus_abs();
                wt / (g * g)
            })
            .sum::<f64>();
    Ok(WindowIntegral { h, value, t_star, empty: false })
}

/// `I(h) = ∫_{|χ(e^{it₁}) − 1| ≤ h} dm / ((1 − |w₁|)(1 − |w₂|))` with normalized measure on `𝕋²`.
pub fn window_integral_i(h: f64, symbol: &BidiskSymbol, spec: &TruncationSpec) -> Result<WindowIntegral> {
    check_h(h)?;
    require_hs(symbol)?;
    let Some(t_star) = window_limit(h) else {
        return Ok(WindowIntegral { h, value: 0.0, t_star: 0.0, empty: true });
    };
    let (x, w) = half_circle(t_star, WINDOW_ORDER, DEEP_DEPTH);
    let mut value = 0.0;
    for (&t, &wt) in x.iter().zip(&w) {
        let a = symbol.affine_at(t);
        let g1 = a.om_f / (1.0 + a.f.norm());
        let es = t2_nodes(&a, spec);
        let inner = es
            .iter()
            .map(|e| {
                let w2 = a.p + a.q * e;
                (1.0 + w2.norm()) / a.om_w2(*e)
            })
            .sum::<f64>()
            / es.len() as f64;
        value += 2.0 * wt / (2.0 * PI) * inner / g1;
    }
    Ok(WindowIntegral { h, value, t_star, empty: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_symbol_values_are_exact() {
        let s = BidiskSymbol::Scaled { r: 0.5 };
        let spec = TruncationSpec::new(4, 64).unwrap();
        let hs = hs_norm_squared(&s, &spec).unwrap();
        assert!((hs.value - 16.0 / 9.0).abs() < 1e-13);
        let cols = column_norms_squared(&s, &spec);
        for (c, a) in cols.iter().zip(basis(4)) {
            assert!((c - 0.25f64.powi((a.alpha1 + a.alpha2) as i32)).abs() < 1e-14);
        }
        let partial: f64 = (0..=4).map(|j| 0.25f64.powi(j)).sum();
        let exact = (16.0 / 9.0 - partial * partial).sqrt();
        assert!((matrix_truncation_error(&s, &spec).unwrap() - exact).abs() < 1e-13);
    }

    #[test]
    fn identity_is_rejected() {
        let s = BidiskSymbol::Scaled { r: 1.0 };
        let spec = TruncationSpec::new(4, 64).unwrap();
        assert!(matches!(matrix_truncation_error(&s, &spec), Err(Error::Domain(_))));
        assert!(matches!(hs_norm_squared(&s, &spec), Err(Error::Domain(_))));
    }

    #[test]
    fn window_limit_is_full_circle_at_h_one() {
        let w = window_integral_i0(1.0).unwrap();
        assert_eq!(w.t_star, PI);
        assert!(w.value.is_finite() && w.value > 0.0);
        assert!(window_integral_i0(0.0).is_err());
    }

    #[test]
    fn window_integral_is_monotone() {
        let a = window_integral_i0(0.1).unwrap();
        let b = window_integral_i0(0.2).unwrap();
        assert!(a.value < b.value && a.t_star < b.t_star);
    }
}
