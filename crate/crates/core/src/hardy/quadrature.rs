//! Quadrature rules on the unit circle, normalized to total mass 1.
//!
//! The graded rule is composite Gauss–Legendre: panels shrink geometrically
//! toward the cusp angle `t = 0` (ratio `e^{−2}` down to `t = e^{−depth}`) and
//! toward the lens corners `t = ±π/2` (ratio `1/4`, sixteen levels).

use super::TruncationSpec;
use crate::maps::UnitDiskPoint;
use gauss_quad::legendre::GaussLegendre;
use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;

/// Cusp depth `log(1/t_min)` used for matrix assembly and Hilbert–Schmidt norms.
pub const ASSEMBLY_DEPTH: f64 = 96.0;
/// Cusp depth reaching the smallest positive normal angles.
pub const DEEP_DEPTH: f64 = 700.0;
/// Ratio `log(t_k / t_{k+1})` of successive cusp panels.
pub const CUSP_STEP: f64 = 2.0;
const CORNER_LEVELS: i32 = 16;

/// Nodes `t ∈ (−π, π]` and weights summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleRule {
    /// Angles.
    pub nodes: Vec<f64>,
    /// Weights of the normalized measure `dt/2π`.
    pub weights: Vec<f64>,
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(order.max(1)).expect("positive order");
    GaussLegendre::new(n).as_node_weight_pairs().to_vec()
}

/// Composite Gauss–Legendre rule over the given panels, raw `dt` weights.
pub fn composite(panels: &[(f64, f64)], order: usize) -> (Vec<f64>, Vec<f64>) {
    let gl = gauss_legendre(order);
    let mut x = Vec::with_capacity(panels.len() * order);
    let mut w = Vec::with_capacity(panels.len() * order);
    for &(a, b) in panels {
        let h = 0.5 * (b - a);
        let m = 0.5 * (b + a);
        for &(s, ws) in &gl {
            x.push(m + h * s);
            w.push(h * ws);
        }
    }
    (x, w)
}

/// Panels on `[0, t0]` shrinking geometrically toward 0, down to `e^{−depth}`.
pub fn cusp_panels(t0: f64, depth: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut hi = t0;
    let mut l = -t0.ln();
    while l < depth {
        let next = (l + CUSP_STEP).min(depth);
        let lo = (-next).exp();
        out.push((lo, hi));
        hi = lo;
        l = next;
    }
    out.push((0.0, hi));
    out
}

fn half_circle_panels(depth: f64) -> Vec<(f64, f64)> {
    let t0 = PI / 16.0;
    let mut p = cusp_panels(t0, depth);
    let first = FRAC_PI_2 - PI / 4.0;
    let n_reg = 3;
    for k in 0..n_reg {
        let a = t0 + (first - t0) * k as f64 / n_reg as f64;
        let b = t0 + (first - t0) * (k + 1) as f64 / n_reg as f64;
        p.push((a, b));
    }
    let mut left: Vec<f64> = (0..=CORNER_LEVELS).map(|j| FRAC_PI_2 - (PI / 4.0) * 4f64.powi(-j)).collect();
    left.push(FRAC_PI_2);
    for w in left.windows(2) {
        p.push((w[0], w[1]));
    }
    let mut right: Vec<f64> = vec![FRAC_PI_2];
    right.extend((0..=CORNER_LEVELS).rev().map(|j| FRAC_PI_2 + (PI / 4.0) * 4f64.powi(-j)));
    for w in right.windows(2) {
        p.push((w[0], w[1]));
    }
    let start = FRAC_PI_2 + PI / 4.0;
    let n_tail = 4;
    for k in 0..n_tail {
        let a = start + (PI - start) * k as f64 / n_tail as f64;
        let b = start + (PI - start) * (k + 1) as f64 / n_tail as f64;
        p.push((a, b));
    }
    p
}

/// Graded composite rule on `[0, t_max]` with raw `dt` weights, panels clipped at `t_max`.
pub fn half_circle(t_max: f64, order: usize, depth: f64) -> (Vec<f64>, Vec<f64>) {
    let panels: Vec<(f64, f64)> = half_circle_panels(depth)
        .into_iter()
        .filter(|&(a, _)| a < t_max)
        .map(|(a, b)| (a, b.min(t_max)))
        .collect();
    composite(&panels, order)
}

impl CircleRule {
    /// `Q` equispaced nodes `2πj/Q` (mapped into `(−π, π]`), including `t = 0`.
    pub fn uniform(q: usize) -> Self {
        let nodes = (0..q)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / q as f64;
                if t > PI {
                    t - 2.0 * PI
                } else {
                    t
                }
            })
            .collect();
        Self { nodes, weights: vec![1.0 / q as f64; q] }
    }

    /// Equispaced nodes shifted by half a cell, so that `t = 0` is never a node.
    pub fn midpoint(q: usize) -> Self {
        let nodes = (0..q).map(|j| -PI + 2.0 * PI * (j as f64 + 0.5) / q as f64).collect();
        Self { nodes, weights: vec![1.0 / q as f64; q] }
    }

    /// Graded composite Gauss–Legendre rule of the given panel order and cusp depth.
    pub fn graded(order: usize, depth: f64) -> Self {
        let half = half_circle_panels(depth);
        let mut panels: Vec<(f64, f64)> = half.iter().map(|&(a, b)| (-b, -a)).collect();
        panels.reverse();
        panels.extend(half);
        let (x, w) = composite(&panels, order);
        let weights = w.into_iter().map(|v| v / (2.0 * PI)).collect();
        Self { nodes: x, weights }
    }

    /// Panel order tied to the resolution: `max(12 + D/4, Q/64)`.
    pub fn order_for(spec: &TruncationSpec) -> usize {
        (spec.quad_points() / 64).max(12 + spec.max_degree() / 4)
    }

    /// Graded rule at assembly depth for the given truncation.
    pub fn for_spec(spec: &TruncationSpec) -> Self {
        Self::graded(Self::order_for(spec), ASSEMBLY_DEPTH)
    }

    /// Graded rule reaching the smallest normal angles.
    pub fn deep(order: usize) -> Self {
        Self::graded(order, DEEP_DEPTH)
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True for an empty rule.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Boundary points `e^{it}` at the nodes.
    pub fn points(&self) -> impl Iterator<Item = UnitDiskPoint> + '_ {
        self.nodes.iter().map(|&t| UnitDiskPoint::from_angle(t))
    }

    /// `Σ w f(t)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_one() {
        for r in [CircleRule::uniform(64), CircleRule::midpoint(64), CircleRule::graded(8, 48.0), CircleRule::deep(8)] {
            let s: f64 = r.weights.iter().sum();
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn graded_rule_integrates_trigonometric_polynomials() {
        let r = CircleRule::graded(16, 48.0);
        for k in 1..30 {
            let c = r.integrate(|t| (k as f64 * t).cos());
            assert!(c.abs() < 1e-12, "k = {k}: {c}");
        }
    }

    #[test]
    fn graded_rule_integrates_log_singularity() {
        let r = CircleRule::graded(16, 48.0);
        let v = r.integrate(|t| t.abs().ln().powi(2));
        let exact = (PI.ln().powi(2) - 2.0 * PI.ln() + 2.0) / 1.0;
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn clipped_half_rule_has_the_right_length() {
        for t in [PI, 1.0, 1e-3, 1e-30] {
            let (_, w) = half_circle(t, 12, DEEP_DEPTH);
            assert!((w.iter().sum::<f64>() - t).abs() < 1e-14 * t.max(1.0));
        }
    }

    #[test]
    fn uniform_rule_contains_origin() {
        assert!(CircleRule::uniform(32).nodes.contains(&0.0));
        assert!(!CircleRule::midpoint(32).nodes.contains(&0.0));
    }
}
