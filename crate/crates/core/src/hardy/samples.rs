//! Boundary samples of a symbol: discrete versions of the pullback measure `m_Φ`.

use super::{BidiskSymbol, CircleRule, TruncationSpec};
use crate::error::{Error, Result};
use crate::maps::{BidiskPoint, C64, DISK_TOL};
use std::f64::consts::PI;

/// Weighted image points `Φ(e^{it₁}, e^{it₂})` with accurate complements `1 − |w_i|²`.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackSamples {
    /// Angles `(t₁, t₂)`.
    pub nodes: Vec<(f64, f64)>,
    /// Image points.
    pub values: Vec<BidiskPoint>,
    /// Weights summing to 1.
    pub weights: Vec<f64>,
    /// `(1 − |w₁|², 1 − |w₂|²)` computed without cancellation.
    pub gaps: Vec<(f64, f64)>,
}

impl PullbackSamples {
    /// Number of samples.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when there are no samples.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ w`.
    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `∫ w₁ dm_Φ`.
    pub fn first_mean(&self) -> C64 {
        self.values.iter().zip(&self.weights).map(|(v, w)| v.w1 * *w).sum()
    }

    /// `∫ |f|² dm_Φ` for `f` given on the image points.
    pub fn mean_square<F: Fn(&BidiskPoint) -> C64>(&self, f: F) -> f64 {
        self.values.iter().zip(&self.weights).map(|(v, w)| w * f(v).norm_sqr()).sum()
    }
}

fn uniform_angles(q: usize) -> Vec<f64> {
    (0..q).map(|j| 2.0 * PI * j as f64 / q as f64).collect()
}

fn build(symbol: &BidiskSymbol, t1: &[f64], w1: &[f64], t2: &[f64]) -> Result<PullbackSamples> {
    let m = t2.len();
    let es: Vec<C64> = t2.iter().map(|&t| C64::from_polar(1.0, t)).collect();
    let cap = t1.len() * m;
    let mut out = PullbackSamples {
        nodes: Vec::with_capacity(cap),
        values: Vec::with_capacity(cap),
        weights: Vec::with_capacity(cap),
        gaps: Vec::with_capacity(cap),
    };
    for (&a, &wa) in t1.iter().zip(w1) {
        let node = symbol.affine_at(a);
        for (&b, e) in t2.iter().zip(&es) {
            let v = BidiskPoint { w1: node.f, w2: node.p + node.q * e };
            let gap = (node.om_f, node.om_w2(*e));
            if !(gap.0 >= -DISK_TOL && gap.1 >= -DISK_TOL) {
                return Err(Error::Domain(format!("image point ({}, {}) leaves the closed bidisk", v.w1, v.w2)));
            }
            out.nodes.push((a, b));
            out.values.push(v);
            out.weights.push(wa / m as f64);
            out.gaps.push(gap);
        }
    }
    Ok(out)
}

/// Uniform `Q × Q` grid on `[0, 2π)²` with weights `1/Q²`; contains `t = (0, 0)`.
pub fn boundary_samples(symbol: &BidiskSymbol, spec: &TruncationSpec) -> Result<PullbackSamples> {
    let q = spec.quad_points();
    let t = uniform_angles(q);
    build(symbol, &t, &vec![1.0 / q as f64; q], &t)
}

/// Graded rule in `t₁` times `m2` equispaced nodes in `t₂`.
pub fn graded_samples(symbol: &BidiskSymbol, rule: &CircleRule, m2: usize) -> Result<PullbackSamples> {
    if m2 == 0 {
        return Err(Error::InvalidInput("need at least one t2 node".into()));
    }
    build(symbol, &rule.nodes, &rule.weights, &uniform_angles(m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{calibrate_c, GKind};

    fn paper() -> BidiskSymbol {
        let cal = calibrate_c(0.5, 2.53, 21, GKind::IdentityInZ2, 10_000).unwrap();
        BidiskSymbol::Paper(cal.params)
    }

    #[test]
    fn uniform_grid_contains_the_cusp() {
        let s = boundary_samples(&paper(), &TruncationSpec::new(4, 32).unwrap()).unwrap();
        assert_eq!(s.len(), 32 * 32);
        assert!((s.weight_sum() - 1.0).abs() < 1e-14);
        assert_eq!(s.nodes[0], (0.0, 0.0));
        assert!((s.values[0].w1 - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((s.values[0].w2 - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(s.values.iter().all(|v| v.max_modulus() <= 1.0 + DISK_TOL));
    }

    #[test]
    fn graded_first_mean_is_stable_under_doubling() {
        let sym = paper();
        let means: Vec<C64> = [256usize, 512]
            .iter()
            .map(|&q| {
                let spec = TruncationSpec::new(8, q).unwrap();
                graded_samples(&sym, &CircleRule::for_spec(&spec), 4).unwrap().first_mean()
            })
            .collect();
        assert!((means[0] - means[1]).norm() < 1e-6);
        assert!((means[1] - C64::new(0.3594259851465734, 0.0)).norm() < 1e-6);
    }
}
