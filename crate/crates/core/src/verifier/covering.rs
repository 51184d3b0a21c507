//! Covering of the cusp image near `1` by the disks `D(1 − σ^j, σ^j/4)`.

use super::codim::n_n;
use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::maps::sampling::ClusteredSampler;
use crate::maps::{cusp, SymbolParams, UnitDiskPoint};
use serde::{Deserialize, Serialize};

/// Disks `D(a_j, ρ_j)`, `a_j = 1 − σ^j`, `ρ_j = σ^j/4`, for `j₀ ≤ j ≤ N_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringFamily {
    /// First index.
    pub j0: u32,
    /// Last index `N_n`.
    pub nn: u32,
    /// `σ^j` for each index, so that `1 − a_j` is exact.
    pub sigma_powers: Vec<f64>,
    /// Centers `a_j`.
    pub centers: Vec<f64>,
    /// Radii `ρ_j`.
    pub radii: Vec<f64>,
}

impl CoveringFamily {
    /// Family for the given parameters and `n`; empty when `N_n < j₀`.
    pub fn new(params: &SymbolParams, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("covering needs n >= 2, got {n}")));
        }
        let nn = n_n(n, params.theta()) as u32;
        let sigma_powers: Vec<f64> = (params.j0()..=nn).map(|j| params.sigma().powi(j as i32)).collect();
        Ok(Self {
            j0: params.j0(),
            nn,
            centers: sigma_powers.iter().map(|s| 1.0 - s).collect(),
            radii: sigma_powers.iter().map(|s| s / 4.0).collect(),
            sigma_powers,
        })
    }

    /// Number of disks.
    pub fn len(&self) -> usize {
        self.radii.len()
    }

    /// True when there are no disks.
    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// `(j, |w − a_j|/ρ_j)` for the disk minimizing the ratio, from `1 − w`.
    pub fn nearest(&self, one_minus_w: crate::maps::C64) -> Option<(u32, f64)> {
        self.sigma_powers
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let d = (one_minus_w - s).norm();
                (self.j0 + i as u32, d / (s / 4.0))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Covering suite for one `n`: points with `1 − |χ| < σ^{j₀}/K̂` and `|χ − 1| > 1/n` must
/// lie in some disk of the family.
pub fn check_covering(params: &SymbolParams, n: usize, sample_count: usize, seed: u64) -> Result<VerificationReport> {
    if sample_count == 0 {
        return Err(Error::Config("covering suite needs a positive sample count".into()));
    }
    let family = CoveringFamily::new(params, n)?;
    let mut b = ReportBuilder::new(&format!("covering_n{n}"), seed);
    for (a, r) in family.centers.iter().zip(&family.radii) {
        b.check_le("disk_inside_unit_disk", a + r, 1.0 - f64::EPSILON, &[("center", *a), ("radius", *r)]);
    }
    let mut s = ClusteredSampler::new(seed ^ n as u64);
    let threshold = params.sigma().powi(params.j0() as i32) / params.k_hat();
    let mut eligible = 0usize;
    let mut worst = 0.0f64;
    for i in 0..sample_count {
        let p = match i % 3 {
            0 => s.near_cusp(0.0, 700.0),
            1 => UnitDiskPoint::from_angle(s.boundary_angle()),
            _ => s.interior(),
        };
        b.sample();
        let t = cusp(&p);
        if !(t.one_minus_abs() < threshold && t.chi3.norm() > 1.0 / n as f64) {
            continue;
        }
        eligible += 1;
        let z = p.value();
        let w = p.one_minus();
        match family.nearest(t.chi3) {
            Some((j, ratio)) => {
                worst = worst.max(ratio);
                b.check_le(
                    "covered",
                    ratio,
                    1.0,
                    &[("z_re", z.re), ("z_im", z.im), ("one_minus_z_re", w.re), ("one_minus_z_im", w.im), ("nearest_j", j as f64)],
                );
            }
            None => b.violation("covered", f64::INFINITY, 1.0, &[("z_re", z.re), ("z_im", z.im)]),
        }
    }
    b.constant("n", n as f64);
    b.constant("j0", family.j0 as f64);
    b.constant("n_n", family.nn as f64);
    b.constant("disks", family.len() as f64);
    b.constant("eligible", eligible as f64);
    b.constant("worst_distance_ratio", worst);
    b.constant("threshold", threshold);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::GKind;

    fn params() -> SymbolParams {
        SymbolParams::new(0.5, 1e-3, 21, 2.48, GKind::IdentityInZ2).unwrap()
    }

    #[test]
    fn family_shape() {
        let f = CoveringFamily::new(&params(), 100).unwrap();
        assert_eq!(f.nn, 80);
        assert_eq!(f.len(), 60);
        assert!(f.centers.iter().zip(&f.radii).all(|(a, r)| a + r < 1.0));
    }

    #[test]
    fn covering_holds_on_small_runs() {
        for n in [10, 100] {
            let r = check_covering(&params(), n, 3000, 9).unwrap();
            assert!(r.pass, "{:?}", r.violations);
        }
        let r = check_covering(&params(), 100, 3000, 9).unwrap();
        assert!(r.constants["eligible"] > 0.0);
    }
}
