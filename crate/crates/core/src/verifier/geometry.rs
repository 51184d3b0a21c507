//! Shape of the cusp image: lens membership, the disk `|χ − 1| ≤ 1`, the parabolic
//! pinch `|y| ≤ 2(1 − x)²`, and the logarithmic approach along the boundary.

use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::maps::sampling::ClusteredSampler;
use crate::maps::{cusp, CuspChainTrace, UnitDiskPoint, C64};
use rand::Rng;

/// Absolute tolerance of the exact geometric checks.
pub const GEOMETRY_TOL: f64 = 1e-10;
/// Smallest boundary angle of the pinch bracket.
pub const PINCH_T_MIN: f64 = 1e-8;
/// Largest boundary angle of the pinch bracket.
pub const PINCH_T_MAX: f64 = std::f64::consts::FRAC_PI_4;

const STABILITY: f64 = 0.05;

fn point_inputs(p: &UnitDiskPoint) -> [(&'static str, f64); 4] {
    let z = p.value();
    let w = p.one_minus();
    [("z_re", z.re), ("z_im", z.im), ("one_minus_z_re", w.re), ("one_minus_z_im", w.im)]
}

/// `[min, max]` of `(1 − Re χ(e^{it})) log(1/t)` over `count` log-uniform random angles in
/// `[1e−8, π/4]` together with both endpoints.
pub fn pinch_bracket(count: usize, seed: u64) -> (f64, f64) {
    let mut s = ClusteredSampler::new(seed);
    let (a, b) = (PINCH_T_MIN.ln(), PINCH_T_MAX.ln());
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    let mut visit = |t: f64| {
        let r = cusp(&UnitDiskPoint::from_angle(t)).chi3.re * (1.0 / t).ln();
        lo = lo.min(r);
        hi = hi.max(r);
    };
    visit(PINCH_T_MIN);
    visit(PINCH_T_MAX);
    for _ in 0..count {
        let u: f64 = s.rng().random_range(a..b);
        visit(u.exp());
    }
    (lo, hi)
}

fn exact_checks(b: &mut ReportBuilder, p: &UnitDiskPoint, t: &CuspChainTrace) {
    let inputs = point_inputs(p);
    let w = t.chi3;
    let half = C64::new(0.5, 0.0);
    b.check_le("lens_inside_disk", (half - w).norm() - 0.5, GEOMETRY_TOL, &inputs);
    for s in [0.5, -0.5] {
        let dist = (w + C64::new(0.0, s)).norm();
        b.check_le("lens_outside_side_disks", 0.5 - dist, GEOMETRY_TOL, &inputs);
    }
    b.check_le("distance_to_one", w.norm() - 1.0, GEOMETRY_TOL, &inputs);
    let c = cusp(&p.conj());
    b.check_le("conjugation_symmetry", (c.chi - t.chi.conj()).norm(), GEOMETRY_TOL, &inputs);
    let h = w.re;
    b.check_le("real_part_at_most_one", -h, GEOMETRY_TOL, &inputs);
    b.check_le("real_part_nonnegative", -t.chi.re, GEOMETRY_TOL, &inputs);
    b.check_le("parabolic_pinch", w.im.abs(), 2.0 * h * h + GEOMETRY_TOL, &inputs);
}

/// Geometry suite on `sample_count` points: one third interior, one third on the
/// boundary and one third within `e^{−700}` of the cusp.
pub fn check_cusp_geometry(sample_count: usize, seed: u64) -> Result<VerificationReport> {
    if sample_count < 10_000 {
        return Err(Error::Config(format!("geometry suite needs at least 1e4 samples, got {sample_count}")));
    }
    let mut b = ReportBuilder::new("cusp_geometry", seed);
    let mut s = ClusteredSampler::new(seed);
    let mut k_half = 0.0f64;
    let mut k_all = 0.0f64;
    for i in 0..sample_count {
        let p = match i % 3 {
            0 => s.interior(),
            1 => UnitDiskPoint::from_angle(s.boundary_angle()),
            _ => s.near_cusp(0.0, 700.0),
        };
        let t = cusp(&p);
        exact_checks(&mut b, &p, &t);
        let ratio = t.chi3.norm() / t.one_minus_abs();
        if ratio.is_finite() {
            k_all = k_all.max(ratio);
            if i < sample_count / 2 {
                k_half = k_half.max(ratio);
            }
        }
        b.sample();
    }
    let one = cusp(&UnitDiskPoint::new(C64::new(1.0, 0.0))?);
    b.check_le("chi_of_one", (one.chi - C64::new(1.0, 0.0)).norm(), 0.0, &[("z_re", 1.0), ("z_im", 0.0)]);

    let m = sample_count / 10;
    let (lo, hi) = pinch_bracket(m, seed);
    let (lo2, hi2) = pinch_bracket(2 * m, seed);
    let change = ((lo2 - lo).abs() / lo).max((hi2 - hi).abs() / hi);
    b.check_le("pinch_bracket_stability", change, STABILITY, &[("count", m as f64)]);
    if !(lo > 0.0 && hi.is_finite()) {
        b.violation("pinch_bracket_positive", lo, 0.0, &[("count", m as f64)]);
    }
    b.constant("k_sup", k_all);
    b.constant("k_sup_half_sample", k_half);
    b.constant("k_sup_change", (k_all - k_half) / k_half);
    b.constant("pinch_r_minus", lo);
    b.constant("pinch_r_plus", hi);
    b.constant("pinch_r_minus_doubled", lo2);
    b.constant("pinch_r_plus_doubled", hi2);
    b.constant("pinch_bracket_change", change);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_axis_images_are_real() {
        for x in [-0.9, -0.3, 0.0, 0.4, 0.99] {
            let t = cusp(&UnitDiskPoint::new(C64::new(x, 0.0)).unwrap());
            assert_eq!(t.chi.im, 0.0);
        }
    }

    #[test]
    fn small_run_passes() {
        let r = check_cusp_geometry(10_000, 3).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert!(r.constants["pinch_r_minus"] > 0.0);
        assert!(check_cusp_geometry(10, 3).is_err());
    }
}
