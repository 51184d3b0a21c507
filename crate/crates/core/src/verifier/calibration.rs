//! The amplitude bound `|χ| + 2c|φ∘χ| < 1` and the consequence
//! `1 − |w| ≥ (1 − |χ|)/2` for `w = χ + c φ(χ) u`, `|u| ≤ 1`.

use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::maps::sampling::ClusteredSampler;
use crate::maps::{cusp, perturbation, SymbolParams, UnitDiskPoint, C64};

const U_GRID: usize = 16;

/// Calibration suite on `sample_count` interior points and a 16-point grid of unimodular `u`.
pub fn check_calibration(params: &SymbolParams, sample_count: usize, seed: u64) -> Result<VerificationReport> {
    if sample_count == 0 {
        return Err(Error::Config("calibration suite needs a positive sample count".into()));
    }
    let mut b = ReportBuilder::new("calibration", seed);
    let mut s = ClusteredSampler::new(seed);
    let units: Vec<C64> = (0..U_GRID)
        .map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / U_GRID as f64))
        .collect();
    let mut margin_abs = f64::INFINITY;
    let mut margin_rel = f64::INFINITY;
    let mut half_margin = f64::INFINITY;
    for _ in 0..sample_count {
        let p = s.interior();
        let t = cusp(&p);
        let z = p.value();
        let inputs = [("z_re", z.re), ("z_im", z.im), ("one_minus_z_re", p.one_minus().re), ("one_minus_z_im", p.one_minus().im)];
        let om2 = t.one_minus_abs_sq();
        let gap = t.one_minus_abs();
        let bump = perturbation(&t, params);
        let a = gap - 2.0 * bump.norm();
        if !(a > 0.0) {
            b.violation("amplitude_bound", 1.0 - a, 1.0, &inputs);
        }
        margin_abs = margin_abs.min(a);
        margin_rel = margin_rel.min(1.0 - 2.0 * bump.norm() / gap);
        for u in &units {
            let bu = bump * u;
            let om_w2 = om2 - 2.0 * (t.chi.conj() * bu).re - bu.norm_sqr();
            let w = t.chi + bu;
            let om_w = om_w2 / (1.0 + w.norm());
            let ratio = om_w / (0.5 * gap);
            if !(ratio >= 1.0) {
                let mut inp = inputs.to_vec();
                inp.push(("u_re", u.re));
                inp.push(("u_im", u.im));
                b.violation("half_gap", 0.5 * gap, om_w, &inp);
            }
            half_margin = half_margin.min(ratio - 1.0);
        }
        b.sample();
    }
    let minus_one = 2.0 * params.c() * (-1.0f64).exp();
    b.check_le("amplitude_at_minus_one", minus_one, 1.0 - f64::EPSILON, &[("z_re", -1.0), ("z_im", 0.0)]);
    let zero = cusp(&UnitDiskPoint::new(C64::new(-1.0, 0.0))?);
    b.check_le("chi_of_minus_one", zero.chi.norm(), 0.0, &[("z_re", -1.0), ("z_im", 0.0)]);
    b.constant("c", params.c());
    b.constant("k_hat", params.k_hat());
    b.constant("margin_abs", margin_abs);
    b.constant("margin_rel", margin_rel);
    b.constant("half_gap_margin", half_margin);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::GKind;

    #[test]
    fn oversized_amplitude_is_caught() {
        let good = SymbolParams::new(0.5, 1e-3, 21, 2.5, GKind::IdentityInZ2).unwrap();
        let r = check_calibration(&good, 20_000, 5).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert!(r.constants["margin_abs"] > 0.0);
        let bad = good.with_c(0.9).unwrap();
        let r = check_calibration(&bad, 20_000, 5).unwrap();
        assert!(!r.pass);
        assert!(r.violations[0].inputs.contains_key("z_re"));
    }
}
