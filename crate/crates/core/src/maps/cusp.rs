//! Möbius, square root, Möbius, logarithm, affine, inversion: the cusp chain.

use super::{UnitDiskPoint, C64};
use crate::mp::MpComplex;
use std::f64::consts::{FRAC_2_PI, PI};

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Intermediate values of the chain at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspChainTrace {
    /// Input point.
    pub z: C64,
    /// Image in the right half-disk.
    pub chi0: C64,
    /// `log χ₀`.
    pub chi1: C64,
    /// `1 − (2/π) χ₁`.
    pub chi2: C64,
    /// `1 / χ₂`, equal to `1 − χ`.
    pub chi3: C64,
    /// The cusp map value.
    pub chi: C64,
}

impl CuspChainTrace {
    /// `1 − χ`, read off the chain without cancellation.
    pub fn one_minus_chi(&self) -> C64 {
        self.chi3
    }

    /// `1 − |χ|²` computed as `2 Re χ₃ − |χ₃|²`.
    pub fn one_minus_abs_sq(&self) -> f64 {
        let v = 2.0 * self.chi3.re - self.chi3.norm_sqr();
        v.max(0.0)
    }

    /// `1 − |χ|`.
    pub fn one_minus_abs(&self) -> f64 {
        self.one_minus_abs_sq() / (1.0 + self.chi.norm())
    }

    /// Largest violation of the link identities, relative to the size of each link.
    pub fn link_defect(&self) -> f64 {
        if self.chi0 == C64::new(0.0, 0.0) {
            return (self.chi - ONE).norm() + self.chi3.norm();
        }
        let rel = |a: C64, b: C64| (a - b).norm() / a.norm().max(1.0);
        [
            rel(self.chi1, self.chi0.ln()),
            rel(self.chi2, ONE - self.chi1 * FRAC_2_PI),
            rel(self.chi3, self.chi2.inv()),
            rel(self.chi, ONE - self.chi3),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// The half-disk map χ₀, principal branches throughout.
pub fn chi0(z: &UnitDiskPoint) -> C64 {
    chi0_parts(z.value(), -z.one_minus())
}

fn chi0_parts(z: C64, zm1: C64) -> C64 {
    if zm1 == C64::new(0.0, 0.0) {
        return C64::new(0.0, 0.0);
    }
    if z.im == 0.0 {
        let q = (-zm1.re) / (1.0 + z.re);
        return C64::new((0.5 * q.atan()).tan(), 0.0);
    }
    let den = I * z - ONE;
    if den.norm() < 1e-300 {
        return I;
    }
    let mut m = (z - I) / den;
    if !(m.im > 0.0) {
        m.im = 0.0;
    }
    let s = m.sqrt();
    if zm1.norm() <= 1.0 {
        C64::new(1.0, 1.0) * zm1 / (den * (ONE - I * s) * (s + I))
    } else {
        (s - I) / (ONE - I * s)
    }
}

/// Full chain trace; `z = 1` returns the continuous extension `χ(1) = 1`.
pub fn cusp(z: &UnitDiskPoint) -> CuspChainTrace {
    let c0 = chi0(z);
    trace_from_chi0(z.value(), c0)
}

fn trace_from_chi0(z: C64, c0: C64) -> CuspChainTrace {
    if c0 == C64::new(0.0, 0.0) {
        return CuspChainTrace {
            z,
            chi0: c0,
            chi1: C64::new(f64::NEG_INFINITY, 0.0),
            chi2: C64::new(f64::INFINITY, 0.0),
            chi3: C64::new(0.0, 0.0),
            chi: ONE,
        };
    }
    let chi1 = c0.ln();
    let chi2 = ONE - chi1 * (2.0 / PI);
    let chi3 = chi2.inv();
    CuspChainTrace { z, chi0: c0, chi1, chi2, chi3, chi: ONE - chi3 }
}

/// Chain evaluated in `bits`-bit arithmetic and rounded to double precision.
pub fn cusp_extended(z: &UnitDiskPoint, bits: usize) -> CuspChainTrace {
    let zv = z.value();
    let zm1 = -z.one_minus();
    if zm1 == C64::new(0.0, 0.0) {
        return trace_from_chi0(zv, C64::new(0.0, 0.0));
    }
    let ctx = crate::mp::Ctx::new(bits);
    let zm = MpComplex::from_c64(zv, &ctx);
    let zm1m = MpComplex::from_c64(zm1, &ctx);
    let links = crate::mp::cusp_links(&zm, &zm1m, &ctx);
    CuspChainTrace {
        z: zv,
        chi0: links[0].to_c64(),
        chi1: links[1].to_c64(),
        chi2: links[2].to_c64(),
        chi3: links[3].to_c64(),
        chi: links[4].to_c64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn pt(re: f64, im: f64) -> UnitDiskPoint {
        UnitDiskPoint::new(C64::new(re, im)).unwrap()
    }

    #[test]
    fn golden_values_of_chi0() {
        assert_eq!(chi0(&pt(1.0, 0.0)), C64::new(0.0, 0.0));
        assert!((chi0(&pt(-1.0, 0.0)) - ONE).norm() < 1e-15);
        assert!((chi0(&pt(0.0, 1.0)) + I).norm() < 1e-15);
        assert!((chi0(&pt(0.0, -1.0)) - I).norm() < 1e-15);
        assert!((chi0(&pt(0.0, 0.0)) - C64::new(SQRT_2 - 1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn golden_values_of_chi() {
        assert_eq!(cusp(&pt(1.0, 0.0)).chi, ONE);
        assert!(cusp(&pt(-1.0, 0.0)).chi.norm() < 1e-15);
        assert!((cusp(&pt(0.0, 0.0)).chi.re - 0.359_425_985_146_573_4).abs() < 1e-15);
        assert!((cusp(&pt(0.0, 1.0)).chi - C64::new(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn real_axis_is_mapped_to_real_values() {
        for k in 0..200 {
            let x = -1.0 + 2.0 * k as f64 / 200.0;
            let t = cusp(&pt(x, 0.0));
            assert_eq!(t.chi.im, 0.0, "x = {x}");
        }
    }

    #[test]
    fn near_cusp_boundary_values_follow_the_logarithm() {
        let t = 1e-200;
        let tr = cusp(&UnitDiskPoint::from_angle(t));
        let l = (1.0 / t).ln();
        let approx = 1.0 / (1.0 + FRAC_2_PI * l);
        assert!((tr.chi3.re - approx).abs() < 1e-2 * approx);
        assert!(tr.one_minus_abs_sq() > 0.0);
    }

    #[test]
    fn extended_chain_agrees_with_double_chain() {
        for &(r, t) in &[(0.3, 0.4), (0.999, 1e-6), (1.0, 2.5), (1.0, -1e-9), (0.5, -2.0)] {
            let p = UnitDiskPoint::polar(r, t).unwrap();
            let a = cusp(&p);
            let b = cusp_extended(&p, 256);
            assert!((a.chi - b.chi).norm() < 1e-14, "{r} {t}");
            assert!((a.chi3 - b.chi3).norm() < 1e-14 * b.chi3.norm().max(1e-300) + 1e-300);
        }
    }
}
