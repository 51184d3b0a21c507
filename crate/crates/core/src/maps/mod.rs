//! The cusp map χ, the perturbation φ_θ and the bidisk symbol Φ.
//!
//! Points of the closed disk carry their complement `1 − z` alongside the
//! value so that evaluation near the cusp point `z = 1` keeps full relative
//! accuracy. Every quantity that degenerates at the cusp (`1 − χ`,
//! `1 − |χ|²`) is obtained from the last link of the chain instead of by
//! subtraction.

mod calibrate;
mod cusp;
mod phi;
pub mod sampling;
mod symbol;

pub use calibrate::{calibrate_c, estimate_k, validate_c, Calibration};
pub use cusp::{chi0, cusp, cusp_extended, CuspChainTrace};
pub use phi::{phi_from_one_minus, phi_theta};
pub use symbol::{diagonal_symbol, perturbation, symbol, GKind, SymbolParams, SIGMA};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Slack admitted on the closed-disk modulus test.
pub const DISK_TOL: f64 = 1e-14;

/// A point of the closed unit disk together with an accurate `1 − z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitDiskPoint {
    value: C64,
    one_minus: C64,
}

impl UnitDiskPoint {
    /// Wraps `z`, rejecting non-finite values and points with `|z| > 1 + 1e−14`.
    pub fn new(z: C64) -> Result<Self> {
        check_finite(z)?;
        if z.norm() > 1.0 + DISK_TOL {
            return Err(Error::Domain(format!("|z| = {} exceeds 1", z.norm())));
        }
        Ok(Self { value: z, one_minus: C64::new(1.0 - z.re, -z.im) })
    }

    /// The boundary point `e^{it}`.
    pub fn from_angle(t: f64) -> Self {
        let (s, c) = t.sin_cos();
        let h = (0.5 * t).sin();
        Self { value: C64::new(c, s), one_minus: C64::new(2.0 * h * h, -s) }
    }

    /// The point `r e^{it}` for `0 ≤ r ≤ 1`.
    pub fn polar(r: f64, t: f64) -> Result<Self> {
        if !(r.is_finite() && t.is_finite()) || !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidInput(format!("polar point r = {r}, t = {t}")));
        }
        let b = Self::from_angle(t);
        Ok(Self { value: b.value * r, one_minus: C64::new(1.0 - r, 0.0) + b.one_minus * r })
    }

    /// The point `1 − ε e^{iψ}`, built so that `1 − z` is exact.
    pub fn near_one(eps: f64, psi: f64) -> Result<Self> {
        if !(eps.is_finite() && psi.is_finite()) || eps < 0.0 {
            return Err(Error::InvalidInput(format!("near-one point eps = {eps}, psi = {psi}")));
        }
        let w = C64::from_polar(eps, psi);
        let z = C64::new(1.0 - w.re, -w.im);
        if z.norm() > 1.0 + DISK_TOL {
            return Err(Error::Domain(format!("1 - {eps:e} e^(i{psi}) lies outside the disk")));
        }
        Ok(Self { value: z, one_minus: w })
    }

    /// The complex value `z`.
    pub fn value(&self) -> C64 {
        self.value
    }

    /// The complement `1 − z`.
    pub fn one_minus(&self) -> C64 {
        self.one_minus
    }

    /// Complex conjugate point.
    pub fn conj(&self) -> Self {
        Self { value: self.value.conj(), one_minus: self.one_minus.conj() }
    }
}

/// A point `(w₁, w₂)` of the closed bidisk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BidiskPoint {
    /// First coordinate.
    pub w1: C64,
    /// Second coordinate.
    pub w2: C64,
}

impl BidiskPoint {
    /// Validates finiteness and closed-bidisk membership.
    pub fn new(w1: C64, w2: C64) -> Result<Self> {
        check_finite(w1)?;
        check_finite(w2)?;
        let p = Self { w1, w2 };
        if p.max_modulus() > 1.0 + DISK_TOL {
            return Err(Error::Domain(format!("max |w| = {} exceeds 1", p.max_modulus())));
        }
        Ok(p)
    }

    /// `max(|w₁|, |w₂|)`.
    pub fn max_modulus(&self) -> f64 {
        self.w1.norm().max(self.w2.norm())
    }

    /// Strict interior membership.
    pub fn is_interior(&self) -> bool {
        self.max_modulus() < 1.0
    }

    /// Componentwise conjugate.
    pub fn conj(&self) -> Self {
        Self { w1: self.w1.conj(), w2: self.w2.conj() }
    }
}

pub(crate) fn check_finite(z: C64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("non-finite complex value {z}")))
    }
}
