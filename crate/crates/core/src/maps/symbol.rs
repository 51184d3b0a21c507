//! Symbol parameters and `Φ(z₁, z₂) = (χ(z₁), χ(z₁) + c φ(χ(z₁)) g(z₂))`.

use super::{cusp, phi_from_one_minus, BidiskPoint, CuspChainTrace, UnitDiskPoint, C64};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Ratio of the covering disks.
pub const SIGMA: f64 = 7.0 / 8.0;

/// Choice of the inert factor `g` in the second coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GKind {
    /// `g(z₂) = z₂`.
    IdentityInZ2,
    /// `g ≡ 1`.
    ConstantOne,
}

impl GKind {
    /// Evaluates `g`.
    pub fn eval(self, z2: C64) -> C64 {
        match self {
            GKind::IdentityInZ2 => z2,
            GKind::ConstantOne => C64::new(1.0, 0.0),
        }
    }
}

impl fmt::Display for GKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GKind::IdentityInZ2 => "identity_in_z2",
            GKind::ConstantOne => "constant_one",
        })
    }
}

impl FromStr for GKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity_in_z2" | "identity" => Ok(GKind::IdentityInZ2),
            "constant_one" | "one" => Ok(GKind::ConstantOne),
            _ => Err(Error::Config(format!("unknown g kind '{s}'"))),
        }
    }
}

/// Constants of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolParams {
    theta: f64,
    delta: f64,
    c: f64,
    sigma: f64,
    j0: u32,
    k_hat: f64,
    g_kind: GKind,
}

impl SymbolParams {
    /// Validates and freezes a parameter set; `delta` is derived from `theta`.
    pub fn new(theta: f64, c: f64, j0: u32, k_hat: f64, g_kind: GKind) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::Config(format!("theta = {theta} must lie in (0, 1)")));
        }
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Config(format!("c = {c} must lie in (0, 1)")));
        }
        if !(k_hat >= 1.0 && k_hat.is_finite()) {
            return Err(Error::Config(format!("k_hat = {k_hat} must be a finite value >= 1")));
        }
        if j0 < 21 || 2.0 * SIGMA.powi(j0 as i32) > 0.125 {
            return Err(Error::Config(format!("j0 = {j0} violates 2 sigma^j0 <= 1/8")));
        }
        Ok(Self { theta, delta: (PI * theta / 2.0).cos(), c, sigma: SIGMA, j0, k_hat, g_kind })
    }

    /// Exponent of the perturbation.
    pub fn theta(&self) -> f64 {
        self.theta
    }
    /// `cos(πθ/2)`.
    pub fn delta(&self) -> f64 {
        self.delta
    }
    /// Perturbation amplitude.
    pub fn c(&self) -> f64 {
        self.c
    }
    /// Covering ratio, always 7/8.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    /// First covering index.
    pub fn j0(&self) -> u32 {
        self.j0
    }
    /// Estimated constant with `|1 − χ| ≤ K(1 − |χ|)`.
    pub fn k_hat(&self) -> f64 {
        self.k_hat
    }
    /// Inert factor of the second coordinate.
    pub fn g_kind(&self) -> GKind {
        self.g_kind
    }

    /// Same parameters with a different amplitude.
    pub fn with_c(&self, c: f64) -> Result<Self> {
        Self::new(self.theta, c, self.j0, self.k_hat, self.g_kind)
    }

    /// Same parameters with a different inert factor.
    pub fn with_g(&self, g_kind: GKind) -> Self {
        Self { g_kind, ..*self }
    }

    /// `|φ(z)| ≤ exp(−δ |1 − z|^{−θ})`, evaluated from `1 − z`.
    pub fn phi_bound(&self, one_minus: C64) -> f64 {
        let r = one_minus.norm();
        if r == 0.0 {
            return 0.0;
        }
        (-self.delta * r.powf(-self.theta)).exp()
    }
}

/// The increment `c φ(χ(z₁))` multiplying `g(z₂)`.
pub fn perturbation(trace: &CuspChainTrace, params: &SymbolParams) -> C64 {
    phi_from_one_minus(trace.one_minus_chi(), params.theta) * params.c
}

/// `Φ(z₁, z₂)`.
pub fn symbol(z1: &UnitDiskPoint, z2: &UnitDiskPoint, params: &SymbolParams) -> BidiskPoint {
    let tr = cusp(z1);
    let b = perturbation(&tr, params);
    BidiskPoint { w1: tr.chi, w2: tr.chi + b * params.g_kind.eval(z2.value()) }
}

/// `Δ(z₁) = (χ(z₁), χ(z₁))`.
pub fn diagonal_symbol(z1: &UnitDiskPoint) -> BidiskPoint {
    let chi = cusp(z1).chi;
    BidiskPoint { w1: chi, w2: chi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: GKind) -> SymbolParams {
        SymbolParams::new(0.5, 1e-3, 21, 2.5, g).unwrap()
    }

    #[test]
    fn delta_is_derived() {
        let p = params(GKind::IdentityInZ2);
        assert_eq!(p.delta(), (PI / 4.0).cos());
        assert!(SymbolParams::new(0.5, 1e-3, 20, 2.5, GKind::IdentityInZ2).is_err());
        assert!(SymbolParams::new(1.0, 1e-3, 21, 2.5, GKind::IdentityInZ2).is_err());
        assert!(SymbolParams::new(0.5, 1.0, 21, 2.5, GKind::IdentityInZ2).is_err());
    }

    #[test]
    fn symbol_examples() {
        let p = params(GKind::IdentityInZ2);
        let one = UnitDiskPoint::new(C64::new(1.0, 0.0)).unwrap();
        let w = symbol(&one, &one, &p);
        assert_eq!((w.w1, w.w2), (C64::new(1.0, 0.0), C64::new(1.0, 0.0)));

        let m1 = UnitDiskPoint::new(C64::new(-1.0, 0.0)).unwrap();
        let z2 = UnitDiskPoint::new(C64::new(0.3, -0.4)).unwrap();
        let w = symbol(&m1, &z2, &p);
        assert!(w.w1.norm() < 1e-15);
        let expect = z2.value() * (p.c() * (-1.0f64).exp());
        assert!((w.w2 - expect).norm() < 1e-16);

        let q = params(GKind::ConstantOne);
        let z1 = UnitDiskPoint::polar(0.9, 0.2).unwrap();
        let a = symbol(&z1, &z2, &q);
        let b = symbol(&z1, &one, &q);
        assert_eq!(a, b);
    }

    #[test]
    fn diagonal_examples() {
        let one = UnitDiskPoint::new(C64::new(1.0, 0.0)).unwrap();
        assert_eq!(diagonal_symbol(&one).w2, C64::new(1.0, 0.0));
        let m1 = UnitDiskPoint::new(C64::new(-1.0, 0.0)).unwrap();
        assert!(diagonal_symbol(&m1).w1.norm() < 1e-15);
        let z = UnitDiskPoint::polar(0.7, 1.1).unwrap();
        let a = diagonal_symbol(&z.conj());
        let b = diagonal_symbol(&z).conj();
        assert!((a.w1 - b.w1).norm() < 1e-15 && (a.w2 - b.w2).norm() < 1e-15);
    }
}
