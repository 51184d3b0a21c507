//! Coordinates on `H²(𝔻²)`: monomial basis, kernels, boundary quadrature,
//! operator matrices of `C_Φ` and the Hilbert–Schmidt type integrals.
//!
//! Every symbol handled here is affine in the second variable,
//! `Φ(z₁, z₂) = (F(z₁), P(z₁) + Q(z₁) z₂)`, which lets the `t₂` integrals be done
//! in closed form. Norms use normalized Haar measure on `𝕋²`.

mod integrals;
mod kernel;
mod matrix;
pub mod poly;
pub mod quadrature;
mod samples;

pub use integrals::{
    column_norms_squared, hs_norm_squared, matrix_truncation_error, window_integral_i, window_integral_i0,
    HsNorm, WindowIntegral,
};
pub use kernel::{evaluation_bound, reproducing_kernel};
pub use matrix::{assemble_matrix, assemble_matrix_with, DumpHeader, OperatorMatrix, SUB_BAND};
pub use poly::{Poly1, Poly2};
pub use quadrature::CircleRule;
pub use samples::{boundary_samples, graded_samples, PullbackSamples};

use crate::error::{Error, Result};
use crate::maps::{cusp, perturbation, BidiskPoint, SymbolParams, UnitDiskPoint, C64};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Multi-index `α = (α₁, α₂)` of the monomial `z₁^{α₁} z₂^{α₂}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialIndex {
    /// Exponent of `z₁`.
    pub alpha1: usize,
    /// Exponent of `z₂`.
    pub alpha2: usize,
}

impl MonomialIndex {
    /// Builds `(α₁, α₂)`.
    pub fn new(alpha1: usize, alpha2: usize) -> Self {
        Self { alpha1, alpha2 }
    }

    /// `max(α₁, α₂)`.
    pub fn max_degree(&self) -> usize {
        self.alpha1.max(self.alpha2)
    }

    /// Position in the max-degree block ordering.
    pub fn position(&self) -> usize {
        let d = self.max_degree();
        let within = if self.alpha1 < d { self.alpha1 } else { d + self.alpha2 };
        d * d + within
    }
}

/// Indices with `max(α₁, α₂) ≤ d`, ordered by max-degree block and lexicographically within
/// a block, so that each degree truncation is a leading principal block.
pub fn basis(d: usize) -> Vec<MonomialIndex> {
    let mut out = Vec::with_capacity((d + 1) * (d + 1));
    for m in 0..=d {
        for a1 in 0..m {
            out.push(MonomialIndex::new(a1, m));
        }
        for a2 in 0..=m {
            out.push(MonomialIndex::new(m, a2));
        }
    }
    out
}

/// Indices with `lo < max(α₁, α₂) ≤ hi`, in basis order.
pub fn basis_band(lo: usize, hi: usize) -> Vec<MonomialIndex> {
    basis(hi).into_iter().filter(|a| a.max_degree() > lo).collect()
}

/// Degree and quadrature resolution of a truncated computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSpec {
    max_degree: usize,
    quad_points: usize,
}

impl TruncationSpec {
    /// Requires `Q` to be a power of two with `Q ≥ 4(D + 1)`.
    pub fn new(max_degree: usize, quad_points: usize) -> Result<Self> {
        if max_degree == 0 {
            return Err(Error::Config("degree must be positive".into()));
        }
        if !quad_points.is_power_of_two() {
            return Err(Error::Config(format!("quad = {quad_points} is not a power of two")));
        }
        if quad_points < 4 * (max_degree + 1) {
            return Err(Error::Config(format!(
                "quad = {quad_points} is below the anti-aliasing floor 4(D + 1) = {}",
                4 * (max_degree + 1)
            )));
        }
        Ok(Self { max_degree, quad_points })
    }

    /// Per-variable degree `D`.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Points per circle `Q`.
    pub fn quad_points(&self) -> usize {
        self.quad_points
    }

    /// Number of basis functions `(D + 1)²`.
    pub fn dim(&self) -> usize {
        (self.max_degree + 1) * (self.max_degree + 1)
    }

    /// Same degree with `Q` doubled.
    pub fn doubled(&self) -> Self {
        Self { max_degree: self.max_degree, quad_points: 2 * self.quad_points }
    }
}

/// Symbols supported by the assembly routines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BidiskSymbol {
    /// `Φ(z₁, z₂) = (χ(z₁), χ(z₁) + c φ(χ(z₁)) g(z₂))`.
    Paper(SymbolParams),
    /// `Δ(z₁, z₂) = (χ(z₁), χ(z₁))`.
    Diagonal,
    /// `(r z₁, r z₂)`; `r = 1` is the identity.
    Scaled {
        /// Dilation factor.
        r: f64,
    },
}

/// Values of `F`, `P`, `Q` at one boundary point, with accurate complements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineNode {
    /// First coordinate.
    pub f: C64,
    /// Constant part of the second coordinate.
    pub p: C64,
    /// Coefficient of `z₂` in the second coordinate.
    pub q: C64,
    /// `1 − |F|²`.
    pub om_f: f64,
    /// `1 − |P|²`.
    pub om_p: f64,
}

impl AffineNode {
    /// `1 − |P + Q e^{it}|²`.
    pub fn om_w2(&self, e: C64) -> f64 {
        let qe = self.q * e;
        self.om_p - 2.0 * (self.p.conj() * qe).re - qe.norm_sqr()
    }

    /// `∫ dt/2π · 1/(1 − |P + Q e^{it}|²)`.
    pub fn mean_inverse_om_w2(&self) -> f64 {
        let q2 = self.q.norm_sqr();
        if q2 == 0.0 {
            return 1.0 / self.om_p;
        }
        let a = self.om_p - q2;
        let disc = a * a - 4.0 * self.p.norm_sqr() * q2;
        1.0 / disc.sqrt()
    }

    /// True when `P` or `Q` vanishes, so that `|w₂|` does not depend on `t₂`.
    pub fn w2_modulus_constant(&self) -> bool {
        self.p == C64::new(0.0, 0.0) || self.q == C64::new(0.0, 0.0)
    }
}

impl BidiskSymbol {
    /// Affine data at the boundary point `e^{it₁}`.
    pub fn affine_at(&self, t1: f64) -> AffineNode {
        self.affine_at_point(&UnitDiskPoint::from_angle(t1))
    }

    /// Affine data at a point of the closed disk.
    pub fn affine_at_point(&self, z1: &UnitDiskPoint) -> AffineNode {
        match self {
            BidiskSymbol::Paper(params) => {
                let tr = cusp(z1);
                let a = tr.chi;
                let b = perturbation(&tr, params);
                let om = tr.one_minus_abs_sq();
                match params.g_kind() {
                    crate::maps::GKind::IdentityInZ2 => AffineNode { f: a, p: a, q: b, om_f: om, om_p: om },
                    crate::maps::GKind::ConstantOne => {
                        let om_p = om - 2.0 * (a.conj() * b).re - b.norm_sqr();
                        AffineNode { f: a, p: a + b, q: C64::new(0.0, 0.0), om_f: om, om_p }
                    }
                }
            }
            BidiskSymbol::Diagonal => {
                let tr = cusp(z1);
                let om = tr.one_minus_abs_sq();
                AffineNode { f: tr.chi, p: tr.chi, q: C64::new(0.0, 0.0), om_f: om, om_p: om }
            }
            BidiskSymbol::Scaled { r } => AffineNode {
                f: z1.value() * *r,
                p: C64::new(0.0, 0.0),
                q: C64::new(*r, 0.0),
                om_f: (1.0 - r) * (1.0 + r) + r * r * (1.0 - z1.value().norm_sqr()),
                om_p: 1.0,
            },
        }
    }

    /// `Φ(z₁, z₂)`.
    pub fn eval(&self, z1: &UnitDiskPoint, z2: &UnitDiskPoint) -> BidiskPoint {
        let a = self.affine_at_point(z1);
        BidiskPoint { w1: a.f, w2: a.p + a.q * z2.value() }
    }

    /// True when the first coordinate and the constant part of the second coincide,
    /// which lets assembly merge columns sharing `α₁ + α₂`.
    pub fn f_equals_p(&self) -> bool {
        match self {
            BidiskSymbol::Paper(p) => p.g_kind() == crate::maps::GKind::IdentityInZ2,
            BidiskSymbol::Diagonal => true,
            BidiskSymbol::Scaled { .. } => false,
        }
    }

    /// False for symbols whose composition operator is not Hilbert–Schmidt.
    pub fn is_hilbert_schmidt(&self) -> bool {
        match self {
            BidiskSymbol::Scaled { r } => r.abs() < 1.0,
            _ => true,
        }
    }

    /// Parameters of the paper symbol, if any.
    pub fn params(&self) -> Option<&SymbolParams> {
        match self {
            BidiskSymbol::Paper(p) => Some(p),
            _ => None,
        }
    }
}

/// Symbol selector used on the command line: `paper`, `diagonal`, `one-dim`, `scaled:r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolChoice {
    /// The perturbed symbol.
    Paper,
    /// The diagonal map.
    Diagonal,
    /// The cusp map on `H²(𝔻)`.
    OneDim,
    /// `(r z₁, r z₂)`.
    Scaled(f64),
}

impl FromStr for SymbolChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Self::Paper),
            "diagonal" => Ok(Self::Diagonal),
            "one-dim" | "one_dim" => Ok(Self::OneDim),
            _ => {
                let r = s
                    .strip_prefix("scaled:")
                    .ok_or_else(|| Error::Config(format!("unknown symbol '{s}'")))?
                    .parse::<f64>()
                    .map_err(|e| Error::Config(format!("bad scale in '{s}': {e}")))?;
                if !(r.is_finite() && r > 0.0 && r <= 1.0) {
                    return Err(Error::Config(format!("scale {r} must lie in (0, 1]")));
                }
                Ok(Self::Scaled(r))
            }
        }
    }
}

impl fmt::Display for SymbolChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Paper => f.write_str("paper"),
            Self::Diagonal => f.write_str("diagonal"),
            Self::OneDim => f.write_str("one-dim"),
            Self::Scaled(r) => write!(f, "scaled:{r}"),
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut b = 1.0f64;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b.round()
}
