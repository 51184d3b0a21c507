//! Singular values, approximation-number intervals, decay fits, `β` proxies,
//! the three-region splitting and the one-variable contrast.

mod fit;
mod one_dim;
mod split;

pub(crate) use fit::least_squares;
pub use fit::{beta_estimate, fit_decay, BetaReport, DecayFit, FitPoint, NOISE_FACTOR};
pub use one_dim::{one_dim_contrast, one_dim_cusp, one_dim_shrunk, OneDimContrast, ONE_DIM_DEGREE};
pub use split::{
    quadratic_form, split_gram, split_gram_on, split_samples, t3_profile, Region, SplitGram, SplitSpec, T3Point,
};

use crate::error::{Error, Result};
use crate::hardy::OperatorMatrix;
use crate::maps::C64;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Descending singular values with the truncation uncertainty of the operator they come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularSpectrum {
    values: Vec<f64>,
    tail_bound: f64,
    tail_profile: Vec<f64>,
    floor: f64,
}

/// Closed interval `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    /// Lower endpoint.
    pub lower: f64,
    /// Upper endpoint.
    pub upper: f64,
}

impl SingularSpectrum {
    /// Sorts `values` descending; `tail_bound` bounds the norm of what was discarded.
    pub fn new(mut values: Vec<f64>, tail_bound: f64) -> Result<Self> {
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidInput("singular values must be finite and non-negative".into()));
        }
        if !(tail_bound >= 0.0) {
            return Err(Error::InvalidInput(format!("tail bound {tail_bound} must be non-negative")));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values, tail_bound, tail_profile: vec![tail_bound], floor: 0.0 })
    }

    /// Replaces the tail profile: entry `r` bounds `a_{r+1}` of the discarded part.
    pub fn with_tail_profile(mut self, profile: Vec<f64>) -> Self {
        if !profile.is_empty() {
            self.tail_bound = profile[0];
            self.tail_profile = profile;
        }
        self
    }

    /// Adds an absolute rounding floor to every upper endpoint.
    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor.max(0.0);
        self
    }

    /// Values `s₁ ≥ s₂ ≥ …`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when empty.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Norm bound on the discarded part.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Rounding floor of the decomposition.
    pub fn floor(&self) -> f64 {
        self.floor
    }

    /// Tail profile.
    pub fn tail_profile(&self) -> &[f64] {
        &self.tail_profile
    }

    /// `s_n`, one-indexed.
    pub fn value(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.values.len() {
            return Err(Error::Index { index: n, len: self.values.len() });
        }
        Ok(self.values[n - 1])
    }
}

/// `a_n ∈ [s_n, min_r √(s_{n−r}² + t_r²) + floor]`, where `t_r` bounds `a_{r+1}` of the
/// discarded part. The kept and discarded parts act on orthogonal subspaces, so their
/// squared singular values add; the upper endpoint never exceeds `s_n + tail`.
pub fn approximation_numbers(spec: &SingularSpectrum, n: usize) -> Result<Interval> {
    let lower = spec.value(n)?;
    let prof = &spec.tail_profile;
    let last = *prof.last().unwrap_or(&spec.tail_bound);
    let upper = (0..n)
        .map(|r| spec.values[n - 1 - r].hypot(prof.get(r).copied().unwrap_or(last)))
        .fold(f64::INFINITY, f64::min);
    Ok(Interval { lower, upper: upper + spec.floor })
}

/// Singular values of a dense matrix, descending: QR first when rectangular, then SVD.
pub fn singular_values_dense(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Ok(Vec::new());
    }
    let square = if r > c {
        m.clone().qr().r()
    } else if r < c {
        m.adjoint().qr().r()
    } else {
        m.clone()
    };
    let svd = square
        .try_svd(false, false, f64::EPSILON, 0)
        .ok_or_else(|| Error::Computation("SVD did not converge".into()))?;
    let mut v: Vec<f64> = svd.singular_values.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// Singular values of `C_Φ P_D` from the range factor, padded with zeros to `(D + 1)²`,
/// with the matrix's tail profile and a rounding floor `ε s₁ √n`.
pub fn singular_values(matrix: &OperatorMatrix) -> Result<SingularSpectrum> {
    let x = matrix.range_factor();
    let mut v = singular_values_dense(x)?;
    v.resize(x.ncols(), 0.0);
    let floor = f64::EPSILON * v.first().copied().unwrap_or(0.0) * (x.ncols() as f64).sqrt();
    let tail = matrix.tail_hs();
    let spec = SingularSpectrum::new(v, if tail.is_finite() { tail } else { f64::INFINITY })?;
    Ok(spec.with_tail_profile(matrix.tail_profile().to_vec()).with_floor(floor))
}
