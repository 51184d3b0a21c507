//! The one-variable operator `C_χ` on `H²(𝔻)` and its shrunken counterpart `C_{χ(r·)}`.

use super::{singular_values_dense, SingularSpectrum};
use crate::error::{Error, Result};
use crate::hardy::quadrature::ASSEMBLY_DEPTH;
use crate::hardy::{CircleRule, TruncationSpec};
use crate::maps::{cusp, C64};
use crate::mp::{cusp_links, hermitian_top_eigenvalues, to_f64, Ctx, MpComplex};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Degree of the one-variable truncation.
pub const ONE_DIM_DEGREE: usize = 512;
const SHRUNK_NODES: usize = 384;
const SHRUNK_COLUMNS: usize = 168;
const SHRUNK_BITS: usize = 320;
const SHRUNK_VALUES: usize = 64;

/// Spectra of the cusp operator and of the shrunken one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneDimContrast {
    /// `C_χ` at the requested degree.
    pub cusp: SingularSpectrum,
    /// `C_{χ(r·)}`.
    pub shrunk: SingularSpectrum,
    /// Shrinking radius.
    pub radius: f64,
}

impl OneDimContrast {
    /// Rows `(n, a_n(C_χ)^{1/n}, a_n(C_{χ(r·)})^{1/n})` from lower endpoints.
    pub fn root_trend(&self, ns: &[usize]) -> Vec<(usize, f64, f64)> {
        let root = |s: &SingularSpectrum, n: usize| s.value(n).map_or(f64::NAN, |v| v.powf(1.0 / n as f64));
        ns.iter().map(|&n| (n, root(&self.cusp, n), root(&self.shrunk, n))).collect()
    }
}

/// Spectrum of `C_χ` on polynomials of degree `≤ D`, from the range factor of `√w χ^α`
/// on a graded rule of panel order `max(16, Q/128)`.
pub fn one_dim_cusp(spec: &TruncationSpec) -> Result<SingularSpectrum> {
    let d = spec.max_degree();
    let rule = CircleRule::graded((spec.quad_points() / 128).max(16), ASSEMBLY_DEPTH);
    let traces: Vec<_> = rule.points().map(|p| cusp(&p)).collect();
    let x = DMatrix::from_fn(rule.len(), d + 1, |i, a| traces[i].chi.powu(a as u32) * rule.weights[i].sqrt());
    let tail2 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .zip(&traces)
        .map(|((_, w), t)| w * (1.0 - t.one_minus_abs_sq()).powi(d as i32 + 1) / t.one_minus_abs_sq())
        .sum::<f64>();
    if !tail2.is_finite() {
        return Err(Error::Computation("one-variable tail is not finite".into()));
    }
    let mut v = singular_values_dense(&x)?;
    v.resize(d + 1, 0.0);
    let floor = f64::EPSILON * v[0] * ((d + 1) as f64).sqrt();
    Ok(SingularSpectrum::new(v, tail2.sqrt())?.with_floor(floor))
}

/// Top singular values of `C_{χ(r·)}` in 320-bit arithmetic: Gram matrix of `χ(r e^{it})^a`,
/// `a < 168`, on 384 equispaced nodes, then Sturm bisection.
pub fn one_dim_shrunk(r: f64) -> Result<SingularSpectrum> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidInput(format!("shrinking radius {r} must lie in (0, 1)")));
    }
    let c = Ctx::new(SHRUNK_BITS);
    let n = SHRUNK_NODES;
    let half = n / 2;
    let rr = c.real(r);
    let two_pi = c.mul(&c.real(2.0), &c.pi());
    let mut pows: Vec<Vec<MpComplex>> = Vec::with_capacity(half + 1);
    let mut maxmod = 0.0f64;
    for j in 0..=half {
        let t = c.div(&c.mul(&two_pi, &c.real(j as f64)), &c.real(n as f64));
        let z = MpComplex::from_polar(&rr, &t, &c);
        let zm1 = z.sub(&MpComplex::from_c64(C64::new(1.0, 0.0), &c), &c);
        let chi = cusp_links(&z, &zm1, &c)[4].clone();
        maxmod = maxmod.max(chi.to_c64().norm());
        let mut row = Vec::with_capacity(SHRUNK_COLUMNS);
        row.push(MpComplex::from_c64(C64::new(1.0, 0.0), &c));
        for a in 1..SHRUNK_COLUMNS {
            let next = row[a - 1].mul(&chi, &c);
            row.push(next);
        }
        pows.push(row);
    }
    let inv_n = c.div(&c.real(1.0), &c.real(n as f64));
    let two = c.real(2.0);
    let mut gram = vec![vec![MpComplex::zero(&c); SHRUNK_COLUMNS]; SHRUNK_COLUMNS];
    for a in 0..SHRUNK_COLUMNS {
        for b in 0..=a {
            let mut s = c.real(0.0);
            for (j, row) in pows.iter().enumerate() {
                let u = &row[a];
                let v = &row[b];
                let mut term = c.add(&c.mul(&u.re, &v.re), &c.mul(&u.im, &v.im));
                if j != 0 && j != half {
                    term = c.mul(&term, &two);
                }
                s = c.add(&s, &term);
            }
            gram[a][b] = MpComplex::new(c.mul(&s, &inv_n), c.real(0.0));
        }
    }
    let ev = hermitian_top_eigenvalues(gram, SHRUNK_VALUES, &c);
    let values: Vec<f64> = ev.iter().map(|e| to_f64(e).max(0.0).sqrt()).collect();
    let tail = maxmod.powi(SHRUNK_COLUMNS as i32) / (1.0 - maxmod * maxmod).sqrt();
    SingularSpectrum::new(values, tail)
}

/// Both one-variable spectra; the shrunken one uses `r = 1/2`.
pub fn one_dim_contrast(spec: &TruncationSpec) -> Result<OneDimContrast> {
    Ok(OneDimContrast { cusp: one_dim_cusp(spec)?, shrunk: one_dim_shrunk(0.5)?, radius: 0.5 })
}
