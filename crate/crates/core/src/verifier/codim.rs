//! The count `Σ_{l<n} Σ_{j ≤ N_n} m_j` of vanishing conditions and its growth against `n²`.

use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::maps::SIGMA;
use crate::mp::{to_f64, Ctx};
use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

const MP_BITS: usize = 256;
const SNAP: f64 = 1e-9;
const CONVERGENCE: f64 = 0.05;
const CONVERGENCE_N: usize = 10_000;

/// Floor that treats values within `1e−9` (relative) of an integer as that integer, so
/// that exact rational powers such as `64·(7/8)²` are not rounded down.
fn snapped_floor(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() <= SNAP * r.abs().max(1.0) {
        r as u64
    } else {
        x.floor() as u64
    }
}

/// `N_n = [log 2n / (θ log 1/σ)] + 1`.
pub fn n_n(n: usize, theta: f64) -> u64 {
    snapped_floor((2.0 * n as f64).ln() / (theta * (1.0 / SIGMA).ln())) + 1
}

/// `m_j = [n σ^{jθ}] + 1`.
pub fn m_j(n: usize, j: u64, theta: f64) -> u64 {
    snapped_floor(n as f64 * (j as f64 * theta * SIGMA.ln()).exp()) + 1
}

/// `n Σ_{j=1}^{N_n} m_j`.
pub fn codim_count(n: usize, theta: f64) -> u128 {
    let s: u128 = (1..=n_n(n, theta)).map(|j| m_j(n, j, theta) as u128).sum();
    n as u128 * s
}

/// `σ^θ/(1 − σ^θ)`, the limit of `count/n²`.
pub fn limit_ratio(theta: f64) -> f64 {
    let s = SIGMA.powf(theta);
    s / (1.0 - s)
}

/// One row of the count table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodimRow {
    /// `n`.
    pub n: usize,
    /// `N_n`.
    pub n_n: u64,
    /// The count.
    pub count: u128,
    /// `count / n²`.
    pub ratio: f64,
}

/// Multiprecision floor; values within `2^{−(p−32)}` of an integer count as that integer.
fn mp_floor(x: &BigFloat, c: &Ctx) -> u64 {
    let approx = to_f64(x).round();
    let diff = to_f64(&c.sub(x, &c.real(approx)));
    let eps = (-((c.bits() - 32) as f64)).exp2() * approx.abs().max(1.0);
    if diff.abs() <= eps || diff > 0.0 {
        approx as u64
    } else {
        approx as u64 - 1
    }
}

fn mp_n_n(n: usize, theta: f64, c: &Ctx) -> u64 {
    let num = c.ln(&c.real(2.0 * n as f64));
    let den = c.mul(&c.real(theta), &c.ln(&c.div(&c.real(8.0), &c.real(7.0))));
    mp_floor(&c.div(&num, &den), c) + 1
}

fn mp_m_j(n: usize, j: u64, theta: f64, c: &Ctx) -> u64 {
    let sigma = c.div(&c.real(7.0), &c.real(8.0));
    let p = c.pow(&sigma, &c.mul(&c.real(j as f64), &c.real(theta)));
    mp_floor(&c.mul(&c.real(n as f64), &p), c) + 1
}

/// Count suite: exact counts for each `n`, the constant `q = max count/n²`, agreement of
/// `N_n` and `m_j` with 256-bit evaluation, and convergence to the series limit within 5%
/// once `n ≥ 10⁴`.
pub fn check_codim_count(n_list: &[usize], theta: f64) -> Result<VerificationReport> {
    if n_list.is_empty() {
        return Err(Error::Config("codimension count needs at least one n".into()));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Config(format!("theta = {theta} must lie in (0, 1)")));
    }
    let mut b = ReportBuilder::new("codim_count", super::DEFAULT_SEED);
    let c = Ctx::new(MP_BITS);
    let limit = limit_ratio(theta);
    let mut q = 0.0f64;
    let mut largest: Option<CodimRow> = None;
    for &n in n_list {
        if n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        let nn = n_n(n, theta);
        let nn_mp = mp_n_n(n, theta, &c);
        if nn != nn_mp {
            b.violation("n_n_formula", nn as f64, nn_mp as f64, &[("n", n as f64)]);
        }
        for j in 1..=nn {
            let (a, e) = (m_j(n, j, theta), mp_m_j(n, j, theta, &c));
            if a != e {
                b.violation("m_j_formula", a as f64, e as f64, &[("n", n as f64), ("j", j as f64)]);
            }
        }
        let count = codim_count(n, theta);
        let ratio = count as f64 / (n as f64 * n as f64);
        q = q.max(ratio);
        b.constant(&format!("ratio_n{n}"), ratio);
        b.constant(&format!("n_n_{n}"), nn as f64);
        b.sample();
        if largest.is_none_or(|r| n > r.n) {
            largest = Some(CodimRow { n, n_n: nn, count, ratio });
        }
    }
    if !q.is_finite() {
        b.violation("bounded_ratio", q, f64::MAX, &[]);
    }
    let top = largest.expect("non-empty list");
    let rel = (top.ratio - limit).abs() / limit;
    if top.n >= CONVERGENCE_N {
        b.check_le("convergence_to_limit", rel, CONVERGENCE, &[("n", top.n as f64)]);
    }
    b.constant("q", q);
    b.constant("limit", limit);
    b.constant("largest_n", top.n as f64);
    b.constant("relative_error_at_largest_n", rel);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_100_gives_80() {
        assert_eq!(n_n(100, 0.5), 80);
    }

    #[test]
    fn exact_rational_values_are_not_rounded_down() {
        assert_eq!(m_j(64, 2, 0.5), 57);
        assert_eq!(m_j(512, 6, 0.5), 344);
        let c = Ctx::new(MP_BITS);
        assert_eq!(mp_m_j(64, 2, 0.5, &c), 57);
        assert_eq!(mp_m_j(512, 6, 0.5, &c), 344);
    }

    #[test]
    fn single_l_sum_at_n_one() {
        let s: u128 = (1..=n_n(1, 0.5)).map(|j| m_j(1, j, 0.5) as u128).sum();
        assert_eq!(codim_count(1, 0.5), s);
    }

    #[test]
    fn limit_value() {
        assert!((limit_ratio(0.5) - 14.4834).abs() < 1e-3);
    }
}
