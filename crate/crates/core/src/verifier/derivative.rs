//! Bounds on `h_k(z) = (∂₂^k f)(z, z)`: the Cauchy estimate and its Schwarz-lemma
//! refinement when `h_k` vanishes to order `n` at a point.

use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::hardy::{Poly1, Poly2};
use crate::maps::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const REL_TOL: f64 = 1e-12;
const MAX_DEGREE: usize = 10;
const MAX_K: usize = 6;
const SCHWARZ_N: usize = 8;
const SCHWARZ_K: usize = 4;
const RHO: f64 = 0.5;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `k! 2^{k+1} / (1 − |b|)^{k+1}`.
pub(crate) fn cauchy_bound(k: usize, b: C64) -> f64 {
    factorial(k) * 2f64.powi(k as i32 + 1) / (1.0 - b.norm()).powi(k as i32 + 1)
}

/// `ρ^n k! 4^{k+1} / (1 − |a|)^{k+1}`.
pub(crate) fn schwarz_bound(n: usize, k: usize, a: C64, rho: f64) -> f64 {
    rho.powi(n as i32) * factorial(k) * 4f64.powi(k as i32 + 1) / (1.0 - a.norm()).powi(k as i32 + 1)
}

fn random_point(rng: &mut ChaCha8Rng, depth: f64) -> C64 {
    let u: f64 = rng.random_range(0.1..depth);
    C64::from_polar(1.0 - (-u).exp2(), rng.random_range(-PI..PI))
}

/// `trial_count` random unit-norm `f` of degree `≤ 10`, `k ≤ 6` and interior `b`.
pub fn check_derivative_bound(trial_count: usize, seed: u64) -> Result<VerificationReport> {
    if trial_count == 0 {
        return Err(Error::Config("derivative suite needs a positive trial count".into()));
    }
    let mut b = ReportBuilder::new("derivative_bound", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for trial in 0..trial_count {
        let deg = rng.random_range(0..=MAX_DEGREE);
        let k = rng.random_range(0..=MAX_K);
        let f = Poly2::random_unit(deg, &mut rng);
        let pt = random_point(&mut rng, 20.0);
        let value = f.diagonal_derivative(k).eval(pt).norm();
        let bound = cauchy_bound(k, pt) * f.norm();
        worst = worst.max(value / bound);
        b.check_le(
            "cauchy_estimate",
            value,
            bound * (1.0 + REL_TOL),
            &[("trial", trial as f64), ("degree", deg as f64), ("k", k as f64), ("b_re", pt.re), ("b_im", pt.im)],
        );
        b.sample();
    }
    b.constant("worst_ratio", worst);
    Ok(b.finish())
}

/// `f = (z₁ − a)^n q(z₁) z₂^k p(z₂)` normalized to unit norm, so that `h_k` vanishes to
/// order `n` at `a`.
pub(crate) fn vanishing_instance<R: Rng>(a: C64, n: usize, k: usize, rng: &mut R) -> Poly2 {
    let q = Poly1::random(rng.random_range(0..=3), rng);
    let p = Poly1::random(rng.random_range(0..=3), rng);
    let first = Poly1::root_power(a, n).mul(&q);
    let mut zk = vec![C64::new(0.0, 0.0); k + 1];
    zk[k] = C64::new(1.0, 0.0);
    let second = Poly1::new(zk).mul(&p);
    Poly2::separable(&first, &second).normalized()
}

/// `trial_count` random instances with `n ≤ 8`, `k ≤ 4`, `ρ = 1/2` and
/// `|b − a| ≤ (ρ/2)(1 − |a|)`.
pub fn check_schwarz_bound(trial_count: usize, seed: u64) -> Result<VerificationReport> {
    if trial_count == 0 {
        return Err(Error::Config("Schwarz suite needs a positive trial count".into()));
    }
    let mut b = ReportBuilder::new("schwarz_bound", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut worst = 0.0f64;
    for trial in 0..trial_count {
        let n = rng.random_range(0..=SCHWARZ_N);
        let k = rng.random_range(0..=SCHWARZ_K);
        let a = random_point(&mut rng, 10.0);
        let f = vanishing_instance(a, n, k, &mut rng);
        let step = C64::from_polar(rng.random_range(0.0..=1.0), rng.random_range(-PI..PI));
        let pt = a + step * (RHO / 2.0) * (1.0 - a.norm());
        let value = f.diagonal_derivative(k).eval(pt).norm();
        let bound = schwarz_bound(n, k, a, RHO) * f.norm();
        worst = worst.max(value / bound);
        b.check_le(
            "schwarz_estimate",
            value,
            bound * (1.0 + REL_TOL),
            &[
                ("trial", trial as f64),
                ("n", n as f64),
                ("k", k as f64),
                ("a_re", a.re),
                ("a_im", a.im),
                ("b_re", pt.re),
                ("b_im", pt.im),
            ],
        );
        b.sample();
    }
    b.constant("worst_ratio", worst);
    b.constant("rho", RHO);
    Ok(b.finish())
}
