//! Splitting of the pullback measure into the regions `max|w| ≤ λ`, `λ < max|w| < r_n`
//! and `max|w| ≥ r_n`, with exact Gram partitions on shared nodes.

use crate::error::{Error, Result};
use crate::hardy::{basis, graded_samples, BidiskSymbol, CircleRule, PullbackSamples, TruncationSpec};
use crate::maps::{SymbolParams, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

const SPLIT_ORDER: usize = 8;

/// `λ = 1 − σ^{j₀}/(2K̂)` and `r_n = 1 − 1/n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    n: usize,
    lambda: f64,
    r_n: f64,
}

/// Membership of an image point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// `max|w| ≤ λ`.
    Inner,
    /// `λ < max|w| < r_n`.
    Middle,
    /// `max|w| ≥ r_n`.
    Outer,
}

impl SplitSpec {
    /// From frozen parameters.
    pub fn new(n: usize, params: &SymbolParams) -> Result<Self> {
        let lambda = 1.0 - params.sigma().powi(params.j0() as i32) / (2.0 * params.k_hat());
        Self::with_lambda(n, lambda)
    }

    /// With an explicit `λ`; requires `0 < λ < r_n < 1`.
    pub fn with_lambda(n: usize, lambda: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("split needs n >= 2, got {n}")));
        }
        let r_n = 1.0 - 1.0 / n as f64;
        if !(lambda > 0.0 && lambda < r_n) {
            return Err(Error::Config(format!("lambda = {lambda} must lie in (0, r_n = {r_n})")));
        }
        Ok(Self { n, lambda, r_n })
    }

    /// `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `λ`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `r_n`.
    pub fn r_n(&self) -> f64 {
        self.r_n
    }

    /// Region of a point given `1 − max|w|`.
    pub fn region(&self, one_minus_max: f64) -> Region {
        if one_minus_max <= 1.0 / self.n as f64 {
            Region::Outer
        } else if one_minus_max >= 1.0 - self.lambda {
            Region::Inner
        } else {
            Region::Middle
        }
    }
}

/// Gram matrices `G[β, α] = ∫ w^α conj(w^β) dμ` of the full measure and of its three parts.
#[derive(Clone, Debug)]
pub struct SplitGram {
    /// Whole measure.
    pub full: DMatrix<C64>,
    /// Inner, middle, outer parts.
    pub parts: [DMatrix<C64>; 3],
    /// Masses of the three parts.
    pub masses: [f64; 3],
    /// Number of samples.
    pub samples: usize,
}

impl SplitGram {
    /// Largest entrywise `|G₁ + G₂ + G₃ − G|`.
    pub fn partition_defect(&self) -> f64 {
        let sum = &self.parts[0] + &self.parts[1] + &self.parts[2];
        (sum - &self.full).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

struct GramAcc {
    re: Vec<Neumaier>,
    im: Vec<Neumaier>,
    dim: usize,
}

impl GramAcc {
    fn new(dim: usize) -> Self {
        Self { re: vec![Neumaier::default(); dim * dim], im: vec![Neumaier::default(); dim * dim], dim }
    }

    fn add(&mut self, w: f64, v: &[C64]) {
        for b in 0..self.dim {
            let cb = v[b].conj() * w;
            for a in 0..self.dim {
                let t = v[a] * cb;
                self.re[b * self.dim + a].add(t.re);
                self.im[b * self.dim + a].add(t.im);
            }
        }
    }

    fn finish(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim, self.dim, |b, a| {
            C64::new(self.re[b * self.dim + a].value(), self.im[b * self.dim + a].value())
        })
    }
}

/// Monomials `w^α` in basis order.
fn monomials(w1: C64, w2: C64, d: usize) -> Vec<C64> {
    let mut p1 = vec![C64::new(1.0, 0.0); d + 1];
    let mut p2 = vec![C64::new(1.0, 0.0); d + 1];
    for i in 1..=d {
        p1[i] = p1[i - 1] * w1;
        p2[i] = p2[i - 1] * w2;
    }
    basis(d).iter().map(|a| p1[a.alpha1] * p2[a.alpha2]).collect()
}

fn one_minus_max(s: &PullbackSamples, i: usize) -> f64 {
    let v = s.values[i];
    let (g1, g2) = s.gaps[i];
    (g1 / (1.0 + v.w1.norm())).min(g2 / (1.0 + v.w2.norm()))
}

/// Samples used by the splitting: deep graded rule in `t₁`, `4(D + 1)` nodes in `t₂`.
pub fn split_samples(symbol: &BidiskSymbol, spec: &TruncationSpec) -> Result<PullbackSamples> {
    graded_samples(symbol, &CircleRule::deep(SPLIT_ORDER), 4 * (spec.max_degree() + 1))
}

/// Gram partition on given samples.
pub fn split_gram_on(samples: &PullbackSamples, d: usize, split: &SplitSpec) -> SplitGram {
    let dim = (d + 1) * (d + 1);
    let mut full = GramAcc::new(dim);
    let mut parts = [GramAcc::new(dim), GramAcc::new(dim), GramAcc::new(dim)];
    let mut masses = [Neumaier::default(); 3];
    for i in 0..samples.len() {
        let v = monomials(samples.values[i].w1, samples.values[i].w2, d);
        let w = samples.weights[i];
        let r = split.region(one_minus_max(samples, i)) as usize;
        full.add(w, &v);
        parts[r].add(w, &v);
        masses[r].add(w);
    }
    SplitGram {
        full: full.finish(),
        parts: [parts[0].finish(), parts[1].finish(), parts[2].finish()],
        masses: [masses[0].value(), masses[1].value(), masses[2].value()],
        samples: samples.len(),
    }
}

/// Gram partition for `symbol` at degree `D`.
pub fn split_gram(symbol: &BidiskSymbol, spec: &TruncationSpec, split: &SplitSpec) -> Result<SplitGram> {
    let s = split_samples(symbol, spec)?;
    Ok(split_gram_on(&s, spec.max_degree(), split))
}

/// `c* G c`.
pub fn quadratic_form(g: &DMatrix<C64>, c: &[C64]) -> f64 {
    let v = nalgebra::DVector::from_column_slice(c);
    (v.adjoint() * g * &v)[(0, 0)].re
}

/// Outer-region data at one `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct T3Point {
    /// Split parameter.
    pub n: usize,
    /// Mass of the outer region.
    pub mass: f64,
    /// `‖G₃‖^{1/2}`, the norm of the truncated outer embedding.
    pub norm: f64,
    /// `(tr G₃)^{1/2}`, its Hilbert–Schmidt norm.
    pub hs: f64,
}

/// Outer-region norms for each `n`, on shared samples.
pub fn t3_profile(samples: &PullbackSamples, d: usize, ns: &[usize]) -> Result<Vec<T3Point>> {
    let dim = (d + 1) * (d + 1);
    let pre: Vec<(f64, usize)> = (0..samples.len()).map(|i| (one_minus_max(samples, i), i)).collect();
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        if n < 2 {
            return Err(Error::Config(format!("split needs n >= 2, got {n}")));
        }
        let h = 1.0 / n as f64;
        let mut acc = GramAcc::new(dim);
        let mut mass = Neumaier::default();
        for &(u, i) in &pre {
            if u <= h {
                let v = monomials(samples.values[i].w1, samples.values[i].w2, d);
                acc.add(samples.weights[i], &v);
                mass.add(samples.weights[i]);
            }
        }
        let g = acc.finish();
        let trace: f64 = (0..dim).map(|i| g[(i, i)].re).sum();
        let top = g.symmetric_eigenvalues().iter().copied().fold(0.0, f64::max);
        out.push(T3Point { n, mass: mass.value(), norm: top.max(0.0).sqrt(), hs: trace.max(0.0).sqrt() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regions_are_half_open() {
        let s = SplitSpec::with_lambda(100, 0.9).unwrap();
        assert_eq!(s.region(0.01), Region::Outer);
        assert_eq!(s.region(0.1), Region::Inner);
        assert_eq!(s.region(0.05), Region::Middle);
        assert!(SplitSpec::with_lambda(5, 0.9).is_err());
    }

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut a = Neumaier::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            a.add(x);
        }
        assert_eq!(a.value(), 2.0);
    }
}
