//! Multiprecision complex arithmetic on top of `astro-float`.
//!
//! Provides the cusp chain in `p`-bit arithmetic and the top eigenvalues of a
//! Hermitian matrix (Householder tridiagonalization followed by Sturm
//! bisection). Used where double precision cannot resolve the quantity at all:
//! the extended evaluation mode and singular values far below `1e−16`.

use crate::maps::C64;
use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use std::cell::RefCell;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision and the constant cache.
pub struct Ctx {
    p: usize,
    cc: RefCell<Consts>,
}

impl Ctx {
    /// Context with `bits` of mantissa.
    pub fn new(bits: usize) -> Self {
        Self { p: bits, cc: RefCell::new(Consts::new().expect("astro-float constant cache")) }
    }

    /// Mantissa length in bits.
    pub fn bits(&self) -> usize {
        self.p
    }

    /// A real number from a double.
    pub fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    /// π at working precision.
    pub fn pi(&self) -> BigFloat {
        self.cc.borrow_mut().pi(self.p, RM)
    }

    /// `a + b`.
    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }
    /// `a − b`.
    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }
    /// `a · b`.
    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }
    /// `a / b`.
    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }
    /// Square root.
    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }
    /// Natural logarithm.
    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc.borrow_mut())
    }
    /// Sine.
    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc.borrow_mut())
    }
    /// Cosine.
    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc.borrow_mut())
    }
    /// Arctangent.
    pub fn atan(&self, a: &BigFloat) -> BigFloat {
        a.atan(self.p, RM, &mut self.cc.borrow_mut())
    }
    /// `x^y` for real `y`.
    pub fn pow(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.pow(y, self.p, RM, &mut self.cc.borrow_mut())
    }

    /// Two-argument arctangent with range `(−π, π]`.
    pub fn atan2(&self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let pi = self.pi();
        if x.is_zero() {
            if y.is_zero() {
                return self.real(0.0);
            }
            let h = self.div(&pi, &self.real(2.0));
            return if y.is_negative() { h.neg() } else { h };
        }
        let a = self.atan(&self.div(y, x));
        if x.is_positive() {
            a
        } else if y.is_negative() {
            self.sub(&a, &pi)
        } else {
            self.add(&a, &pi)
        }
    }
}

/// Rounds a multiprecision real to the nearest double.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    let (words, _, sign, exp, _) = x.as_raw_parts().expect("finite number");
    let top = *words.last().expect("non-empty mantissa") as f64;
    let next = if words.len() > 1 { words[words.len() - 2] as f64 * (-64.0f64).exp2() } else { 0.0 };
    let e = exp as i64 - 64;
    let mut v = top + next;
    let mut e = e;
    while e > 0 {
        let s = e.min(1000);
        v *= (s as f64).exp2();
        e -= s;
    }
    while e < 0 {
        let s = (-e).min(1000);
        v *= (-(s as f64)).exp2();
        e += s;
    }
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// A complex number with multiprecision parts.
#[derive(Clone, Debug)]
pub struct MpComplex {
    /// Real part.
    pub re: BigFloat,
    /// Imaginary part.
    pub im: BigFloat,
}

impl MpComplex {
    /// Exact conversion of a double-precision complex number.
    pub fn from_c64(z: C64, ctx: &Ctx) -> Self {
        Self { re: ctx.real(z.re), im: ctx.real(z.im) }
    }

    /// Complex number from parts.
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    /// Zero at working precision.
    pub fn zero(ctx: &Ctx) -> Self {
        Self { re: ctx.real(0.0), im: ctx.real(0.0) }
    }

    /// Rounded to double precision.
    pub fn to_c64(&self) -> C64 {
        C64::new(to_f64(&self.re), to_f64(&self.im))
    }

    /// Sum.
    pub fn add(&self, o: &Self, c: &Ctx) -> Self {
        Self { re: c.add(&self.re, &o.re), im: c.add(&self.im, &o.im) }
    }
    /// Difference.
    pub fn sub(&self, o: &Self, c: &Ctx) -> Self {
        Self { re: c.sub(&self.re, &o.re), im: c.sub(&self.im, &o.im) }
    }
    /// Product.
    pub fn mul(&self, o: &Self, c: &Ctx) -> Self {
        let re = c.sub(&c.mul(&self.re, &o.re), &c.mul(&self.im, &o.im));
        let im = c.add(&c.mul(&self.re, &o.im), &c.mul(&self.im, &o.re));
        Self { re, im }
    }
    /// `conj(self) · o`.
    pub fn conj_mul(&self, o: &Self, c: &Ctx) -> Self {
        let re = c.add(&c.mul(&self.re, &o.re), &c.mul(&self.im, &o.im));
        let im = c.sub(&c.mul(&self.re, &o.im), &c.mul(&self.im, &o.re));
        Self { re, im }
    }
    /// Product with a real scalar.
    pub fn scale(&self, s: &BigFloat, c: &Ctx) -> Self {
        Self { re: c.mul(&self.re, s), im: c.mul(&self.im, s) }
    }
    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }
    /// `|z|²`.
    pub fn norm_sqr(&self, c: &Ctx) -> BigFloat {
        c.add(&c.mul(&self.re, &self.re), &c.mul(&self.im, &self.im))
    }
    /// `|z|`.
    pub fn abs(&self, c: &Ctx) -> BigFloat {
        c.sqrt(&self.norm_sqr(c))
    }
    /// Reciprocal.
    pub fn inv(&self, c: &Ctx) -> Self {
        let n = self.norm_sqr(c);
        Self { re: c.div(&self.re, &n), im: c.div(&self.im, &n).neg() }
    }
    /// Quotient.
    pub fn div(&self, o: &Self, c: &Ctx) -> Self {
        self.mul(&o.inv(c), c)
    }

    /// Principal square root.
    pub fn sqrt(&self, c: &Ctx) -> Self {
        if self.re.is_zero() && self.im.is_zero() {
            return Self::zero(c);
        }
        let r = self.abs(c);
        let two = c.real(2.0);
        if !self.re.is_negative() {
            let u = c.sqrt(&c.div(&c.add(&r, &self.re), &two));
            let v = c.div(&self.im, &c.mul(&two, &u));
            Self { re: u, im: v }
        } else {
            let mut v = c.sqrt(&c.div(&c.sub(&r, &self.re), &two));
            if self.im.is_negative() {
                v = v.neg();
            }
            let u = c.div(&self.im, &c.mul(&two, &v));
            Self { re: u, im: v }
        }
    }

    /// Principal logarithm.
    pub fn ln(&self, c: &Ctx) -> Self {
        Self { re: c.ln(&self.abs(c)), im: c.atan2(&self.im, &self.re) }
    }

    /// `r e^{it}`.
    pub fn from_polar(r: &BigFloat, t: &BigFloat, c: &Ctx) -> Self {
        Self { re: c.mul(r, &c.cos(t)), im: c.mul(r, &c.sin(t)) }
    }
}

/// The chain `[χ₀, χ₁, χ₂, χ₃, χ]` at `z` with `zm1 = z − 1` supplied separately.
/// The caller handles `z = 1`.
pub fn cusp_links(z: &MpComplex, zm1: &MpComplex, c: &Ctx) -> [MpComplex; 5] {
    let one = MpComplex::from_c64(C64::new(1.0, 0.0), c);
    let i = MpComplex::from_c64(C64::new(0.0, 1.0), c);
    let den = i.mul(z, c).sub(&one, c);
    let chi0 = if den.re.is_zero() && den.im.is_zero() {
        i.clone()
    } else {
        let mut m = z.sub(&i, c).div(&den, c);
        if !m.im.is_positive() || m.im.is_zero() {
            m.im = c.real(0.0);
        }
        let s = m.sqrt(c);
        let close = to_f64(&zm1.norm_sqr(c)) <= 1.0;
        if close {
            let num = MpComplex::from_c64(C64::new(1.0, 1.0), c).mul(zm1, c);
            let d = den.mul(&one.sub(&i.mul(&s, c), c), c).mul(&s.add(&i, c), c);
            num.div(&d, c)
        } else {
            s.sub(&i, c).div(&one.sub(&i.mul(&s, c), c), c)
        }
    };
    let chi1 = chi0.ln(c);
    let k = c.div(&c.real(2.0), &c.pi());
    let chi2 = one.sub(&chi1.scale(&k, c), c);
    let chi3 = chi2.inv(c);
    let chi = one.sub(&chi3, c);
    [chi0, chi1, chi2, chi3, chi]
}

/// The `count` largest eigenvalues of a Hermitian matrix, descending.
///
/// `a` is row-major `n × n`; only the lower triangle is read.
pub fn hermitian_top_eigenvalues(a: Vec<Vec<MpComplex>>, count: usize, c: &Ctx) -> Vec<BigFloat> {
    let (d, e2) = tridiagonalize(a, c);
    let n = d.len();
    let count = count.min(n);
    let mut bound = c.real(0.0);
    for k in 0..n {
        let mut r = d[k].abs();
        if k > 0 {
            r = c.add(&r, &c.sqrt(&e2[k - 1]));
        }
        if k + 1 < n {
            r = c.add(&r, &c.sqrt(&e2[k]));
        }
        bound = bound.max(&r);
    }
    let floor = c.mul(&bound, &c.real((-((c.bits() - 16) as f64)).exp2()));
    (1..=count).map(|j| bisect_eigenvalue(&d, &e2, j, &bound, &floor, c)).collect()
}

fn tridiagonalize(mut a: Vec<Vec<MpComplex>>, c: &Ctx) -> (Vec<BigFloat>, Vec<BigFloat>) {
    let n = a.len();
    for i in 0..n {
        for j in (i + 1)..n {
            a[i][j] = a[j][i].conj();
        }
    }
    let mut e2 = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<MpComplex> = (0..m).map(|i| a[k + 1 + i][k].clone()).collect();
        let mut ss = c.real(0.0);
        for xi in &x {
            ss = c.add(&ss, &xi.norm_sqr(c));
        }
        let tail_zero = x[1..].iter().all(|v| v.re.is_zero() && v.im.is_zero());
        if tail_zero {
            e2.push(x[0].norm_sqr(c));
            continue;
        }
        let alpha = c.sqrt(&ss);
        let x0abs = x[0].abs(c);
        let phase = if x0abs.is_zero() {
            MpComplex::from_c64(C64::new(1.0, 0.0), c)
        } else {
            x[0].scale(&c.div(&c.real(1.0), &x0abs), c)
        };
        let mut v = x;
        v[0] = v[0].add(&phase.scale(&alpha, c), c);
        let mut vv = c.real(0.0);
        for vi in &v {
            vv = c.add(&vv, &vi.norm_sqr(c));
        }
        let tau = c.div(&c.real(2.0), &vv);
        let mut p = vec![MpComplex::zero(c); m];
        for i in 0..m {
            let mut s = MpComplex::zero(c);
            for j in 0..m {
                s = s.add(&a[k + 1 + i][k + 1 + j].mul(&v[j], c), c);
            }
            p[i] = s.scale(&tau, c);
        }
        let mut vp = MpComplex::zero(c);
        for i in 0..m {
            vp = vp.add(&v[i].conj_mul(&p[i], c), c);
        }
        let half = c.mul(&tau, &c.real(0.5));
        let kk = vp.scale(&half, c);
        let w: Vec<MpComplex> = (0..m).map(|i| p[i].sub(&kk.mul(&v[i], c), c)).collect();
        for i in 0..m {
            for j in 0..=i {
                let upd = v[i].mul(&w[j].conj(), c).add(&w[i].mul(&v[j].conj(), c), c);
                let val = a[k + 1 + i][k + 1 + j].sub(&upd, c);
                if i != j {
                    a[k + 1 + j][k + 1 + i] = val.conj();
                }
                a[k + 1 + i][k + 1 + j] = val;
            }
        }
        e2.push(ss);
    }
    if n >= 2 {
        e2.push(a[n - 1][n - 2].norm_sqr(c));
    }
    let d = (0..n).map(|k| a[k][k].re.clone()).collect();
    (d, e2)
}

fn count_below(d: &[BigFloat], e2: &[BigFloat], x: &BigFloat, c: &Ctx) -> usize {
    let tiny = c.real(1e-300);
    let tiny = c.mul(&tiny, &tiny);
    let mut count = 0;
    let mut q = c.sub(&d[0], x);
    for k in 0..d.len() {
        if k > 0 {
            q = c.sub(&c.sub(&d[k], x), &c.div(&e2[k - 1], &q));
        }
        if q.is_zero() {
            q = tiny.neg();
        }
        if q.is_negative() {
            count += 1;
        }
    }
    count
}

fn bisect_eigenvalue(d: &[BigFloat], e2: &[BigFloat], j: usize, bound: &BigFloat, floor: &BigFloat, c: &Ctx) -> BigFloat {
    let n = d.len();
    let mut lo = bound.neg();
    let mut hi = c.add(bound, floor);
    let rel = c.real(1e-18);
    let two = c.real(2.0);
    for _ in 0..4 * c.bits() {
        let width = c.sub(&hi, &lo);
        let scale = lo.abs().max(&hi.abs());
        if width.cmp(floor).is_some_and(|s| s <= 0) || width.cmp(&c.mul(&rel, &scale)).is_some_and(|s| s <= 0) {
            break;
        }
        let mid = if lo.is_positive() && !lo.is_zero() {
            c.sqrt(&c.mul(&lo, &hi))
        } else {
            c.div(&c.add(&lo, &hi), &two)
        };
        if n - count_below(d, e2, &mid, c) >= j {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    c.div(&c.add(&lo, &hi), &two)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_round_trips() {
        let c = Ctx::new(256);
        for x in [1.0, -3.5, 1e-200, 7.25e150, std::f64::consts::PI] {
            assert_eq!(to_f64(&c.real(x)), x);
        }
    }

    #[test]
    fn sqrt_and_ln_match_double_precision() {
        let c = Ctx::new(200);
        for z in [C64::new(-1.0, 0.0), C64::new(0.3, -0.7), C64::new(-2.0, 1e-3), C64::new(0.0, 2.0)] {
            let m = MpComplex::from_c64(z, &c);
            assert!((m.sqrt(&c).to_c64() - z.sqrt()).norm() < 1e-15);
            assert!((m.ln(&c).to_c64() - z.ln()).norm() < 1e-15);
        }
    }

    #[test]
    fn eigenvalues_of_small_hermitian_matrix() {
        let c = Ctx::new(192);
        let m = [[C64::new(2.0, 0.0), C64::new(0.0, 1.0), C64::new(0.5, 0.0)],
            [C64::new(0.0, -1.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.5, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]];
        let a: Vec<Vec<MpComplex>> =
            m.iter().map(|r| r.iter().map(|&z| MpComplex::from_c64(z, &c)).collect()).collect();
        let ev: Vec<f64> = hermitian_top_eigenvalues(a, 3, &c).iter().map(to_f64).collect();
        let trace: f64 = ev.iter().sum();
        assert!((trace - 5.0).abs() < 1e-14);
        let g = nalgebra::DMatrix::from_fn(3, 3, |i, j| m[i][j]);
        let mut refv: Vec<f64> = g.symmetric_eigenvalues().iter().copied().collect();
        refv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (a, b) in ev.iter().zip(&refv) {
            assert!((a - b).abs() < 1e-13, "{ev:?} vs {refv:?}");
        }
    }
}
