//! Polynomials in one and two variables with exact coefficient calculus.

use super::{basis, MonomialIndex};
use crate::maps::C64;
use rand::Rng;
use rand_distr::StandardNormal;

/// `Σ c_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly1 {
    /// Coefficients by ascending degree.
    pub coeffs: Vec<C64>,
}

impl Poly1 {
    /// From coefficients.
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    /// `(z − a)^n`.
    pub fn root_power(a: C64, n: usize) -> Self {
        let mut p = Self::new(vec![C64::new(1.0, 0.0)]);
        let lin = Self::new(vec![-a, C64::new(1.0, 0.0)]);
        for _ in 0..n {
            p = p.mul(&lin);
        }
        p
    }

    /// Random Gaussian coefficients up to the given degree.
    pub fn random<R: Rng>(deg: usize, rng: &mut R) -> Self {
        Self::new((0..=deg).map(|_| gaussian(rng)).collect())
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut c = vec![C64::new(0.0, 0.0); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `l`-th derivative.
    pub fn derivative(&self, l: usize) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(l)
            .map(|(k, c)| c * falling(k, l))
            .collect();
        Self::new(c)
    }

    /// Coefficient ℓ² norm.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `Σ c_{ij} z₁^i z₂^j`, stored densely as `coeffs[i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2 {
    /// `coeffs[i][j]` multiplies `z₁^i z₂^j`.
    pub coeffs: Vec<Vec<C64>>,
}

impl Poly2 {
    /// Zero polynomial with the given degree bounds.
    pub fn zeros(deg1: usize, deg2: usize) -> Self {
        Self { coeffs: vec![vec![C64::new(0.0, 0.0); deg2 + 1]; deg1 + 1] }
    }

    /// Separable product `p(z₁) q(z₂)`.
    pub fn separable(p: &Poly1, q: &Poly1) -> Self {
        let coeffs = p.coeffs.iter().map(|a| q.coeffs.iter().map(|b| a * b).collect()).collect();
        Self { coeffs }
    }

    /// Random Gaussian coefficients with `max(i, j) ≤ deg`, scaled to unit coefficient norm.
    pub fn random_unit<R: Rng>(deg: usize, rng: &mut R) -> Self {
        let mut p = Self::zeros(deg, deg);
        for row in &mut p.coeffs {
            for c in row.iter_mut() {
                *c = gaussian(rng);
            }
        }
        p.normalized()
    }

    /// Scaled to unit coefficient norm.
    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        for row in &mut self.coeffs {
            for c in row.iter_mut() {
                *c /= n;
            }
        }
        self
    }

    /// Exact `H²(𝔻²)` norm: the coefficient ℓ² norm.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Coefficient pairing `⟨f, g⟩ = Σ f_α conj(g_α)`.
    pub fn inner(&self, o: &Self) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if let Some(d) = o.coeffs.get(i).and_then(|r| r.get(j)) {
                    s += c * d.conj();
                }
            }
        }
        s
    }

    /// `f(z₁, z₂)` by nested Horner.
    pub fn eval(&self, z1: C64, z2: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, row| {
            acc * z1 + row.iter().rev().fold(C64::new(0.0, 0.0), |a, c| a * z2 + c)
        })
    }

    /// `h_k(z) = (∂₂^k f)(z, z)`.
    pub fn diagonal_derivative(&self, k: usize) -> Poly1 {
        let deg = self.coeffs.len() + self.coeffs.first().map_or(0, |r| r.len());
        let mut c = vec![C64::new(0.0, 0.0); deg];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate().skip(k) {
                c[i + j - k] += a * falling(j, k);
            }
        }
        Poly1::new(c)
    }

    /// Coefficients in basis order for degree `d`; higher terms must vanish.
    pub fn to_basis_vector(&self, d: usize) -> Vec<C64> {
        basis(d).iter().map(|a| self.coeff(*a)).collect()
    }

    /// From coefficients in basis order.
    pub fn from_basis_vector(v: &[C64], d: usize) -> Self {
        let mut p = Self::zeros(d, d);
        for (a, c) in basis(d).iter().zip(v) {
            p.coeffs[a.alpha1][a.alpha2] = *c;
        }
        p
    }

    /// Coefficient of `z^α`.
    pub fn coeff(&self, a: MonomialIndex) -> C64 {
        self.coeffs
            .get(a.alpha1)
            .and_then(|r| r.get(a.alpha2))
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

fn gaussian<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn evaluation_and_derivatives() {
        let p = Poly1::new(vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 0.0)]);
        assert_eq!(p.eval(C64::new(2.0, 0.0)), C64::new(17.0, 0.0));
        assert_eq!(p.derivative(1).coeffs, vec![C64::new(2.0, 0.0), C64::new(6.0, 0.0)]);
        let r = Poly1::root_power(C64::new(0.5, 0.0), 3);
        assert!(r.eval(C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(r.derivative(2).eval(C64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_derivative_of_monomial() {
        let mut f = Poly2::zeros(0, 3);
        f.coeffs[0][3] = C64::new(1.0, 0.0);
        let h = f.diagonal_derivative(3);
        assert_eq!(h.eval(C64::new(0.3, 0.2)), C64::new(6.0, 0.0));
        assert!(f.diagonal_derivative(4).coeffs.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn basis_vector_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f = Poly2::random_unit(4, &mut rng);
        assert!((f.norm() - 1.0).abs() < 1e-14);
        let v = f.to_basis_vector(4);
        assert_eq!(Poly2::from_basis_vector(&v, 4), f);
    }
}
