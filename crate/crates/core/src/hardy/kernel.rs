//! Reproducing kernel of `H²(𝔻²)` and the point-evaluation bound.

use super::poly::Poly2;
use crate::error::{Error, Result};
use crate::maps::{BidiskPoint, C64};

fn interior(a: &BidiskPoint) -> Result<()> {
    if a.w1.norm() < 1.0 && a.w2.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("kernel point ({}, {}) is not interior", a.w1, a.w2)))
    }
}

/// `K_a(z) = 1/((1 − ā₁z₁)(1 − ā₂z₂))`.
pub fn reproducing_kernel(a: &BidiskPoint, z: &BidiskPoint) -> Result<C64> {
    interior(a)?;
    let one = C64::new(1.0, 0.0);
    Ok(((one - a.w1.conj() * z.w1) * (one - a.w2.conj() * z.w2)).inv())
}

/// `‖K_a‖ = 1/√((1 − |a₁|²)(1 − |a₂|²))`, the norm of evaluation at `a`.
pub fn evaluation_bound(a: &BidiskPoint) -> Result<f64> {
    interior(a)?;
    Ok(1.0 / ((1.0 - a.w1.norm_sqr()) * (1.0 - a.w2.norm_sqr())).sqrt())
}

impl Poly2 {
    /// Coefficients of `K_a` truncated to `max(i, j) ≤ deg`: `conj(a^α)`.
    pub fn kernel_truncation(a: &BidiskPoint, deg: usize) -> Self {
        let mut p = Self::zeros(deg, deg);
        let (c1, c2) = (a.w1.conj(), a.w2.conj());
        let mut p1 = C64::new(1.0, 0.0);
        for i in 0..=deg {
            let mut p2 = C64::new(1.0, 0.0);
            for j in 0..=deg {
                p.coeffs[i][j] = p1 * p2;
                p2 *= c2;
            }
            p1 *= c1;
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(a: f64, c: f64) -> BidiskPoint {
        BidiskPoint::new(C64::new(a, 0.0), C64::new(c, 0.0)).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let z = BidiskPoint::new(C64::new(0.3, 0.2), C64::new(-0.5, 0.1)).unwrap();
        assert_eq!(reproducing_kernel(&b(0.0, 0.0), &z).unwrap(), C64::new(1.0, 0.0));
        let h = b(0.5, 0.5);
        assert!((reproducing_kernel(&h, &h).unwrap() - C64::new(16.0 / 9.0, 0.0)).norm() < 1e-15);
        assert!(reproducing_kernel(&b(1.0, 0.0), &z).is_err());

        let mut f = Poly2::zeros(2, 1);
        f.coeffs[2][1] = C64::new(1.0, 0.0);
        let a = b(0.3, 0.4);
        let v = f.inner(&Poly2::kernel_truncation(&a, 2));
        assert!((v - C64::new(0.036, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn evaluation_bound_examples() {
        assert_eq!(evaluation_bound(&b(0.0, 0.0)).unwrap(), 1.0);
        assert!((evaluation_bound(&b(0.5, 0.0)).unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!(evaluation_bound(&b(0.0, 1.0)).is_err());
    }
}
