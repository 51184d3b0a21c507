//! `φ_θ(z) = exp(−(1 − z)^{−θ})`.

use super::{UnitDiskPoint, C64};

/// `φ_θ(z)` with the continuous extension `φ_θ(1) = 0`.
pub fn phi_theta(z: &UnitDiskPoint, theta: f64) -> C64 {
    phi_from_one_minus(z.one_minus(), theta)
}

/// `φ_θ` evaluated from the complement `w = 1 − z`.
pub fn phi_from_one_minus(w: C64, theta: f64) -> C64 {
    if w == C64::new(0.0, 0.0) {
        return C64::new(0.0, 0.0);
    }
    let e = (-theta * w.ln()).exp();
    (-e).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p0 = UnitDiskPoint::new(C64::new(0.0, 0.0)).unwrap();
        for theta in [0.1, 0.5, 0.9] {
            assert!((phi_theta(&p0, theta) - C64::new((-1.0f64).exp(), 0.0)).norm() < 1e-16);
        }
        let p1 = UnitDiskPoint::new(C64::new(1.0, 0.0)).unwrap();
        assert_eq!(phi_theta(&p1, 0.5), C64::new(0.0, 0.0));
        let p = UnitDiskPoint::new(C64::new(0.99, 0.0)).unwrap();
        assert!((phi_theta(&p, 0.5).re - (-10.0f64).exp()).abs() < 1e-17);
    }
}
