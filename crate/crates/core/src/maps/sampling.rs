//! Sample sets of the disk: quasi-uniform, boundary-clustered and cusp-clustered.

use super::UnitDiskPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Radial levels `r = 1 − 2^{−k}` used by the clustered grid.
pub const RADIAL_LEVELS: u32 = 48;

/// Vogel sunflower of `count` points with radii capped at `cap`, plus the origin.
pub fn sunflower(count: usize, cap: f64) -> Vec<UnitDiskPoint> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut out = Vec::with_capacity(count + 1);
    out.push(UnitDiskPoint::polar(0.0, 0.0).expect("origin"));
    for k in 0..count {
        let r = cap * ((k as f64 + 0.5) / count as f64).sqrt();
        let t = (k as f64 * golden).rem_euclid(2.0 * PI) - PI;
        out.push(UnitDiskPoint::polar(r, t).expect("sunflower point"));
    }
    out
}

/// Deterministic grid: radii `1 − 2^{−k}`, `k = 1..48`, crossed with angles that are
/// half uniform and half geometrically clustered at the cusp angle `t = 0`.
pub fn clustered_grid(count: usize) -> Vec<UnitDiskPoint> {
    let levels = RADIAL_LEVELS as usize;
    let per = count.div_ceil(levels).max(2);
    let half = per.div_ceil(2);
    let mut out = Vec::with_capacity(count);
    'outer: for k in 1..=levels {
        let r = 1.0 - (-(k as f64)).exp2();
        for j in 0..per {
            if out.len() == count {
                break 'outer;
            }
            let i = (j / 2) as f64 + 0.5;
            let t = if j % 2 == 0 {
                -PI + 2.0 * PI * i / half as f64
            } else {
                let u = 1.0 + 59.0 * i / half as f64;
                let s = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
                s * PI * (-u).exp2()
            };
            out.push(UnitDiskPoint::polar(r, t).expect("grid point"));
        }
    }
    out
}

/// Log-uniform angles in `[t_min, t_max]`, endpoints included.
pub fn log_angles(count: usize, t_min: f64, t_max: f64) -> Vec<f64> {
    let (a, b) = (t_min.ln(), t_max.ln());
    (0..count)
        .map(|k| {
            if count == 1 {
                t_min
            } else {
                (a + (b - a) * k as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

/// Seeded sampler mixing area-uniform, boundary-clustered and cusp-clustered draws.
#[derive(Clone, Debug)]
pub struct ClusteredSampler {
    rng: ChaCha8Rng,
}

impl ClusteredSampler {
    /// Sampler with a fixed seed.
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Access to the underlying generator.
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn angle(&mut self) -> f64 {
        if self.rng.random_bool(0.5) {
            self.rng.random_range(-PI..PI)
        } else {
            let u: f64 = self.rng.random_range(1.0..60.0);
            let s = if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
            s * PI * (-u).exp2()
        }
    }

    /// An interior point.
    pub fn interior(&mut self) -> UnitDiskPoint {
        let mode = self.rng.random_range(0..3);
        let (r, t) = match mode {
            0 => (self.rng.random::<f64>().sqrt() * (1.0 - 1e-15), self.rng.random_range(-PI..PI)),
            1 => (1.0 - (-self.rng.random_range(1.0..48.0f64)).exp2(), self.rng.random_range(-PI..PI)),
            _ => (1.0 - (-self.rng.random_range(1.0..48.0f64)).exp2(), self.angle()),
        };
        UnitDiskPoint::polar(r, t).expect("interior sample")
    }

    /// A boundary angle, half uniform and half clustered at `t = 0`.
    pub fn boundary_angle(&mut self) -> f64 {
        self.angle()
    }

    /// A point `1 − e^{−L} e^{iψ}` with `L` uniform in `[l_min, l_max]`, kept inside the
    /// disk by `cos ψ > e^{−L}`; for large `L` the stored value rounds to 1 while the
    /// complement stays exact.
    pub fn near_cusp(&mut self, l_min: f64, l_max: f64) -> UnitDiskPoint {
        loop {
            let l = self.rng.random_range(l_min..l_max);
            let psi = self.rng.random_range(-0.5 * PI..0.5 * PI);
            let eps = (-l).exp();
            if psi.cos() > eps {
                if let Ok(p) = UnitDiskPoint::near_one(eps, psi) {
                    return p;
                }
            }
        }
    }
}
