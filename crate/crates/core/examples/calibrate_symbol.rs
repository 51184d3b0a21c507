//! Estimates K̂, calibrates the amplitude c and evaluates the resulting symbol.

use cusp_bidisk::maps::{calibrate_c, estimate_k, symbol, GKind, UnitDiskPoint, C64};

fn main() -> cusp_bidisk::Result<()> {
    let k_hat = estimate_k(100_000)?;
    let cal = calibrate_c(0.5, k_hat, 21, GKind::IdentityInZ2, 1_000_000)?;
    println!("k_hat      = {k_hat:.8}");
    println!("eta        = {:.7}", cal.eta);
    println!("c          = {:.9e}", cal.params.c());
    println!("margin_abs = {:.4e}", cal.margin_abs);
    println!("margin_rel = {:.6}", cal.margin_rel);
    let z1 = UnitDiskPoint::new(C64::new(0.9, 0.1))?;
    let z2 = UnitDiskPoint::new(C64::new(0.0, -0.7))?;
    let w = symbol(&z1, &z2, &cal.params);
    println!("Phi(0.9+0.1i, -0.7i) = ({:.12}, {:.12})", w.w1, w.w2);
    Ok(())
}
