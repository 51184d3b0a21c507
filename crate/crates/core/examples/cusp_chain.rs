//! Evaluates the cusp chain at a few points in double and 256-bit arithmetic.

use cusp_bidisk::maps::{cusp, cusp_extended, phi_theta, UnitDiskPoint, C64};

fn main() -> cusp_bidisk::Result<()> {
    let points = [
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(-1.0, 0.0),
        C64::new(0.3, -0.2),
        C64::new(1.0 - 1e-9, 1e-9),
    ];
    println!("{:>24} {:>42} {:>10} {:>12}", "z", "chi(z)", "1-|chi|", "ext diff");
    for z in points {
        let p = UnitDiskPoint::new(z)?;
        let t = cusp(&p);
        let e = cusp_extended(&p, 256);
        println!(
            "{:>24} {:>42} {:>10.3e} {:>12.3e}",
            format!("{z:.9}"),
            format!("{:.15}", t.chi),
            t.one_minus_abs(),
            (t.chi - e.chi).norm()
        );
    }
    let chi0 = UnitDiskPoint::new(cusp(&UnitDiskPoint::new(C64::new(0.0, 0.0))?).chi)?;
    println!("phi_1/2(chi(0)) = {:.15}", phi_theta(&chi0, 0.5));
    Ok(())
}
