//! Runs every property suite with reduced sample counts and prints the reports.

use cusp_bidisk::maps::{GKind, SymbolParams};
use cusp_bidisk::verifier::{run_all, VerifyConfig};

fn main() -> cusp_bidisk::Result<()> {
    let params = SymbolParams::new(0.5, 1.585018823e-3, 21, 2.35999583, GKind::IdentityInZ2)?;
    let mut cfg = VerifyConfig::new(params);
    cfg.sample_count = 20_000;
    cfg.calibration_count = 100_000;
    cfg.trial_count = 200;
    let summary = run_all(&cfg)?;
    for r in &summary.reports {
        println!("{:<16} {} samples={:<7} violations={}", r.suite, if r.pass { "PASS" } else { "FAIL" }, r.samples, r.violation_count);
        for (k, v) in &r.constants {
            println!("    {k} = {v:.6}");
        }
    }
    println!("overall: {}", summary.pass);
    Ok(())
}
