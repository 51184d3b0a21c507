//! Full pipeline: matrix, singular values, intervals for `a_{n²}` and the decay fit.
//!
//! Pass a degree as the first argument; the default is 48.

use cusp_bidisk::hardy::{assemble_matrix, BidiskSymbol, TruncationSpec};
use cusp_bidisk::maps::{GKind, SymbolParams};
use cusp_bidisk::spectrum::{approximation_numbers, beta_estimate, fit_decay, singular_values};

fn main() -> cusp_bidisk::Result<()> {
    let d: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(48);
    let params = SymbolParams::new(0.5, 1.585018823e-3, 21, 2.35999583, GKind::IdentityInZ2)?;
    let spec = TruncationSpec::new(d, 1024.max(16 * (d + 1)))?;
    let m = assemble_matrix(&BidiskSymbol::Paper(params), &spec)?;
    let s = singular_values(&m)?;
    for n in 1..=6 {
        let iv = approximation_numbers(&s, n * n)?;
        println!("a_{:<3} in [{:.4e}, {:.4e}]", n * n, iv.lower, iv.upper);
    }
    let fit = fit_decay(&s, 2, 1..=d)?;
    let beta = beta_estimate(&s, 2, fit.n_range.0..=fit.n_range.1)?;
    println!("tau = {:.4}, r2 = {:.5}, usable n = {:?}", fit.tau, fit.r_squared, fit.n_range);
    println!("beta2+ proxy (upper endpoints) = {:.4}", beta.beta_plus_upper);
    Ok(())
}
