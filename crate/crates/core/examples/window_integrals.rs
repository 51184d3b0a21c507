//! Hilbert–Schmidt norm and the window integrals near the cusp point.

use cusp_bidisk::hardy::{hs_norm_squared, window_integral_i, window_integral_i0, BidiskSymbol, TruncationSpec};
use cusp_bidisk::maps::{GKind, SymbolParams};

fn main() -> cusp_bidisk::Result<()> {
    let params = SymbolParams::new(0.5, 1.585018823e-3, 21, 2.35999583, GKind::IdentityInZ2)?;
    let symbol = BidiskSymbol::Paper(params);
    let spec = TruncationSpec::new(48, 1024)?;
    let hs = hs_norm_squared(&symbol, &spec)?;
    println!("||C||_HS^2 = {:.10} (2Q: {:.10}, stable {})", hs.value, hs.doubled, hs.stable);
    println!("{:>8} {:>14} {:>14}", "h", "I0(h)", "I(h)");
    for k in [5, 10, 20, 40] {
        let h = 1.0 / k as f64;
        let i0 = window_integral_i0(h)?;
        let i = window_integral_i(h, &symbol, &spec)?;
        println!("{:>8.4} {:>14.6e} {:>14.6e}", h, i0.value, i.value);
    }
    Ok(())
}
