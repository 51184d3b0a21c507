//! `a_n^{1/n}` for the cusp operator on the disk against a shrunken copy of the symbol.

use cusp_bidisk::hardy::TruncationSpec;
use cusp_bidisk::spectrum::{one_dim_contrast, ONE_DIM_DEGREE};

fn main() -> cusp_bidisk::Result<()> {
    let c = one_dim_contrast(&TruncationSpec::new(ONE_DIM_DEGREE, 8 * ONE_DIM_DEGREE)?)?;
    println!("floor {:.3e}", c.cusp.floor());
    println!("{:>4} {:>14} {:>14}", "n", "cusp", format!("r = {}", c.radius));
    for (n, a, b) in c.root_trend(&[4, 8, 16, 24, 32, 48, 64]) {
        println!("{n:>4} {a:>14.10} {b:>14.10}");
    }
    Ok(())
}
