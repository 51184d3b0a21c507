//! Splits the pullback measure into inner, middle and outer parts and tracks the outer norm.

use cusp_bidisk::hardy::{BidiskSymbol, TruncationSpec};
use cusp_bidisk::maps::{GKind, SymbolParams};
use cusp_bidisk::spectrum::{split_gram_on, split_samples, t3_profile, SplitSpec};

fn main() -> cusp_bidisk::Result<()> {
    let params = SymbolParams::new(0.5, 1.585018823e-3, 21, 2.35999583, GKind::IdentityInZ2)?;
    let spec = TruncationSpec::new(6, 128)?;
    let samples = split_samples(&BidiskSymbol::Paper(params), &spec)?;
    let split = SplitSpec::new(100, &params)?;
    let g = split_gram_on(&samples, spec.max_degree(), &split);
    println!("lambda {:.6}, r_n {:.4}, {} samples", split.lambda(), split.r_n(), g.samples);
    println!("masses {:?}", g.masses);
    println!("partition defect {:.3e}", g.partition_defect());
    for p in t3_profile(&samples, spec.max_degree(), &[100, 200, 400, 800, 1600])? {
        println!("n {:>5}  mass {:.3e}  ||G3||^1/2 {:.4e}", p.n, p.mass, p.norm);
    }
    Ok(())
}
