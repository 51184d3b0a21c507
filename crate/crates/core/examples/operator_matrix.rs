//! Assembles a small operator matrix, writes it in the binary dump format and reads it back.

use cusp_bidisk::hardy::{assemble_matrix, BidiskSymbol, MonomialIndex, OperatorMatrix, TruncationSpec};
use cusp_bidisk::maps::{GKind, SymbolParams};

fn main() -> cusp_bidisk::Result<()> {
    let params = SymbolParams::new(0.5, 1.585018823e-3, 21, 2.35999583, GKind::IdentityInZ2)?;
    let spec = TruncationSpec::new(8, 256)?;
    let m = assemble_matrix(&BidiskSymbol::Paper(params), &spec)?;
    println!("dim {} tail {:.4e} params_hash {}", spec.dim(), m.tail_hs(), m.params_hash());
    for (b, a) in [((0, 0), (0, 0)), ((0, 0), (1, 0)), ((1, 0), (1, 0)), ((0, 1), (0, 1))] {
        let v = m.entry(MonomialIndex::new(b.0, b.1), MonomialIndex::new(a.0, a.1))?;
        println!("<C e_{a:?}, e_{b:?}> = {v:.12}");
    }
    let dir = std::env::temp_dir().join("cusp_bidisk_example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("matrix.cbom");
    m.write_binary_tagged(&path, &"0".repeat(64), 1729)?;
    let (h, back) = OperatorMatrix::read_binary(&path)?;
    println!("read D={} Q={} dim={} seed={} identical={}", h.max_degree, h.quad_points, h.dim, h.seed, &back == m.entries());
    Ok(())
}
