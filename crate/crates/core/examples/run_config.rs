//! Parses a flat configuration, applies command-line style overrides and prints its hash.

use cusp_bidisk::cli::{Overrides, RunConfig};

fn main() -> cusp_bidisk::Result<()> {
    let text = "# small run\ndegree = 16\nquad = 512\nsymbol = scaled:0.5\n";
    let base = RunConfig::parse(text)?;
    println!("{}", base.canonical());
    println!("hash {}", base.hash());
    let dir = std::env::temp_dir().join("cusp_bidisk_cfg");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("run.cfg");
    std::fs::write(&path, text)?;
    let cfg = RunConfig::resolve(Some(&path), None, &Overrides { seed: Some(7), ..Default::default() })?;
    println!("with seed 7: {}", cfg.hash());
    match RunConfig::parse("degree = 16\ncolour = blue\n") {
        Err(e) => println!("rejected: {e} (exit code {})", e.exit_code()),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
