//! Checks `f(a) = <f, K_a>` on a random polynomial and the point-evaluation bound.

use cusp_bidisk::hardy::{evaluation_bound, reproducing_kernel, Poly2};
use cusp_bidisk::maps::{BidiskPoint, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cusp_bidisk::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = Poly2::random_unit(12, &mut rng);
    let a = BidiskPoint::new(C64::new(0.6, -0.3), C64::new(-0.2, 0.5))?;
    let direct = f.eval(a.w1, a.w2);
    let via_kernel = f.inner(&Poly2::kernel_truncation(&a, 12));
    println!("f(a)        = {direct:.15}");
    println!("<f, K_a>    = {via_kernel:.15}");
    println!("difference  = {:.3e}", (direct - via_kernel).norm());
    println!("|f(a)|      = {:.6} <= ||K_a|| = {:.6}", direct.norm(), evaluation_bound(&a)?);
    println!("K_a(a)      = {:.6}", reproducing_kernel(&a, &a)?.re);
    Ok(())
}
