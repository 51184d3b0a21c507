//! Table of the vanishing-condition count against `n²` and its limit.

use cusp_bidisk::verifier::{codim_count, limit_ratio, n_n};

fn main() {
    let theta = 0.5;
    println!("{:>7} {:>5} {:>14} {:>10}", "n", "N_n", "count", "count/n^2");
    for n in [10, 100, 1000, 10_000, 100_000] {
        let c = codim_count(n, theta);
        println!("{n:>7} {:>5} {c:>14} {:>10.5}", n_n(n, theta), c as f64 / (n as f64).powi(2));
    }
    println!("limit {:.5}", limit_ratio(theta));
}
