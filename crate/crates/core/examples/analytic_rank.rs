//! Zero sets and analytic rank of small multilinear maps.

use isotropy::grassmann::DEFAULT_CAP;
use isotropy::rank;
use isotropy::{Field, Tensor};

fn main() -> isotropy::Result<()> {
    let f3 = Field::with_order(3)?;
    for (n, d, m) in [(2, 2, 1), (2, 3, 1), (3, 2, 2)] {
        let t = Tensor::random(&f3, n, d, m, 5)?;
        let r = rank::analytic_rank(&t, DEFAULT_CAP)?;
        println!(
            "N={n} d={d} m={m}: |Z| = {}, AR = {:.4} <= {} (exact check: {})",
            r.zero_count, r.ar_decimal, r.bound_m, r.ar_leq_m
        );
    }
    let zero = rank::analytic_rank(&Tensor::zeros(&f3, 2, 2, 1)?, DEFAULT_CAP)?;
    println!("zero map: AR = {}", zero.ar_decimal);
    Ok(())
}
