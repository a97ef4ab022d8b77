//! Subspaces of `F_q^n`: enumeration, Gaussian binomials and how pairs of
//! planes meet, including the degree of each stratum count as a polynomial
//! in `q`.

use isotropy::grassmann::{self, Grassmannian, DEFAULT_CAP};
use isotropy::interp;
use isotropy::Field;
use num_bigint::BigInt;

fn main() -> isotropy::Result<()> {
    let f2 = Field::with_order(2)?;
    println!("The 7 planes of F_2^3 in canonical order:");
    for s in Grassmannian::new(&f2, 3, 2) {
        let rows: Vec<Vec<u32>> = s.rows().map(|r| r.iter().map(|e| e.index()).collect()).collect();
        println!("  pivots {:?} rows {:?}", s.pivots(), rows);
    }
    for q in [2, 3, 4, 5] {
        println!("|Gr(2, F_{q}^4)| = {}", grassmann::gauss_binom(4, 2, q));
    }

    let (n, k) = (4, 2);
    let orders = interp::sample_orders(10);
    let profiles = orders
        .iter()
        .map(|&q| grassmann::sigma_profile(&Field::with_order(q)?, n, k, DEFAULT_CAP))
        .collect::<isotropy::Result<Vec<_>>>()?;
    println!("Ordered pairs of planes in F_q^4 meeting in dimension l:");
    for l in grassmann::sigma_range(n, k) {
        let pts: Vec<(BigInt, BigInt)> = orders
            .iter()
            .zip(&profiles)
            .map(|(&q, p)| (BigInt::from(q), BigInt::from(p[l].clone())))
            .collect();
        println!(
            "  l = {l}: q=2 gives {}, degree in q {:?}, predicted {}",
            profiles[0][l],
            interp::degree(&pts),
            grassmann::sigma_dimension(n, k, l)
        );
    }
    Ok(())
}
