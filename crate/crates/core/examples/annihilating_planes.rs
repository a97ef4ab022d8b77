//! Tuples of planes on which a multilinear map vanishes, and how their
//! number grows over field extensions.

use isotropy::grassmann::DEFAULT_CAP;
use isotropy::isotropy::{alpha_hom_over_extensions, count_dt};
use isotropy::{Field, Tensor};

fn main() -> isotropy::Result<()> {
    let f2 = Field::with_order(2)?;
    let t = Tensor::random(&f2, 4, 2, 2, 3)?;
    for out in alpha_hom_over_extensions(&t, 2, &[1, 2, 3], DEFAULT_CAP)? {
        println!("over F_{}: annihilating plane pair found: {}", out.order, out.witness.is_some());
    }
    let t = Tensor::random(&f2, 3, 2, 1, 42)?;
    for r in 1..=3 {
        let big = Field::new(2, r)?;
        let n = count_dt(&t.base_change(&big)?, DEFAULT_CAP)?;
        println!("|D_T| over F_{}: {n}", big.order());
    }
    Ok(())
}
