//! Largest isotropic subspaces of alternating maps, before and after
//! extending the field, and the smallest such index over a whole family.

use isotropy::grassmann::DEFAULT_CAP;
use isotropy::isotropy::{alpha_alt, alpha_field_alt, FieldMinMode};
use isotropy::{AltTensor, Field};

fn main() -> isotropy::Result<()> {
    let f3 = Field::with_order(3)?;
    let t = AltTensor::random(&f3, 5, 3, 1, 11)?;
    let res = alpha_alt(&t, DEFAULT_CAP);
    println!("random trilinear alternating form on F_3^5: index {}", res.index);
    let w = &res.witness[0];
    println!("  witness pivots {:?}, isotropic: {}", w.pivots(), t.is_isotropic(w)?);

    let f9 = Field::with_order(9)?;
    let lifted = alpha_alt(&t.base_change(&f9)?, DEFAULT_CAP);
    println!("  same form over F_9: index {}", lifted.index);

    for n in 2..=5 {
        let min = alpha_field_alt(
            &Field::with_order(2)?,
            n,
            2,
            1,
            1,
            FieldMinMode::Exhaustive { cap: 1 << 12 },
            DEFAULT_CAP,
        )?;
        println!(
            "min over all {} alternating forms on F_2^{n}: {}",
            min.tensors_examined, min.value
        );
    }
    Ok(())
}
