//! Closed-form isotropy indices and the extremal numbers derived from them.

use isotropy::formulas;

fn main() -> isotropy::Result<()> {
    println!("generic index of alternating maps (F^n)^3 -> F^m:");
    for m in 1..=3 {
        let row: Vec<String> = (3..=12)
            .map(|n| {
                let e = formulas::alpha_alt_closed(n, 3, m, true).expect("valid");
                match e.branch {
                    formulas::Branch::Generic => e.value.to_string(),
                    _ => format!("{}*", e.value),
                }
            })
            .collect();
        println!("  m = {m}, n = 3..12: {}", row.join(" "));
    }
    println!("  (* marks an exceptional row)");

    for k in [3, 5, 8] {
        println!("least n forcing an isotropic {k}-subspace, d = 3, m = 2: {}", formulas::fp_number(3, 2, k, true)?.value);
    }
    let t = formulas::turan_number(10, 3, 4, true)?;
    println!("least m bringing the index to 4 for n = 10, d = 3: {} ({})", t.value, t.branch);
    println!("least m bringing the index to d - 1 for n = 10, d = 3: {}", formulas::gq_number(10, 3)?);
    for (n, d, m) in [(4, 2, 2), (4, 3, 1), (5, 3, 2)] {
        println!(
            "annihilating plane tuples for n={n}, d={d}, m={m}: {}",
            formulas::plane_pair_predicate(n, d, m)
        );
    }
    let b = formulas::box_exponent(3, 2, 1)?;
    println!("box-free edge exponent for n=3, d=2, m=1: {} (admissible: {})", b.exponent, b.admissible);
    Ok(())
}
