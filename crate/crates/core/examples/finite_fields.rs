//! Arithmetic in `F_9`, its element order, and the embedding of `F_3`.

use isotropy::{Embedding, Field};

fn main() -> isotropy::Result<()> {
    let f9 = Field::new(3, 2)?;
    println!("F_9 modulus (low to high): {:?}", f9.spec().modulus);

    let a = f9.elem(4)?;
    let b = f9.elem(7)?;
    println!("a = {}, b = {}", a.index(), b.index());
    println!("a + b = {}", f9.add(a, b).index());
    println!("a * b = {}", f9.mul(a, b).index());
    println!("a^-1  = {}", f9.inv(a)?.index());
    println!("a^9   = {} (a^q = a)", f9.pow(a, 9).index());

    let f3 = Field::new(3, 1)?;
    let emb = Embedding::new(&f3, &f9)?;
    let image: Vec<u32> = f3.elements().map(|x| emb.apply(x).index()).collect();
    println!("F_3 inside F_9: {image:?}");
    Ok(())
}
