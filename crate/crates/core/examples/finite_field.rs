//! Arithmetic in F_9 and F_16: the default modulus, Frobenius, inverses and
//! an embedding F_4 -> F_16.

use std::sync::Arc;

use nonarch::arith::{FieldEmbedding, FieldSpec};

fn main() -> nonarch::Result<()> {
    let f9 = FieldSpec::default_for(3, 2)?;
    println!("F_9 modulus (low first): {:?}", f9.modulus());
    let x = f9.x();
    for e in 0..8 {
        println!("x^{e} = {:?}", f9.coeffs(f9.pow(x, e)));
    }
    let y = f9.from_coeffs(&[2, 1])?;
    let inv = f9.inv(y)?;
    println!("(2 + x)^-1 = {:?}, check: {:?}", f9.coeffs(inv), f9.coeffs(f9.mul(y, inv)));
    println!("Frob(2 + x) = {:?}", f9.coeffs(f9.frobenius(y, 1)));

    let f4 = Arc::new(FieldSpec::default_for(2, 2)?);
    let f16 = Arc::new(FieldSpec::default_for(2, 4)?);
    let emb = FieldEmbedding::new(f4.clone(), f16.clone())?;
    let g = f4.x();
    println!("F_4 generator in F_16: {:?}", f16.coeffs(emb.apply(g)));
    let a = f4.add(g, f4.one());
    assert_eq!(emb.apply(f4.mul(g, a)), f16.mul(emb.apply(g), emb.apply(a)));
    Ok(())
}
