//! Splitting `x = t^v · ζ · u` and the exponent coordinates of the one-unit
//! part, then rebuilding `u` from them.

use std::sync::Arc;

use nonarch::arith::FieldSpec;
use nonarch::series::LaurentSeries;
use nonarch::units::{decompose, expand, peel};

fn main() -> nonarch::Result<()> {
    let f = Arc::new(FieldSpec::default_for(2, 2)?);
    let w = f.x();
    let coeffs = vec![w, f.one(), f.zero(), w, f.one(), f.one(), f.zero(), w, f.one(), f.one()];
    let x = LaurentSeries::new(f.clone(), -2, coeffs, 8);
    let dec = decompose(&x)?;
    println!("v = {}, zeta = {:?}", dec.v, f.coeffs(dec.zeta));
    let u = &dec.one_unit;
    let n = u.prec().unwrap();
    let exps = peel(u, n)?;
    for (&(m, i), a) in exps.entries() {
        println!("a_({m},{i}) = {a}");
    }
    assert_eq!(&expand(&exps, n)?, u);
    assert_eq!(dec.reassemble(), x);
    println!("rebuilt one-unit and x from coordinates");
    Ok(())
}
