//! Powers `u^c` of one-units for p-adic exponents, Hasse derivatives and the
//! binomial coefficients they produce.

use std::sync::Arc;

use nonarch::arith::{lucas_binom, FieldSpec, ZpApprox};
use nonarch::series::{one_unit_pow, LaurentSeries};

fn main() -> nonarch::Result<()> {
    let f = Arc::new(FieldSpec::default_for(3, 1)?);
    let one_plus_t = LaurentSeries::new(f.clone(), 0, vec![f.one(), f.one()], 27);

    // c = -1 in Z_3 to four digits: 2 + 2·3 + 2·9 + 2·27
    let minus_one = ZpApprox::from_i64(3, -1, 4);
    let inv = one_unit_pow(&one_plus_t, &minus_one)?;
    println!("(1 + t)^-1 = {inv:?}");
    assert!(inv.mul(&one_plus_t).agrees_to(&LaurentSeries::one(f.clone(), 27), 27));

    let c = ZpApprox::from_u128(3, 50, 4);
    let p = one_unit_pow(&one_plus_t, &c)?;
    for n in 0..12 {
        let want = lucas_binom(&c, n)?;
        println!("coeff t^{n}: {:?}  binom(50, {n}) mod 3 = {want}", f.coeffs(p.coeff(n as i64)?));
    }
    println!("D^(3) (1 + t)^50 = {:?}", p.hasse(3));
    Ok(())
}
