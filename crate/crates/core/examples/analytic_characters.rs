//! The character `z ↦ z^c` as a table on generators, the coefficients of
//! `χ(1 + x)`, exponent recovery, and a character that is not analytic.

use std::collections::BTreeMap;
use std::sync::Arc;

use nonarch::arith::{FieldSpec, ZpApprox};
use nonarch::characters::{diagonal_embed, recover_exponent, ContinuousCharacter, Verdict};
use nonarch::series::LaurentSeries;

fn main() -> nonarch::Result<()> {
    let f = Arc::new(FieldSpec::default_for(2, 1)?);
    let c = ZpApprox::from_u128(2, 0b1011, 5);
    let chi = diagonal_embed(&c, f.clone(), 1, 17)?;
    let a = chi.series_at_one(17)?;
    println!("a_n = {:?}", a.coeffs().iter().map(|&x| f.coeffs(x)[0]).collect::<Vec<_>>());
    println!("recovered c = {}", recover_exponent(&a, 5)?);
    match chi.is_locally_analytic(17)? {
        Verdict::Analytic { c } => println!("analytic with c = {c}"),
        Verdict::NotAnalytic { witness } => println!("not analytic: {witness:?}"),
    }

    // send 1 + t^3 to 1 + t and everything else to 1
    let mut table = BTreeMap::new();
    table.insert((3, 1), LaurentSeries::new(f.clone(), 0, vec![f.one(), f.one()], 16));
    let odd = ContinuousCharacter::new(f.clone(), f.clone(), 1, 4, 16, table)?;
    match odd.is_locally_analytic(16)? {
        Verdict::Analytic { c } => println!("unexpectedly analytic: {c}"),
        Verdict::NotAnalytic { witness } => println!("table character fails: {witness:?}"),
    }
    Ok(())
}
