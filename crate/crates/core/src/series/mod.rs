//! Truncated Laurent series over F_q, p-adic powers of one-units and Hasse
//! derivatives.

mod at_one;
mod laurent;

pub use at_one::PowerSeriesAtOne;
pub use laurent::LaurentSeries;

use crate::arith::ZpApprox;
use crate::error::{Error, Result};

/// `u^c = Σ binom(c, n) (u - 1)^n` for a one-unit `u` and `c ∈ Z_p`.
///
/// With `N = prec(u)` and `w = val(u - 1)`, only `n < ceil(N / w)` matter, and
/// those indices must be covered by the digits of `c`; otherwise the result
/// would depend on unknown digits. The power is assembled digitwise as
/// `∏ (u^(p^i))^(c_i)`, which agrees with the binomial sum mod `t^N`.
pub fn one_unit_pow(u: &LaurentSeries, c: &ZpApprox) -> Result<LaurentSeries> {
    if !u.is_one_unit() {
        return Err(Error::NotOneUnit(format!("{u:?}")));
    }
    let field = u.field().clone();
    let p = field.p();
    if c.p() != p {
        return Err(Error::FieldMismatch(format!("exponent in Z_{} for a series over F_{p}", c.p())));
    }
    let n = u.prec().expect("one-unit has finite precision");
    let one = LaurentSeries::one(field.clone(), n);
    let w = u.sub(&one).val_bound();
    let terms = (n + w - 1) / w;
    check_digits(c, terms as u64)?;

    let mut acc = one;
    let mut frob = u.clone();
    for i in 0..c.precision() {
        if frob.sub(&LaurentSeries::one(field.clone(), n)).val_bound() >= n {
            break;
        }
        let d = c.digit(i);
        if d > 0 {
            acc = acc.mul(&frob.pow(d)).truncate(n);
        }
        frob = frob.frobenius(1).truncate(n);
    }
    Ok(acc)
}

/// Fails unless every `m < terms` has all its base-p digits within the
/// precision of `c`, i.e. `terms <= p^k`.
fn check_digits(c: &ZpApprox, terms: u64) -> Result<()> {
    let p = c.p() as u128;
    let cap = p.checked_pow(c.precision() as u32).unwrap_or(u128::MAX);
    if (terms as u128) > cap {
        return Err(Error::InsufficientPrecision(format!(
            "{terms} binomial terms need more than {} digits of the exponent (p = {p})",
            c.precision()
        )));
    }
    Ok(())
}
