//! Binomial coefficients mod p via Lucas' theorem, extended to p-adic tops.

use super::poly;
use super::zp::ZpApprox;
use crate::error::{Error, Result};

/// `binom(a, b) mod p` for digits `a, b < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = poly::mul_mod(num, (a - i) % p, p);
        den = poly::mul_mod(den, (i + 1) % p, p);
    }
    // den is a product of integers below p, hence a unit
    poly::mul_mod(num, poly::inv_mod(den, p).expect("unit"), p)
}

/// `binom(m, n) mod p` for nonnegative integers.
pub fn lucas_binom_int(mut m: u64, mut n: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 {
        let (a, b) = (m % p, n % p);
        if b > a {
            return 0;
        }
        acc = poly::mul_mod(acc, small_binom(a, b, p), p);
        m /= p;
        n /= p;
    }
    acc
}

/// `binom(c, n) mod p` for a truncated p-adic `c`.
///
/// Every base-p digit of `n` must be covered by the precision of `c`.
pub fn lucas_binom(c: &ZpApprox, n: u64) -> Result<u64> {
    let p = c.p();
    let k = c.precision();
    let mut rest = n;
    let mut acc = 1u64;
    let mut i = 0;
    while rest > 0 {
        if i >= k {
            return Err(Error::InsufficientPrecision(format!(
                "binomial index {n} needs more than {k} digits of the exponent (p = {p})"
            )));
        }
        let b = rest % p;
        let a = c.digit(i);
        if b > a {
            acc = 0;
        } else if acc != 0 {
            acc = poly::mul_mod(acc, small_binom(a, b, p), p);
        }
        rest /= p;
        i += 1;
    }
    Ok(acc)
}

/// `binom(n, k) mod p` for any integer `n`, using
/// `binom(n, k) = (-1)^k binom(k - n - 1, k)` when `n < 0`.
pub fn binom_signed(n: i64, k: u64, p: u64) -> u64 {
    if n >= 0 {
        return lucas_binom_int(n as u64, k, p);
    }
    let top = (k as i128 - n as i128 - 1) as u64;
    let v = lucas_binom_int(top, k, p);
    if k % 2 == 1 && v != 0 {
        p - v
    } else {
        v
    }
}
