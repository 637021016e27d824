//! Truncated p-adic integers `c mod p^k` stored as base-p digits.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly;
use crate::error::{Error, Result};

/// A p-adic integer known modulo `p^k`, where `k = digits.len() >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawZp", into = "RawZp")]
pub struct ZpApprox {
    p: u64,
    digits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawZp {
    p: u64,
    digits: Vec<u64>,
}

impl TryFrom<RawZp> for ZpApprox {
    type Error = Error;

    fn try_from(raw: RawZp) -> Result<Self> {
        ZpApprox::from_digits(raw.p, raw.digits)
    }
}

impl From<ZpApprox> for RawZp {
    fn from(z: ZpApprox) -> Self {
        RawZp { p: z.p, digits: z.digits }
    }
}

impl fmt::Debug for ZpApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Zp[{}]{:?}", self.p, self.digits)
    }
}

impl fmt::Display for ZpApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}^{}", self.digits, self.p, self.digits.len())
    }
}

impl ZpApprox {
    pub fn from_digits(p: u64, digits: Vec<u64>) -> Result<Self> {
        if !poly::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if digits.is_empty() {
            return Err(Error::InvalidInput("p-adic precision must be at least 1".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::InvalidInput(format!("digit {d} not reduced mod {p}")));
        }
        Ok(ZpApprox { p, digits })
    }

    /// The image of a (possibly negative) integer at precision `k`.
    pub fn from_i64(p: u64, n: i64, k: usize) -> Self {
        assert!(k >= 1, "precision must be positive");
        let pos = ZpApprox::from_u128(p, n.unsigned_abs() as u128, k);
        if n < 0 {
            pos.neg()
        } else {
            pos
        }
    }

    pub fn from_u128(p: u64, mut n: u128, k: usize) -> Self {
        assert!(k >= 1, "precision must be positive");
        let digits = (0..k)
            .map(|_| {
                let d = (n % p as u128) as u64;
                n /= p as u128;
                d
            })
            .collect();
        ZpApprox { p, digits }
    }

    pub fn zero(p: u64, k: usize) -> Self {
        ZpApprox::from_u128(p, 0, k)
    }

    pub fn one(p: u64, k: usize) -> Self {
        ZpApprox::from_u128(p, 1, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits[i]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// The representative in `[0, p^k)` when it fits in a `u128`.
    pub fn to_u128(&self) -> Option<u128> {
        self.digits.iter().rev().try_fold(0u128, |acc, &d| {
            acc.checked_mul(self.p as u128)?.checked_add(d as u128)
        })
    }

    /// Reduction to a lower precision. Requests above the current precision
    /// are capped rather than padded.
    pub fn truncate(&self, k: usize) -> Self {
        let k = k.clamp(1, self.precision());
        ZpApprox { p: self.p, digits: self.digits[..k].to_vec() }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed-prime p-adic arithmetic");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let k = self.precision().min(other.precision());
        let mut carry = 0u64;
        let digits = (0..k)
            .map(|i| {
                let s = self.digits[i] + other.digits[i] + carry;
                carry = s / self.p;
                s % self.p
            })
            .collect();
        ZpApprox { p: self.p, digits }
    }

    pub fn neg(&self) -> Self {
        // -c = (p^k - 1 - c) + 1
        let comp = ZpApprox {
            p: self.p,
            digits: self.digits.iter().map(|&d| self.p - 1 - d).collect(),
        };
        comp.add(&ZpApprox::one(self.p, self.precision()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let k = self.precision().min(other.precision());
        let p = self.p as u128;
        let mut acc = vec![0u128; k];
        for i in 0..k {
            if self.digits[i] == 0 {
                continue;
            }
            for j in 0..k - i {
                acc[i + j] += self.digits[i] as u128 * other.digits[j] as u128;
            }
            // keep the accumulators bounded
            let mut carry = 0u128;
            for a in acc.iter_mut() {
                let s = *a + carry;
                *a = s % p;
                carry = s / p;
            }
        }
        ZpApprox { p: self.p, digits: acc.into_iter().map(|d| d as u64).collect() }
    }

    /// Equality on the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let k = self.precision().min(other.precision());
        self.p == other.p && self.digits[..k] == other.digits[..k]
    }
}
