//! The finite field F_q = F_p[x]/(f) with q = p^r.
//!
//! Elements are packed into a single `u64` holding the base-p digits of their
//! power-basis coordinates, so `FqElem` is `Copy` and cheap to hash. All
//! arithmetic goes through a shared [`FieldSpec`], which also carries a
//! distinguished F_p-basis ω_1, …, ω_r used for unit-group coordinates.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly;
use crate::error::{Error, Result};

/// Largest field size for which discrete log tables are built.
const TABLE_LIMIT: u64 = 1 << 16;

/// An element of F_q, stored as the packed power-basis coordinates
/// `Σ c_i p^i` with `0 <= c_i < p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqElem(pub(crate) u64);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed index `Σ c_i p^i`.
    pub fn index(self) -> u64 {
        self.0
    }
}

#[derive(Debug)]
struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// A finite field F_{p^r} together with a chosen F_p-basis.
pub struct FieldSpec {
    p: u64,
    r: usize,
    q: u64,
    modulus: Vec<u64>,
    basis: Vec<FqElem>,
    // inverse of the matrix whose columns are the coordinates of the ω_i
    basis_inv: Vec<Vec<u64>>,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .field("basis", &self.basis)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.basis == other.basis
    }
}

impl Eq for FieldSpec {}

/// Tabulated Conway polynomials, lowest coefficient first, leading 1 omitted.
const CONWAY: &[(u64, usize, &[u64])] = &[
    (2, 1, &[1]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 12, &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 14, &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, 15, &[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 1, &[1]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 2, 1, 0, 2, 0]),
    (5, 1, &[3]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 1, &[4]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
];

impl FieldSpec {
    /// Builds F_p[x]/(modulus) with the power basis. `modulus` is given lowest
    /// coefficient first and must be monic and irreducible.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !poly::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must be reduced mod p".into()));
        }
        let modulus = poly::trim(modulus);
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        let r = modulus.len() - 1;
        let q = (p as u128).checked_pow(r as u32).filter(|&q| q < (1u128 << 62));
        let Some(q) = q else {
            return Err(Error::InvalidField(format!("field {p}^{r} too large")));
        };
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let mut spec = FieldSpec {
            p,
            r,
            q: q as u64,
            modulus,
            basis: Vec::new(),
            basis_inv: Vec::new(),
            tables: None,
        };
        spec.tables = spec.build_tables();
        let power_basis = (0..r).map(|i| FqElem(p.pow(i as u32))).collect();
        spec.set_basis(power_basis)?;
        Ok(spec)
    }

    /// Default field of size p^r: a tabulated Conway polynomial when one is
    /// known, otherwise the lexicographically least primitive polynomial
    /// (least irreducible one when q is too large to test primitivity).
    pub fn default_for(p: u64, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        if let Some((_, _, low)) = CONWAY.iter().find(|(pp, rr, _)| *pp == p && *rr == r) {
            let mut m = low.to_vec();
            m.push(1);
            return FieldSpec::new(p, m);
        }
        if !poly::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let count = (p as u128).pow(r as u32);
        if count >= 1u128 << 62 {
            return Err(Error::InvalidField(format!("field {p}^{r} too large")));
        }
        let mut fallback = None;
        for idx in 0..count as u64 {
            let mut m = Vec::with_capacity(r + 1);
            let mut v = idx;
            for _ in 0..r {
                m.push(v % p);
                v /= p;
            }
            m.push(1);
            if !poly::is_irreducible(&m, p) {
                continue;
            }
            let spec = FieldSpec::new(p, m)?;
            if spec.q > TABLE_LIMIT {
                return Ok(spec);
            }
            if spec.is_primitive(spec.x()) {
                return Ok(spec);
            }
            if fallback.is_none() {
                fallback = Some(spec);
            }
        }
        fallback.ok_or_else(|| Error::InvalidField(format!("no irreducible polynomial of degree {r}")))
    }

    /// Replaces the distinguished basis ω_1, …, ω_r. Fails unless the given
    /// elements are linearly independent over F_p.
    pub fn with_basis(mut self, basis: Vec<FqElem>) -> Result<Self> {
        self.set_basis(basis)?;
        Ok(self)
    }

    fn set_basis(&mut self, basis: Vec<FqElem>) -> Result<()> {
        if basis.len() != self.r {
            return Err(Error::InvalidField(format!(
                "basis must have {} elements, got {}",
                self.r,
                basis.len()
            )));
        }
        if basis.iter().any(|b| b.0 >= self.q) {
            return Err(Error::InvalidField("basis element out of range".into()));
        }
        let r = self.r;
        let p = self.p;
        // columns = coordinates of ω_i
        let mut m = vec![vec![0u64; r]; r];
        for (col, b) in basis.iter().enumerate() {
            for (row, c) in self.coeffs(*b).into_iter().enumerate() {
                m[row][col] = c;
            }
        }
        let inv = invert_mod_p(m, p)
            .ok_or_else(|| Error::InvalidField("basis is not linearly independent over F_p".into()))?;
        self.basis = basis;
        self.basis_inv = inv;
        Ok(())
    }

    fn build_tables(&self) -> Option<LogTables> {
        if self.q > TABLE_LIMIT || self.q < 3 {
            return None;
        }
        let order = self.q - 1;
        let factors = poly::prime_factors(order);
        let g = (2..self.q).map(FqElem).find(|&g| {
            factors
                .iter()
                .all(|&f| self.pow_slow(g, order / f) != FqElem::ONE)
        })?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut acc = FqElem::ONE;
        for i in 0..order {
            exp.push(acc.0 as u32);
            log[acc.0 as usize] = i as u32;
            acc = self.mul_slow(acc, g);
        }
        Some(LogTables { log, exp })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, lowest first, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The distinguished basis ω_1, …, ω_r (0-indexed here).
    pub fn basis(&self) -> &[FqElem] {
        &self.basis
    }

    pub fn omega(&self, i: usize) -> FqElem {
        self.basis[i - 1]
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// The residue class of x.
    pub fn x(&self) -> FqElem {
        if self.r == 1 {
            // x ≡ -c_0 in F_p
            FqElem((self.p - self.modulus[0]) % self.p)
        } else {
            FqElem(self.p)
        }
    }

    /// The image of an integer in the prime field.
    pub fn scalar(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u64)
    }

    /// Returns the F_p-value when `a` lies in the prime field.
    pub fn prime_field_value(&self, a: FqElem) -> Option<u64> {
        (a.0 < self.p).then_some(a.0)
    }

    pub fn contains(&self, a: FqElem) -> bool {
        a.0 < self.q
    }

    /// Power-basis coordinates (little-endian, length r).
    pub fn coeffs(&self, a: FqElem) -> Vec<u64> {
        let mut v = a.0;
        (0..self.r)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.r {
            return Err(Error::InvalidInput(format!(
                "element has {} coordinates, field degree is {}",
                coeffs.len(),
                self.r
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidInput(format!("coordinate {c} not reduced mod {}", self.p)));
        }
        Ok(self.pack(coeffs))
    }

    pub fn from_index(&self, index: u64) -> Result<FqElem> {
        if index >= self.q {
            return Err(Error::InvalidInput(format!("element index {index} out of range for q = {}", self.q)));
        }
        Ok(FqElem(index))
    }

    fn pack(&self, coeffs: &[u64]) -> FqElem {
        FqElem(coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        if self.r == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.r {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.p == 2 {
            return a;
        }
        let c: Vec<u64> = self.coeffs(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.pack(&c)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = t.exp.len();
                let l = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FqElem(t.exp[if l >= n { l - n } else { l }] as u64)
            }
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.r == 1 {
            return FqElem(poly::mul_mod(a.0, b.0, self.p));
        }
        let prod = poly::mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let red = poly::rem(&prod, &self.modulus, self.p);
        self.pack(&red)
    }

    fn pow_slow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut acc = FqElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a nonnegative exponent.
    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = t.exp.len() as u128;
                let l = (t.log[a.0 as usize] as u128 * (e as u128 % n)) % n;
                FqElem(t.exp[l as usize] as u64)
            }
            None => self.pow_slow(a, e),
        }
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Frobenius power `a^(p^s)`.
    pub fn frobenius(&self, a: FqElem, s: u64) -> FqElem {
        let s = s % self.r as u64;
        let mut acc = a;
        for _ in 0..s {
            acc = self.pow(acc, self.p);
        }
        acc
    }

    fn is_primitive(&self, a: FqElem) -> bool {
        if a.is_zero() {
            return false;
        }
        let order = self.q - 1;
        poly::prime_factors(order)
            .iter()
            .all(|&f| self.pow_slow(a, order / f) != FqElem::ONE)
    }

    /// Coordinates γ with `c = Σ γ_i ω_i^(p^s)`.
    ///
    /// Since each γ_i is fixed by Frobenius, this is the ω-coordinate vector of
    /// `c^(p^(-s))`.
    pub fn fp_coords_twisted(&self, c: FqElem, s: u64) -> Vec<u64> {
        let r = self.r as u64;
        let back = (r - s % r) % r;
        let y = self.coeffs(self.frobenius(c, back));
        self.basis_inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&y)
                    .fold(0u64, |acc, (&m, &v)| (acc + poly::mul_mod(m, v, self.p)) % self.p)
            })
            .collect()
    }

    /// `Σ γ_i ω_i^(p^s)`.
    pub fn combine_twisted(&self, gamma: &[u64], s: u64) -> FqElem {
        gamma.iter().zip(&self.basis).fold(FqElem::ZERO, |acc, (&g, &w)| {
            self.add(acc, self.mul(self.scalar(g as i64), self.frobenius(w, s)))
        })
    }
}

/// Inverse of a square matrix over F_p by Gauss-Jordan elimination.
pub(crate) fn invert_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let s = poly::inv_mod(m[col][col], p)?;
        for j in 0..n {
            m[col][j] = poly::mul_mod(m[col][j], s, p);
            inv[col][j] = poly::mul_mod(inv[col][j], s, p);
        }
        for row in 0..n {
            if row == col || m[row][col] == 0 {
                continue;
            }
            let f = m[row][col];
            for j in 0..n {
                m[row][j] = (m[row][j] + p - poly::mul_mod(f, m[col][j], p)) % p;
                inv[row][j] = (inv[row][j] + p - poly::mul_mod(f, inv[col][j], p)) % p;
            }
        }
    }
    Some(inv)
}

/// Embedding of F_q into a larger field F_{q'}, determined by the image of x.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    source: Arc<FieldSpec>,
    target: Arc<FieldSpec>,
    x_image: FqElem,
}

impl FieldEmbedding {
    /// Finds the embedding sending x to the least root (by packed index) of
    /// the source modulus in the target field. Exhaustive, so the target must
    /// be at most 2^16 elements unless the fields coincide.
    pub fn new(source: Arc<FieldSpec>, target: Arc<FieldSpec>) -> Result<Self> {
        if source.p != target.p || !target.r.is_multiple_of(source.r) {
            return Err(Error::FieldMismatch(format!(
                "F_{}^{} does not embed in F_{}^{}",
                source.p, source.r, target.p, target.r
            )));
        }
        if *source == *target || source.modulus == target.modulus {
            let x_image = target.x();
            return Ok(FieldEmbedding { source, target, x_image });
        }
        if target.q > TABLE_LIMIT {
            return Err(Error::Unsupported("embedding search limited to fields of size <= 2^16".into()));
        }
        let root = (0..target.q).map(FqElem).find(|&a| {
            let val = source
                .modulus
                .iter()
                .rev()
                .fold(FqElem::ZERO, |acc, &c| target.add(target.mul(acc, a), target.scalar(c as i64)));
            val.is_zero()
        });
        let x_image = root.ok_or_else(|| Error::FieldMismatch("source modulus has no root in target".into()))?;
        Ok(FieldEmbedding { source, target, x_image })
    }

    pub fn source(&self) -> &Arc<FieldSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldSpec> {
        &self.target
    }

    pub fn apply(&self, a: FqElem) -> FqElem {
        let t = &self.target;
        self.source
            .coeffs(a)
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| t.add(t.mul(acc, self.x_image), t.scalar(c as i64)))
    }
}
