use std::fmt;
use std::sync::Arc;

use crate::arith::{binom_signed, FieldSpec, FqElem};
use crate::error::{Error, Result};

/// A Laurent series over F_q known modulo `t^prec`.
///
/// Three shapes are possible:
/// * the exact zero (`prec == None`), which absorbs every product;
/// * `O(t^N)`: no coefficient below `N` is nonzero, nothing above is known;
/// * a series with nonzero leading coefficient at `val` and coefficients for
///   every exponent in `val..prec`.
#[derive(Clone)]
pub struct LaurentSeries {
    field: Arc<FieldSpec>,
    val: i64,
    coeffs: Vec<FqElem>,
    prec: Option<i64>,
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
            && self.val == other.val
            && self.coeffs == other.coeffs
            && self.prec == other.prec
    }
}

impl Eq for LaurentSeries {}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prec {
            None => write!(f, "ZERO"),
            Some(n) => {
                let mut first = true;
                for (i, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "{:?}*t^{}", self.field.coeffs(*c), self.val + i as i64)?;
                }
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(t^{n})")
            }
        }
    }
}

impl LaurentSeries {
    /// The exact zero series.
    pub fn zero(field: Arc<FieldSpec>) -> Self {
        LaurentSeries { field, val: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(t^n)`: zero to precision `n`.
    pub fn big_o(field: Arc<FieldSpec>, n: i64) -> Self {
        LaurentSeries { field, val: n, coeffs: Vec::new(), prec: Some(n) }
    }

    /// `Σ coeffs[i] t^(val+i) + O(t^prec)`. Coefficients at or beyond `prec`
    /// are dropped; missing ones below `prec` are taken to be zero.
    pub fn new(field: Arc<FieldSpec>, val: i64, mut coeffs: Vec<FqElem>, prec: i64) -> Self {
        let len = (prec - val).max(0) as usize;
        coeffs.resize(len, FqElem::ZERO);
        Self::normalized(field, val, coeffs, prec)
    }

    pub fn one(field: Arc<FieldSpec>, prec: i64) -> Self {
        Self::monomial(field, FqElem::ONE, 0, prec)
    }

    /// `c t^n + O(t^prec)`.
    pub fn monomial(field: Arc<FieldSpec>, c: FqElem, n: i64, prec: i64) -> Self {
        Self::new(field, n, vec![c], prec)
    }

    fn normalized(field: Arc<FieldSpec>, val: i64, coeffs: Vec<FqElem>, prec: i64) -> Self {
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::big_o(field, prec.max(val)),
            Some(lead) => LaurentSeries {
                field,
                val: val + lead as i64,
                coeffs: coeffs[lead..].to_vec(),
                prec: Some(prec),
            },
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn is_exact_zero(&self) -> bool {
        self.prec.is_none()
    }

    /// True when no known coefficient is nonzero (exact zero or `O(t^N)`).
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, when a nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Lower bound for the valuation: the true valuation, or the precision for
    /// `O(t^N)`. Meaningless for the exact zero.
    pub fn val_bound(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    /// Known coefficients for exponents `val..prec`.
    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Result<FqElem> {
        match self.prec {
            None => Ok(FqElem::ZERO),
            Some(p) if n >= p => Err(Error::InsufficientPrecision(format!(
                "coefficient of t^{n} requested from a series known mod t^{p}"
            ))),
            _ if n < self.val => Ok(FqElem::ZERO),
            _ => Ok(self.coeffs[(n - self.val) as usize]),
        }
    }

    /// Lower the precision to `min(prec, n)`.
    pub fn truncate(&self, n: i64) -> Self {
        match self.prec {
            None => Self::big_o(self.field.clone(), n),
            Some(p) if p <= n => self.clone(),
            Some(_) => {
                let keep = (n - self.val).max(0) as usize;
                Self::normalized(self.field.clone(), self.val, self.coeffs[..keep.min(self.coeffs.len())].to_vec(), n)
            }
        }
    }

    /// Equality of all coefficients below `n` (both must be known there).
    pub fn agrees_to(&self, other: &Self, n: i64) -> bool {
        let known = |s: &Self| s.prec.is_none_or(|p| p >= n);
        if !known(self) || !known(other) {
            return false;
        }
        let lo = self.val.min(other.val);
        (lo..n).all(|i| self.coeff(i).ok() == other.coeff(i).ok())
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.val + i as i64, c))
    }

    fn check_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "series over different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        let prec = match (self.prec, other.prec) {
            (None, None) => return self.clone(),
            (a, b) => a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX)),
        };
        let f = &self.field;
        let start = self.val_or(prec).min(other.val_or(prec));
        let mut out = vec![FqElem::ZERO; (prec - start).max(0) as usize];
        for s in [self, other] {
            for (n, c) in s.nonzero_terms().filter(|&(n, _)| n < prec) {
                let slot = &mut out[(n - start) as usize];
                *slot = f.add(*slot, c);
            }
        }
        Self::normalized(f.clone(), start, out, prec)
    }

    fn val_or(&self, prec: i64) -> i64 {
        if self.prec.is_none() {
            prec
        } else {
            self.val.min(prec)
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplication by a constant of F_q.
    pub fn scale(&self, c: FqElem) -> Self {
        if self.prec.is_none() {
            return self.clone();
        }
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        Self::normalized(f.clone(), self.val, coeffs, self.prec.unwrap())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        match self.prec {
            None => self.clone(),
            Some(p) => LaurentSeries { val: self.val + k, prec: Some(p + k), ..self.clone() },
        }
    }

    /// Product, known to precision `min(prec f + val g, prec g + val f)`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        let (Some(pf), Some(pg)) = (self.prec, other.prec) else {
            return Self::zero(self.field.clone());
        };
        let prec = (pf + other.val).min(pg + self.val);
        let start = self.val + other.val;
        let len = (prec - start).max(0) as usize;
        let f = &self.field;
        let mut out = vec![FqElem::ZERO; len];
        // iterate over the sparser factor
        let (a, b) = if self.nonzero_terms().count() <= other.nonzero_terms().count() {
            (self, other)
        } else {
            (other, self)
        };
        for (i, ci) in a.nonzero_terms() {
            let off = (i - a.val) as usize;
            if off >= len {
                break;
            }
            for (j, &cj) in b.coeffs.iter().enumerate().take(len - off) {
                if !cj.is_zero() {
                    let slot = &mut out[off + j];
                    *slot = f.add(*slot, f.mul(ci, cj));
                }
            }
        }
        Self::normalized(f.clone(), start, out, prec)
    }

    /// Multiplicative inverse; relative precision is preserved.
    pub fn inv(&self) -> Result<Self> {
        let Some(prec) = self.prec else {
            return Err(Error::DivisionByZero);
        };
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let len = self.coeffs.len();
        let a0_inv = f.inv(self.coeffs[0])?;
        let minus_a0_inv = f.neg(a0_inv);
        let tail: Vec<(usize, FqElem)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect();
        let mut g = Vec::with_capacity(len);
        g.push(a0_inv);
        for n in 1..len {
            let mut acc = FqElem::ZERO;
            for &(i, c) in tail.iter().take_while(|(i, _)| *i <= n) {
                acc = f.add(acc, f.mul(c, g[n - i]));
            }
            g.push(f.mul(minus_a0_inv, acc));
        }
        let val = -self.val;
        Ok(Self::normalized(f.clone(), val, g, val + (prec - self.val)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Nonnegative integer power by repeated squaring. `f^0` is returned as 1
    /// at the relative precision of `f`.
    pub fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            let rel = self.prec.map_or(1, |p| (p - self.val).max(1));
            return Self::one(self.field.clone(), rel);
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("e >= 1")
    }

    /// `f(t)^(p^s) = Σ a_n^(p^s) t^(n p^s)`, known mod `t^(prec p^s)`.
    pub fn frobenius(&self, s: u32) -> Self {
        let Some(prec) = self.prec else {
            return self.clone();
        };
        let f = &self.field;
        let step = f.p().pow(s) as i64;
        let mut out = vec![FqElem::ZERO; ((prec - self.val) * step) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * step as usize] = f.frobenius(c, s as u64);
        }
        Self::normalized(f.clone(), self.val * step, out, prec * step)
    }

    /// The k-th Hasse derivative in t: `Σ binom(n, k) a_n t^(n-k)`.
    pub fn hasse(&self, k: u64) -> Self {
        let Some(prec) = self.prec else {
            return self.clone();
        };
        let f = &self.field;
        let p = f.p();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let n = self.val + i as i64;
                f.mul(f.scalar(binom_signed(n, k, p) as i64), c)
            })
            .collect();
        Self::normalized(f.clone(), self.val - k as i64, coeffs, prec - k as i64)
    }

    /// True when the series is `1 + O(t)`, known to at least `t^1`.
    pub fn is_one_unit(&self) -> bool {
        self.prec.is_some_and(|p| p >= 1) && self.val == 0 && self.coeffs.first() == Some(&FqElem::ONE)
    }

    /// Division by a one-unit `1 + Σ_j b_j t^(n j)` given by its sparse tail,
    /// preserving precision.
    pub(crate) fn div_by_sparse_one_unit(&self, tail: &[(i64, FqElem)]) -> Self {
        let Some(prec) = self.prec else {
            return self.clone();
        };
        let f = &self.field;
        let mut h = self.coeffs.clone();
        for idx in 0..h.len() {
            let mut acc = h[idx];
            for &(m, b) in tail {
                if m as usize > idx {
                    break;
                }
                acc = f.sub(acc, f.mul(b, h[idx - m as usize]));
            }
            h[idx] = acc;
        }
        Self::normalized(f.clone(), self.val, h, prec)
    }
}
