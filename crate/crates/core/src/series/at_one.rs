use std::sync::Arc;

use super::LaurentSeries;
use crate::arith::{lucas_binom_int, FieldSpec, FqElem};
use crate::error::{Error, Result};

/// A power series `Σ_{n<T} a_n (z-1)^n + O((z-1)^T)` expanded around 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeriesAtOne {
    field: Arc<FieldSpec>,
    coeffs: Vec<FqElem>,
}

impl PowerSeriesAtOne {
    pub fn new(field: Arc<FieldSpec>, coeffs: Vec<FqElem>) -> Self {
        PowerSeriesAtOne { field, coeffs }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Number of known coefficients T.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> Result<FqElem> {
        self.coeffs.get(n).copied().ok_or_else(|| {
            Error::InsufficientPrecision(format!(
                "coefficient {n} requested from a series with {} known terms",
                self.coeffs.len()
            ))
        })
    }

    /// The k-th Hasse derivative `Σ binom(n, k) a_n (z-1)^(n-k)`.
    pub fn hasse(&self, k: usize) -> Self {
        let f = &self.field;
        let p = f.p();
        let coeffs = (k..self.coeffs.len())
            .map(|n| f.mul(f.scalar(lucas_binom_int(n as u64, k as u64, p) as i64), self.coeffs[n]))
            .collect();
        PowerSeriesAtOne { field: f.clone(), coeffs }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.len().min(other.len());
        let mut out = vec![FqElem::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        PowerSeriesAtOne { field: f.clone(), coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        PowerSeriesAtOne { field: f.clone(), coeffs }
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = &self.field;
        PowerSeriesAtOne { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// The same coefficients read as a series in `t = z - 1`.
    pub fn to_laurent(&self) -> LaurentSeries {
        LaurentSeries::new(self.field.clone(), 0, self.coeffs.clone(), self.coeffs.len() as i64)
    }

    /// `f(g) = Σ a_n (g - 1)^n` for a one-unit `g`, by Horner's rule.
    ///
    /// With `w = val(g - 1)`, the unknown tail of `f` only affects `t^(T w)` and
    /// beyond, so the result is known mod `t^min(T w, prec g)`.
    pub fn compose(&self, g: &LaurentSeries) -> Result<LaurentSeries> {
        if !g.is_one_unit() {
            return Err(Error::NotOneUnit(format!("{g:?}")));
        }
        let gp = g.prec().expect("one-unit has finite precision");
        let x = g.sub(&LaurentSeries::one(g.field().clone(), gp));
        let w = x.val_bound().max(1);
        let prec = (self.len() as i64).saturating_mul(w).min(gp);
        let f = &self.field;
        let mut acc = LaurentSeries::big_o(f.clone(), prec);
        for &a in self.coeffs.iter().rev() {
            acc = acc.mul(&x).add(&LaurentSeries::monomial(f.clone(), a, 0, prec)).truncate(prec);
        }
        Ok(acc.truncate(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hasse_examples() {
        let f = Arc::new(FieldSpec::default_for(5, 1).unwrap());
        // (z-1)^3
        let s = PowerSeriesAtOne::new(f.clone(), vec![FqElem(0), FqElem(0), FqElem(0), FqElem(1), FqElem(0)]);
        assert_eq!(s.hasse(2).coeffs(), &[FqElem(0), FqElem(3), FqElem(0)]);
        let c = PowerSeriesAtOne::new(f, vec![FqElem(4), FqElem(0), FqElem(0)]);
        assert!(c.hasse(1).coeffs().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn compose_identity() {
        let f = Arc::new(FieldSpec::default_for(3, 1).unwrap());
        // f(z) = z
        let id = PowerSeriesAtOne::new(f.clone(), vec![FqElem(1), FqElem(1), FqElem(0), FqElem(0)]);
        let g = LaurentSeries::new(f.clone(), 0, vec![FqElem(1), FqElem(0), FqElem(2), FqElem(1)], 6);
        assert_eq!(id.compose(&g).unwrap(), g.truncate(6));
    }
}
