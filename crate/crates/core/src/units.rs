//! The decomposition `K^× = t^Z × F_q^× × U^(1)` and exponent coordinates on
//! one-units: every `u ≡ 1 mod t` is uniquely `∏ (1 + ω_i t^m)^(a_{m,i})` over
//! `p ∤ m`, `1 <= i <= r`, with `a_{m,i} ∈ Z_p`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{lucas_binom_int, FieldSpec, FqElem, ZpApprox};
use crate::error::{Error, Result};
use crate::series::{one_unit_pow, LaurentSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub v: i64,
    pub zeta: FqElem,
    pub one_unit: LaurentSeries,
}

impl UnitDecomposition {
    /// `t^v · ζ · u`, at the precision of the stored one-unit shifted by `v`.
    pub fn reassemble(&self) -> LaurentSeries {
        self.one_unit.scale(self.zeta).shift(self.v)
    }
}

/// Splits off the valuation and the leading coefficient.
pub fn decompose(x: &LaurentSeries) -> Result<UnitDecomposition> {
    let Some(v) = x.valuation() else {
        return Err(Error::DivisionByZero);
    };
    let zeta = x.coeffs()[0];
    let inv = x.field().inv(zeta)?;
    Ok(UnitDecomposition { v, zeta, one_unit: x.shift(-v).scale(inv) })
}

/// Number of base-p digits of `a_{m,i}` determined by a one-unit known mod
/// `t^n`: the count of `s >= 0` with `m p^s <= n - 1`.
pub fn digit_precision(p: u64, m: u64, n: i64) -> usize {
    if n <= 1 || m as i64 > n - 1 {
        return 0;
    }
    let bound = (n - 1) as u128;
    let mut k = 0;
    let mut mp = m as u128;
    while mp <= bound {
        k += 1;
        mp *= p as u128;
    }
    k
}

/// Exponent coordinates `(m, i) ↦ a_{m,i}` of a one-unit.
///
/// Untracked coordinates with `m < horizon` are zero; with `horizon == None`
/// every untracked coordinate is zero (a finite product).
#[derive(Clone, Debug)]
pub struct OneUnitExponents {
    field: Arc<FieldSpec>,
    horizon: Option<i64>,
    entries: BTreeMap<(u64, usize), ZpApprox>,
}

impl PartialEq for OneUnitExponents {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.horizon == other.horizon
            && self.nonzero().eq(other.nonzero())
    }
}

impl OneUnitExponents {
    pub fn new(field: Arc<FieldSpec>, horizon: Option<i64>) -> Self {
        OneUnitExponents { field, horizon, entries: BTreeMap::new() }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn horizon(&self) -> Option<i64> {
        self.horizon
    }

    /// Sets `a_{m,i}`. Requires `p ∤ m`, `m >= 1` and `1 <= i <= r`.
    pub fn insert(&mut self, m: u64, i: usize, a: ZpApprox) -> Result<()> {
        let p = self.field.p();
        if m == 0 || m.is_multiple_of(p) {
            return Err(Error::InvalidInput(format!("index m = {m} must be positive and prime to {p}")));
        }
        if i == 0 || i > self.field.r() {
            return Err(Error::InvalidInput(format!("basis index {i} outside 1..={}", self.field.r())));
        }
        if a.p() != p {
            return Err(Error::FieldMismatch(format!("exponent in Z_{} for F_{p}", a.p())));
        }
        self.entries.insert((m, i), a);
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<(u64, usize), ZpApprox> {
        &self.entries
    }

    /// Tracked entries that are not zero on their known digits.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(u64, usize), &ZpApprox)> {
        self.entries.iter().filter(|(_, a)| !a.is_zero())
    }

    /// `a_{m,i}`; untracked coordinates below the horizon are zero at the
    /// given precision, those beyond it are unknown.
    pub fn get(&self, m: u64, i: usize, k: usize) -> Result<ZpApprox> {
        if let Some(a) = self.entries.get(&(m, i)) {
            return Ok(a.clone());
        }
        match self.horizon {
            Some(h) if m as i64 >= h => Err(Error::HorizonExceeded(format!(
                "coordinate ({m}, {i}) is beyond the horizon {h}"
            ))),
            _ => Ok(ZpApprox::zero(self.field.p(), k.max(1))),
        }
    }

    /// Entrywise sum over the common horizon.
    pub fn add(&self, other: &Self) -> Self {
        let horizon = match (self.horizon, other.horizon) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut out = OneUnitExponents::new(self.field.clone(), horizon);
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        for &(m, i) in keys {
            if horizon.is_some_and(|h| m as i64 >= h) {
                continue;
            }
            let a = self.entries.get(&(m, i));
            let b = other.entries.get(&(m, i));
            let sum = match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            };
            out.entries.insert((m, i), sum);
        }
        out
    }

    /// Every entry truncated to the digits determined at series precision `n`,
    /// dropping coordinates with no determined digit.
    pub fn truncated_for(&self, n: i64) -> Self {
        let p = self.field.p();
        let horizon = Some(self.horizon.map_or(n, |h| h.min(n)));
        let entries = self
            .entries
            .iter()
            .filter_map(|(&(m, i), a)| {
                let k = digit_precision(p, m, n);
                (k > 0).then(|| ((m, i), a.truncate(k)))
            })
            .collect();
        OneUnitExponents { field: self.field.clone(), horizon, entries }
    }
}

/// `1 + c t^m`, known mod `t^n`.
fn binomial(field: &Arc<FieldSpec>, c: FqElem, m: u64, n: i64) -> LaurentSeries {
    let mut coeffs = vec![FqElem::ZERO; m as usize + 1];
    coeffs[0] = FqElem::ONE;
    coeffs[m as usize] = c;
    LaurentSeries::new(field.clone(), 0, coeffs, n)
}

/// `∏ (1 + ω_i t^m)^(a_{m,i})` mod `t^n`.
pub fn expand(e: &OneUnitExponents, n: i64) -> Result<LaurentSeries> {
    if let Some(h) = e.horizon {
        if n > h {
            return Err(Error::InsufficientPrecision(format!(
                "coordinates are only known below m = {h}, cannot expand mod t^{n}"
            )));
        }
    }
    let field = &e.field;
    let mut acc = LaurentSeries::one(field.clone(), n);
    for (&(m, i), a) in e.nonzero() {
        if m as i64 >= n {
            continue;
        }
        let factor = one_unit_pow(&binomial(field, field.omega(i), m, n), a)?;
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Recovers the exponent coordinates of a one-unit mod `t^n`.
///
/// The residual is divided, lowest order first, by the unique product of
/// `(1 + ω_i^(p^s) t^(m p^s))^(γ_i)` that clears its lowest nonconstant term;
/// `γ_i` is digit `s` of `a_{m,i}`.
pub fn peel(u: &LaurentSeries, n: i64) -> Result<OneUnitExponents> {
    if !u.is_one_unit() {
        return Err(Error::NotOneUnit(format!("{u:?}")));
    }
    let prec = u.prec().expect("one-unit has finite precision");
    if prec < n {
        return Err(Error::InsufficientPrecision(format!("series known mod t^{prec}, peel asked for t^{n}")));
    }
    let field = u.field().clone();
    let p = field.p();
    let r = field.r();
    let one = LaurentSeries::one(field.clone(), n);
    let mut residual = u.truncate(n);
    let mut digits: BTreeMap<(u64, usize), Vec<u64>> = BTreeMap::new();
    loop {
        let x = residual.sub(&one);
        let Some(order) = x.valuation() else { break };
        let c = x.coeffs()[0];
        let (mut m, mut s) = (order as u64, 0u32);
        while m % p == 0 {
            m /= p;
            s += 1;
        }
        let gamma = field.fp_coords_twisted(c, s as u64);
        for i in 1..=r {
            let g = gamma[i - 1];
            if g == 0 {
                continue;
            }
            let k = digit_precision(p, m, n);
            digits.entry((m, i)).or_insert_with(|| vec![0; k])[s as usize] = g;
            let w = field.frobenius(field.omega(i), s as u64);
            let tail: Vec<(i64, FqElem)> = (1..=g)
                .map(|j| {
                    let b = field.scalar(lucas_binom_int(g, j, p) as i64);
                    (order * j as i64, field.mul(b, field.pow(w, j)))
                })
                .filter(|&(deg, _)| deg < n)
                .collect();
            residual = residual.div_by_sparse_one_unit(&tail);
        }
    }
    let mut out = OneUnitExponents::new(field, Some(n));
    for ((m, i), d) in digits {
        out.entries.insert((m, i), ZpApprox::from_digits(p, d)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(p: u64, r: usize) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::default_for(p, r).unwrap())
    }

    fn series(f: &Arc<FieldSpec>, val: i64, idx: &[u64], prec: i64) -> LaurentSeries {
        LaurentSeries::new(f.clone(), val, idx.iter().map(|&i| FqElem(i)).collect(), prec)
    }

    #[test]
    fn decompose_examples() {
        let f2 = field(2, 1);
        let d = decompose(&series(&f2, 2, &[1, 1], 10)).unwrap();
        assert_eq!((d.v, d.zeta), (2, FqElem::ONE));
        assert_eq!(d.one_unit, series(&f2, 0, &[1, 1], 8));
        let one = decompose(&LaurentSeries::one(f2.clone(), 5)).unwrap();
        assert_eq!((one.v, one.zeta, one.one_unit), (0, FqElem::ONE, LaurentSeries::one(f2.clone(), 5)));
        assert_eq!(decompose(&LaurentSeries::zero(f2)), Err(Error::DivisionByZero));

        let f4 = field(2, 2);
        let x = f4.x();
        let s = LaurentSeries::new(f4.clone(), -1, vec![x, FqElem::ZERO, x], 6);
        let d = decompose(&s).unwrap();
        assert_eq!((d.v, d.zeta), (-1, x));
        assert_eq!(d.one_unit, series(&f4, 0, &[1, 0, 1], 7));
        assert_eq!(d.reassemble(), s);
    }

    #[test]
    fn digit_precision_counts() {
        assert_eq!(digit_precision(2, 1, 4), 2);
        assert_eq!(digit_precision(2, 3, 4), 1);
        assert_eq!(digit_precision(2, 1, 1), 0);
        assert_eq!(digit_precision(3, 1, 40), 4);
        assert_eq!(digit_precision(3, 5, 40), 2);
    }

    #[test]
    fn expand_examples() {
        let f2 = field(2, 1);
        let mut e = OneUnitExponents::new(f2.clone(), None);
        assert_eq!(expand(&e, 6).unwrap(), LaurentSeries::one(f2.clone(), 6));
        e.insert(1, 1, ZpApprox::from_i64(2, 1, 3)).unwrap();
        assert_eq!(expand(&e, 6).unwrap(), series(&f2, 0, &[1, 1], 6));
        let mut e3 = OneUnitExponents::new(f2.clone(), None);
        e3.insert(1, 1, ZpApprox::from_i64(2, 3, 2)).unwrap();
        assert_eq!(expand(&e3, 4).unwrap(), series(&f2, 0, &[1, 1, 1, 1], 4));
        let bounded = OneUnitExponents::new(f2, Some(3));
        assert!(matches!(expand(&bounded, 4), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn peel_examples() {
        let f2 = field(2, 1);
        let e = peel(&series(&f2, 0, &[1, 1, 1, 1], 4), 4).unwrap();
        let want = ZpApprox::from_i64(2, 3, 2);
        assert_eq!(e.entries().iter().collect::<Vec<_>>(), vec![(&(1, 1), &want)]);
        assert!(peel(&LaurentSeries::one(f2.clone(), 1), 1).unwrap().entries().is_empty());
        let single = peel(&series(&f2, 0, &[1, 1], 10), 10).unwrap();
        assert_eq!(single.nonzero().count(), 1);
        assert_eq!(single.entries()[&(1, 1)].to_u128(), Some(1));
        assert!(matches!(peel(&series(&f2, 0, &[0, 1], 4), 4), Err(Error::NotOneUnit(_))));
    }

    #[test]
    fn peel_of_two_digit_exponents() {
        // every 2-digit exponent on (1, 1) over F_2, expanded then peeled
        let f2 = field(2, 1);
        for c in 0..4 {
            let mut e = OneUnitExponents::new(f2.clone(), None);
            e.insert(1, 1, ZpApprox::from_i64(2, c, 2)).unwrap();
            let u = expand(&e, 4).unwrap();
            let back = peel(&u, 4).unwrap();
            assert_eq!(back.get(1, 1, 2).unwrap().to_u128(), Some(c as u128));
        }
    }

    fn random_exponents(f: &Arc<FieldSpec>, n: i64, seeds: &[u64]) -> OneUnitExponents {
        let p = f.p();
        let mut e = OneUnitExponents::new(f.clone(), None);
        let mut it = seeds.iter().cycle();
        for m in (1..n as u64).filter(|m| m % p != 0) {
            for i in 1..=f.r() {
                let k = digit_precision(p, m, n);
                let v = *it.next().unwrap();
                if v.is_multiple_of(3) {
                    continue;
                }
                e.insert(m, i, ZpApprox::from_u128(p, v as u128, k)).unwrap();
            }
        }
        e
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn round_trips(q in prop::sample::select(vec![(2u64, 1usize), (2, 2), (3, 2)]), seeds in prop::collection::vec(any::<u64>(), 1..50)) {
            let f = field(q.0, q.1);
            let n = 40;
            let e = random_exponents(&f, n, &seeds);
            let u = expand(&e, n).unwrap();
            let back = peel(&u, n).unwrap();
            prop_assert_eq!(&back, &e.truncated_for(n));
            prop_assert_eq!(expand(&back, n).unwrap(), u);
        }

        #[test]
        fn peel_is_homomorphism(a in prop::collection::vec(0u64..9, 1..30), b in prop::collection::vec(0u64..9, 1..30)) {
            let f = field(3, 2);
            let n = 25;
            let mk = |v: &Vec<u64>| {
                let mut c = vec![1];
                c.extend(v.iter().copied());
                series(&f, 0, &c, n)
            };
            let (u, w) = (mk(&a), mk(&b));
            let lhs = peel(&u.mul(&w), n).unwrap();
            let rhs = peel(&u, n).unwrap().add(&peel(&w, n).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
