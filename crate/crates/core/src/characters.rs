//! Continuous characters of the one-unit group `U^(1)` of `K = F_q((t))` with
//! values in one-units of `L = F_q'((t_L))`, `t = t_L^e`, and the locally
//! analytic characters `z ↦ z^c`, `c ∈ Z_p`.
//!
//! A continuous character is determined by its values on the topological
//! generators `1 + ω_i t^m`, `p ∤ m`. Those values are stored up to a horizon;
//! beyond it the character is asserted trivial to the target precision.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{lucas_binom, FieldEmbedding, FieldSpec, FqElem, ZpApprox};
use crate::error::{Error, Result};
use crate::series::{one_unit_pow, LaurentSeries, PowerSeriesAtOne};
use crate::units::{digit_precision, peel};

/// A continuous character given by its generator table.
#[derive(Clone, Debug)]
pub struct ContinuousCharacter {
    source: Arc<FieldSpec>,
    target: Arc<FieldSpec>,
    ramification: u64,
    horizon: u64,
    target_prec: i64,
    table: BTreeMap<(u64, usize), LaurentSeries>,
}

/// `χ_c(z) = z^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticCharacter {
    pub c: ZpApprox,
}

/// Why a character failed the analyticity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `a_n` for `n = p^i` is not in the prime field.
    NotInPrimeField { n: u64 },
    /// `a_n` differs from the binomial pattern of the recovered exponent.
    CoefficientMismatch { n: u64 },
    /// The value on `1 + ω_i t^m` differs from `(1 + ω_i t^m)^c`.
    Generator { m: u64, i: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Analytic { c: ZpApprox },
    NotAnalytic { witness: Witness },
}

/// `1 + c t^m` known mod `t^n`.
fn binomial(field: &Arc<FieldSpec>, c: FqElem, m: u64, n: i64) -> LaurentSeries {
    let mut coeffs = vec![FqElem::ZERO; m as usize + 1];
    coeffs[0] = FqElem::ONE;
    coeffs[m as usize] = c;
    LaurentSeries::new(field.clone(), 0, coeffs, n)
}

/// `val(u - 1)`, or `None` when `u ≡ 1` to its precision.
fn unit_order(u: &LaurentSeries) -> Option<i64> {
    let n = u.prec()?;
    u.sub(&LaurentSeries::one(u.field().clone(), n)).valuation()
}

impl ContinuousCharacter {
    /// Validates a generator table. Keys are `(m, i)` with `p ∤ m`,
    /// `m < horizon` and `1 <= i <= r`; values are one-units over the target
    /// known to at least `t_L^target_prec`. Missing keys below the horizon
    /// stand for the trivial value.
    pub fn new(
        source: Arc<FieldSpec>,
        target: Arc<FieldSpec>,
        ramification: u64,
        horizon: u64,
        target_prec: i64,
        table: BTreeMap<(u64, usize), LaurentSeries>,
    ) -> Result<Self> {
        if source.p() != target.p() || !target.r().is_multiple_of(source.r()) {
            return Err(Error::FieldMismatch("target residue field must extend the source".into()));
        }
        if ramification == 0 || target_prec < 1 {
            return Err(Error::InvalidInput("ramification and target precision must be positive".into()));
        }
        let p = source.p();
        let mut clean = BTreeMap::new();
        for ((m, i), v) in table {
            if m == 0 || m % p == 0 || m >= horizon || i == 0 || i > source.r() {
                return Err(Error::InvalidInput(format!("table key ({m}, {i}) is not a tracked generator")));
            }
            if *v.field().as_ref() != *target {
                return Err(Error::FieldMismatch(format!("table value at ({m}, {i}) is not over the target field")));
            }
            if !v.is_one_unit() {
                return Err(Error::NotOneUnit(format!("table value at ({m}, {i})")));
            }
            if v.prec().unwrap() < target_prec {
                return Err(Error::InsufficientPrecision(format!(
                    "table value at ({m}, {i}) known mod t^{}, need t^{target_prec}",
                    v.prec().unwrap()
                )));
            }
            let v = v.truncate(target_prec);
            if unit_order(&v).is_some() {
                clean.insert((m, i), v);
            }
        }
        Ok(ContinuousCharacter { source, target, ramification, horizon, target_prec, table: clean })
    }

    pub fn source(&self) -> &Arc<FieldSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldSpec> {
        &self.target
    }

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn target_prec(&self) -> i64 {
        self.target_prec
    }

    /// Nontrivial table entries.
    pub fn table(&self) -> &BTreeMap<(u64, usize), LaurentSeries> {
        &self.table
    }

    /// `χ(1 + ω_i t^m)` for any generator.
    pub fn generator_value(&self, m: u64, i: usize) -> LaurentSeries {
        self.table
            .get(&(m, i))
            .cloned()
            .unwrap_or_else(|| LaurentSeries::one(self.target.clone(), self.target_prec))
    }

    /// Source precision needed to pin down `χ(u)` mod `t_L^N`: every tracked
    /// coordinate must be known, each with enough digits for its generator.
    pub fn required_source_prec(&self) -> i64 {
        let p = self.source.p() as u128;
        let n = self.target_prec as u128;
        let mut need = self.horizon as i64;
        for (&(m, _), v) in &self.table {
            let w = unit_order(v).expect("stored entries are nontrivial") as u128;
            // smallest p^K with w p^K >= N, then m p^(K-1) must lie below the precision
            let mut pk = 1u128;
            while w * pk < n {
                pk *= p;
            }
            if pk > 1 {
                need = need.max((m as u128 * (pk / p)) as i64 + 1);
            }
        }
        need
    }

    /// `χ(u)` mod `t_L^N`, from the exponent coordinates of `u`.
    pub fn eval(&self, u: &LaurentSeries) -> Result<LaurentSeries> {
        if *u.field().as_ref() != *self.source {
            return Err(Error::FieldMismatch("argument is not over the source field".into()));
        }
        if !u.is_one_unit() {
            return Err(Error::NotOneUnit(format!("{u:?}")));
        }
        let nu = u.prec().unwrap();
        let coords = peel(u, nu)?;
        let p = self.source.p();
        let mut acc = LaurentSeries::one(self.target.clone(), self.target_prec);
        for (&(m, i), v) in &self.table {
            if m as i64 >= nu {
                return Err(Error::HorizonExceeded(format!(
                    "generator ({m}, {i}) is nontrivial but the argument is only known mod t^{nu}"
                )));
            }
            let k = digit_precision(p, m, nu);
            let a = coords.get(m, i, k)?;
            // zero exponents still need enough digits: a ≡ 0 mod p^k only
            acc = acc.mul(&one_unit_pow(v, &a)?);
        }
        Ok(acc)
    }

    /// Coefficients `a_n`, `n < T`, of `χ(z) = Σ a_n (z - 1)^n`, read off
    /// `χ(1 + t) = Σ a_n t_L^(e n)`.
    pub fn series_at_one(&self, t: usize) -> Result<PowerSeriesAtOne> {
        let e = self.ramification as i64;
        if t > 0 && e * (t as i64 - 1) >= self.target_prec {
            return Err(Error::InsufficientPrecision(format!(
                "{t} coefficients need the target known beyond t_L^{}, have t_L^{}",
                e * (t as i64 - 1),
                self.target_prec
            )));
        }
        let nu = self.required_source_prec().max(2);
        let z = binomial(&self.source, FqElem::ONE, 1, nu);
        let value = self.eval(&z)?;
        let coeffs = (0..t as i64).map(|n| value.coeff(e * n)).collect::<Result<Vec<_>>>()?;
        Ok(PowerSeriesAtOne::new(self.target.clone(), coeffs))
    }

    /// Two-stage analyticity test at truncation `T`.
    ///
    /// The coefficient pattern of `χ(1 + t)` fixes a candidate `c`; the verdict
    /// is positive only if `z^c` also matches every generator value, since the
    /// pattern alone cannot see the coordinates `m > 1`.
    pub fn is_locally_analytic(&self, t: usize) -> Result<Verdict> {
        let a = self.series_at_one(t)?;
        let p = self.source.p();
        let digits = available_digits(p, t);
        if digits == 0 {
            return Err(Error::InsufficientPrecision("need at least two coefficients".into()));
        }
        let c = match recover_exponent(&a, digits) {
            Ok(c) => c,
            Err(Error::NotAnalytic(_)) => {
                let n = (0..digits as u32)
                    .map(|i| p.pow(i))
                    .find(|&n| self.target.prime_field_value(a.coeffs()[n as usize]).is_none())
                    .expect("recover_exponent rejected some digit");
                return Ok(Verdict::NotAnalytic { witness: Witness::NotInPrimeField { n } });
            }
            Err(e) => return Err(e),
        };
        let analytic = AnalyticCharacter { c: c.clone() };
        let pattern = analytic.series_at_one(&self.target, t)?;
        if let Some(n) = (0..t).find(|&n| pattern.coeffs()[n] != a.coeffs()[n]) {
            return Ok(Verdict::NotAnalytic { witness: Witness::CoefficientMismatch { n: n as u64 } });
        }

        let emb = FieldEmbedding::new(self.source.clone(), self.target.clone())?;
        let e = self.ramification as i64;
        let pk = (p as i64).saturating_pow(digits as u32);
        let last = (self.horizon as i64).max((self.target_prec + e - 1) / e);
        for m in (1..last as u64).filter(|m| m % p != 0) {
            for i in 1..=self.source.r() {
                let prec = self.target_prec.min((e * m as i64).saturating_mul(pk));
                let g = binomial(&self.target, emb.apply(self.source.omega(i)), m * e as u64, prec);
                let want = analytic.eval(&g)?;
                if !self.generator_value(m, i).agrees_to(&want, prec) {
                    return Ok(Verdict::NotAnalytic { witness: Witness::Generator { m, i } });
                }
            }
        }
        Ok(Verdict::Analytic { c })
    }
}

/// Number of exponent digits readable from `T` coefficients: the largest `k`
/// with `p^(k-1) < T`.
pub fn available_digits(p: u64, t: usize) -> usize {
    let mut k = 0;
    let mut pk = 1u128;
    while pk < t as u128 {
        k += 1;
        pk *= p as u128;
    }
    k
}

impl AnalyticCharacter {
    pub fn eval(&self, z: &LaurentSeries) -> Result<LaurentSeries> {
        one_unit_pow(z, &self.c)
    }

    /// `a_n = binom(c, n)`, `n < T`.
    pub fn series_at_one(&self, field: &Arc<FieldSpec>, t: usize) -> Result<PowerSeriesAtOne> {
        if self.c.p() != field.p() {
            return Err(Error::FieldMismatch("exponent and field characteristics differ".into()));
        }
        let coeffs = (0..t as u64)
            .map(|n| Ok(field.scalar(lucas_binom(&self.c, n)? as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeriesAtOne::new(field.clone(), coeffs))
    }
}

/// Reads `c mod p^k` from `c_i = a_(p^i)`, each of which must lie in F_p.
pub fn recover_exponent(a: &PowerSeriesAtOne, k: usize) -> Result<ZpApprox> {
    let field = a.field();
    let p = field.p();
    if k == 0 {
        return Err(Error::InvalidInput("digit count must be positive".into()));
    }
    let top = (p as u128).checked_pow(k as u32 - 1).unwrap_or(u128::MAX);
    if (a.len() as u128) <= top {
        return Err(Error::InsufficientPrecision(format!(
            "{k} digits need more than {top} coefficients, have {}",
            a.len()
        )));
    }
    let digits = (0..k as u32)
        .map(|i| {
            let n = p.pow(i) as usize;
            field.prime_field_value(a.coeffs()[n]).ok_or_else(|| {
                Error::NotAnalytic(format!("coefficient a_{n} is not in the prime field"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ZpApprox::from_digits(p, digits)
}

/// The character `u ↦ u^c` as a generator table over the source field.
pub fn diagonal_embed(c: &ZpApprox, source: Arc<FieldSpec>, horizon: u64, prec: i64) -> Result<ContinuousCharacter> {
    let emb = FieldEmbedding::new(source.clone(), source)?;
    diagonal_embed_into(c, &emb, 1, horizon, prec)
}

/// `u ↦ u^c` into a target with ramification `e`. The horizon is raised to
/// `ceil(N / e)` if needed, since generators below it have nontrivial images.
pub fn diagonal_embed_into(
    c: &ZpApprox,
    emb: &FieldEmbedding,
    e: u64,
    horizon: u64,
    prec: i64,
) -> Result<ContinuousCharacter> {
    let source = emb.source().clone();
    let target = emb.target().clone();
    let p = source.p();
    let horizon = horizon.max((prec as u64).div_ceil(e));
    let mut table = BTreeMap::new();
    for m in (1..horizon).filter(|m| m % p != 0) {
        for i in 1..=source.r() {
            let g = binomial(&target, emb.apply(source.omega(i)), m * e, prec);
            table.insert((m, i), one_unit_pow(&g, c)?);
        }
    }
    ContinuousCharacter::new(source, target, e, horizon, prec, table)
}

/// `χ_c ∘ χ_c' = χ_(c c')`.
pub fn compose_analytic(c: &ZpApprox, c2: &ZpApprox) -> AnalyticCharacter {
    AnalyticCharacter { c: c.mul(c2) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{expand, OneUnitExponents};
    use proptest::prelude::*;

    fn field(p: u64, r: usize) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::default_for(p, r).unwrap())
    }

    fn series(f: &Arc<FieldSpec>, idx: &[u64], prec: i64) -> LaurentSeries {
        LaurentSeries::new(f.clone(), 0, idx.iter().map(|&i| FqElem(i)).collect(), prec)
    }

    #[test]
    fn trivial_character() {
        let f = field(2, 2);
        let chi = ContinuousCharacter::new(f.clone(), f.clone(), 1, 8, 8, BTreeMap::new()).unwrap();
        let u = series(&f, &[1, 2, 3, 1, 0, 2, 1, 1, 3], 9);
        assert_eq!(chi.eval(&u).unwrap(), LaurentSeries::one(f.clone(), 8));
        let a = chi.series_at_one(6).unwrap();
        assert_eq!(a.coeffs(), &[FqElem(1), FqElem(0), FqElem(0), FqElem(0), FqElem(0), FqElem(0)]);
        assert_eq!(chi.is_locally_analytic(6).unwrap(), Verdict::Analytic { c: ZpApprox::zero(2, 3) });
    }

    #[test]
    fn single_generator_hit() {
        let f = field(2, 1);
        let mut table = BTreeMap::new();
        table.insert((1, 1), series(&f, &[1, 1], 8));
        let chi = ContinuousCharacter::new(f.clone(), f.clone(), 1, 4, 8, table).unwrap();
        assert_eq!(chi.eval(&series(&f, &[1, 1], 8)).unwrap(), series(&f, &[1, 1], 8));
    }

    #[test]
    fn horizon_is_enforced() {
        let f = field(2, 1);
        let mut table = BTreeMap::new();
        table.insert((5, 1), series(&f, &[1, 1], 8));
        let chi = ContinuousCharacter::new(f.clone(), f.clone(), 1, 6, 8, table).unwrap();
        assert!(matches!(chi.eval(&series(&f, &[1, 1], 4)), Err(Error::HorizonExceeded(_))));
    }

    #[test]
    fn analytic_examples() {
        let f = field(2, 1);
        let z = series(&f, &[1, 1], 8);
        let c = AnalyticCharacter { c: ZpApprox::from_i64(2, 3, 4) };
        let want = z.mul(&series(&f, &[1, 0, 1], 8));
        assert_eq!(c.eval(&z).unwrap(), want);
        let id = AnalyticCharacter { c: ZpApprox::one(2, 4) };
        assert_eq!(id.eval(&z).unwrap(), z);
        let fr = AnalyticCharacter { c: ZpApprox::from_i64(2, 4, 4) };
        assert_eq!(fr.eval(&z).unwrap(), z.frobenius(2).truncate(8));
    }

    #[test]
    fn recover_examples() {
        let f2 = field(2, 1);
        let pattern = |bits: &[u64]| PowerSeriesAtOne::new(f2.clone(), bits.iter().map(|&b| FqElem(b)).collect());
        assert_eq!(recover_exponent(&pattern(&[1, 1, 1, 1]), 2).unwrap(), ZpApprox::from_i64(2, 3, 2));
        assert!(recover_exponent(&pattern(&[1, 0, 0, 0, 0]), 3).unwrap().is_zero());
        let f4 = field(2, 2);
        let a = PowerSeriesAtOne::new(f4.clone(), vec![FqElem(1), f4.x(), FqElem(0)]);
        assert!(matches!(recover_exponent(&a, 2), Err(Error::NotAnalytic(_))));
        assert!(matches!(recover_exponent(&pattern(&[1, 1]), 2), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn diagonal_examples() {
        let f = field(2, 1);
        let three = ZpApprox::from_i64(2, 3, 4);
        let chi = diagonal_embed(&three, f.clone(), 8, 8).unwrap();
        let a = chi.series_at_one(6).unwrap();
        let bits: Vec<u64> = a.coeffs().iter().map(|c| c.index()).collect();
        assert_eq!(bits, vec![1, 1, 1, 1, 0, 0]);
        let e = peel(&chi.generator_value(1, 1), 8).unwrap();
        let mut want = OneUnitExponents::new(f.clone(), Some(8));
        want.insert(1, 1, three.truncate(3)).unwrap();
        assert_eq!(e, want);
        assert_eq!(chi.is_locally_analytic(8).unwrap(), Verdict::Analytic { c: three.truncate(3) });
        let zero = diagonal_embed(&ZpApprox::zero(2, 4), f.clone(), 8, 8).unwrap();
        assert!(zero.table().is_empty());
        let one = diagonal_embed(&ZpApprox::one(2, 4), f.clone(), 8, 8).unwrap();
        assert_eq!(one.generator_value(3, 1), series(&f, &[1, 0, 0, 1], 8));
    }

    #[test]
    fn off_diagonal_character_is_caught() {
        let f = field(2, 1);
        let mut table = BTreeMap::new();
        table.insert((1, 1), series(&f, &[1, 1], 8));
        let chi = ContinuousCharacter::new(f.clone(), f.clone(), 1, 4, 8, table).unwrap();
        assert_eq!(
            chi.is_locally_analytic(8).unwrap(),
            Verdict::NotAnalytic { witness: Witness::Generator { m: 3, i: 1 } }
        );
    }

    #[test]
    fn non_prime_field_coefficient_is_caught() {
        let f = field(2, 2);
        let mut table = BTreeMap::new();
        table.insert((1, 1), LaurentSeries::new(f.clone(), 0, vec![FqElem(1), f.x()], 8));
        let chi = ContinuousCharacter::new(f.clone(), f.clone(), 1, 4, 8, table).unwrap();
        assert_eq!(
            chi.is_locally_analytic(8).unwrap(),
            Verdict::NotAnalytic { witness: Witness::NotInPrimeField { n: 1 } }
        );
    }

    #[test]
    fn ramified_target() {
        let k = field(2, 1);
        let l = field(2, 2);
        let emb = FieldEmbedding::new(k.clone(), l.clone()).unwrap();
        let c = ZpApprox::from_i64(2, 5, 6);
        let chi = diagonal_embed_into(&c, &emb, 2, 4, 16).unwrap();
        let a = chi.series_at_one(8).unwrap();
        let want = AnalyticCharacter { c: c.clone() }.series_at_one(&l, 8).unwrap();
        assert_eq!(a, want);
        assert_eq!(chi.is_locally_analytic(8).unwrap(), Verdict::Analytic { c: c.truncate(3) });
    }

    #[test]
    fn compose_examples() {
        let f = field(2, 1);
        let c3 = ZpApprox::from_i64(2, 3, 8);
        let c5 = ZpApprox::from_i64(2, 5, 8);
        assert_eq!(compose_analytic(&c3, &ZpApprox::one(2, 8)).c, c3);
        assert!(compose_analytic(&c3, &ZpApprox::zero(2, 8)).c.is_zero());
        let z = series(&f, &[1, 1], 16);
        let nested = one_unit_pow(&one_unit_pow(&z, &c5).unwrap(), &c3).unwrap();
        assert_eq!(compose_analytic(&c3, &c5).eval(&z).unwrap(), nested);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn diagonal_matches_analytic(cval in any::<u32>(), tail in prop::collection::vec(0u64..4, 1..20)) {
            let f = field(2, 2);
            let c = ZpApprox::from_u128(2, cval as u128, 10);
            let chi = diagonal_embed(&c, f.clone(), 12, 12).unwrap();
            let mut idx = vec![1];
            idx.extend(tail);
            let n = chi.required_source_prec().max(idx.len() as i64);
            let u = series(&f, &idx, n);
            prop_assert_eq!(chi.eval(&u).unwrap(), one_unit_pow(&u, &c).unwrap().truncate(12));
        }

        #[test]
        fn eval_is_multiplicative(
            vals in prop::collection::vec(prop::collection::vec(0u64..4, 6), 4),
            a in prop::collection::vec(0u64..4, 30),
            b in prop::collection::vec(0u64..4, 30),
        ) {
            let f = field(2, 2);
            let keys = [(1u64, 1usize), (1, 2), (3, 1), (5, 2)];
            let mut table = BTreeMap::new();
            for (key, v) in keys.iter().zip(&vals) {
                let mut c = vec![1];
                c.extend(v.iter().copied());
                table.insert(*key, series(&f, &c, 6));
            }
            let chi = ContinuousCharacter::new(f.clone(), f.clone(), 1, 7, 6, table).unwrap();
            let n = chi.required_source_prec();
            let mk = |v: &Vec<u64>| {
                let mut c = vec![1];
                c.extend(v.iter().copied());
                series(&f, &c, n)
            };
            let (u, w) = (mk(&a), mk(&b));
            let lhs = chi.eval(&u.mul(&w)).unwrap();
            let rhs = chi.eval(&u).unwrap().mul(&chi.eval(&w).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn table_built_from_exponents(a in 0u64..64, b in 0u64..64) {
            // a character sending the generators to chosen products is
            // evaluated consistently with expand
            let f = field(2, 1);
            let mut e = OneUnitExponents::new(f.clone(), None);
            e.insert(1, 1, ZpApprox::from_u128(2, a as u128, 6)).unwrap();
            e.insert(3, 1, ZpApprox::from_u128(2, b as u128, 6)).unwrap();
            let img = expand(&e, 10).unwrap();
            let mut table = BTreeMap::new();
            table.insert((1, 1), img.clone());
            let chi = ContinuousCharacter::new(f.clone(), f.clone(), 1, 2, 10, table).unwrap();
            let z = series(&f, &[1, 1], chi.required_source_prec());
            prop_assert_eq!(chi.eval(&z).unwrap(), img);
        }
    }
}
