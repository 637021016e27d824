use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::projcoh::{valuation, LieGen, NormValue};

/// Exponent vector of a PBW monomial `x_1^(k_1) ⋯ x_s^(k_s)`.
pub type Monomial = Vec<u32>;

/// The PBW basis order of `gl_{d+1}`: root vectors `L_(u,v)` in
/// lexicographic order of `(u, v)`, then `L_0, …, L_d`.
pub fn basis(d: usize) -> Vec<LieGen> {
    let mut out = Vec::with_capacity((d + 1) * (d + 1));
    for u in 0..=d {
        for v in 0..=d {
            if u != v {
                out.push(LieGen::Root(u, v));
            }
        }
    }
    out.extend((0..=d).map(LieGen::Torus));
    out
}

/// Position of a generator in [`basis`].
pub fn index_of(d: usize, g: LieGen) -> usize {
    match g {
        // d entries per row u, skipping the diagonal
        LieGen::Root(u, v) => u * d + if v > u { v - 1 } else { v },
        LieGen::Torus(j) => d * (d + 1) + j,
    }
}

/// The matrix unit `E_(a,b)` as a generator.
fn unit(a: usize, b: usize) -> LieGen {
    if a == b {
        LieGen::Torus(a)
    } else {
        LieGen::Root(a, b)
    }
}

fn as_unit(g: LieGen) -> (usize, usize) {
    match g {
        LieGen::Root(u, v) => (u, v),
        LieGen::Torus(j) => (j, j),
    }
}

/// `[x, y]` from `[E_ab, E_cd] = δ_bc E_ad − δ_da E_cb`.
pub fn bracket(x: LieGen, y: LieGen) -> Vec<(LieGen, i64)> {
    let (a, b) = as_unit(x);
    let (c, d) = as_unit(y);
    let mut out: BTreeMap<LieGen, i64> = BTreeMap::new();
    if b == c {
        *out.entry(unit(a, d)).or_default() += 1;
    }
    if d == a {
        *out.entry(unit(c, b)).or_default() -= 1;
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// An element of `U(gl_{d+1})` over Q in normal-ordered PBW form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwElement {
    d: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// One serialized PBW term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl PbwElement {
    pub fn zero(d: usize) -> Self {
        PbwElement { d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::monomial(d, vec![0; (d + 1) * (d + 1)], BigRational::one())
    }

    pub fn monomial(d: usize, m: Monomial, c: BigRational) -> Self {
        let mut out = Self::zero(d);
        out.add_term(m, c);
        out
    }

    /// A single basis element of the Lie algebra.
    pub fn generator(d: usize, g: LieGen) -> Self {
        let mut m = vec![0; (d + 1) * (d + 1)];
        m[index_of(d, g)] = 1;
        Self::monomial(d, m, BigRational::one())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.d);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// `log_p |x|_ε` at `ε = p^(−e)`: the maximum of `−v_p(a) + e |k|` over
    /// the PBW terms `a x^k`.
    pub fn norm(&self, p: u64, e: i64) -> NormValue {
        NormValue(
            self.terms
                .iter()
                .map(|(m, c)| -valuation(c, p) + e * m.iter().map(|&k| k as i64).sum::<i64>())
                .max(),
        )
    }

    pub fn to_terms(&self) -> Vec<PbwTerm> {
        self.terms
            .iter()
            .map(|(m, c)| PbwTerm { exponents: m.clone(), coeff: c.to_string() })
            .collect()
    }
}

/// Normal-ordering engine for `U(gl_{d+1})`, caching products of a generator
/// with a normal-ordered monomial.
pub struct PbwAlgebra {
    d: usize,
    gens: Vec<LieGen>,
    memo: HashMap<(usize, Monomial), Vec<(Monomial, BigInt)>>,
}

impl PbwAlgebra {
    pub fn new(d: usize) -> Self {
        PbwAlgebra { d, gens: basis(d), memo: HashMap::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn gens(&self) -> &[LieGen] {
        &self.gens
    }

    /// `x_g · m` in normal order, via `x_g x_j m' = x_j (x_g m') + [x_g, x_j] m'`
    /// when `g` comes after the first factor `x_j` of `m`.
    fn left_mul_gen(&mut self, g: usize, m: &Monomial) -> Vec<(Monomial, BigInt)> {
        let first = m.iter().position(|&k| k > 0);
        match first {
            Some(j) if g > j => {
                if let Some(hit) = self.memo.get(&(g, m.clone())) {
                    return hit.clone();
                }
                let mut rest = m.clone();
                rest[j] -= 1;
                let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                for (mono, c) in self.left_mul_gen(g, &rest) {
                    for (mono2, c2) in self.left_mul_gen(j, &mono) {
                        *acc.entry(mono2).or_insert_with(BigInt::zero) += &c * c2;
                    }
                }
                for (h, coeff) in bracket(self.gens[g], self.gens[j]) {
                    let hi = index_of(self.d, h);
                    for (mono, c) in self.left_mul_gen(hi, &rest) {
                        *acc.entry(mono).or_insert_with(BigInt::zero) += c * coeff;
                    }
                }
                let out: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                self.memo.insert((g, m.clone()), out.clone());
                out
            }
            _ => {
                let mut out = m.clone();
                out[g] += 1;
                vec![(out, BigInt::one())]
            }
        }
    }

    fn mul_monomials(&mut self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, BigInt)> {
        let mut cur: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        cur.insert(b.clone(), BigInt::one());
        for g in (0..a.len()).rev() {
            for _ in 0..a[g] {
                let mut next: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                for (m, c) in &cur {
                    for (m2, c2) in self.left_mul_gen(g, m) {
                        *next.entry(m2).or_insert_with(BigInt::zero) += c * c2;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                cur = next;
            }
        }
        cur.into_iter().collect()
    }

    /// Normal-ordered product.
    pub fn mul(&mut self, x: &PbwElement, y: &PbwElement) -> PbwElement {
        assert_eq!(x.d, self.d);
        assert_eq!(y.d, self.d);
        let mut out = PbwElement::zero(self.d);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                for (m, c) in self.mul_monomials(a, b) {
                    out.add_term(m, ca * cb * BigRational::from_integer(c));
                }
            }
        }
        out
    }
}

/// Normal-ordered product with a fresh cache.
pub fn pbw_mul(x: &PbwElement, y: &PbwElement) -> PbwElement {
    PbwAlgebra::new(x.d).mul(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_indexing() {
        for d in 1..4 {
            for (i, g) in basis(d).into_iter().enumerate() {
                assert_eq!(index_of(d, g), i);
            }
        }
    }

    #[test]
    fn commutator_of_opposite_roots() {
        let d = 2;
        let a = PbwElement::generator(d, LieGen::Root(0, 1));
        let b = PbwElement::generator(d, LieGen::Root(1, 0));
        let comm = pbw_mul(&a, &b).add(&pbw_mul(&b, &a).scale(&-BigRational::one()));
        let want = PbwElement::generator(d, LieGen::Torus(0))
            .add(&PbwElement::generator(d, LieGen::Torus(1)).scale(&-BigRational::one()));
        assert_eq!(comm, want);
    }

    #[test]
    fn unit_and_torus() {
        let d = 2;
        let x = PbwElement::generator(d, LieGen::Root(2, 0));
        assert_eq!(pbw_mul(&x, &PbwElement::one(d)), x);
        let l1 = PbwElement::generator(d, LieGen::Torus(1));
        let l2 = PbwElement::generator(d, LieGen::Torus(2));
        assert_eq!(pbw_mul(&l1, &l2), pbw_mul(&l2, &l1));
    }

    #[test]
    fn norm_examples() {
        let d = 2;
        let r = PbwElement::generator(d, LieGen::Root(0, 1));
        let x = pbw_mul(&pbw_mul(&r, &r), &PbwElement::generator(d, LieGen::Torus(2)));
        assert_eq!(x.norm(3, 1), NormValue(Some(3)));
        assert_eq!(PbwElement::one(d).norm(3, 1), NormValue(Some(0)));
        let y = PbwElement::generator(d, LieGen::Torus(0)).scale(&BigRational::new(1.into(), 3.into()));
        assert_eq!(y.norm(3, 2), NormValue(Some(3)));
    }
}
