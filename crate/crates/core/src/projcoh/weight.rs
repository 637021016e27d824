use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A torus weight `μ = (μ_0, …, μ_d) ∈ Z^(d+1)`, also the exponent vector of
/// the Laurent monomial `X^μ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Weight {
    pub fn zero(d: usize) -> Self {
        Weight(vec![0; d + 1])
    }

    /// The root `α_{u,v} = ε_u − ε_v`.
    pub fn root(d: usize, u: usize, v: usize) -> Self {
        let mut w = vec![0; d + 1];
        w[u] += 1;
        w[v] -= 1;
        Weight(w)
    }

    /// Projective dimension `d` (the weight has `d + 1` entries).
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `‖μ‖ = Σ |μ_j|`.
    pub fn norm1(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    /// `|max(0, μ)| = Σ max(0, μ_j)`.
    pub fn pos_part(&self) -> i64 {
        self.0.iter().map(|&x| x.max(0)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Membership in `Δ_N`: every entry has absolute value at most `N`.
    pub fn in_box(&self, n: i64) -> bool {
        self.0.iter().all(|x| x.abs() <= n)
    }

    /// Whether `X^μ` is a section of `O(k)` on `U_I`: `Σ μ = k` and `μ_j >= 0`
    /// for every `j ∉ I`.
    pub fn present_on(&self, chart: &[usize], k: i64) -> bool {
        self.sum() == k
            && self
                .0
                .iter()
                .enumerate()
                .all(|(j, &x)| x >= 0 || chart.contains(&j))
    }
}

/// A p-power absolute value `p^logp`, or `0` (`logp = −∞`, represented as
/// `None`). Ordering follows the real values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormValue(pub Option<i64>);

impl NormValue {
    pub const ZERO: NormValue = NormValue(None);

    pub fn logp(self) -> Option<i64> {
        self.0
    }
}

/// `v_p` of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `v_p` of a nonzero rational.
pub fn valuation(x: &BigRational, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    valuation_int(x.numer(), p) - valuation_int(x.denom(), p)
}

/// A section of `O(k)` written as a rational combination of monomials `X^μ`
/// with `Σ μ = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    twist: i64,
    terms: BTreeMap<Weight, BigRational>,
}

impl Section {
    pub fn zero(twist: i64) -> Self {
        Section { twist, terms: BTreeMap::new() }
    }

    pub fn monomial(mu: Weight, coeff: BigRational) -> Self {
        let mut s = Section::zero(mu.sum());
        s.add_term(mu, coeff);
        s
    }

    /// `X^μ` with coefficient 1.
    pub fn x(mu: Weight) -> Self {
        Section::monomial(mu, BigRational::one())
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn terms(&self) -> &BTreeMap<Weight, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mu: Weight, coeff: BigRational) {
        assert_eq!(mu.sum(), self.twist, "monomial of the wrong twist");
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mu).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Section::zero(self.twist);
        for (mu, a) in &self.terms {
            out.add_term(mu.clone(), a * c);
        }
        out
    }

    /// Whether every monomial is regular on `U_I`.
    pub fn lives_on(&self, chart: &[usize]) -> bool {
        self.terms.keys().all(|mu| mu.present_on(chart, self.twist))
    }
}

/// A generator of `gl_{d+1}` acting on sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LieGen {
    /// `L_{(u,v)}`, acting as `X_u ∂/∂X_v`.
    Root(usize, usize),
    /// `L_j`, acting as `X_j ∂/∂X_j`.
    Torus(usize),
}

/// `x^power` applied to a section: `L_{(u,v)}^k X^μ = μ_v (μ_v − 1) ⋯ (μ_v − k + 1) X^(μ + k α_{u,v})`
/// and `L_j^k X^μ = μ_j^k X^μ`.
pub fn lie_action(x: LieGen, power: u32, s: &Section) -> Section {
    let mut out = Section::zero(s.twist);
    for (mu, c) in &s.terms {
        let (factor, target) = match x {
            LieGen::Root(u, v) => {
                let mv = mu.0[v];
                let f: BigInt = (0..power as i64).map(|i| BigInt::from(mv - i)).product();
                (f, mu.add(&Weight::root(mu.d(), u, v).scaled(power as i64)))
            }
            LieGen::Torus(j) => (BigInt::from(mu.0[j]).pow(power), mu.clone()),
        };
        out.add_term(target, c * BigRational::from_integer(factor));
    }
    out
}

/// `log_p` of the Gauss norm at `ε = p^(−e)`: the maximum over monomials of
/// `−v_p(a) + e |max(0, μ)|`.
pub fn gauss_norm(s: &Section, p: u64, e: i64) -> NormValue {
    NormValue(
        s.terms
            .iter()
            .map(|(mu, c)| -valuation(c, p) + e * mu.pos_part())
            .max(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lie_action_examples() {
        let s = Section::x(Weight(vec![1, 2, -3]));
        assert_eq!(lie_action(LieGen::Root(0, 1), 1, &s), Section::monomial(Weight(vec![2, 1, -3]), q(2, 1)));
        let s0 = Section::x(Weight(vec![0, 2, -2]));
        assert!(lie_action(LieGen::Torus(0), 1, &s0).is_zero());
        let s5 = Section::x(Weight(vec![0, 5, -5]));
        let once = |t: &Section| lie_action(LieGen::Root(0, 1), 1, t);
        let thrice = once(&once(&once(&s5)));
        assert_eq!(lie_action(LieGen::Root(0, 1), 3, &s5), thrice);
        assert_eq!(thrice, Section::monomial(Weight(vec![3, 2, -5]), q(60, 1)));
    }

    #[test]
    fn gauss_norm_examples() {
        assert_eq!(gauss_norm(&Section::x(Weight(vec![3, -2, -1])), 5, 1), NormValue(Some(3)));
        assert_eq!(gauss_norm(&Section::x(Weight::zero(2)), 5, 1), NormValue(Some(0)));
        let s = Section::monomial(Weight(vec![1, -1]), q(1, 3));
        assert_eq!(gauss_norm(&s, 3, 2), NormValue(Some(3)));
        assert_eq!(gauss_norm(&Section::zero(0), 3, 2), NormValue::ZERO);
    }

    #[test]
    fn grading() {
        let mu = Weight(vec![2, -1, 4, -5]);
        let s = Section::monomial(mu.clone(), q(3, 7));
        for u in 0..4 {
            for v in 0..4 {
                if u == v {
                    continue;
                }
                let img = lie_action(LieGen::Root(u, v), 1, &s);
                for w in img.terms().keys() {
                    assert_eq!(w, &mu.add(&Weight::root(3, u, v)));
                }
            }
            assert_eq!(lie_action(LieGen::Torus(u), 1, &s), s.scale(&q(mu.0[u], 1)));
        }
    }

    #[test]
    fn presence() {
        let mu = Weight(vec![3, -2, -1]);
        assert!(mu.present_on(&[1, 2], 0));
        assert!(!mu.present_on(&[1], 0));
        assert!(!mu.present_on(&[1, 2], 1));
    }
}
