//! Strictness moduli of the per-weight Čech differentials for the sup-norms
//! induced by the Gauss norm.
//!
//! After rescaling domain and codomain bases to unit norm, the largest `R`
//! with `B_R ∩ im d ⊆ d(B_1)` is `p^(−v)`, where `v` is the largest valuation
//! among the p-adic elementary divisors of the rescaled matrix.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Serialize, Serializer};

use super::cech::{complement_cover, weights_in_box, CechComplex};
use super::linalg::{is_zero_matrix, padic_elementary_divisors};
use super::weight::{gauss_norm, Section, Weight};
use super::weight_change::box_radius;

/// A strictness modulus `R = p^logp`, or `+∞` for a zero differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Modulus {
    Finite(i64),
    Infinite,
}

impl Ord for Modulus {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Modulus::Finite(a), Modulus::Finite(b)) => a.cmp(b),
            (Modulus::Finite(_), Modulus::Infinite) => Ordering::Less,
            (Modulus::Infinite, Modulus::Finite(_)) => Ordering::Greater,
            (Modulus::Infinite, Modulus::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Modulus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Modulus::Finite(v) => s.serialize_i64(*v),
            Modulus::Infinite => s.serialize_str("inf"),
        }
    }
}

fn p_power(p: u64, exp: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if exp >= 0 {
        Pow::pow(base, exp as u64)
    } else {
        BigRational::one() / Pow::pow(base, (-exp) as u64)
    }
}

/// `R_λ` for `d^q : C^q → C^(q+1)` of the complex of `P^d \ P^r` at weight
/// `λ`, with the Gauss norm at `ε = p^(−e)`.
pub fn strictness_modulus(d: usize, r: usize, k: i64, q: usize, p: u64, e: i64, lambda: &Weight) -> Modulus {
    if r >= d || lambda.sum() != k {
        return Modulus::Infinite;
    }
    let c = CechComplex::new(d, k, lambda, complement_cover(d, r));
    let m = c.differential(q);
    if m.is_empty() || c.dim(q) == 0 {
        return Modulus::Infinite;
    }
    // every basis vector is the monomial X^λ on some chart, so all norms agree;
    // they are still applied so the scaling is explicit
    let norm = gauss_norm(&Section::x(lambda.clone()), p, e).0.expect("nonzero monomial");
    let (a, b) = (vec![norm; c.dim(q)], vec![norm; c.dim(q + 1)]);
    let scaled: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(row, entries)| {
            entries
                .iter()
                .enumerate()
                .map(|(col, &x)| BigRational::from_integer(BigInt::from(x)) * p_power(p, a[col] - b[row]))
                .collect()
        })
        .collect();
    if is_zero_matrix(&scaled) {
        return Modulus::Infinite;
    }
    let vmax = padic_elementary_divisors(&scaled, p).into_iter().max().expect("nonzero matrix");
    Modulus::Finite(-vmax)
}

/// The minimum of `R_λ` over every `λ ∈ Δ_N` with `Σ λ = k`.
pub fn uniform_modulus(d: usize, r: usize, k: i64, q: usize, p: u64, e: i64) -> Modulus {
    weights_in_box(d, k, box_radius(d, k))
        .iter()
        .map(|l| strictness_modulus(d, r, k, q, p, e, l))
        .min()
        .unwrap_or(Modulus::Infinite)
}
