//! Local cohomology of `O(k)` along `P^r ⊂ P^d`, weight by weight, from the
//! long exact sequence
//! `… → H^(i-1)(P^d) → H^(i-1)(P^d \ P^r) → H^i_{P^r}(P^d) → H^i(P^d) → H^i(P^d \ P^r) → …`.

use super::cech::{complement_cover, restriction_rank, CechComplex};
use super::weight::Weight;

/// `dim H^i_{P^r}(P^d, O(k))_λ` as `dim coker ρ_(i-1) + dim ker ρ_i`, where
/// `ρ_q : H^q(P^d) → H^q(P^d \ P^r)` is restriction.
pub fn local_cohomology_dim(d: usize, r: usize, k: i64, lambda: &Weight, i: usize) -> usize {
    if r >= d || lambda.d() != d || lambda.sum() != k {
        return 0;
    }
    let full = CechComplex::new(d, k, lambda, (0..=d).collect());
    let sub = CechComplex::new(d, k, lambda, complement_cover(d, r));
    let h_full = |q: usize| if q < full.len() { full.cohomology_dim(q) } else { 0 };
    let h_sub = |q: usize| if q < sub.len() { sub.cohomology_dim(q) } else { 0 };
    let coker = if i == 0 { 0 } else { h_sub(i - 1) - restriction_rank(&full, &sub, i - 1) };
    let ker = h_full(i) - restriction_rank(&full, &sub, i);
    coker + ker
}
