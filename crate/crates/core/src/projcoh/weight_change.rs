//! Reduction of a weight into the box `Δ_N`, `N = (2d + 1)|k| + d`, by
//! repeatedly subtracting a root `α_{u,v}` with `μ_u` maximal and `μ_v`
//! minimal. Each step multiplies Gauss norms by exactly `ε` and preserves the
//! charts on which the monomial is regular, so the per-weight Čech complexes
//! of `μ` and of the result are isomorphic up to that scaling.

use serde::Serialize;

use super::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightChange {
    pub nu: Weight,
    pub steps: u64,
    pub trace: Vec<(usize, usize)>,
    /// Presence bitmask of every visited weight (first `μ`, last `ν`). Bit
    /// `I` (a nonempty subset of `{0..d}` as a bitmask) is set when the
    /// monomial is regular on `U_I`.
    pub presence: Vec<u64>,
}

/// `(2d + 1)|k| + d`.
pub fn box_radius(d: usize, k: i64) -> i64 {
    (2 * d as i64 + 1) * k.abs() + d as i64
}

/// Presence bits of `X^μ` over all charts `U_I`, `∅ ≠ I ⊆ {0..d}`.
pub fn presence_mask(mu: &Weight, k: i64) -> u64 {
    let d = mu.d();
    let mut mask = 0u64;
    for set in 1u64..(1 << (d + 1)) {
        let chart: Vec<usize> = (0..=d).filter(|j| set >> j & 1 == 1).collect();
        if mu.present_on(&chart, k) {
            mask |= 1 << set;
        }
    }
    mask
}

/// Whether chart restriction `U_I ⊇ U_J` (for `I ⊆ J`) commutes with a step:
/// each monomial regular on `U_I` stays regular on `U_J` before and after.
pub fn restriction_squares_commute(d: usize, before: u64, after: u64) -> bool {
    let full = 1u64 << (d + 1);
    for i in 1..full {
        for j in 1..full {
            if i & j != i {
                continue;
            }
            for mask in [before, after] {
                if mask >> i & 1 == 1 && mask >> j & 1 == 0 {
                    return false;
                }
            }
            if (before >> i & 1) != (after >> i & 1) {
                return false;
            }
        }
    }
    true
}

/// Walks `μ` (with `Σ μ = k`) into `Δ_N`. Pivots: the smallest index among
/// the maximal entries and the smallest among the minimal ones.
pub fn weight_change(d: usize, k: i64, mu: &Weight) -> WeightChange {
    assert_eq!(mu.d(), d, "weight length must be d + 1");
    assert_eq!(mu.sum(), k, "weight must have sum k");
    let n = box_radius(d, k);
    let mut cur = mu.clone();
    let mut trace = Vec::new();
    let mut presence = vec![presence_mask(&cur, k)];
    while !cur.in_box(n) {
        let max = *cur.0.iter().max().unwrap();
        let min = *cur.0.iter().min().unwrap();
        let u = cur.0.iter().position(|&x| x == max).unwrap();
        let v = cur.0.iter().position(|&x| x == min).unwrap();
        cur = cur.sub(&Weight::root(d, u, v));
        trace.push((u, v));
        presence.push(presence_mask(&cur, k));
    }
    WeightChange { nu: cur, steps: trace.len() as u64, trace, presence }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projcoh::weight::{gauss_norm, NormValue, Section};

    #[test]
    fn example_one_step() {
        let wc = weight_change(2, 0, &Weight(vec![3, -2, -1]));
        assert_eq!(wc.nu, Weight(vec![2, -1, -1]));
        assert_eq!(wc.steps, 1);
        assert_eq!(wc.trace, vec![(0, 1)]);
    }

    #[test]
    fn inside_box_is_fixed() {
        let mu = Weight(vec![2, -2, 0]);
        let wc = weight_change(2, 0, &mu);
        assert_eq!((wc.nu, wc.steps), (mu, 0));
    }

    #[test]
    fn norm_scaling() {
        let mu = Weight(vec![17, -9, -3, -6]);
        let wc = weight_change(3, -1, &mu);
        for e in 1..4 {
            let a = gauss_norm(&Section::x(mu.clone()), 7, e).0.unwrap();
            let b = gauss_norm(&Section::x(wc.nu.clone()), 7, e);
            assert_eq!(b, NormValue(Some(a - e * wc.steps as i64)));
        }
        assert_eq!(mu.norm1() - wc.nu.norm1(), 2 * wc.steps as i64);
        assert!(wc.presence.windows(2).all(|w| restriction_squares_commute(3, w[0], w[1])));
    }
}
