use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::algebra::{PbwAlgebra, PbwElement};
use super::aux::aux_a;
use super::module::FreeModuleElement;
use crate::error::{Error, Result};
use crate::projcoh::{valuation, LieGen, Section, Weight};

/// A preimage `Y` of `X^μ` under `φ`, with the pivots used.
#[derive(Clone, Debug)]
pub struct GoodPreimage {
    pub y: FreeModuleElement,
    /// Pivots `(u, v)`, outermost first.
    pub trace: Vec<(usize, usize)>,
    /// The base generator `ν ∈ Δ_d`.
    pub base: Weight,
    pub coeff: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub norm: Option<i64>,
    pub bound: i64,
    pub holds: bool,
}

impl GoodPreimage {
    /// `log_p |Y|_ε ≤ log_p A(μ) + e |max(0, μ)|` at `N = 0`.
    pub fn bound(&self, mu: &Weight, chart: &[usize], p: u64, e: i64) -> BoundReport {
        let norm = self.y.norm(p, e).0;
        let bound = aux_a(mu, chart, 0, p) + e * mu.pos_part();
        BoundReport { norm, bound, holds: norm.is_none_or(|n| n <= bound) }
    }

    /// `v_p` of the accumulated scalar, the denominator bookkeeping of the
    /// recursion.
    pub fn coeff_valuation(&self, p: u64) -> i64 {
        valuation(&self.coeff, p)
    }
}

fn validate(mu: &Weight, chart: &[usize]) -> Result<()> {
    let d = mu.d();
    if chart.is_empty() || chart.iter().any(|&j| j > d) || chart.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!("chart {chart:?} must be a nonempty increasing subset of 0..={d}")));
    }
    if !mu.present_on(chart, 0) {
        return Err(Error::InvalidInput(format!("{:?} is not in Λ_I for I = {chart:?} with sum 0", mu.0)));
    }
    Ok(())
}

/// Builds `Y` with `φ(Y) = X^μ` for `μ ∈ Λ_I`, `Σ μ = 0`, by stepping
/// `μ ← μ − α_{u,v}` until `μ ∈ Δ_d`. Pivots: `u` the smallest index of a
/// maximal entry (needs `μ_u > 1`), `v` the smallest index in `I` of a minimal
/// entry over `I` (needs `μ_v < −1`). Each step contributes `L_{(u,v)} / (μ_v + 1)`.
pub fn good_preimage(mu: &Weight, chart: &[usize]) -> Result<GoodPreimage> {
    validate(mu, chart)?;
    let d = mu.d();
    let mut cur = mu.clone();
    let mut coeff = BigRational::one();
    let mut trace = Vec::new();
    while !cur.in_box(d as i64) {
        let max = *cur.0.iter().max().unwrap();
        let u = cur.0.iter().position(|&x| x == max).unwrap();
        let v = *chart.iter().min_by_key(|&&j| (cur.0[j], j)).unwrap();
        if cur.0[u] <= 1 || cur.0[v] >= -1 {
            return Err(Error::PivotFailure(format!("{:?}", cur.0)));
        }
        coeff /= BigRational::from_integer((cur.0[v] + 1).into());
        cur = cur.sub(&Weight::root(d, u, v));
        trace.push((u, v));
    }
    let mut alg = PbwAlgebra::new(d);
    let mut x = PbwElement::one(d);
    for &(u, v) in trace.iter().rev() {
        x = alg.mul(&PbwElement::generator(d, LieGen::Root(u, v)), &x);
    }
    let y = FreeModuleElement::single(cur.clone(), x.scale(&coeff));
    Ok(GoodPreimage { y, trace, base: cur, coeff })
}

/// Whether `φ(Y) = X^μ` exactly.
pub fn is_exact(pre: &GoodPreimage, mu: &Weight) -> bool {
    pre.y.phi() == Section::x(mu.clone())
}
