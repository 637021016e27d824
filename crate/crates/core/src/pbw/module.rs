use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::algebra::{basis, PbwElement, PbwTerm};
use crate::projcoh::{lie_action, NormValue, Section, Weight};

/// `x · s`, applying the factors of each PBW monomial right to left.
pub fn act(x: &PbwElement, s: &Section) -> Section {
    let gens = basis(x.d());
    let mut out = Section::zero(s.twist());
    for (m, c) in x.terms() {
        let mut cur = s.clone();
        for idx in (0..m.len()).rev() {
            if m[idx] > 0 {
                cur = lie_action(gens[idx], m[idx], &cur);
            }
        }
        out = out.add(&cur.scale(c));
    }
    out
}

/// An element `Σ x_ν e_ν` of the free module on symbols `e_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement {
    d: usize,
    twist: i64,
    components: BTreeMap<Weight, PbwElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeModuleComponent {
    pub generator: Weight,
    pub element: Vec<PbwTerm>,
}

impl FreeModuleElement {
    pub fn zero(d: usize, twist: i64) -> Self {
        FreeModuleElement { d, twist, components: BTreeMap::new() }
    }

    /// `x · e_ν`.
    pub fn single(nu: Weight, x: PbwElement) -> Self {
        let mut out = Self::zero(x.d(), nu.sum());
        out.add_component(nu, x);
        out
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn components(&self) -> &BTreeMap<Weight, PbwElement> {
        &self.components
    }

    pub fn add_component(&mut self, nu: Weight, x: PbwElement) {
        let sum = match self.components.remove(&nu) {
            Some(y) => y.add(&x),
            None => x,
        };
        if !sum.is_zero() {
            self.components.insert(nu, sum);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.d, self.twist);
        for (nu, x) in &self.components {
            out.add_component(nu.clone(), x.scale(c));
        }
        out
    }

    /// `φ(Σ x_ν e_ν) = Σ x_ν · X^ν`.
    pub fn phi(&self) -> Section {
        let mut out = Section::zero(self.twist);
        for (nu, x) in &self.components {
            out = out.add(&act(x, &Section::x(nu.clone())));
        }
        out
    }

    /// Max of the PBW norms of the components.
    pub fn norm(&self, p: u64, e: i64) -> NormValue {
        self.components.values().map(|x| x.norm(p, e)).max().unwrap_or(NormValue(None))
    }

    pub fn to_components(&self) -> Vec<FreeModuleComponent> {
        self.components
            .iter()
            .map(|(nu, x)| FreeModuleComponent { generator: nu.clone(), element: x.to_terms() })
            .collect()
    }
}
