//! Weight-graded reduced Čech complexes of `O(k)` for coverings of open
//! subsets of `P^d` by standard charts.
//!
//! At a weight `λ` with `Σ λ = k`, the sections over `U_I` are spanned by the
//! single monomial `X^λ` when `λ_j >= 0` off `I`, and vanish otherwise, so each
//! cochain group is a sum of copies of Q indexed by the admissible tuples.

use serde::Serialize;

use super::linalg::{kernel, matmul, rank};
use super::weight::Weight;

/// The reduced Čech complex at one weight.
#[derive(Clone, Debug, Serialize)]
pub struct CechComplex {
    pub d: usize,
    pub k: i64,
    pub weight: Weight,
    /// Indices of the covering charts, increasing.
    pub cover: Vec<usize>,
    /// All increasing tuples of `q + 1` cover indices, per degree `q`.
    pub tuples: Vec<Vec<Vec<usize>>>,
    /// Presence bit of `X^λ` on each tuple.
    pub present: Vec<Vec<bool>>,
    /// `d^q`, with rows and columns indexed by present tuples only.
    pub differentials: Vec<Vec<Vec<i64>>>,
}

/// Increasing tuples of length `len` drawn from `items`.
pub fn tuples_of(items: &[usize], len: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    if len > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..len).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..len).rev().find(|&i| idx[i] != i + n - len) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..len {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

impl CechComplex {
    pub fn new(d: usize, k: i64, weight: &Weight, cover: Vec<usize>) -> Self {
        assert_eq!(weight.d(), d, "weight length must be d + 1");
        let tuples: Vec<Vec<Vec<usize>>> = (1..=cover.len()).map(|l| tuples_of(&cover, l)).collect();
        let present: Vec<Vec<bool>> = tuples
            .iter()
            .map(|ts| ts.iter().map(|t| weight.present_on(t, k)).collect())
            .collect();
        let mut differentials = Vec::new();
        for q in 0..tuples.len().saturating_sub(1) {
            let src: Vec<&Vec<usize>> = tuples[q].iter().zip(&present[q]).filter(|(_, &b)| b).map(|(t, _)| t).collect();
            let dst: Vec<&Vec<usize>> =
                tuples[q + 1].iter().zip(&present[q + 1]).filter(|(_, &b)| b).map(|(t, _)| t).collect();
            let m = dst
                .iter()
                .map(|j| {
                    src.iter()
                        .map(|i| face_sign(i, j))
                        .collect()
                })
                .collect();
            differentials.push(m);
        }
        CechComplex { d, k, weight: weight.clone(), cover, tuples, present, differentials }
    }

    /// Number of degrees (the cover size).
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn dim(&self, q: usize) -> usize {
        self.present.get(q).map_or(0, |p| p.iter().filter(|&&b| b).count())
    }

    /// Present tuples in degree `q`, in basis order.
    pub fn basis(&self, q: usize) -> Vec<Vec<usize>> {
        match self.tuples.get(q) {
            None => Vec::new(),
            Some(ts) => ts.iter().zip(&self.present[q]).filter(|(_, &b)| b).map(|(t, _)| t.clone()).collect(),
        }
    }

    /// `d^q` (empty when the target degree does not exist).
    pub fn differential(&self, q: usize) -> Vec<Vec<i64>> {
        self.differentials.get(q).cloned().unwrap_or_default()
    }

    pub fn rank_d(&self, q: usize) -> usize {
        match self.differentials.get(q) {
            None => 0,
            Some(m) => rank(m, self.dim(q)),
        }
    }

    pub fn cohomology_dim(&self, q: usize) -> usize {
        let prev = if q == 0 { 0 } else { self.rank_d(q - 1) };
        self.dim(q) - self.rank_d(q) - prev
    }

    /// Cocycle basis in degree `q` (columns of the returned list are vectors).
    pub fn cocycles(&self, q: usize) -> Vec<Vec<i64>> {
        let n = self.dim(q);
        match self.differentials.get(q) {
            Some(m) if !m.is_empty() => kernel(m, n),
            _ => (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }
}

/// Sign of `i` as a face of `j` in the Čech differential, or 0.
fn face_sign(i: &[usize], j: &[usize]) -> i64 {
    if j.len() != i.len() + 1 {
        return 0;
    }
    for l in 0..j.len() {
        if j.iter().enumerate().filter(|&(x, _)| x != l).map(|(_, &v)| v).eq(i.iter().copied()) {
            return if l % 2 == 0 { 1 } else { -1 };
        }
    }
    0
}

/// The charts `U_{r+1}, …, U_d` covering `P^d \ P^r`.
pub fn complement_cover(d: usize, r: usize) -> Vec<usize> {
    (r + 1..=d).collect()
}

/// `dim H^q(P^d \ P^r, O(k))_λ`, via the reduced Čech complex of the standard
/// covering. Zero unless `0 <= r < d` and `Σ λ = k`.
pub fn weight_cohomology(d: usize, r: usize, k: i64, lambda: &Weight, q: usize) -> usize {
    if r >= d || lambda.sum() != k || lambda.d() != d {
        return 0;
    }
    let c = CechComplex::new(d, k, lambda, complement_cover(d, r));
    if q >= c.len() {
        return 0;
    }
    c.cohomology_dim(q)
}

/// All weights with `Σ λ = k` and every entry in `[-radius, radius]`.
pub fn weights_in_box(d: usize, k: i64, radius: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; d + 1];
    fn rec(j: usize, d: usize, k: i64, radius: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if j == d {
            let rest = k - cur[..d].iter().sum::<i64>();
            if rest.abs() <= radius {
                cur[d] = rest;
                out.push(Weight(cur.clone()));
            }
            return;
        }
        for x in -radius..=radius {
            cur[j] = x;
            rec(j + 1, d, k, radius, cur, out);
        }
    }
    rec(0, d, k, radius, &mut cur, &mut out);
    out
}

/// `dim H^i(P^d, O(k))`, or its weight-`λ` piece, from the Čech complex of the
/// full covering `U_0, …, U_d`.
///
/// Without a weight the pieces are summed over `|λ_j| <= |k| + d`, which holds
/// all of them: `H^0` needs every `λ_j >= 0` and `H^d` every `λ_j <= −1`, and a
/// weight with entries of mixed sign has acyclic complex.
pub fn global_cohomology_dim(d: usize, k: i64, i: usize, lambda: Option<&Weight>) -> usize {
    let cover: Vec<usize> = (0..=d).collect();
    match lambda {
        Some(l) => {
            if l.sum() != k || l.d() != d || i > d {
                return 0;
            }
            CechComplex::new(d, k, l, cover).cohomology_dim(i)
        }
        None => {
            if i > d {
                return 0;
            }
            weights_in_box(d, k, k.abs() + d as i64)
                .iter()
                .map(|l| CechComplex::new(d, k, l, cover.clone()).cohomology_dim(i))
                .sum()
        }
    }
}

/// Rank of `H^q(X) → H^q(U)` induced by restricting cochains of the full
/// covering to the subcovering.
pub(crate) fn restriction_rank(full: &CechComplex, sub: &CechComplex, q: usize) -> usize {
    if q >= sub.len() || q >= full.len() {
        return 0;
    }
    let z = full.cocycles(q);
    if z.is_empty() {
        return 0;
    }
    let full_basis = full.basis(q);
    let sub_basis = sub.basis(q);
    // projection onto the subcover tuples
    let proj: Vec<Vec<i64>> = sub_basis
        .iter()
        .map(|t| full_basis.iter().map(|s| i64::from(s == t)).collect())
        .collect();
    // columns: images of cocycles, then coboundaries of the subcover
    let zt: Vec<Vec<i64>> = (0..full_basis.len()).map(|row| z.iter().map(|v| v[row]).collect()).collect();
    let img = matmul(&proj, &zt, z.len());
    let boundary = if q == 0 { Vec::new() } else { sub.differential(q - 1) };
    let bcols = if q == 0 { 0 } else { sub.dim(q - 1) };
    let joined: Vec<Vec<i64>> = (0..sub_basis.len())
        .map(|row| {
            let mut r = img[row].clone();
            if bcols > 0 {
                r.extend(boundary[row].iter().copied());
            }
            r
        })
        .collect();
    let rb = if bcols > 0 { rank(&boundary, bcols) } else { 0 };
    rank(&joined, z.len() + bcols) - rb
}
