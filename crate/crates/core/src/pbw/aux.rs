use crate::projcoh::Weight;

/// `v_p(n!)` by Legendre's formula.
pub fn legendre(n: u64, p: u64) -> i64 {
    let mut n = n;
    let mut acc = 0i64;
    while n > 0 {
        n /= p;
        acc += n as i64;
    }
    acc
}

/// `log_p A(μ)` for the chart `I` and depth `N`:
/// `Σ_{k=0}^{N} (Σ_{j∈I} v_p(|min(0, μ_j+1−k)|!) + Σ_{j∉I} v_p(|min(0, μ_j+1)|!))`.
pub fn aux_a(mu: &Weight, chart: &[usize], n: u64, p: u64) -> i64 {
    let mut acc = 0;
    for k in 0..=n as i64 {
        for (j, &m) in mu.0.iter().enumerate() {
            let x = if chart.contains(&j) { m + 1 - k } else { m + 1 };
            acc += legendre(x.min(0).unsigned_abs(), p);
        }
    }
    acc
}

/// `v_p(n)` for `n ≠ 0`.
fn val(n: i64, p: u64) -> i64 {
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// First estimate: `A(μ − α_{u,v}) / |μ_v + 1 − l|_p ≤ A(μ)` for every
/// `u ≠ v` with `μ_u > 1`, `μ_v < −1` and `0 ≤ l ≤ N`. Returns the first
/// violating `(u, v, l)`.
pub fn check_first_estimate(mu: &Weight, chart: &[usize], n: u64, p: u64) -> Option<(usize, usize, u64)> {
    let d = mu.d();
    let base = aux_a(mu, chart, n, p);
    for u in 0..=d {
        for v in 0..=d {
            if u == v || mu.0[u] <= 1 || mu.0[v] >= -1 {
                continue;
            }
            let next = aux_a(&mu.sub(&Weight::root(d, u, v)), chart, n, p);
            for l in 0..=n {
                if next + val(mu.0[v] + 1 - l as i64, p) > base {
                    return Some((u, v, l));
                }
            }
        }
    }
    None
}

/// Second estimate `A(μ) ≤ C a^{|max(0,μ)|}` with `C = p^{|I| N(N+1) / (2(p−1))}`
/// and `a = p^{(N+1)/(p−1)}`, compared after clearing the denominator `2(p−1)`.
pub fn check_second_estimate(mu: &Weight, chart: &[usize], n: u64, p: u64) -> bool {
    let n = n as i64;
    let lhs = aux_a(mu, chart, n as u64, p) * 2 * (p as i64 - 1);
    let rhs = chart.len() as i64 * n * (n + 1) + 2 * (n + 1) * mu.pos_part();
    lhs <= rhs
}
