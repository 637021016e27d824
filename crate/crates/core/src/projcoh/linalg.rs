//! Small exact linear algebra: rank and kernels over Q, and p-adic elementary
//! divisors.

use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use super::weight::valuation;

type Q = Ratio<i128>;

/// Row-reduces in place; returns the pivot columns.
fn rref(m: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..cols {
                    let sub = f * m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect()
}

/// Rank over Q of an integer matrix with `cols` columns.
pub fn rank(m: &[Vec<i64>], cols: usize) -> usize {
    if m.is_empty() || cols == 0 {
        return 0;
    }
    rref(&mut to_q(m), cols).len()
}

/// A basis of the kernel over Q, scaled to integer vectors.
pub fn kernel(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut a = to_q(m);
    let pivots = if m.is_empty() { Vec::new() } else { rref(&mut a, cols) };
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::from_integer(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f];
            }
            let lcm = v.iter().fold(1i128, |acc, x| num_integer::lcm(acc, *x.denom()));
            v.iter().map(|x| (x * lcm).to_integer() as i64).collect()
        })
        .collect()
}

/// Matrix product of integer matrices (`a` is `n × k`, `b` is `k × m`).
pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], m: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().enumerate().map(|(k, &x)| x * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Valuations of the p-adic elementary divisors of a rational matrix, in
/// pivot order (nondecreasing). The length is the rank.
pub fn padic_elementary_divisors(m: &[Vec<BigRational>], p: u64) -> Vec<i64> {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut done_r = vec![false; rows];
    let mut done_c = vec![false; cols];
    loop {
        // pivot of least valuation in the remaining block
        let mut best: Option<(i64, usize, usize)> = None;
        for (r, row) in a.iter().enumerate().filter(|(r, _)| !done_r[*r]) {
            for (c, x) in row.iter().enumerate().filter(|(c, _)| !done_c[*c]) {
                if !x.is_zero() {
                    let v = valuation(x, p);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let Some((v, pr, pc)) = best else { break };
        out.push(v);
        done_r[pr] = true;
        done_c[pc] = true;
        let piv = a[pr][pc].clone();
        // clear the pivot column and row; multipliers are p-adic integers
        for r in 0..rows {
            if done_r[r] || a[r][pc].is_zero() {
                continue;
            }
            let f = &a[r][pc] / &piv;
            for c in 0..cols {
                if !a[pr][c].is_zero() {
                    let sub = &f * &a[pr][c];
                    a[r][c] -= sub;
                }
            }
        }
        for c in 0..cols {
            if c != pc {
                a[pr][c] = BigRational::zero();
            }
        }
    }
    out
}

/// Whether every entry of a rational matrix is zero.
pub fn is_zero_matrix(m: &[Vec<BigRational>]) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}
