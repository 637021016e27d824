//! Dense polynomials over F_p, little-endian coefficient vectors.

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

pub(crate) fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn sub(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `f` modulo `g` (`g` nonzero).
pub(crate) fn rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let g = trim(g.to_vec());
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p).expect("nonzero leading coefficient");
    let mut r = trim(f.to_vec());
    while r.len() > dg {
        let top = r.len() - 1;
        let factor = mul_mod(r[top], lead_inv, p);
        let shift = top - dg;
        for (j, &b) in g.iter().enumerate() {
            let t = mul_mod(factor, b, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    // normalize to monic
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p).expect("nonzero");
        a.iter_mut().for_each(|c| *c = mul_mod(*c, inv, p));
    }
    a
}

pub(crate) fn mul_rem(f: &[u64], g: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(f, g, p), m, p)
}

/// `f^(p^s) mod m`, by repeated p-th powers.
fn frobenius_rem(f: &[u64], s: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(f, m, p);
    for _ in 0..s {
        let mut pow = vec![1u64];
        let mut base = acc.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                pow = mul_rem(&pow, &base, m, p);
            }
            base = mul_rem(&base, &base, m, p);
            e >>= 1;
        }
        acc = pow;
    }
    acc
}

/// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xp = rem(&x, &f, p);
    for _ in 1..=deg / 2 {
        xp = frobenius_rem(&xp, 1, &f, p);
        let g = gcd(&sub(&xp, &x, p), &f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
