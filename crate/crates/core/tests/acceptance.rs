//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonarch::arith::{lucas_binom, lucas_binom_int, FieldSpec, FqElem, ZpApprox};
use nonarch::characters::{available_digits, compose_analytic, diagonal_embed, recover_exponent, AnalyticCharacter};
use nonarch::pbw::{check_first_estimate, check_second_estimate, good_preimage, is_exact};
use nonarch::projcoh::{
    box_radius, gauss_norm, global_cohomology_dim, local_cohomology_dim, presence_mask, restriction_squares_commute,
    strictness_modulus, uniform_modulus, weight_change, weights_in_box, Modulus, NormValue, Section, Weight,
};
use nonarch::series::{one_unit_pow, LaurentSeries, PowerSeriesAtOne};
use nonarch::units::{digit_precision, expand, peel, OneUnitExponents};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn field(p: u64, r: usize) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::default_for(p, r).unwrap())
}

fn rand_elem(rng: &mut ChaCha8Rng, f: &FieldSpec) -> FqElem {
    f.from_index(rng.gen_range(0..f.q())).unwrap()
}

fn rand_series(rng: &mut ChaCha8Rng, f: &Arc<FieldSpec>, val: i64, prec: i64) -> LaurentSeries {
    let coeffs = (val..prec).map(|_| rand_elem(rng, f)).collect();
    LaurentSeries::new(f.clone(), val, coeffs, prec)
}

fn rand_one_unit(rng: &mut ChaCha8Rng, f: &Arc<FieldSpec>, prec: i64) -> LaurentSeries {
    let mut coeffs: Vec<FqElem> = (0..prec).map(|_| rand_elem(rng, f)).collect();
    coeffs[0] = f.one();
    LaurentSeries::new(f.clone(), 0, coeffs, prec)
}

fn rand_zp(rng: &mut ChaCha8Rng, p: u64, k: usize) -> ZpApprox {
    ZpApprox::from_digits(p, (0..k).map(|_| rng.gen_range(0..p)).collect()).unwrap()
}

/// Exact binomial via Pascal's rule, independent of Lucas.
fn pascal(n: u64) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
    for m in 1..=n as usize {
        let prev = &rows[m - 1];
        let mut row = vec![BigUint::from(1u32); m + 1];
        for j in 1..m {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

fn small_binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

fn c1_lucas() -> Check {
    let rows = pascal(400);
    for p in [2u64, 3, 5, 7] {
        for m in 0..=400u64 {
            let mz = ZpApprox::from_u128(p, m as u128, 10);
            for n in 0..=m {
                let want = (&rows[m as usize][n as usize] % BigUint::from(p)).to_u64().unwrap();
                ensure!(lucas_binom_int(m, n, p) == want, "lucas_binom_int({m}, {n}) mod {p}");
                ensure!(lucas_binom(&mz, n).map_err(|e| e.to_string())? == want, "lucas_binom({m}, {n}) mod {p}");
            }
        }
    }
    Ok(())
}

/// `χ_c(1 + x)` as a series in `x`, computed by the Frobenius product.
fn chi_at_one(f: &Arc<FieldSpec>, c: &ZpApprox, t: usize) -> PowerSeriesAtOne {
    let z = LaurentSeries::new(f.clone(), 0, vec![f.one(), f.one()], t as i64);
    let v = one_unit_pow(&z, c).unwrap();
    PowerSeriesAtOne::new(f.clone(), (0..t as i64).map(|n| v.coeff(n).unwrap()).collect())
}

fn theorem_characters(p: u64) -> (usize, Vec<ZpApprox>) {
    let t = if p == 2 { 1 << 12 } else { 3usize.pow(7) };
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + p);
    (t, (0..100).map(|_| rand_zp(&mut rng, p, 12)).collect())
}

fn c2_recover() -> Check {
    for p in [2u64, 3] {
        let f = field(p, 1);
        let (t, cs) = theorem_characters(p);
        for c in &cs {
            let a = chi_at_one(&f, c, t);
            let k = available_digits(p, t).min(12);
            for i in 0..k as u32 {
                ensure!(f.prime_field_value(a.coeffs()[p.pow(i) as usize]).is_some(), "a_(p^{i}) not in F_{p}");
            }
            let got = recover_exponent(&a, k).map_err(|e| e.to_string())?;
            ensure!(got.digits() == &c.digits()[..k], "recovered {got} for {c}");
        }
    }
    Ok(())
}

fn c3_pattern() -> Check {
    for p in [2u64, 3] {
        let f = field(p, 1);
        let (t, cs) = theorem_characters(p);
        for c in &cs {
            let a = chi_at_one(&f, c, t);
            let base: Vec<u64> = (0..12u32)
                .take_while(|&i| (p.pow(i) as usize) < t)
                .map(|i| f.prime_field_value(a.coeffs()[p.pow(i) as usize]).unwrap())
                .collect();
            for n in 0..t {
                let mut m = n as u64;
                let mut prod = 1u64;
                for &ai in &base {
                    prod = prod * (small_binom(ai, m % p) % p) % p;
                    m /= p;
                }
                ensure!(f.prime_field_value(a.coeffs()[n]) == Some(prod), "a_{n} breaks the pattern for {c}");
            }
        }
    }
    Ok(())
}

fn c4_homomorphism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (p, r, k) in [(2u64, 1usize, 8usize), (3, 2, 5)] {
        let f = field(p, r);
        for trial in 0..100 {
            let c = rand_zp(&mut rng, p, k);
            let z = rand_one_unit(&mut rng, &f, 64);
            let w = rand_one_unit(&mut rng, &f, 64);
            let chi = AnalyticCharacter { c: c.clone() };
            let lhs = chi.eval(&z.mul(&w)).map_err(|e| e.to_string())?;
            let rhs = chi.eval(&z).unwrap().mul(&chi.eval(&w).unwrap());
            ensure!(lhs.agrees_to(&rhs, 64), "z^c w^c != (zw)^c over F_{}", f.q());
            if trial < 5 {
                let tab = diagonal_embed(&c, f.clone(), 1, 64).map_err(|e| e.to_string())?;
                let lhs = tab.eval(&z.mul(&w)).map_err(|e| e.to_string())?;
                let rhs = tab.eval(&z).unwrap().mul(&tab.eval(&w).unwrap());
                ensure!(lhs.agrees_to(&rhs, 64) && lhs.agrees_to(&chi.eval(&z.mul(&w)).unwrap(), 64), "table character");
            }
        }
    }
    Ok(())
}

fn random_exponents(rng: &mut ChaCha8Rng, f: &Arc<FieldSpec>, n: i64) -> OneUnitExponents {
    let p = f.p();
    let mut e = OneUnitExponents::new(f.clone(), None);
    for m in (1..n as u64).filter(|m| m % p != 0) {
        for i in 1..=f.r() {
            if rng.gen_bool(0.6) {
                let k = digit_precision(p, m, n);
                e.insert(m, i, rand_zp(rng, p, k)).unwrap();
            }
        }
    }
    e
}

fn c5_isomorphism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 40;
    for (p, r) in [(2u64, 1usize), (2, 2), (3, 2)] {
        let f = field(p, r);
        for _ in 0..200 {
            let e = random_exponents(&mut rng, &f, n);
            let u = expand(&e, n).map_err(|x| x.to_string())?;
            let back = peel(&u, n).map_err(|x| x.to_string())?;
            ensure!(back == e.truncated_for(n), "peel(expand(e)) != e over F_{}", f.q());
            let v = rand_one_unit(&mut rng, &f, n);
            let ev = peel(&v, n).map_err(|x| x.to_string())?;
            ensure!(expand(&ev, n).unwrap() == v, "expand(peel(u)) != u over F_{}", f.q());
        }
        for _ in 0..100 {
            let a = rand_one_unit(&mut rng, &f, n);
            let b = rand_one_unit(&mut rng, &f, n);
            let lhs = peel(&a.mul(&b), n).unwrap();
            let rhs = peel(&a, n).unwrap().add(&peel(&b, n).unwrap()).truncated_for(n);
            ensure!(lhs == rhs, "peel is not additive over F_{}", f.q());
        }
    }
    Ok(())
}

fn c6_ring_structure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 20;
    for (p, k) in [(2u64, 6usize), (3, 4)] {
        let f = field(p, 1);
        for _ in 0..25 {
            let c = rand_zp(&mut rng, p, k);
            let c2 = rand_zp(&mut rng, p, k);
            let a = diagonal_embed(&c, f.clone(), 1, n).map_err(|e| e.to_string())?;
            let b = diagonal_embed(&c2, f.clone(), 1, n).map_err(|e| e.to_string())?;
            let s = diagonal_embed(&c.add(&c2), f.clone(), 1, n).map_err(|e| e.to_string())?;
            ensure!(s.horizon() == a.horizon(), "horizons differ");
            for m in (1..s.horizon()).filter(|m| m % p != 0) {
                let prod = a.generator_value(m, 1).mul(&b.generator_value(m, 1));
                ensure!(s.generator_value(m, 1).agrees_to(&prod, n), "χ_(c+c') table at m = {m}");
            }
            let z = rand_one_unit(&mut rng, &f, n);
            let composed = AnalyticCharacter { c: c.clone() }
                .eval(&AnalyticCharacter { c: c2.clone() }.eval(&z).unwrap())
                .map_err(|e| e.to_string())?;
            let direct = compose_analytic(&c, &c2).eval(&z).map_err(|e| e.to_string())?;
            ensure!(composed.agrees_to(&direct, n), "χ_c ∘ χ_c' != χ_(cc')");
        }
    }
    Ok(())
}

fn c7_hasse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, r) in [(2u64, 1usize), (3, 2), (5, 1)] {
        let f = field(p, r);
        for _ in 0..100 {
            let (va, vb) = (rng.gen_range(-3..3), rng.gen_range(-3..3));
            let a = rand_series(&mut rng, &f, va, 24);
            let b = rand_series(&mut rng, &f, vb, 24);
            let k = rng.gen_range(0..8u64);
            let lhs = a.mul(&b).hasse(k);
            let mut rhs = LaurentSeries::zero(f.clone());
            for i in 0..=k {
                rhs = rhs.add(&a.hasse(i).mul(&b.hasse(k - i)));
            }
            let n = lhs.prec().unwrap().min(rhs.prec().unwrap());
            ensure!(lhs.agrees_to(&rhs, n), "Leibniz fails at k = {k}");

            let j = rng.gen_range(0..8u64);
            let twice = a.hasse(k).hasse(j);
            let once = a.hasse(j + k).scale(f.scalar((small_binom(j + k, k) % p) as i64));
            let n = twice.prec().unwrap().min(once.prec().unwrap());
            ensure!(twice.agrees_to(&once, n), "D^({j}) D^({k}) != binom D^({})", j + k);

            let fs = PowerSeriesAtOne::new(f.clone(), (0..rng.gen_range(2..12)).map(|_| rand_elem(&mut rng, &f)).collect());
            let g = rand_one_unit(&mut rng, &f, 20);
            let lhs = fs.compose(&g).map_err(|e| e.to_string())?.hasse(1);
            let rhs = fs.hasse(1).compose(&g).map_err(|e| e.to_string())?.mul(&g.hasse(1));
            let n = lhs.prec().unwrap().min(rhs.prec().unwrap());
            ensure!(n >= 1 && lhs.agrees_to(&rhs, n), "chain rule fails");
        }
    }
    Ok(())
}

fn c8_global() -> Check {
    for d in 1..=3usize {
        for k in -6i64..=6 {
            for i in 0..=d {
                let want = if i == 0 && k >= 0 {
                    small_binom((d as i64 + k) as u64, d as u64)
                } else if i == d && k < -(d as i64) {
                    small_binom((-k - 1) as u64, d as u64)
                } else {
                    0
                };
                let got = global_cohomology_dim(d, k, i, None) as u64;
                ensure!(got == want, "H^{i}(P^{d}, O({k})) = {got}, want {want}");
            }
        }
    }
    Ok(())
}

fn c9_local_vanishing() -> Check {
    for d in 1..=3usize {
        for r in 0..d {
            for k in -4i64..=4 {
                for l in weights_in_box(d, k, d as i64 + k.abs() + 2) {
                    for i in 0..=d + 1 {
                        let got = local_cohomology_dim(d, r, k, &l, i);
                        if i < d - r || i > d {
                            ensure!(got == 0, "H^{i}_(P^{r})(P^{d}) at {:?} is {got}", l.0);
                        } else if i > d - r {
                            let want = global_cohomology_dim(d, k, i, Some(&l));
                            ensure!(got == want, "H^{i}_(P^{r}) at {:?}: {got} vs {want}", l.0);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn c10_weight_change() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let d = rng.gen_range(1..=3usize);
        let k = rng.gen_range(-2..=2i64);
        let mut mu: Vec<i64> = (0..d).map(|_| rng.gen_range(-50..=50)).collect();
        mu.push(k - mu.iter().sum::<i64>());
        let mu = Weight(mu);
        let wc = weight_change(d, k, &mu);
        ensure!(wc.nu.in_box(box_radius(d, k)), "{:?} not reduced", mu.0);
        let mut cur = mu.clone();
        for &(u, v) in &wc.trace {
            cur = cur.sub(&Weight::root(d, u, v));
        }
        ensure!(cur == wc.nu, "trace does not replay for {:?}", mu.0);
        for e in 1..=3 {
            let a = gauss_norm(&Section::x(mu.clone()), 3, e).0.unwrap();
            let b = gauss_norm(&Section::x(wc.nu.clone()), 3, e);
            ensure!(b == NormValue(Some(a - e * wc.steps as i64)), "norm scaling for {:?}", mu.0);
        }
        ensure!(wc.presence.iter().all(|&m| m == presence_mask(&mu, k)), "presence changed for {:?}", mu.0);
        ensure!(
            wc.presence.windows(2).all(|w| restriction_squares_commute(d, w[0], w[1])),
            "restriction square for {:?}",
            mu.0
        );
    }
    Ok(())
}

fn c11_strictness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = 2;
    for d in [2usize, 3] {
        for k in -2i64..=2 {
            let n = box_radius(d, k);
            for q in 0..d {
                let uniform = uniform_modulus(d, 0, k, q, p, 1);
                ensure!(uniform > Modulus::Finite(i64::MIN), "no modulus for d={d} k={k} q={q}");
                let samples = 500;
                let mut seen = 0;
                while seen < samples {
                    let mut mu: Vec<i64> = (0..d).map(|_| rng.gen_range(-50..=50)).collect();
                    mu.push(k - mu.iter().sum::<i64>());
                    let mu = Weight(mu);
                    if mu.in_box(n) {
                        continue;
                    }
                    seen += 1;
                    let nu = weight_change(d, k, &mu).nu;
                    let rm = strictness_modulus(d, 0, k, q, p, 1, &mu);
                    ensure!(rm == strictness_modulus(d, 0, k, q, p, 1, &nu), "R changes along reduction of {:?}", mu.0);
                    ensure!(rm >= uniform, "R at {:?} below the uniform modulus", mu.0);
                }
            }
        }
    }
    Ok(())
}

fn c12_preimages() -> Check {
    for d in 1..=2usize {
        let charts: Vec<Vec<usize>> = (1u32..1 << (d + 1)).map(|s| (0..=d).filter(|j| s >> j & 1 == 1).collect()).collect();
        for mu in weights_in_box(d, 0, 12) {
            if mu.norm1() > 12 {
                continue;
            }
            for chart in &charts {
                if !mu.present_on(chart, 0) {
                    continue;
                }
                let pre = good_preimage(&mu, chart).map_err(|e| e.to_string())?;
                ensure!(is_exact(&pre, &mu), "φ(Y) != X^{:?} on {chart:?}", mu.0);
                for p in [2u64, 3, 5] {
                    for e in 1..=3 {
                        ensure!(pre.bound(&mu, chart, p, e).holds, "bound fails at {:?} {chart:?} p={p} e={e}", mu.0);
                    }
                    ensure!(check_first_estimate(&mu, chart, 0, p).is_none(), "first estimate at {:?}", mu.0);
                    ensure!(check_second_estimate(&mu, chart, 0, p), "second estimate at {:?}", mu.0);
                }
            }
        }
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_nonarch")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stdout));
    out.stdout
}

fn c13_determinism() -> Check {
    let sweeps: [&[&str]; 2] = [
        &["coh", "strictness", "--d", "2", "--r", "0", "--k", "1", "--q", "0", "--p", "2", "--sweep", "--samples", "40", "--seed", "17"],
        &["pbw", "check-bounds", "--d", "2", "--sweep", "--sweep-box", "6", "--samples", "30", "--seed", "17"],
    ];
    for args in sweeps {
        let a = run_cli(args);
        let b = run_cli(args);
        let mut one = args.to_vec();
        one.extend(["--workers", "1"]);
        let c = run_cli(&one);
        ensure!(a == b && a == c, "{} {} output is not reproducible", args[0], args[1]);
        let mut other = args.to_vec();
        *other.last_mut().unwrap() = "18";
        ensure!(run_cli(&other) != a, "seed has no effect on {} {}", args[0], args[1]);
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("Lucas binomials against Pascal's triangle", c1_lucas),
        ("exponent recovery from χ_c(1+x)", c2_recover),
        ("binomial coefficient pattern", c3_pattern),
        ("character homomorphism", c4_homomorphism),
        ("exponent coordinates are an isomorphism", c5_isomorphism),
        ("ring structure of analytic characters", c6_ring_structure),
        ("Hasse derivative identities", c7_hasse),
        ("global cohomology of O(k)", c8_global),
        ("local cohomology vanishing", c9_local_vanishing),
        ("weight change into the box", c10_weight_change),
        ("uniform strictness modulus", c11_strictness),
        ("good preimages and their bounds", c12_preimages),
        ("CLI sweep determinism", c13_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
