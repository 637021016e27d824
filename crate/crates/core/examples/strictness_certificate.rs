//! Strictness moduli of the Čech differentials on P^d \ P^0: the minimum over
//! the reduction box, and its invariance under weight change.

use nonarch::projcoh::{box_radius, strictness_modulus, uniform_modulus, weight_change, Weight};

fn main() {
    let (d, r, p, e) = (2usize, 0usize, 3u64, 1i64);
    for k in -1i64..=1 {
        for q in 0..d {
            println!("k = {k:>2} q = {q}: N = {}, R = p^{:?}", box_radius(d, k), uniform_modulus(d, r, k, q, p, e));
        }
    }
    let mu = Weight(vec![30, 5, -35]);
    let wc = weight_change(d, 0, &mu);
    println!("{:?} reduces to {:?} in {} steps", mu.0, wc.nu.0, wc.steps);
    for q in 0..d {
        let a = strictness_modulus(d, r, 0, q, p, e, &mu);
        let b = strictness_modulus(d, r, 0, q, p, e, &wc.nu);
        println!("q = {q}: R(mu) = {a:?}, R(nu) = {b:?}");
    }
}
