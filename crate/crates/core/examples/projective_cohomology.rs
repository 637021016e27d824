//! Weight-graded Čech cohomology of O(k) on P^d, on the complement of P^r,
//! and local cohomology along P^r.

use nonarch::projcoh::{global_cohomology_dim, local_cohomology_dim, weight_cohomology, weights_in_box, Weight};

fn main() {
    for k in [-4i64, -3, 0, 2] {
        let dims: Vec<usize> = (0..=2).map(|i| global_cohomology_dim(2, k, i, None)).collect();
        println!("H^*(P^2, O({k})) = {dims:?}");
    }
    let l = Weight(vec![2, -1, -1]);
    for q in 0..2 {
        println!("H^{q}(P^2 \\ P^0, O)_{:?} = {}", l.0, weight_cohomology(2, 0, 0, &l, q));
    }
    let (d, r, k) = (3usize, 1usize, -1i64);
    let mut totals = vec![0usize; d + 1];
    for l in weights_in_box(d, k, 3) {
        for (i, t) in totals.iter_mut().enumerate() {
            *t += local_cohomology_dim(d, r, k, &l, i);
        }
    }
    println!("local cohomology of O({k}) along P^{r} in P^{d}, weights in the radius-3 box: {totals:?}");
}
