//! Preimages of monomials under `U(gl_3) e_ν → O(U_I)` with their norm
//! bounds, and a product in normal order.

use nonarch::pbw::{aux_a, basis, good_preimage, is_exact, pbw_mul, PbwElement};
use nonarch::projcoh::{LieGen, Weight};

fn main() -> nonarch::Result<()> {
    let d = 2;
    println!("PBW order: {:?}", basis(d));
    let a = PbwElement::generator(d, LieGen::Torus(1));
    let b = PbwElement::generator(d, LieGen::Root(0, 1));
    for t in pbw_mul(&a, &b).to_terms() {
        println!("L_1 · L_(0,1) term: {t:?}");
    }

    let chart = [1, 2];
    for mu in [vec![3, -2, -1], vec![7, -4, -3], vec![9, 0, -9]] {
        let mu = Weight(mu);
        let pre = good_preimage(&mu, &chart)?;
        let rep = pre.bound(&mu, &chart, 3, 1);
        println!(
            "mu = {:?}: base {:?}, {} steps, exact = {}, log_3 |Y| = {:?} <= {} (A = 3^{})",
            mu.0,
            pre.base.0,
            pre.trace.len(),
            is_exact(&pre, &mu),
            rep.norm,
            rep.bound,
            aux_a(&mu, &chart, 0, 3)
        );
    }
    Ok(())
}
