//! The enveloping algebra `U(gl_{d+1})` over Q in PBW form, its action on
//! monomial sections, and norm-controlled preimages of monomials.

mod algebra;
mod aux;
mod module;
mod preimage;

pub use algebra::{basis, bracket, index_of, pbw_mul, Monomial, PbwAlgebra, PbwElement, PbwTerm};
pub use aux::{aux_a, check_first_estimate, check_second_estimate, legendre};
pub use module::{act, FreeModuleComponent, FreeModuleElement};
pub use preimage::{good_preimage, is_exact, BoundReport, GoodPreimage};
