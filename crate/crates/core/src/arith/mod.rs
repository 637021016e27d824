//! Finite fields, truncated p-adic integers and Lucas binomials.

mod field;
mod lucas;
pub(crate) mod poly;
mod zp;

pub use field::{FieldEmbedding, FieldSpec, FqElem};
pub use lucas::{binom_signed, lucas_binom, lucas_binom_int};
pub use zp::ZpApprox;
