//! Weight-graded sections of `O(k)` on `P^d`, their Gauss norms, Čech and
//! local cohomology along `P^r`, and strictness of the Čech differentials.

mod cech;
mod linalg;
mod local;
mod strictness;
mod weight;
mod weight_change;

pub use cech::{complement_cover, global_cohomology_dim, tuples_of, weight_cohomology, weights_in_box, CechComplex};
pub use linalg::padic_elementary_divisors;
pub use local::local_cohomology_dim;
pub use strictness::{strictness_modulus, uniform_modulus, Modulus};
pub use weight::{gauss_norm, lie_action, valuation, LieGen, NormValue, Section, Weight};
pub use weight_change::{box_radius, presence_mask, restriction_squares_commute, weight_change, WeightChange};
