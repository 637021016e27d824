pub mod arith;
pub mod characters;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod pbw;
pub mod projcoh;
pub mod series;
pub mod units;

pub use error::{Error, Result};
