pub mod arith;
pub mod dieudonne;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod pipeline;
pub mod pollack;
pub mod series;
pub mod sympower;
pub mod symsq;

pub use error::{Error, Result};
