//! Exact invariants of hypersurface germs whose singular locus is a smooth
//! line.

pub mod arith;
pub mod blowup;
pub mod cli;
pub mod error;
pub mod idealcalc;
pub mod morsify;
pub mod invariants;
pub mod multipoly;
pub mod quotientalg;
pub mod stdbasis;

pub use error::{Error, Result};
