//! Sparse multivariate polynomials over the rationals with named variables,
//! monomial orderings, and the text grammar for polynomials.

mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use monomial::Monomial;
pub use order::{Block, BlockKind, MonomialOrder};
pub use parse::parse;
pub use poly::MultiPoly;
pub use ring::Ring;
