//! Exact rational arithmetic, dense univariate polynomials and small exact
//! matrices.
//!
//! Everything here is a pure value type. Determinants and characteristic
//! polynomials avoid general division: Bareiss elimination for the former,
//! the Berkowitz recurrence for the latter.

mod matrix;
mod unipoly;

pub use matrix::{det_unipoly_matrix, RatMatrix};
pub use unipoly::{discriminant, resultant, squarefree_part, UniPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

/// Builds `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `a` or `a/b` (optional leading sign).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Syntax { pos: 0, msg: format!("invalid rational `{s}`") };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Syntax { pos: 0, msg: "zero denominator".into() });
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Exact string form: `a` or `a/b`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
