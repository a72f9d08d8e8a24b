//! Exact rational scalars.
//!
//! All arithmetic in this crate is carried out on arbitrary-precision
//! rationals kept in lowest terms with a positive denominator; `Rat` is the
//! single scalar type every module shares.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Builds `n/d`; panics when `d == 0`. Intended for literals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` into a reduced rational. The denominator must be
/// nonzero; a sign on either part is accepted and normalized.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let trimmed = text.trim();
    let parse_int = |part: &str, offset: usize| -> Result<BigInt> {
        part.trim().parse::<BigInt>().map_err(|_| Error::Parse {
            position: offset,
            message: format!("expected an integer, found {part:?}"),
        })
    };
    match trimmed.find('/') {
        None => Ok(Rat::from_integer(parse_int(trimmed, 0)?)),
        Some(slash) => {
            let numer = parse_int(&trimmed[..slash], 0)?;
            let denom = parse_int(&trimmed[slash + 1..], slash + 1)?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    position: slash + 1,
                    message: "denominator must be nonzero".into(),
                });
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

/// Renders `p/q`, or just `p` for integers; `parse_rat` inverts it exactly.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `ceil(log2(x))` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}
