//! Exact rational arithmetic for Euler characteristics.
//!
//! Values are `num_rational::BigRational`, which stores lowest terms with a
//! positive denominator, so equality and comparison are canonical. No
//! floating point is used anywhere in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with optional sign, e.g. `"-5/2"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("bad rational `{s}`"));
    match s.split_once('/') {
        None => {
            let n = s.parse::<BigInt>().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let num = p.parse::<BigInt>().map_err(|_| bad())?;
            let den = q.parse::<BigInt>().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text form: integer when the denominator is one, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Orbifold Euler characteristic from a cell decomposition: each cell
/// contributes `(-1)^dim / |isotropy|`.
pub fn orbifold_euler(cells: &[(u8, u64)]) -> Result<Rational> {
    if cells.is_empty() {
        return Err(Error::InvalidInput("empty cell list".into()));
    }
    let mut chi = Rational::zero();
    for &(dim, isotropy) in cells {
        if dim > 2 {
            return Err(Error::InvalidInput(format!("cell dimension {dim} > 2")));
        }
        if isotropy == 0 {
            return Err(Error::InvalidInput(
                "isotropy order must be positive".into(),
            ));
        }
        let sign = if dim % 2 == 0 { 1 } else { -1 };
        chi += Rational::new(BigInt::from(sign), BigInt::from(isotropy));
    }
    Ok(chi)
}

/// Euler characteristic of an index-`d` subgroup: `d * chi`.
pub fn scale_chi(chi: &Rational, index: u64) -> Rational {
    chi * Rational::from_integer(BigInt::from(index))
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
