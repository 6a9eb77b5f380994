//! Exact rationals used for every coordinate and value.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn half() -> Rat {
    rat(1, 2)
}

pub fn in_unit(x: &Rat) -> bool {
    !x.is_negative() && *x <= Rat::one()
}

pub fn check_unit(x: &Rat) -> Result<()> {
    if in_unit(x) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval { value: x.clone() })
    }
}

/// The grid point `k/n`.
pub fn grid(k: u32, n: u32) -> Rat {
    rat(i64::from(k), i64::from(n))
}

/// Index `k` with `x = k/n`, if `x` lies on the grid.
pub fn grid_index(x: &Rat, n: u32) -> Option<u32> {
    let scaled = x * Rat::from_integer(BigInt::from(n));
    if !scaled.is_integer() || scaled.is_negative() {
        return None;
    }
    u32::try_from(scaled.to_integer()).ok()
}

/// Parses `p/q` or an integer. Decimals are rejected.
pub fn parse_rat(text: &str) -> std::result::Result<Rat, String> {
    let ok = !text.is_empty()
        && text
            .chars()
            .enumerate()
            .all(|(i, c)| c.is_ascii_digit() || c == '/' || (i == 0 && c == '-'));
    if !ok {
        return Err(format!("`{text}` is not a rational of the form p/q"));
    }
    Rat::from_str(text).map_err(|_| format!("`{text}` is not a rational of the form p/q"))
}

pub fn min_rat(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max_rat(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Lossy conversion for plot output only.
pub fn to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
