//! Exact rational arithmetic helpers.
//!
//! Everything correctness-relevant in this crate runs on
//! [`num_rational::BigRational`] (arbitrary-precision, always in lowest
//! terms, positive denominator).  This module adds the small amount of glue
//! the rest of the crate needs: parsing and printing the `"p/q"` wire format,
//! integer construction, lcm/ceil/floor utilities, and fixed-precision
//! decimal rendering for SVG output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// The exact rational type used throughout the crate.
pub type Rat = num_rational::BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational (`q != 0`).
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` with optional sign, arbitrary precision.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::ParseRational {
        literal: s.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
        Some((ps, qs)) => {
            let p: BigInt = ps.trim().parse().map_err(|_| bad())?;
            let q: BigInt = qs.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical wire format: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of `acc` and the denominator of `r`.
pub fn lcm_denom(acc: &BigInt, r: &Rat) -> BigInt {
    acc.lcm(r.denom())
}

/// ⌊r⌋ as a big integer.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().numer().clone()
}

/// ⌈r⌉ as a big integer.
pub fn ceil_int(r: &Rat) -> BigInt {
    r.ceil().numer().clone()
}

/// `r * scale`, which callers guarantee to be integral (e.g. `scale` is a
/// common denominator).  Panics if the product is not an integer.
pub fn scale_to_int(r: &Rat, scale: &BigInt) -> BigInt {
    let prod = r * Rat::from_integer(scale.clone());
    debug_assert!(prod.is_integer(), "value {} does not live on scale {}", r, scale);
    prod.to_integer()
}

/// Converts a big integer into `i128`, reporting overflow as an error.
pub fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::ScaleOverflow)
}

/// Renders `r` as a decimal string with `sig` significant digits.
/// Presentation-only (SVG coordinates); never used in comparisons.
pub fn decimal_approx(r: &Rat, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Find e with 10^e <= a < 10^(e+1).
    let ten = Rat::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut x = a.clone();
    while x >= ten {
        x /= &ten;
        e += 1;
    }
    while x < Rat::one() {
        x *= &ten;
        e -= 1;
    }
    // digits = round(a * 10^(sig-1-e)) has exactly `sig` digits.
    let shift = sig as i64 - 1 - e;
    let pow = ten.numer().pow(shift.unsigned_abs() as u32);
    let scaled = if shift >= 0 {
        a * Rat::from_integer(pow)
    } else {
        a / Rat::from_integer(pow)
    };
    let digits = scaled.round().to_integer();
    let ds = digits.to_string();
    // Rounding may carry to sig+1 digits (e.g. 999.6 -> 1000).
    let (ds, e) = if ds.len() > sig { (ds, e + 1) } else { (ds, e) };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 && (e as usize) < ds.len() {
        out.push_str(&ds[..=e as usize]);
        let frac = ds[e as usize + 1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else if e < 0 && e > -10 {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(ds.trim_end_matches('0'));
    } else {
        // Fall back to scientific notation for extreme magnitudes.
        out.push_str(&ds[..1]);
        let frac = ds[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push('e');
        out.push_str(&e.to_string());
    }
    out
}
