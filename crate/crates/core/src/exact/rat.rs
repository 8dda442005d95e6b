//! Exact rational scalars.
//!
//! All geometry in this crate is computed over arbitrary-precision rationals;
//! floating point appears only in report-level summaries (fitted exponents,
//! CSV columns) and never feeds back into a count or a comparison.
//!
//! `Rat` is backed by `num_rational::BigRational`, which maintains the two
//! invariants we rely on everywhere: values are always in lowest terms and the
//! denominator is always positive. The canonical text form is `"num/den"`,
//! with a bare `"num"` accepted and produced for integers — exactly what
//! `Display`/`FromStr` on `BigRational` do, so round-trips are bit-exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics on `d == 0`; use [`parse_rat`] for fallible
/// construction from text.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse the canonical form: `"3/5"`, `"-3/5"`, or a bare integer `"7"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim().parse::<Rat>().map_err(|e| Error::Parse {
        what: format!("bad rational {s:?}: {e}"),
    })
}

/// Lossy conversion for report summaries only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root, if `r` is a perfect square of a rational.
///
/// Returns the non-negative root. `None` means `r` is negative or not a
/// square; this is a query, not an error.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let sn = int_sqrt_exact(r.numer())?;
    let sd = int_sqrt_exact(r.denom())?;
    Some(Rat::new(sn, sd))
}

/// Exact integer square root of a non-negative integer, if it is a perfect
/// square.
fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    debug_assert!(!n.is_negative());
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Sign of a rational as -1 / 0 / +1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Floor of log2 of a positive integer count.
pub fn floor_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    63 - n.leading_zeros()
}

/// Ceiling of log2 of a positive integer count (`1 -> 0`, `3 -> 2`).
pub fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    if n == 1 {
        0
    } else {
        floor_log2(n - 1) + 1
    }
}

/// True iff the rational is an integer with absolute value below `bound`.
pub fn small_int(r: &Rat, bound: i64) -> Option<i64> {
    if !r.denom().is_one() {
        return None;
    }
    let v = r.numer().to_i64()?;
    if v.abs() < bound {
        Some(v)
    } else {
        None
    }
}

/// gcd helper re-exported for integer bookkeeping.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trip() {
        for s in ["0", "7", "-7", "3/5", "-3/5", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Non-canonical input normalizes: parse reduces, prints lowest terms.
        assert_eq!(parse_rat("4/8").unwrap().to_string(), "1/2");
        assert_eq!(parse_rat("4/2").unwrap().to_string(), "2");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn lowest_terms_and_positive_denominator_invariant() {
        let r = rat(2, -4);
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn sqrt_exact_hits_and_misses() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat_int(0)), Some(rat_int(0)));
        assert_eq!(rat_sqrt(&rat_int(16)), Some(rat_int(4)));
        assert_eq!(rat_sqrt(&rat_int(2)), None);
        assert_eq!(rat_sqrt(&rat(-9, 4)), None);
        assert_eq!(rat_sqrt(&rat(9, 5)), None);
    }

    #[test]
    fn log2_helpers() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(2), 1);
        assert_eq!(floor_log2(3), 1);
        assert_eq!(floor_log2(8), 3);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
    }
}
