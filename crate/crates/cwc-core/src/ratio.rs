//! Exact rational helpers for reports: every ratio the library emits is an
//! integer pair, rendered as `"p/q"` plus a fixed-precision decimal for
//! humans. No floating point enters the stored values.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduced rational from a non-negative numerator/denominator pair.
///
/// # Panics
/// Panics if `den` is zero.
pub fn ratio_of(num: &BigUint, den: &BigUint) -> BigRational {
    assert!(!den.is_zero(), "zero denominator");
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Renders a rational as `"p/q"`, always including the denominator so that
/// `1` prints as `"1/1"` and `0` as `"0/1"`.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Fixed-point decimal rendering with `places` fractional digits, rounded
/// half-up. Deterministic across platforms.
pub fn decimal_string(r: &BigRational, places: u32) -> String {
    let negative = r.is_negative();
    let num = r.numer().abs().to_biguint().expect("abs is non-negative");
    let den = r.denom().abs().to_biguint().expect("abs is non-negative");
    let scale = BigUint::from(10u32).pow(places);
    let scaled = &num * &scale;
    let (mut quot, rem) = scaled.div_rem(&den);
    if &rem * 2u32 >= den {
        quot += BigUint::one();
    }
    let (int_part, frac_part) = quot.div_rem(&scale);
    let sign = if negative && !quot.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = places as usize
        )
    }
}
