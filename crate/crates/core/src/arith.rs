//! Exact integer and rational helpers.
//!
//! Everything that decides whether a point lies on a circle goes through
//! here: square roots are only ever taken of integers or of rationals whose
//! reduced parts are tested for being perfect squares, and comparisons
//! against a radius are done on squared quantities.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type BigRat = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithError {
    /// A square root of a negative quantity was requested.
    NegativeInput,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NegativeInput => f.write_str("square root of a negative number"),
        }
    }
}

impl core::error::Error for ArithError {}

/// Builds the reduced rational `num / den`. Panics if `den` is zero.
pub fn rat(num: i128, den: i128) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Largest `r` with `r * r <= n`.
pub fn isqrt_floor(n: &BigInt) -> Result<BigInt, ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeInput);
    }
    Ok(n.sqrt())
}

/// Exact square root of a rational, if it has one.
pub fn rat_sqrt_exact(q: &BigRat) -> Result<Option<BigRat>, ArithError> {
    if q.is_negative() {
        return Err(ArithError::NegativeInput);
    }
    // Reduced form: q is a rational square iff both parts are squares.
    let num = q.numer();
    let den = q.denom();
    let rn = num.sqrt();
    if &(&rn * &rn) != num {
        return Ok(None);
    }
    let rd = den.sqrt();
    if &(&rd * &rd) != den {
        return Ok(None);
    }
    Ok(Some(BigRat::new(rn, rd)))
}

/// `floor(sqrt(q))` for a nonnegative rational.
pub fn rat_floor_sqrt(q: &BigRat) -> Result<BigInt, ArithError> {
    if q.is_negative() {
        return Err(ArithError::NegativeInput);
    }
    // floor(sqrt(x)) == floor(sqrt(floor(x))) for x >= 0.
    Ok(q.floor().to_integer().sqrt())
}

/// `ceil(q)` as an integer.
pub(crate) fn rat_ceil(q: &BigRat) -> BigInt {
    q.ceil().to_integer()
}

pub(crate) fn rat_floor(q: &BigRat) -> BigInt {
    q.floor().to_integer()
}

// Squares modulo 64 occupy 12 of the 64 residues.
const SQUARE_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

/// Exact square root of a machine integer, if `n` is a perfect square.
#[inline]
pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    if SQUARE_MOD_64 & (1 << (n as u64 & 63)) == 0 {
        return None;
    }
    let r = isqrt_i128(n);
    if r * r == n {
        Some(r)
    } else {
        None
    }
}

/// Largest `r` with `r * r <= n`, for `0 <= n < 2^126`.
#[inline]
pub fn isqrt_i128(n: i128) -> i128 {
    debug_assert!(n >= 0);
    let mut r = libm::sqrt(n as f64) as i128;
    // The float estimate is within a few units of the true root.
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Integer division rounding toward negative infinity.
#[inline]
pub(crate) fn div_floor_i128(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

#[inline]
pub(crate) fn div_ceil_i128(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    Integer::gcd(&a, &b)
}

/// Compares `an / ad` with `bn / bd` (denominators positive) exactly,
/// falling back to big integers when the cross products overflow.
pub fn cmp_frac_i128(an: i128, ad: i128, bn: i128, bd: i128) -> Ordering {
    debug_assert!(ad > 0 && bd > 0);
    match (an.checked_mul(bd), bn.checked_mul(ad)) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => (BigInt::from(an) * BigInt::from(bd)).cmp(&(BigInt::from(bn) * BigInt::from(ad))),
    }
}

/// Converts a rational into an `(numerator, denominator)` pair of machine
/// integers, if both fit.
pub fn rat_to_i128(q: &BigRat) -> Option<(i128, i128)> {
    use num_traits::ToPrimitive;
    Some((q.numer().to_i128()?, q.denom().to_i128()?))
}

pub(crate) fn is_integer(q: &BigRat) -> bool {
    q.denom() == &BigInt::from(1)
}

/// Decimal approximation for display only.
pub fn approx_f64(q: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
