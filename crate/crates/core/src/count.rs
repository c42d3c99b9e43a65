//! Unsigned count scalars.
//!
//! Every global and unrestricted count is generic over [`Count`]. The engine
//! defaults to `u128` (see [`crate::GraphletCounts`]); `u64` is enough for
//! small graphs and arbitrary-precision integers such as `num_bigint::BigUint`
//! satisfy the bound as well.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, FromPrimitive, One, Unsigned, Zero};

use crate::error::CountError;

/// An exact, unsigned integer type usable as a graphlet count accumulator.
pub trait Count:
    Clone
    + Ord
    + Debug
    + Display
    + FromStr
    + Zero
    + One
    + Unsigned
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Count for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + FromStr
        + Zero
        + One
        + Unsigned
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + CheckedDiv
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn lift<C: Count>(x: u64) -> Result<C, CountError> {
    C::from_u64(x).ok_or(CountError::Overflow)
}

pub(crate) fn add<C: Count>(a: &C, b: &C) -> Result<C, CountError> {
    a.checked_add(b).ok_or(CountError::Overflow)
}

pub(crate) fn mul<C: Count>(a: &C, b: &C) -> Result<C, CountError> {
    a.checked_mul(b).ok_or(CountError::Overflow)
}

/// `a - b`, failing when the result would be negative.
pub(crate) fn sub<C: Count>(a: &C, b: &C, what: &'static str) -> Result<C, CountError> {
    a.checked_sub(b).ok_or(CountError::Negative(what))
}

/// `a / d`, failing unless the division is exact.
pub(crate) fn div_exact<C: Count>(a: &C, d: u64, what: &'static str) -> Result<C, CountError> {
    let d: C = lift(d)?;
    let q = a.checked_div(&d).ok_or(CountError::Overflow)?;
    if mul(&q, &d)? != *a {
        return Err(CountError::Inexact(what));
    }
    Ok(q)
}

/// Binomial coefficient `C(n, k)` for `k <= 4`, computed exactly in `C`.
pub fn binomial<C: Count>(n: u64, k: u32) -> Result<C, CountError> {
    assert!(k <= 4, "binomial only defined here for k <= 4");
    if (n as u128) < k as u128 {
        return Ok(C::zero());
    }
    // Multiply then divide step by step; each prefix product is itself a binomial times i!.
    let mut acc = C::one();
    for i in 0..k as u64 {
        acc = mul(&acc, &lift(n - i)?)?;
        acc = div_exact(&acc, i + 1, "binomial")?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial::<u64>(5, 2).unwrap(), 10);
        assert_eq!(binomial::<u64>(5, 3).unwrap(), 10);
        assert_eq!(binomial::<u64>(5, 4).unwrap(), 5);
        assert_eq!(binomial::<u64>(3, 4).unwrap(), 0);
        assert_eq!(binomial::<u128>(0, 0).unwrap(), 1);
        // C(10^6, 4) overflows nothing in u128
        assert_eq!(
            binomial::<u128>(1_000_000, 4).unwrap(),
            1_000_000u128 * 999_999 * 999_998 * 999_997 / 24
        );
    }

    #[test]
    fn binomial_overflow_is_reported() {
        assert_eq!(binomial::<u64>(u64::MAX, 4), Err(CountError::Overflow));
    }

    #[test]
    fn inexact_division_detected() {
        assert_eq!(div_exact::<u64>(&7, 2, "x"), Err(CountError::Inexact("x")));
        assert_eq!(div_exact::<u64>(&8, 2, "x"), Ok(4));
    }
}
