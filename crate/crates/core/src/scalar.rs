//! Integer scalars usable as matrix entries.
//!
//! Every routine that touches determinants is written against [`ExactInt`].
//! Fixed-width types report overflow through the checked operations and the
//! callers retry with [`BigInt`], so results are always exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

pub trait ExactInt:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
    /// Exact division, `None` when `self` is not a multiple of `rhs` or the
    /// quotient does not fit.
    fn checked_exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn to_bigint(&self) -> BigInt;

    /// `None` when the value does not fit in `Self`.
    fn from_bigint(value: &BigInt) -> Option<Self>;
}

impl ExactInt for i64 {
    fn checked_exact_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0 || self.checked_rem(*rhs)? != 0 {
            return None;
        }
        self.checked_div(*rhs)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }
}

impl ExactInt for i128 {
    fn checked_exact_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0 || self.checked_rem(*rhs)? != 0 {
            return None;
        }
        self.checked_div(*rhs)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i128()
    }
}

impl ExactInt for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
}
