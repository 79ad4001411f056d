//! Coefficient rings for truncated series.
//!
//! Everything in the Magnus kernel is generic over [`Coefficient`]. The
//! arbitrary-precision [`BigInt`] never overflows; fixed-width integers are
//! allowed too, but every operation is checked and reports
//! [`Error::Overflow`] instead of wrapping.

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, ToBigInt};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use crate::error::{Error, Result};

pub trait Coefficient:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + From<i32>
    + ToBigInt
    + Send
    + Sync
    + 'static
{
    fn add_checked(&self, other: &Self) -> Result<Self> {
        self.checked_add(other).ok_or(Error::Overflow)
    }

    fn sub_checked(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other).ok_or(Error::Overflow)
    }

    fn mul_checked(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other).ok_or(Error::Overflow)
    }

    fn neg_checked(&self) -> Result<Self> {
        Self::zero().sub_checked(self)
    }

    fn to_big(&self) -> BigInt {
        // ToBigInt is infallible for every integer type we accept
        self.to_bigint().expect("integer coefficient")
    }
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Eq
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + From<i32>
        + ToBigInt
        + Send
        + Sync
        + 'static
{
}
