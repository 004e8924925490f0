//! The scalar abstraction every algorithm in this crate is generic over.
//!
//! Any unsigned integer type with checked arithmetic qualifies: the machine
//! integers (`u32`, `u64`, `u128`) and [`num_bigint::BigUint`]. Arithmetic that
//! would leave the representable range surfaces as [`Error::Overflow`] instead
//! of wrapping, so machine types give exact answers or a typed failure.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned};

use crate::error::{Error, Result};

/// Nonnegative integer scalar.
pub trait Natural:
    Integer
    + Unsigned
    + Roots
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
}

impl<T> Natural for T where
    T: Integer
        + Unsigned
        + Roots
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}

/// Small constant as `T`. Every supported scalar holds values below 2^32.
#[inline]
pub(crate) fn lit<T: Natural>(v: u64) -> T {
    T::from_u64(v).expect("scalar type too narrow for a small constant")
}

/// `T` from a `u64`, failing with [`Error::Overflow`] for narrow types.
#[inline]
pub fn from_u64<T: Natural>(v: u64) -> Result<T> {
    T::from_u64(v).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn add<T: Natural>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub<T: Natural>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul<T: Natural>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `a * b + c`, checked.
#[inline]
pub(crate) fn mul_add<T: Natural>(a: &T, b: &T, c: &T) -> Result<T> {
    add(&mul(a, b)?, c)
}
