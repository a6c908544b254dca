//! Scalar arithmetic modes.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. Three modes are
//! provided: plain `f64`, [`BigFloat`] with a precision fixed per run, and
//! exact [`Rational`]. A single table computation is monomorphised on one
//! scalar type, so modes cannot be mixed inside it; for `BigFloat` the
//! precision is carried in [`Scalar::Context`] and checked when a
//! [`Sequence`](crate::Sequence) is built.

mod bigfloat;
mod decimal;
mod float;
mod rational;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

pub use bigfloat::{BigFloat, Precision};
pub use decimal::{format_fixed, format_rational_fixed, parse_exact};
pub use rational::Rational;

use crate::error::Result;

/// The arithmetic mode of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Float64,
    BigFloat { precision_bits: usize },
    Rational,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Float64 => f.write_str("float64"),
            ScalarMode::BigFloat { precision_bits } => write!(f, "bigfloat({precision_bits})"),
            ScalarMode::Rational => f.write_str("rational"),
        }
    }
}

/// A real number in one of the supported arithmetic modes.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Per-run construction parameters (the working precision for `BigFloat`).
    type Context: Copy + fmt::Debug + PartialEq + Send + Sync;

    /// True when `+ - * /` never round.
    const EXACT: bool;

    fn context(&self) -> Self::Context;

    fn mode(ctx: Self::Context) -> ScalarMode;

    fn from_i64(v: i64, ctx: Self::Context) -> Self;

    /// Nearest representable value (exact in rational mode).
    fn from_rational(q: &BigRational, ctx: Self::Context) -> Self;

    fn from_f64(v: f64, ctx: Self::Context) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact value as a rational, `None` for NaN or infinities.
    fn to_rational(&self) -> Option<BigRational>;

    fn is_zero(&self) -> bool;

    fn is_finite(&self) -> bool;

    fn abs(&self) -> Self;

    fn pi(_ctx: Self::Context) -> Result<Self> {
        Err(crate::Error::ModeUnsupported("the constant pi"))
    }

    fn sin(&self) -> Result<Self> {
        Err(crate::Error::ModeUnsupported("sin"))
    }

    fn exp(&self) -> Result<Self> {
        Err(crate::Error::ModeUnsupported("exp"))
    }

    fn ln(&self) -> Result<Self> {
        Err(crate::Error::ModeUnsupported("ln"))
    }

    fn zero(ctx: Self::Context) -> Self {
        Self::from_i64(0, ctx)
    }

    fn one(ctx: Self::Context) -> Self {
        Self::from_i64(1, ctx)
    }

    fn from_bigint(v: &BigInt, ctx: Self::Context) -> Self {
        Self::from_rational(&BigRational::from_integer(v.clone()), ctx)
    }

    /// `self^e` for an integer exponent; `None` for `0^e` with `e < 0`.
    fn powi(&self, e: i64) -> Option<Self> {
        let ctx = self.context();
        if e < 0 && self.is_zero() {
            return None;
        }
        let mut base = self.clone();
        let mut acc = Self::one(ctx);
        let mut m = e.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc * base.clone();
            }
            m >>= 1;
            if m > 0 {
                base = base.clone() * base;
            }
        }
        Some(if e < 0 { Self::one(ctx) / acc } else { acc })
    }
}

/// Larger of two magnitudes.
pub(crate) fn max_abs<T: Scalar>(a: &T, b: &T) -> T {
    let (a, b) = (a.abs(), b.abs());
    if a >= b {
        a
    } else {
        b
    }
}
