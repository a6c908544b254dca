use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::float::f64_to_rational;
use super::{Scalar, ScalarMode};

/// Exact rational number. Arithmetic never rounds.
///
/// Division by zero panics, as for the wrapped `BigRational`; the algorithms
/// test for exact zero before every division.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    type Context = ();

    const EXACT: bool = true;

    fn context(&self) -> Self::Context {}

    fn mode(_ctx: ()) -> ScalarMode {
        ScalarMode::Rational
    }

    fn from_i64(v: i64, _ctx: ()) -> Self {
        Rational::integer(v)
    }

    fn from_rational(q: &BigRational, _ctx: ()) -> Self {
        Rational(q.clone())
    }

    /// Exact binary value of `v`; non-finite input maps to zero.
    fn from_f64(v: f64, _ctx: ()) -> Self {
        Rational(f64_to_rational(v).unwrap_or_else(BigRational::zero))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.0.clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}
