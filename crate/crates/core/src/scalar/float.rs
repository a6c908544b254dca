use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Scalar, ScalarMode};
use crate::error::Result;

impl Scalar for f64 {
    type Context = ();

    const EXACT: bool = false;

    fn context(&self) -> Self::Context {}

    fn mode(_ctx: ()) -> ScalarMode {
        ScalarMode::Float64
    }

    fn from_i64(v: i64, _ctx: ()) -> Self {
        v as f64
    }

    fn from_rational(q: &BigRational, _ctx: ()) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64, _ctx: ()) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<BigRational> {
        f64_to_rational(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn pi(_ctx: ()) -> Result<Self> {
        Ok(std::f64::consts::PI)
    }

    fn sin(&self) -> Result<Self> {
        Ok(f64::sin(*self))
    }

    fn exp(&self) -> Result<Self> {
        Ok(f64::exp(*self))
    }

    fn ln(&self) -> Result<Self> {
        Ok(f64::ln(*self))
    }

    fn powi(&self, e: i64) -> Option<Self> {
        if e < 0 && *self == 0.0 {
            return None;
        }
        Some(match i32::try_from(e) {
            Ok(e) => f64::powi(*self, e),
            Err(_) => f64::powf(*self, e as f64),
        })
    }
}

/// Exact rational value of a finite double.
pub(crate) fn f64_to_rational(v: f64) -> Option<BigRational> {
    if !v.is_finite() {
        return None;
    }
    if v == 0.0 {
        return Some(BigRational::from_integer(BigInt::from(0)));
    }
    let bits = v.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let m = BigInt::from(mantissa) * sign;
    let two = BigInt::from(2);
    Some(if exp >= 0 {
        BigRational::from_integer(m * num_traits::pow(two, exp as usize))
    } else {
        BigRational::new(m, num_traits::pow(two, (-exp) as usize))
    })
}
