use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat as AstroFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Scalar, ScalarMode};
use crate::error::Result;

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = Word::BITS as usize;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision of a [`BigFloat`] run, in mantissa bits (at least 64).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision(usize);

impl Precision {
    pub const MIN_BITS: usize = 64;

    pub fn new(bits: usize) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(crate::Error::Spec(format!(
                "bigfloat precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> usize {
        self.0
    }

    fn max_with(self, other: Precision) -> Precision {
        Precision(self.0.max(other.0))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(128)
    }
}

/// Binary floating-point number with a configurable mantissa width,
/// rounding to nearest-even after every operation.
#[derive(Clone)]
pub struct BigFloat {
    value: AstroFloat,
    precision: Precision,
}

impl BigFloat {
    fn wrap(value: AstroFloat, precision: Precision) -> Self {
        BigFloat { value, precision }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    fn bits(&self) -> usize {
        self.precision.0
    }

    fn binop_precision(&self, rhs: &Self) -> Precision {
        debug_assert_eq!(self.precision, rhs.precision, "mixed bigfloat precisions");
        self.precision.max_with(rhs.precision)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, {} bits)", self, self.bits())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = with_consts(|cc| self.value.format(Radix::Dec, RM, cc));
        match s {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str("NaN"),
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                let p = self.binop_precision(&rhs);
                BigFloat::wrap(self.value.$method(&rhs.value, p.0, RM), p)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat::wrap(self.value.neg(), self.precision)
    }
}

fn bigint_to_astro(v: &BigInt, p: usize) -> AstroFloat {
    if v.is_zero() {
        return AstroFloat::from_word(0, p);
    }
    let words: Vec<Word> = v.magnitude().to_u64_digits();
    let sign = if v.is_negative() {
        Sign::Neg
    } else {
        Sign::Pos
    };
    let exponent = (words.len() * WORD_BITS) as astro_float::Exponent;
    let mut exact = AstroFloat::from_words(&words, sign, exponent);
    if words.len() * WORD_BITS > p {
        // Rounding failure leaves the exact (wider) value in place.
        let _ = exact.set_precision(p, RM);
    }
    exact
}

impl Scalar for BigFloat {
    type Context = Precision;

    const EXACT: bool = false;

    fn context(&self) -> Precision {
        self.precision
    }

    fn mode(ctx: Precision) -> ScalarMode {
        ScalarMode::BigFloat {
            precision_bits: ctx.0,
        }
    }

    fn from_i64(v: i64, ctx: Precision) -> Self {
        BigFloat::wrap(AstroFloat::from_i64(v, ctx.0), ctx)
    }

    fn from_rational(q: &BigRational, ctx: Precision) -> Self {
        let p = ctx.0;
        let num = bigint_to_astro(q.numer(), p + WORD_BITS);
        if q.is_integer() {
            let mut v = num;
            let _ = v.set_precision(p, RM);
            return BigFloat::wrap(v, ctx);
        }
        let den = bigint_to_astro(q.denom(), p + WORD_BITS);
        BigFloat::wrap(num.div(&den, p, RM), ctx)
    }

    fn from_f64(v: f64, ctx: Precision) -> Self {
        BigFloat::wrap(AstroFloat::from_f64(v, ctx.0.max(64)), ctx)
    }

    fn to_f64(&self) -> f64 {
        self.to_rational()
            .and_then(|q| q.to_f64())
            .unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        if self.value.is_zero() {
            return Some(BigRational::zero());
        }
        let (words, _bits, sign, exponent, _inexact) = self.value.as_raw_parts()?;
        let mantissa = BigInt::from(BigUint::new(
            words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect(),
        ));
        let mantissa = if sign.is_negative() {
            -mantissa
        } else {
            mantissa
        };
        let shift = exponent as i64 - (words.len() * WORD_BITS) as i64;
        let two = BigInt::from(2);
        Some(if shift >= 0 {
            BigRational::from_integer(mantissa * num_traits::pow(two, shift as usize))
        } else {
            BigRational::new(mantissa, num_traits::pow(two, (-shift) as usize))
        })
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    fn abs(&self) -> Self {
        BigFloat::wrap(self.value.abs(), self.precision)
    }

    fn pi(ctx: Precision) -> Result<Self> {
        Ok(BigFloat::wrap(with_consts(|cc| cc.pi(ctx.0, RM)), ctx))
    }

    fn sin(&self) -> Result<Self> {
        let p = self.bits();
        Ok(BigFloat::wrap(
            with_consts(|cc| self.value.sin(p, RM, cc)),
            self.precision,
        ))
    }

    fn exp(&self) -> Result<Self> {
        let p = self.bits();
        Ok(BigFloat::wrap(
            with_consts(|cc| self.value.exp(p, RM, cc)),
            self.precision,
        ))
    }

    fn ln(&self) -> Result<Self> {
        let p = self.bits();
        Ok(BigFloat::wrap(
            with_consts(|cc| self.value.ln(p, RM, cc)),
            self.precision,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: usize) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn precision_floor() {
        assert!(Precision::new(32).is_err());
        assert_eq!(Precision::new(64).unwrap().bits(), 64);
    }

    #[test]
    fn rational_round_trip_is_exact_for_dyadics() {
        for (n, d) in [(3i64, 8i64), (-5, 1), (1, 1 << 40), (123456789, 4)] {
            let q = BigRational::new(n.into(), d.into());
            let x = BigFloat::from_rational(&q, p(128));
            assert_eq!(x.to_rational().unwrap(), q, "{n}/{d}");
        }
    }

    #[test]
    fn large_integers_convert_exactly_when_they_fit() {
        let big = BigInt::from(3u8).pow(70);
        let x = BigFloat::from_bigint(&big, p(192));
        assert_eq!(x.to_rational().unwrap(), BigRational::from_integer(big));
    }

    #[test]
    fn third_is_rounded_to_working_precision() {
        let third = BigRational::new(1.into(), 3.into());
        let x = BigFloat::from_rational(&third, p(128));
        let err = (x.to_rational().unwrap() - &third).abs();
        let bound = BigRational::new(1.into(), BigInt::from(2).pow(128));
        assert!(err < bound);
        assert!(!x.to_rational().unwrap().eq(&third));
    }

    #[test]
    fn pi_and_sin_agree_with_double() {
        let pi = BigFloat::pi(p(128)).unwrap();
        assert_eq!(pi.to_f64(), std::f64::consts::PI);
        let half = pi.clone() / BigFloat::from_i64(6, p(128));
        assert!((half.sin().unwrap().to_f64() - 0.5).abs() < 1e-16);
    }

    #[test]
    fn ordering_and_equality() {
        let a = BigFloat::from_i64(2, p(64));
        let b = BigFloat::from_i64(3, p(64));
        assert!(a < b);
        assert_eq!(a.clone() + a.clone(), BigFloat::from_i64(4, p(64)));
        assert_eq!((-b).abs(), BigFloat::from_i64(3, p(64)));
    }
}
