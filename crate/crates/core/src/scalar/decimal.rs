//! Exact decimal parsing and half-to-even fixed-point formatting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Scalar;

/// Parses a decimal literal (`-1.25`, `3e-4`, `.5`) or a fraction (`7/3`)
/// into its exact rational value.
pub fn parse_exact(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid numerator in {s:?}"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(num, den));
    }

    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = body[i + 1..]
                .parse()
                .map_err(|_| format!("invalid exponent in {s:?}"))?;
            (&body[..i], e)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in {s:?}"));
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(format!("invalid number {s:?}"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits
            .parse()
            .map_err(|_| format!("invalid number {s:?}"))?
    };
    if negative {
        value = -value;
    }
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return Err(format!("exponent out of range in {s:?}"));
    }
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(value, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Rounds `q` to `digits` decimals, ties to even, and renders it.
pub fn format_rational_fixed(q: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * BigRational::from_integer(scale);
    let floor = scaled.floor().to_integer();
    let frac = &scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(1.into(), 2.into());
    let rounded = match frac.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    };
    let negative = rounded.is_negative();
    let mut text = rounded.abs().to_string();
    if digits > 0 {
        if text.len() <= digits {
            text = format!("{}{}", "0".repeat(digits + 1 - text.len()), text);
        }
        text.insert(text.len() - digits, '.');
    }
    if negative {
        text.insert(0, '-');
    }
    text
}

/// Fixed-point rendering of any scalar; non-finite values print as `NaN`,
/// `inf` or `-inf`.
pub fn format_fixed<T: Scalar>(x: &T, digits: usize) -> String {
    match x.to_rational() {
        Some(q) => format_rational_fixed(&q, digits),
        None => {
            let f = x.to_f64();
            if f.is_nan() {
                "NaN".into()
            } else if f > 0.0 {
                "inf".into()
            } else {
                "-inf".into()
            }
        }
    }
}
