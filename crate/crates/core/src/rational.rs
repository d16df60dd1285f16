//! Exact rational scalars.
//!
//! `Ratio<BigInt>` is always stored reduced with a positive denominator, and
//! zero is `0/1`, so structural equality is value equality.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"12"`, `"-3/4"` or a plain decimal such as `"0.25"`.
///
/// Returns `None` for anything else, including a zero denominator.
pub fn parse(text: &str) -> Option<Rational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_digits(num)?;
        let den = parse_digits(den)?;
        if den.is_zero() {
            return None;
        }
        Rational::new(num, den)
    } else {
        parse_decimal(body)?
    };
    Some(if neg { -value } else { value })
}

/// Exact value of a decimal literal `digits[.digits]`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (whole, frac) = match text.split_once('.') {
        Some((w, f)) => (w, f),
        None => (text, ""),
    };
    if text.contains('.') && frac.is_empty() {
        return None;
    }
    let whole = parse_digits(whole)?;
    if frac.is_empty() {
        return Some(Rational::from_integer(whole));
    }
    let frac_digits = parse_digits(frac)?;
    let scale = num_traits::pow(BigInt::from(10u8), frac.len());
    Some(Rational::new(whole * &scale + frac_digits, scale))
}

fn parse_digits(text: &str) -> Option<BigInt> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(text.as_bytes(), 10)
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Finite decimal expansion of `value` if its denominator is `2^a·5^b`.
pub fn to_decimal(value: &Rational) -> Option<String> {
    let mut den = value.denom().clone();
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let digits = twos.max(fives);
    let scaled = value.abs() * Rational::from_integer(num_traits::pow(BigInt::from(10u8), digits));
    let scaled = scaled.to_integer().to_str_radix(10);
    let mut out = String::new();
    if value.is_negative() {
        out.push('-');
    }
    if digits == 0 {
        out.push_str(&scaled);
        return Some(out);
    }
    let padded = if scaled.len() <= digits {
        let mut s = String::new();
        for _ in 0..=(digits - scaled.len()) {
            s.push('0');
        }
        s.push_str(&scaled);
        s
    } else {
        scaled
    };
    let split = padded.len() - digits;
    let _ = write!(out, "{}.{}", &padded[..split], &padded[split..]);
    Some(out)
}
