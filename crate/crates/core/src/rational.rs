//! Exact rationals used for α and every bound.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Ratio = num_rational::Ratio<i128>;

pub fn ratio(p: i128, q: i128) -> Ratio {
    Ratio::new(p, q)
}

pub fn int(p: i128) -> Ratio {
    Ratio::from_integer(p)
}

/// Parses `p/q` or an integer; decimals are rejected so values stay exact.
pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let s = s.trim();
    let bad = || Error::Params(format!("expected a rational p/q, got {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i128>().map_err(|_| bad())?, q.trim().parse::<i128>().map_err(|_| bad())?),
        None => (s.parse::<i128>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

/// α must lie in `(1/2, 1]`.
pub fn check_alpha(alpha: Ratio) -> Result<Ratio> {
    if alpha * 2 > Ratio::one() && alpha <= Ratio::one() {
        Ok(alpha)
    } else {
        Err(Error::AlphaRange(alpha.to_string()))
    }
}

pub fn ceil(r: Ratio) -> i128 {
    r.ceil().to_integer()
}

/// `⌈r⌉₊`
pub fn ceil_plus(r: Ratio) -> i128 {
    ceil(r).max(0)
}

/// Decimal expansion with `digits` fractional digits, rounded toward +∞.
pub fn decimal_up(r: Ratio, digits: u32) -> String {
    let scale = 10i128.pow(digits);
    let scaled = ceil(r * scale);
    format_scaled(scaled, digits)
}

/// Same for an arbitrary-precision rational.
pub fn big_decimal_up(r: &num_rational::BigRational, digits: u32) -> String {
    let scale = num_bigint::BigInt::from(10).pow(digits);
    let scaled = (r * num_rational::BigRational::from_integer(scale)).ceil().to_integer();
    let neg = scaled.is_negative();
    let (q, m) = scaled.abs().div_rem(&num_bigint::BigInt::from(10).pow(digits));
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{q}");
    }
    format!("{sign}{q}.{:0>width$}", m.to_string(), width = digits as usize)
}

fn format_scaled(scaled: i128, digits: u32) -> String {
    let scale = 10i128.pow(digits);
    let sign = if scaled < 0 { "-" } else { "" };
    let (q, m) = (scaled.abs() / scale, scaled.abs() % scale);
    if digits == 0 {
        format!("{sign}{q}")
    } else {
        format!("{sign}{q}.{m:0>width$}", width = digits as usize)
    }
}

pub fn to_f64(r: Ratio) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn is_nonnegative(r: &Ratio) -> bool {
    !r.is_negative() || r.is_zero()
}
