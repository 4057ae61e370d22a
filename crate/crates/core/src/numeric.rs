//! Exact-rational helpers: half-even decimal rendering and parsing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounds `value * 10^decimals` to the nearest integer, ties to even.
pub fn round_half_even_scaled(value: &BigRational, decimals: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(decimals);
    let scaled = value * BigRational::from_integer(scale);
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let floor_int = floor.to_integer();
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => floor_int,
        std::cmp::Ordering::Greater => floor_int + 1,
        std::cmp::Ordering::Equal => {
            if floor_int.is_even() {
                floor_int
            } else {
                floor_int + 1
            }
        }
    }
}

/// Renders `value` with exactly `decimals` digits after the point, rounding
/// half to even.
pub fn format_decimal(value: &BigRational, decimals: u32) -> String {
    let scaled = round_half_even_scaled(value, decimals);
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let decimals = decimals as usize;
    let body = if decimals == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = decimals + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - decimals);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// `numerator / denominator` as a percentage with `decimals` digits.
/// Returns `None` when the denominator is zero.
pub fn format_percent(numerator: u64, denominator: u64, decimals: u32) -> Option<String> {
    if denominator == 0 {
        return None;
    }
    let r = BigRational::new(BigInt::from(numerator) * 100, BigInt::from(denominator));
    Some(format_decimal(&r, decimals))
}

/// Parses a plain decimal literal such as `227.9` or `-0.25` exactly.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (negative, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(numer, denom);
    Some(if negative { -r } else { r })
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Numerator and denominator may individually overflow f64.
        let scaled = round_half_even_scaled(value, 15);
        scaled.to_f64().unwrap_or(f64::NAN) / 1e15
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn half_even_ties() {
        assert_eq!(format_decimal(&r(25, 100), 1), "0.2");
        assert_eq!(format_decimal(&r(35, 100), 1), "0.4");
        assert_eq!(format_decimal(&r(-25, 100), 1), "-0.2");
        assert_eq!(format_decimal(&r(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&r(2, 3), 6), "0.666667");
        assert_eq!(format_decimal(&r(7, 1), 0), "7");
        assert_eq!(format_decimal(&r(1, 200), 1), "0.0");
    }

    #[test]
    fn percent_display() {
        assert_eq!(format_percent(193_216, 778_988, 1).unwrap(), "24.8");
        assert_eq!(format_percent(825_664, 2_101_384, 1).unwrap(), "39.3");
        assert_eq!(format_percent(0, 1, 1).unwrap(), "0.0");
        assert_eq!(format_percent(1, 0, 1), None);
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("227.9"), Some(r(2279, 10)));
        assert_eq!(parse_decimal("500"), Some(r(500, 1)));
        assert_eq!(parse_decimal("-0.5"), Some(r(-1, 2)));
        assert_eq!(parse_decimal(".5"), Some(r(1, 2)));
        assert_eq!(parse_decimal("1e3"), None);
        assert_eq!(parse_decimal(""), None);
    }
}
