//! Exact rationals and their decimal rendering.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Normalized `i128` fraction with a positive denominator.
pub type Rational = num_rational::Ratio<i128>;

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| *r.numer() as f64 / *r.denom() as f64)
}

pub fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Exact sum of many rationals whose common denominator may exceed `i128`.
/// Pairwise, so intermediate denominators stay balanced.
pub fn big_sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigRational {
    let mut level: Vec<BigRational> = values.into_iter().map(to_big).collect();
    if level.is_empty() {
        return BigRational::from_integer(0.into());
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => a + b,
                None => a,
            });
        }
        level = next;
    }
    level.pop().unwrap()
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(-1.740388404194, 10), "-1.740388404");
        assert_eq!(format_sig(83.2385212, 7), "83.23852");
        assert_eq!(format_sig(0.0, 10), "0");
    }
}
