//! Numeric domains for set-function values.
//!
//! Step functions, LP certificates and I-measures of rational inputs live in
//! [`Rational`]; entropies of empirical or synthetic distributions live in
//! `f64` and compare against [`APPROX_ZERO_TOL`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational number.
pub type Rational = BigRational;

/// Tolerance used for "= 0" tests in approximate mode.
pub const APPROX_ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Exact,
    Approximate,
}

impl Display for NumericMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NumericMode::Exact => f.write_str("exact"),
            NumericMode::Approximate => f.write_str("approximate"),
        }
    }
}

/// Value type of a [`SetFunction`](crate::SetFunction).
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const MODE: NumericMode;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test: exact for rationals, within [`APPROX_ZERO_TOL`] for floats.
    fn near_zero(&self) -> bool;

    /// Nonnegativity test with the same tolerance as [`Scalar::near_zero`].
    fn near_nonneg(&self) -> bool;

    fn near_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).near_zero()
    }

    /// Sum of a sequence, compensated in approximate mode.
    fn sum_iter<I: IntoIterator<Item = Self>>(it: I) -> Self;
}

impl Scalar for Rational {
    const MODE: NumericMode = NumericMode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near_zero(&self) -> bool {
        self.is_zero()
    }

    fn near_nonneg(&self) -> bool {
        !self.is_negative()
    }

    fn sum_iter<I: IntoIterator<Item = Self>>(it: I) -> Self {
        it.into_iter().fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Approximate;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn near_zero(&self) -> bool {
        self.abs() <= APPROX_ZERO_TOL
    }

    fn near_nonneg(&self) -> bool {
        *self >= -APPROX_ZERO_TOL
    }

    fn sum_iter<I: IntoIterator<Item = Self>>(it: I) -> Self {
        neumaier_sum(it)
    }
}

/// Neumaier's compensated summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in it {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Renders a rational as `p/q` (always with a denominator).
pub fn format_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders a rational as `p` when integral, `p/q` otherwise.
pub fn format_short(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_pq(r)
    }
}

/// Parses `p/q`, `p`, or a finite decimal such as `2.999` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(num, den);
        return Some(if neg { -r } else { r });
    }
    let p: BigInt = t.parse().ok()?;
    Some(Rational::from_integer(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("2.999"), Some(rat(2999, 1000)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn compensated_sum_keeps_small_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(neumaier_sum(xs), 2.0);
    }

    #[test]
    fn pq_format() {
        assert_eq!(format_pq(&int(1)), "1/1");
        assert_eq!(format_short(&rat(-3, 2)), "-3/2");
    }
}
