//! Exact fixed-point money, quantities and rates.
//!
//! All monetary arithmetic is carried out on integer hundredths. Any derivation
//! that can produce fractional cents (price x quantity, amount x rate) goes
//! through [`round_half_up`] on an exact rational, so results are identical on
//! every platform.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational used for intermediate monetary and ratio arithmetic.
pub type Rational = Ratio<i128>;

/// Largest magnitude (in minor units) accepted by [`round_half_up`].
///
/// Well above the required 10^13 and far enough below `i64::MAX` that sums of
/// a few thousand amounts cannot overflow.
pub const MAX_MINOR_UNITS: i64 = 1_000_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoneyError {
    #[error("amount out of representable range")]
    Overflow,
    #[error("invalid decimal amount {0:?}")]
    Parse(String),
}

/// A signed amount in hundredths of the currency unit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Money(i64);

impl Money {
    pub const ZERO: Money = Money(0);

    pub const fn from_minor(minor_units: i64) -> Self {
        Money(minor_units)
    }

    /// Whole currency units, e.g. `Money::from_units(3_000_000)`.
    pub const fn from_units(units: i64) -> Self {
        Money(units * 100)
    }

    pub const fn minor_units(self) -> i64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn abs(self) -> Self {
        Money(self.0.abs())
    }

    /// The amount as an exact rational number of currency units.
    pub fn to_rational(self) -> Rational {
        Rational::new(self.0 as i128, 100)
    }

    /// `self * factor`, rounded half-up to the cent.
    pub fn mul_rational(self, factor: &Rational) -> Result<Money, MoneyError> {
        round_half_up(&(self.to_rational() * factor))
    }

    /// Nearest cent of a float, ties away from zero. Only used for sampled
    /// magnitudes (expense sizes), never for derived amounts.
    pub fn from_f64_rounded(value: f64) -> Result<Money, MoneyError> {
        if !value.is_finite() {
            return Err(MoneyError::Overflow);
        }
        let minor = (value * 100.0).round();
        if minor.abs() > MAX_MINOR_UNITS as f64 {
            return Err(MoneyError::Overflow);
        }
        Ok(Money(minor as i64))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub fn checked_add(self, other: Money) -> Option<Money> {
        self.0.checked_add(other.0).map(Money)
    }

    /// Display with parentheses instead of a minus sign, as in printed statements.
    pub fn accounting(self) -> String {
        if self.0 < 0 {
            format!("({})", self.abs())
        } else {
            self.to_string()
        }
    }
}

/// Round an exact rational amount (in currency units) to the nearest cent,
/// ties away from zero.
pub fn round_half_up(raw: &Rational) -> Result<Money, MoneyError> {
    let minor = round_rational_to_scale(raw, 100).ok_or(MoneyError::Overflow)?;
    if minor.abs() > MAX_MINOR_UNITS as i128 {
        return Err(MoneyError::Overflow);
    }
    Ok(Money(minor as i64))
}

/// `round(raw * scale)` with ties away from zero, as an integer.
pub fn round_rational_to_scale(raw: &Rational, scale: i128) -> Option<i128> {
    let numer = raw.numer().checked_mul(scale)?;
    let denom = *raw.denom();
    // Ratio keeps the denominator positive.
    let magnitude = numer.checked_abs()?;
    let twice = magnitude.checked_mul(2)?.checked_add(denom)?;
    let rounded = twice / (2 * denom);
    Some(if numer < 0 { -rounded } else { rounded })
}

/// Parse a plain decimal literal (`-12.345`, `7`, `.5`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if whole.len() + frac.len() > 30 {
        return None;
    }
    let mut numer: i128 = 0;
    for b in whole.bytes().chain(frac.bytes()) {
        numer = numer.checked_mul(10)?.checked_add((b - b'0') as i128)?;
    }
    let denom = 10i128.checked_pow(frac.len() as u32)?;
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Render a rational rounded half-up to two decimals, e.g. `-9.56`.
pub fn format_two_decimals(value: &Rational) -> Option<String> {
    let cents = round_rational_to_scale(value, 100)?;
    let sign = if cents < 0 { "-" } else { "" };
    let magnitude = cents.abs();
    Some(format!("{sign}{}.{:02}", magnitude / 100, magnitude % 100))
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let magnitude = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", magnitude / 100, magnitude % 100)
    }
}

impl FromStr for Money {
    type Err = MoneyError;

    /// Accepts at most two fractional digits; anything finer must be rounded
    /// explicitly with [`round_half_up`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MoneyError::Parse(s.to_string());
        let value = parse_decimal(s).ok_or_else(err)?;
        if !(value.clone() * Rational::from_integer(100)).is_integer() {
            return Err(err());
        }
        round_half_up(&value)
    }
}

impl Add for Money {
    type Output = Money;
    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl Sub for Money {
    type Output = Money;
    fn sub(self, rhs: Money) -> Money {
        Money(self.0 - rhs.0)
    }
}

impl Neg for Money {
    type Output = Money;
    fn neg(self) -> Money {
        Money(-self.0)
    }
}

impl AddAssign for Money {
    fn add_assign(&mut self, rhs: Money) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Money {
    fn sub_assign(&mut self, rhs: Money) {
        self.0 -= rhs.0;
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        iter.fold(Money::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Money> for Money {
    fn sum<I: Iterator<Item = &'a Money>>(iter: I) -> Money {
        iter.copied().sum()
    }
}

impl Serialize for Money {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Money {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A non-negative-by-convention count of goods in hundredths of a unit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quantity(i64);

impl Quantity {
    pub const ZERO: Quantity = Quantity(0);

    pub const fn from_hundredths(hundredths: i64) -> Self {
        Quantity(hundredths)
    }

    pub const fn from_units(units: i64) -> Self {
        Quantity(units * 100)
    }

    pub fn from_f64(value: f64) -> Self {
        Quantity((value * 100.0).round() as i64)
    }

    pub const fn hundredths(self) -> i64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.0 as i128, 100)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }

    /// `round(self * unit_price)` to the cent.
    pub fn extend(self, unit_price: Money) -> Result<Money, MoneyError> {
        round_half_up(&(self.to_rational() * unit_price.to_rational()))
    }

    pub fn min(self, other: Quantity) -> Quantity {
        Quantity(self.0.min(other.0))
    }
}

impl Add for Quantity {
    type Output = Quantity;
    fn add(self, rhs: Quantity) -> Quantity {
        Quantity(self.0 + rhs.0)
    }
}

impl Sub for Quantity {
    type Output = Quantity;
    fn sub(self, rhs: Quantity) -> Quantity {
        Quantity(self.0 - rhs.0)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Money(self.0).fmt(f)
    }
}

impl FromStr for Quantity {
    type Err = MoneyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Money::from_str(s).map(|m| Quantity(m.0))
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A real-valued fraction (tax rate, interest rate, margin) held exactly at
/// nine decimal places.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rate(Rational);

const RATE_SCALE: i128 = 1_000_000_000;

impl Rate {
    pub fn from_f64(value: f64) -> Self {
        let scaled = (value * RATE_SCALE as f64).round() as i128;
        Rate(Rational::new(scaled, RATE_SCALE))
    }

    pub fn zero() -> Self {
        Rate(Rational::zero())
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        f64::deserialize(deserializer).map(Rate::from_f64)
    }
}
