use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Days, NaiveDate};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DateError {
    #[error("invalid calendar date {0}")]
    Invalid(String),
    #[error("date arithmetic out of range")]
    OutOfRange,
}

/// A valid Gregorian date with day resolution. Ordering is chronological.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CalendarDate(NaiveDate);

impl CalendarDate {
    pub fn new(year: i32, month: u32, day: u32) -> Result<Self, DateError> {
        NaiveDate::from_ymd_opt(year, month, day)
            .map(CalendarDate)
            .ok_or_else(|| DateError::Invalid(format!("{year:04}-{month:02}-{day:02}")))
    }

    pub fn year(self) -> i32 {
        self.0.year()
    }

    pub fn month(self) -> u32 {
        self.0.month()
    }

    pub fn day(self) -> u32 {
        self.0.day()
    }

    pub fn is_first_of_month(self) -> bool {
        self.0.day() == 1
    }

    pub fn first_of_month(self) -> Self {
        CalendarDate(self.0.with_day(1).expect("day 1 exists in every month"))
    }

    pub fn add_days(self, days: i64) -> Result<Self, DateError> {
        let shifted = if days >= 0 {
            self.0.checked_add_days(Days::new(days as u64))
        } else {
            self.0.checked_sub_days(Days::new(days.unsigned_abs()))
        };
        shifted.map(CalendarDate).ok_or(DateError::OutOfRange)
    }

    pub fn succ(self) -> Result<Self, DateError> {
        self.add_days(1)
    }

    /// Whole days from `self` to `other` (negative if `other` is earlier).
    pub fn days_until(self, other: CalendarDate) -> i64 {
        (other.0 - self.0).num_days()
    }

    /// Same day-of-month `years` later, clamped to the month's last day.
    pub fn add_years(self, years: i32) -> Result<Self, DateError> {
        let year = self.year().checked_add(years).ok_or(DateError::OutOfRange)?;
        let mut day = self.day();
        loop {
            if let Some(d) = NaiveDate::from_ymd_opt(year, self.month(), day) {
                return Ok(CalendarDate(d));
            }
            if day <= 28 {
                return Err(DateError::OutOfRange);
            }
            day -= 1;
        }
    }
}

impl fmt::Display for CalendarDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format("%Y-%m-%d"))
    }
}

impl FromStr for CalendarDate {
    type Err = DateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d")
            .map(CalendarDate)
            .map_err(|_| DateError::Invalid(s.to_string()))
    }
}

impl Serialize for CalendarDate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CalendarDate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
