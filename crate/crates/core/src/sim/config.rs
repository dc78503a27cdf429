use serde::{Deserialize, Serialize};

use crate::date::CalendarDate;
use crate::money::{Money, Rate};

use super::SimulationError;

/// Closed interval of monetary amounts, sampled log-uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoneyBand {
    pub min: Money,
    pub max: Money,
}

impl MoneyBand {
    pub const fn new(min: Money, max: Money) -> Self {
        MoneyBand { min, max }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub seed: u64,
    pub start_date: CalendarDate,
    pub end_date: CalendarDate,
    /// When set, the run stops after exactly this many transactions and
    /// `end_date` is ignored.
    pub target_transactions: Option<usize>,
    pub cash_threshold: Money,
    pub cash_topup: Money,
    /// Cash above this level is swept to the bank at day end.
    pub cash_ceiling: Option<Money>,
    pub sales_tax_rate: Rate,
    pub monthly_interest_rate: Rate,
    pub depreciation_months: u32,
    pub expense_band: MoneyBand,
    pub fixed_asset_band: MoneyBand,
}

/// Upper bound on simulated years when running to a transaction target.
pub const TARGET_HORIZON_YEARS: i32 = 30;

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            seed: 0,
            start_date: CalendarDate::new(2024, 1, 1).expect("valid date"),
            end_date: CalendarDate::new(2024, 12, 31).expect("valid date"),
            target_transactions: None,
            cash_threshold: Money::from_units(100_000),
            cash_topup: Money::from_units(500_000),
            cash_ceiling: Some(Money::from_units(10_000_000)),
            sales_tax_rate: Rate::from_f64(0.05),
            monthly_interest_rate: Rate::from_f64(0.0005),
            depreciation_months: 120,
            expense_band: MoneyBand::new(Money::from_units(5_000), Money::from_units(60_000)),
            fixed_asset_band: MoneyBand::new(Money::from_units(1_000), Money::from_units(10_000)),
        }
    }
}

impl SimulationConfig {
    pub fn with_seed(seed: u64) -> Self {
        SimulationConfig { seed, ..Default::default() }
    }

    pub fn with_target(seed: u64, target: usize) -> Self {
        SimulationConfig {
            seed,
            target_transactions: Some(target),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), SimulationError> {
        let bad = |field: &'static str, reason: String| SimulationError::InvalidConfig { field, reason };
        if self.start_date > self.end_date {
            return Err(bad("end_date", format!("{} precedes start {}", self.end_date, self.start_date)));
        }
        for (field, rate) in [
            ("sales_tax_rate", &self.sales_tax_rate),
            ("monthly_interest_rate", &self.monthly_interest_rate),
        ] {
            if rate.is_negative() || rate.to_f64() >= 1.0 {
                return Err(bad(field, format!("{} outside [0, 1)", rate.to_f64())));
            }
        }
        if self.depreciation_months == 0 {
            return Err(bad("depreciation_months", "must be at least 1".into()));
        }
        for (field, band) in [("expense_band", self.expense_band), ("fixed_asset_band", self.fixed_asset_band)] {
            if !band.min.is_positive() || band.min > band.max {
                return Err(bad(field, format!("need 0 < min <= max, got ({}, {})", band.min, band.max)));
            }
        }
        if self.cash_threshold.is_negative() {
            return Err(bad("cash_threshold", "must not be negative".into()));
        }
        if !self.cash_topup.is_positive() {
            return Err(bad("cash_topup", "must be positive".into()));
        }
        if let Some(ceiling) = self.cash_ceiling {
            if ceiling < self.cash_threshold {
                return Err(bad("cash_ceiling", "must not be below cash_threshold".into()));
            }
        }
        if self.target_transactions == Some(0) {
            return Err(bad("target_transactions", "must be at least 1 when set".into()));
        }
        Ok(())
    }
}
