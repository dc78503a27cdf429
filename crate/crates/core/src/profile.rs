//! Company archetypes that parameterize the simulator.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::money::{Money, Quantity, Rational};

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("cannot read profile {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed profile: {0}")]
    Parse(String),
    #[error("profile field {field} invalid: {reason}")]
    Invariant { field: &'static str, reason: String },
    #[error("unknown company type {0:?}")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CompanyKind {
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    TypeV,
    Custom,
}

impl CompanyKind {
    pub const BUILTIN: [CompanyKind; 5] = [
        CompanyKind::TypeI,
        CompanyKind::TypeII,
        CompanyKind::TypeIII,
        CompanyKind::TypeIV,
        CompanyKind::TypeV,
    ];

    /// Short command-line spelling, `type1` .. `type5`.
    pub fn slug(self) -> &'static str {
        match self {
            CompanyKind::TypeI => "type1",
            CompanyKind::TypeII => "type2",
            CompanyKind::TypeIII => "type3",
            CompanyKind::TypeIV => "type4",
            CompanyKind::TypeV => "type5",
            CompanyKind::Custom => "custom",
        }
    }
}

impl fmt::Display for CompanyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompanyKind::TypeI => "Type I",
            CompanyKind::TypeII => "Type II",
            CompanyKind::TypeIII => "Type III",
            CompanyKind::TypeIV => "Type IV",
            CompanyKind::TypeV => "Type V",
            CompanyKind::Custom => "Custom",
        })
    }
}

impl FromStr for CompanyKind {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .collect::<String>()
            .to_ascii_lowercase();
        let key = key.strip_prefix("type").unwrap_or(&key);
        Ok(match key {
            "1" | "i" => CompanyKind::TypeI,
            "2" | "ii" => CompanyKind::TypeII,
            "3" | "iii" => CompanyKind::TypeIII,
            "4" | "iv" => CompanyKind::TypeIV,
            "5" | "v" => CompanyKind::TypeV,
            "custom" => CompanyKind::Custom,
            _ => return Err(ProfileError::UnknownKind(s.to_string())),
        })
    }
}

/// Closed interval `[min, max]` of a real-valued parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub min: f64,
    pub max: f64,
}

impl Band {
    pub const fn new(min: f64, max: f64) -> Self {
        Band { min, max }
    }

    fn validate(&self, field: &'static str) -> Result<(), ProfileError> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(invariant(field, "bounds must be finite"));
        }
        if self.min < 0.0 {
            return Err(invariant(field, format!("min {} is negative", self.min)));
        }
        if self.min > self.max {
            return Err(invariant(field, format!("min {} exceeds max {}", self.min, self.max)));
        }
        Ok(())
    }
}

fn invariant(field: &'static str, reason: impl Into<String>) -> ProfileError {
    ProfileError::Invariant { field, reason: reason.into() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompanyProfile {
    pub kind: CompanyKind,
    pub initial_cash: Money,
    pub initial_bank: Money,
    pub initial_fixed_assets: Money,
    /// Events per day.
    pub fixed_asset_purchase_freq: Band,
    pub purchase_unit_price: Money,
    pub profit_margin: Band,
    pub quantity_per_purchase: Quantity,
    pub purchase_freq: Band,
    pub credit_purchase_ratio: f64,
    pub quantity_per_sale: Quantity,
    pub sales_freq: Band,
    pub credit_sales_ratio: f64,
    pub expense_freq: Band,
}

/// Split paid-in capital into cash, bank and fixed assets in the 3:5:5 shape
/// of a 13M company; fixed assets absorb the rounding remainder.
pub fn split_capital(capital: Money) -> (Money, Money, Money) {
    let c = capital.to_rational();
    let cash = crate::money::round_half_up(&(c.clone() * Rational::new(3, 13)))
        .expect("fraction of a representable amount is representable");
    let bank = crate::money::round_half_up(&(c * Rational::new(5, 13)))
        .expect("fraction of a representable amount is representable");
    (cash, bank, capital - cash - bank)
}

pub fn builtin_profile(kind: CompanyKind) -> Option<CompanyProfile> {
    #[allow(clippy::type_complexity)]
    #[rustfmt::skip]
    let (capital, fa, price, margin, qpp, pf, cpr, qps, sf, csr, ef): (
        i64,
        (f64, f64),
        i64,
        (f64, f64),
        i64,
        (f64, f64),
        f64,
        i64,
        (f64, f64),
        f64,
        (f64, f64),
    ) = match kind {
        CompanyKind::TypeI => (28_000_000, (0.0, 2.0), 950_000, (0.30, 0.50), 1, (1.0, 2.0), 0.1, 1, (0.0, 1.0), 0.6, (1.0, 2.0)),
        CompanyKind::TypeII => (13_000_000, (1.0, 2.0), 45_000, (0.10, 0.40), 15, (1.0, 3.0), 0.1, 5, (1.0, 2.0), 0.4, (2.0, 4.0)),
        CompanyKind::TypeIII => (13_000_000, (1.0, 2.0), 21_250, (0.70, 1.00), 5, (2.0, 4.0), 0.3, 3, (2.0, 4.0), 0.3, (2.0, 3.0)),
        CompanyKind::TypeIV => (13_000_000, (0.0, 1.0), 31_500, (0.80, 2.00), 2, (0.0, 2.0), 0.3, 1, (0.0, 3.0), 0.7, (1.0, 2.0)),
        CompanyKind::TypeV => (16_000_000, (0.0, 2.0), 1_823, (0.30, 0.80), 500, (1.0, 3.0), 0.6, 5, (2.0, 4.0), 0.4, (1.0, 2.0)),
        CompanyKind::Custom => return None,
    };
    let (initial_cash, initial_bank, initial_fixed_assets) = split_capital(Money::from_units(capital));
    Some(CompanyProfile {
        kind,
        initial_cash,
        initial_bank,
        initial_fixed_assets,
        fixed_asset_purchase_freq: Band::new(fa.0, fa.1),
        purchase_unit_price: Money::from_units(price),
        profit_margin: Band::new(margin.0, margin.1),
        quantity_per_purchase: Quantity::from_units(qpp),
        purchase_freq: Band::new(pf.0, pf.1),
        credit_purchase_ratio: cpr,
        quantity_per_sale: Quantity::from_units(qps),
        sales_freq: Band::new(sf.0, sf.1),
        credit_sales_ratio: csr,
        expense_freq: Band::new(ef.0, ef.1),
    })
}

impl CompanyProfile {
    pub fn paid_in_capital(&self) -> Money {
        self.initial_cash + self.initial_bank + self.initial_fixed_assets
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        self.fixed_asset_purchase_freq.validate("fixed_asset_purchase_freq")?;
        self.profit_margin.validate("profit_margin")?;
        self.purchase_freq.validate("purchase_freq")?;
        self.sales_freq.validate("sales_freq")?;
        self.expense_freq.validate("expense_freq")?;
        for (field, ratio) in [
            ("credit_purchase_ratio", self.credit_purchase_ratio),
            ("credit_sales_ratio", self.credit_sales_ratio),
        ] {
            if !(0.0..=1.0).contains(&ratio) {
                return Err(invariant(field, format!("{ratio} outside [0, 1]")));
            }
        }
        if !self.purchase_unit_price.is_positive() {
            return Err(invariant("purchase_unit_price", "must be positive"));
        }
        if self.quantity_per_purchase.hundredths() <= 0 {
            return Err(invariant("quantity_per_purchase", "must be positive"));
        }
        if self.quantity_per_sale.hundredths() <= 0 {
            return Err(invariant("quantity_per_sale", "must be positive"));
        }
        for (field, amount) in [
            ("initial_cash", self.initial_cash),
            ("initial_bank", self.initial_bank),
            ("initial_fixed_assets", self.initial_fixed_assets),
        ] {
            if amount.is_negative() {
                return Err(invariant(field, "must not be negative"));
            }
        }
        Ok(())
    }

    /// Render the profile in the flat key/value file format read by [`load_profile`].
    pub fn to_file_string(&self) -> String {
        let file = ProfileFile::from(self);
        toml::to_string(&file).expect("flat profile serializes")
    }
}

/// On-disk profile layout: one flat table, amounts as decimal strings.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    #[serde(default = "custom_kind")]
    kind: String,
    initial_cash: Money,
    initial_bank: Money,
    initial_fixed_assets: Money,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    paid_in_capital: Option<Money>,
    fixed_asset_purchase_freq_min: f64,
    fixed_asset_purchase_freq_max: f64,
    purchase_unit_price: Money,
    profit_margin_min: f64,
    profit_margin_max: f64,
    quantity_per_purchase: Quantity,
    purchase_freq_min: f64,
    purchase_freq_max: f64,
    credit_purchase_ratio: f64,
    quantity_per_sale: Quantity,
    sales_freq_min: f64,
    sales_freq_max: f64,
    credit_sales_ratio: f64,
    expense_freq_min: f64,
    expense_freq_max: f64,
}

fn custom_kind() -> String {
    "custom".to_string()
}

impl From<&CompanyProfile> for ProfileFile {
    fn from(p: &CompanyProfile) -> Self {
        ProfileFile {
            kind: p.kind.slug().to_string(),
            initial_cash: p.initial_cash,
            initial_bank: p.initial_bank,
            initial_fixed_assets: p.initial_fixed_assets,
            paid_in_capital: Some(p.paid_in_capital()),
            fixed_asset_purchase_freq_min: p.fixed_asset_purchase_freq.min,
            fixed_asset_purchase_freq_max: p.fixed_asset_purchase_freq.max,
            purchase_unit_price: p.purchase_unit_price,
            profit_margin_min: p.profit_margin.min,
            profit_margin_max: p.profit_margin.max,
            quantity_per_purchase: p.quantity_per_purchase,
            purchase_freq_min: p.purchase_freq.min,
            purchase_freq_max: p.purchase_freq.max,
            credit_purchase_ratio: p.credit_purchase_ratio,
            quantity_per_sale: p.quantity_per_sale,
            sales_freq_min: p.sales_freq.min,
            sales_freq_max: p.sales_freq.max,
            credit_sales_ratio: p.credit_sales_ratio,
            expense_freq_min: p.expense_freq.min,
            expense_freq_max: p.expense_freq.max,
        }
    }
}

pub fn parse_profile(text: &str) -> Result<CompanyProfile, ProfileError> {
    let file: ProfileFile = toml::from_str(text).map_err(|e| ProfileError::Parse(e.to_string()))?;
    let profile = CompanyProfile {
        kind: file.kind.parse()?,
        initial_cash: file.initial_cash,
        initial_bank: file.initial_bank,
        initial_fixed_assets: file.initial_fixed_assets,
        fixed_asset_purchase_freq: Band::new(file.fixed_asset_purchase_freq_min, file.fixed_asset_purchase_freq_max),
        purchase_unit_price: file.purchase_unit_price,
        profit_margin: Band::new(file.profit_margin_min, file.profit_margin_max),
        quantity_per_purchase: file.quantity_per_purchase,
        purchase_freq: Band::new(file.purchase_freq_min, file.purchase_freq_max),
        credit_purchase_ratio: file.credit_purchase_ratio,
        quantity_per_sale: file.quantity_per_sale,
        sales_freq: Band::new(file.sales_freq_min, file.sales_freq_max),
        credit_sales_ratio: file.credit_sales_ratio,
        expense_freq: Band::new(file.expense_freq_min, file.expense_freq_max),
    };
    profile.validate()?;
    if let Some(capital) = file.paid_in_capital {
        if capital != profile.paid_in_capital() {
            return Err(invariant(
                "paid_in_capital",
                format!("{capital} differs from cash + bank + fixed assets {}", profile.paid_in_capital()),
            ));
        }
    }
    Ok(profile)
}

pub fn load_profile(path: &Path) -> Result<CompanyProfile, ProfileError> {
    let text = std::fs::read_to_string(path).map_err(|source| ProfileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_profile(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_two_split_matches_opening_balance_sheet() {
        let p = builtin_profile(CompanyKind::TypeII).unwrap();
        assert_eq!(p.initial_cash, Money::from_units(3_000_000));
        assert_eq!(p.initial_bank, Money::from_units(5_000_000));
        assert_eq!(p.initial_fixed_assets, Money::from_units(5_000_000));
        assert_eq!(p.paid_in_capital(), Money::from_units(13_000_000));
    }

    #[test]
    fn every_builtin_is_valid_and_sums_to_capital() {
        for (kind, capital) in CompanyKind::BUILTIN.iter().zip([28, 13, 13, 13, 16]) {
            let p = builtin_profile(*kind).unwrap();
            p.validate().unwrap();
            assert_eq!(p.paid_in_capital(), Money::from_units(capital * 1_000_000));
        }
        assert!(builtin_profile(CompanyKind::Custom).is_none());
    }

    #[test]
    fn file_round_trip() {
        let p = builtin_profile(CompanyKind::TypeIII).unwrap();
        assert_eq!(parse_profile(&p.to_file_string()).unwrap(), p);
    }

    #[test]
    fn out_of_range_ratio_names_the_field() {
        let p = builtin_profile(CompanyKind::TypeIII).unwrap();
        let text = p.to_file_string().replace("credit_sales_ratio = 0.3", "credit_sales_ratio = 1.3");
        match parse_profile(&text) {
            Err(ProfileError::Invariant { field, .. }) => assert_eq!(field, "credit_sales_ratio"),
            other => panic!("expected invariant violation, got {other:?}"),
        }
    }

    #[test]
    fn inverted_band_rejected() {
        let p = builtin_profile(CompanyKind::TypeIII).unwrap();
        let text = p.to_file_string().replace("sales_freq_min = 2.0", "sales_freq_min = 5.0");
        assert!(matches!(
            parse_profile(&text),
            Err(ProfileError::Invariant { field: "sales_freq", .. })
        ));
    }

    #[test]
    fn kind_spellings() {
        assert_eq!("type2".parse::<CompanyKind>().unwrap(), CompanyKind::TypeII);
        assert_eq!("Type IV".parse::<CompanyKind>().unwrap(), CompanyKind::TypeIV);
        assert_eq!("TypeV".parse::<CompanyKind>().unwrap(), CompanyKind::TypeV);
        assert!("type9".parse::<CompanyKind>().is_err());
    }
}
