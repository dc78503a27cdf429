//! The eighteen financial indicators, grouped in five dimensions, evaluated
//! exactly over a statement set.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::money::{format_two_decimals, Money, Rational};
use crate::statements::StatementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dimension {
    CashFlowQuality,
    Profitability,
    Liquidity,
    Solvency,
    OperationalEfficiency,
}

impl Dimension {
    pub fn name(self) -> &'static str {
        match self {
            Dimension::CashFlowQuality => "Cash Flow Quality",
            Dimension::Profitability => "Profitability",
            Dimension::Liquidity => "Liquidity",
            Dimension::Solvency => "Solvency",
            Dimension::OperationalEfficiency => "Operational Efficiency",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndicatorId {
    FreeCashFlow,
    OcfToNetIncome,
    OcfRatio,
    GrossMargin,
    NetMargin,
    ReturnOnAssets,
    ReturnOnEquity,
    CurrentRatio,
    QuickRatio,
    CashToCurrentDebt,
    OcfToCurrentLiabilities,
    DebtToAsset,
    DebtToEquity,
    CashFlowToDebt,
    InventoryTurnover,
    ReceivablesTurnover,
    CurrentAssetsTurnover,
    TotalAssetTurnover,
}

use IndicatorId::*;

impl IndicatorId {
    /// Classification-table order.
    pub const ALL: [IndicatorId; 18] = [
        FreeCashFlow,
        OcfToNetIncome,
        OcfRatio,
        GrossMargin,
        NetMargin,
        ReturnOnAssets,
        ReturnOnEquity,
        CurrentRatio,
        QuickRatio,
        CashToCurrentDebt,
        OcfToCurrentLiabilities,
        DebtToAsset,
        DebtToEquity,
        CashFlowToDebt,
        InventoryTurnover,
        ReceivablesTurnover,
        CurrentAssetsTurnover,
        TotalAssetTurnover,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FreeCashFlow => "Free Cash Flow (FCF)",
            OcfToNetIncome => "Operating Cash Flow to Net Income Ratio",
            OcfRatio => "Operating Cash Flow Ratio",
            GrossMargin => "Gross Profit Margin",
            NetMargin => "Net Profit Margin",
            ReturnOnAssets => "Return on Assets (ROA)",
            ReturnOnEquity => "Return on Equity (ROE)",
            CurrentRatio => "Current Ratio",
            QuickRatio => "Quick Ratio",
            CashToCurrentDebt => "Cash to Current Debt Ratio",
            OcfToCurrentLiabilities => "Operating Cash Flow to Current Liabilities Ratio",
            DebtToAsset => "Debt to Asset Ratio",
            DebtToEquity => "Debt to Equity Ratio",
            CashFlowToDebt => "Cash Flow to Debt Ratio",
            InventoryTurnover => "Inventory Turnover Ratio",
            ReceivablesTurnover => "Accounts Receivable Turnover Ratio",
            CurrentAssetsTurnover => "Current Assets Turnover Ratio",
            TotalAssetTurnover => "Total Asset Turnover Ratio",
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            FreeCashFlow | OcfToNetIncome | OcfRatio => Dimension::CashFlowQuality,
            GrossMargin | NetMargin | ReturnOnAssets | ReturnOnEquity => Dimension::Profitability,
            CurrentRatio | QuickRatio | CashToCurrentDebt | OcfToCurrentLiabilities => Dimension::Liquidity,
            DebtToAsset | DebtToEquity | CashFlowToDebt => Dimension::Solvency,
            InventoryTurnover | ReceivablesTurnover | CurrentAssetsTurnover | TotalAssetTurnover => {
                Dimension::OperationalEfficiency
            }
        }
    }

    /// Shown with a trailing `%` after scaling by 100.
    pub fn is_percentage(self) -> bool {
        matches!(self, GrossMargin | NetMargin | ReturnOnAssets | ReturnOnEquity)
    }

    /// Formula over statement line names. Unqualified balance-sheet names
    /// mean the ending value.
    pub fn formula(self) -> &'static str {
        match self {
            FreeCashFlow => "Net Cash Flow from Operating Activities - Purchase of Fixed Assets",
            OcfToNetIncome => "Net Cash Flow from Operating Activities / Net Profit",
            OcfRatio => "Net Cash Flow from Operating Activities / Current Liabilities",
            GrossMargin => "((Revenue - COGS) / Revenue) * 100",
            NetMargin => "(Net Profit / Revenue) * 100",
            ReturnOnAssets => "((2 * Net Profit) / (Beginning Total Assets + Ending Total Assets)) * 100",
            ReturnOnEquity => "((2 * Net Profit) / (Beginning Owner's Equity + Ending Owner's Equity)) * 100",
            CurrentRatio => "Current Assets / Current Liabilities",
            QuickRatio => "(Current Assets - Inventory) / Current Liabilities",
            CashToCurrentDebt => "Ending Cash and Cash Equivalents Balance / Current Liabilities",
            OcfToCurrentLiabilities => "Net Cash Flow from Operating Activities / Ending Current Liabilities",
            DebtToAsset => "Total Liabilities / Total Assets",
            DebtToEquity => "Total Liabilities / Owner's Equity",
            CashFlowToDebt => "Net Cash Flow from Operating Activities / Total Liabilities",
            InventoryTurnover => "(2 * COGS) / (Beginning Inventory + Ending Inventory)",
            ReceivablesTurnover => {
                "(2 * Revenue) / (Beginning Accounts Receivable + Ending Accounts Receivable)"
            }
            CurrentAssetsTurnover => "(2 * Revenue) / (Beginning Current Assets + Ending Current Assets)",
            TotalAssetTurnover => "(2 * Revenue) / (Beginning Total Assets + Ending Total Assets)",
        }
    }

    /// Resolve an indicator name, short form or task-table alias.
    pub fn from_name(name: &str) -> Option<IndicatorId> {
        let key = name.trim().to_ascii_lowercase();
        if let Some(id) = IndicatorId::ALL.iter().find(|id| id.name().to_ascii_lowercase() == key) {
            return Some(*id);
        }
        let id = match key.as_str() {
            "fcf" | "free cash flow" => FreeCashFlow,
            "net cash ratio" | "operating cash flow to net income" => OcfToNetIncome,
            "ocf ratio" => OcfRatio,
            "gross margin" | "gross profit margin ratio" => GrossMargin,
            "net margin" => NetMargin,
            "roa" | "return on assets" => ReturnOnAssets,
            "roe" | "return on equity" => ReturnOnEquity,
            "current liabilities ratio" => OcfToCurrentLiabilities,
            "debt ratio" | "debt to assets ratio" => DebtToAsset,
            "turnover ratio" | "total assets turnover ratio" => TotalAssetTurnover,
            "inventory turnover" => InventoryTurnover,
            "receivables turnover" | "accounts receivable turnover" => ReceivablesTurnover,
            _ => return None,
        };
        Some(id)
    }
}

impl fmt::Display for IndicatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndicatorId {
    type Err = IndicatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IndicatorId::from_name(s).ok_or_else(|| IndicatorError::UnknownName(s.to_string()))
    }
}

impl Serialize for IndicatorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IndicatorId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndicatorError {
    #[error("{indicator} is undefined: {denominator} is zero")]
    Undefined {
        indicator: IndicatorId,
        denominator: &'static str,
    },
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(IndicatorId),
    #[error("unknown indicator {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndicatorValue {
    pub id: IndicatorId,
    #[serde(skip)]
    pub value: Rational,
    pub display: String,
}

/// Two-decimal half-up rendering; percentage indicators get a `%` suffix.
pub fn display(id: IndicatorId, value: &Rational) -> Option<String> {
    let number = format_two_decimals(value)?;
    Some(if id.is_percentage() { format!("{number}%") } else { number })
}

fn r(m: Money) -> Rational {
    m.to_rational()
}

pub fn compute(id: IndicatorId, set: &StatementSet) -> Result<IndicatorValue, IndicatorError> {
    let (bs, is, cf) = (&set.balance_sheet, &set.income_statement, &set.cash_flow_statement);
    let hundred = Rational::from_integer(100);
    let two = Rational::from_integer(2);
    let ocf = r(cf.net_operating_cash_flow);
    let revenue = r(is.total_revenue);
    let cl = (r(bs.total_current_liabilities.end), "Current Liabilities");
    let tl = (r(bs.total_liabilities.end), "Total Liabilities");
    let avg = |initial: Money, end: Money| r(initial) + r(end);

    let (numerator, (denominator, denominator_name), scale) = match id {
        FreeCashFlow => {
            let value = ocf - r(cf.purchase_of_fixed_assets);
            (value, (Rational::from_integer(1), ""), None)
        }
        OcfToNetIncome => (ocf, (r(is.net_profit), "Net Profit"), None),
        OcfRatio => (ocf, cl, None),
        GrossMargin => (revenue - r(is.cost_of_goods_sold), (revenue, "Revenue"), Some(hundred)),
        NetMargin => (r(is.net_profit), (revenue, "Revenue"), Some(hundred)),
        ReturnOnAssets => (
            two * r(is.net_profit),
            (avg(bs.total_assets.initial, bs.total_assets.end), "Total Assets"),
            Some(hundred),
        ),
        ReturnOnEquity => (
            two * r(is.net_profit),
            (
                avg(bs.total_owners_equity.initial, bs.total_owners_equity.end),
                "Owner's Equity",
            ),
            Some(hundred),
        ),
        CurrentRatio => (r(bs.total_current_assets.end), cl, None),
        QuickRatio => (r(bs.total_current_assets.end) - r(bs.inventory.end), cl, None),
        CashToCurrentDebt => (r(cf.ending_cash_balance), cl, None),
        OcfToCurrentLiabilities => (ocf, (cl.0, "Ending Current Liabilities"), None),
        DebtToAsset => (tl.0, (r(bs.total_assets.end), "Total Assets"), None),
        DebtToEquity => (tl.0, (r(bs.total_owners_equity.end), "Owner's Equity"), None),
        CashFlowToDebt => (ocf, tl, None),
        InventoryTurnover => (
            two * r(is.cost_of_goods_sold),
            (avg(bs.inventory.initial, bs.inventory.end), "Inventory"),
            None,
        ),
        ReceivablesTurnover => (
            two * revenue,
            (
                avg(bs.accounts_receivable.initial, bs.accounts_receivable.end),
                "Accounts Receivable",
            ),
            None,
        ),
        CurrentAssetsTurnover => (
            two * revenue,
            (
                avg(bs.total_current_assets.initial, bs.total_current_assets.end),
                "Current Assets",
            ),
            None,
        ),
        TotalAssetTurnover => (
            two * revenue,
            (avg(bs.total_assets.initial, bs.total_assets.end), "Total Assets"),
            None,
        ),
    };
    if denominator.is_zero() {
        return Err(IndicatorError::Undefined {
            indicator: id,
            denominator: denominator_name,
        });
    }
    let mut value = numerator / denominator;
    if let Some(scale) = scale {
        value *= scale;
    }
    let display = display(id, &value).ok_or(IndicatorError::Overflow(id))?;
    Ok(IndicatorValue { id, value, display })
}

/// All eighteen in classification order; undefined ones stay in place as errors.
pub fn compute_all(set: &StatementSet) -> Vec<(IndicatorId, Result<IndicatorValue, IndicatorError>)> {
    IndicatorId::ALL.iter().map(|&id| (id, compute(id, set))).collect()
}

/// Name → display string, with `"undefined"` for zero denominators.
pub fn report(set: &StatementSet) -> IndexMap<String, String> {
    compute_all(set)
        .into_iter()
        .map(|(id, v)| {
            let shown = match v {
                Ok(v) => v.display,
                Err(_) => "undefined".to_string(),
            };
            (id.name().to_string(), shown)
        })
        .collect()
}
