use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{BsLine, CfLine, IsLine, StatementKind, StatementSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    /// Human-readable tables, negatives in parentheses.
    Text,
    /// One JSON document with the statement field names.
    Structured,
}

pub fn render(set: &StatementSet, format: Format) -> String {
    match format {
        Format::Text => render_text(set),
        Format::Structured => serde_json::to_string_pretty(set).expect("statement set serializes"),
    }
}

pub fn parse_structured(text: &str) -> Result<StatementSet, serde_json::Error> {
    serde_json::from_str(text)
}

enum Row<L> {
    Heading(&'static str),
    Line(L, bool),
}

use Row::{Heading, Line};

const BS_LAYOUT: &[Row<BsLine>] = &[
    Heading("Assets"),
    Heading("Current Assets"),
    Line(BsLine::CashOnHand, true),
    Line(BsLine::BankDeposits, true),
    Line(BsLine::InterestReceivable, true),
    Line(BsLine::AccountsReceivable, true),
    Line(BsLine::Inventory, true),
    Line(BsLine::TotalCurrentAssets, false),
    Heading("Non-Current Assets"),
    Line(BsLine::FixedAssets, true),
    Line(BsLine::AccumulatedDepreciation, true),
    Line(BsLine::NetFixedAssets, true),
    Line(BsLine::TotalNonCurrentAssets, false),
    Line(BsLine::TotalAssets, false),
    Heading("Liabilities"),
    Heading("Current Liabilities"),
    Line(BsLine::AccountsPayable, true),
    Line(BsLine::TaxesPayable, true),
    Line(BsLine::TotalCurrentLiabilities, false),
    Line(BsLine::TotalLiabilities, false),
    Heading("Owner's Equity"),
    Line(BsLine::PaidInCapital, true),
    Line(BsLine::RetainedEarnings, true),
    Line(BsLine::TotalOwnersEquity, false),
    Line(BsLine::TotalLiabilitiesAndEquity, false),
];

const IS_LAYOUT: &[Row<IsLine>] = &[
    Heading("Revenue"),
    Line(IsLine::MainBusinessRevenue, true),
    Line(IsLine::TotalRevenue, false),
    Heading("Cost"),
    Line(IsLine::CostOfGoodsSold, true),
    Line(IsLine::TotalCost, false),
    Line(IsLine::GrossProfit, false),
    Heading("Expense"),
    Line(IsLine::AdministrativeExpenses, true),
    Line(IsLine::SellingExpenses, true),
    Line(IsLine::Depreciation, true),
    Line(IsLine::FinancialExpenses, true),
    Line(IsLine::TotalExpenses, false),
    Heading("Other Revenue"),
    Line(IsLine::InterestIncome, true),
    Line(IsLine::ProfitBeforeTax, false),
    Line(IsLine::TaxExpense, false),
    Line(IsLine::NetProfit, false),
];

const CF_LAYOUT: &[Row<CfLine>] = &[
    Heading("Cash Flows from Operating Activities"),
    Line(CfLine::NetProfit, false),
    Line(CfLine::Depreciation, false),
    Heading("(Increase) Decrease in Current Assets"),
    Line(CfLine::DeltaAccountsReceivable, true),
    Line(CfLine::DeltaInterestReceivable, true),
    Line(CfLine::DeltaInventory, true),
    Line(CfLine::TotalDeltaCurrentAssets, false),
    Heading("Increase (Decrease) in Current Liabilities"),
    Line(CfLine::DeltaAccountsPayable, true),
    Line(CfLine::DeltaTaxPayable, true),
    Line(CfLine::TotalDeltaCurrentLiabilities, false),
    Line(CfLine::NetOperatingCashFlow, false),
    Heading("Cash Flows from Investing Activities"),
    Line(CfLine::PurchaseOfFixedAssets, false),
    Line(CfLine::NetInvestingCashFlow, false),
    Line(CfLine::BeginningCashBalance, false),
    Line(CfLine::EndingCashBalance, false),
    Line(CfLine::NetIncrease, false),
];

const WIDTH: usize = 52;

fn rule(out: &mut String, columns: usize) {
    out.push_str(&"=".repeat(WIDTH + 18 * columns));
    out.push('\n');
}

fn title(out: &mut String, title: &str, headers: &[&str]) {
    let _ = write!(out, "{:<WIDTH$}", title.to_uppercase());
    for h in headers {
        let _ = write!(out, "{h:>18}");
    }
    out.push('\n');
    rule(out, headers.len());
}

fn label(name: &str, indented: bool) -> String {
    if indented {
        format!("    {name}")
    } else {
        name.to_string()
    }
}

/// Plain-text rendering of one statement.
pub fn render_statement_text(set: &StatementSet, kind: StatementKind) -> String {
    let mut out = String::new();
    match kind {
        StatementKind::BalanceSheet => {
            title(&mut out, kind.title(), &["Initial Amount", "End Amount"]);
            for row in BS_LAYOUT {
                match row {
                    Heading(h) => {
                        let _ = writeln!(out, "{h}");
                    }
                    Line(line, indented) => {
                        let pair = line.get(&set.balance_sheet);
                        let _ = writeln!(
                            out,
                            "{:<WIDTH$}{:>18}{:>18}",
                            label(line.label(), *indented),
                            pair.initial.accounting(),
                            pair.end.accounting()
                        );
                    }
                }
            }
            rule(&mut out, 2);
        }
        StatementKind::IncomeStatement => {
            title(&mut out, kind.title(), &["Amount"]);
            for row in IS_LAYOUT {
                match row {
                    Heading(h) => {
                        let _ = writeln!(out, "{h}");
                    }
                    Line(line, indented) => {
                        let v = line.get(&set.income_statement);
                        let _ = writeln!(out, "{:<WIDTH$}{:>18}", label(line.label(), *indented), v.accounting());
                    }
                }
            }
            rule(&mut out, 1);
        }
        StatementKind::CashFlowStatement => {
            title(&mut out, kind.title(), &["Amount"]);
            for row in CF_LAYOUT {
                match row {
                    Heading(h) => {
                        let _ = writeln!(out, "{h}");
                    }
                    Line(line, indented) => {
                        let v = line.get(&set.cash_flow_statement);
                        let _ = writeln!(out, "{:<WIDTH$}{:>18}", label(line.label(), *indented), v.accounting());
                    }
                }
            }
            rule(&mut out, 1);
        }
    }
    out
}

/// Plain-text rendering of all three statements, in the usual line order.
pub fn render_text(set: &StatementSet) -> String {
    StatementKind::ALL
        .iter()
        .map(|k| render_statement_text(set, *k))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::money::Money;

    #[test]
    fn layouts_cover_every_line_in_order() {
        let bs: Vec<_> = BS_LAYOUT
            .iter()
            .filter_map(|r| match r {
                Line(l, _) => Some(*l),
                _ => None,
            })
            .collect();
        assert_eq!(bs, BsLine::ALL);
        let is: Vec<_> = IS_LAYOUT
            .iter()
            .filter_map(|r| match r {
                Line(l, _) => Some(*l),
                _ => None,
            })
            .collect();
        assert_eq!(is, IsLine::ALL);
        let cf: Vec<_> = CF_LAYOUT
            .iter()
            .filter_map(|r| match r {
                Line(l, _) => Some(*l),
                _ => None,
            })
            .collect();
        assert_eq!(cf, CfLine::ALL);
    }

    #[test]
    fn negatives_are_parenthesized() {
        let mut set = StatementSet::default();
        set.balance_sheet.accumulated_depreciation.end = Money::from_minor(-4_575_141);
        let text = render_text(&set);
        let line = text.lines().find(|l| l.contains("Accumulated Depreciation")).unwrap();
        assert!(line.ends_with("(45751.41)"), "{line}");
    }

    #[test]
    fn structured_round_trip() {
        let mut set = StatementSet::default();
        set.income_statement.net_profit = Money::from_minor(-164_514_143);
        set.provenance = "abc".into();
        let text = render(&set, Format::Structured);
        assert_eq!(parse_structured(&text).unwrap(), set);
    }
}
