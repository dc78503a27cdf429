//! Balance sheet, income statement and cash flow statement compiled from a
//! journal, with the identities and cross-statement links that tie them.

mod check;
mod compile;
mod lines;
mod render;

pub use check::{articulation_check, identity_check, Violation, ViolationKind, TOLERANCE};
pub use compile::{compile, replay, CompileError, Ledger};
pub use lines::{BsLine, CfLine, IsLine, StatementKind};
pub use render::{parse_structured, render, render_statement_text, render_text, Format};

use serde::{Deserialize, Serialize};

use crate::money::Money;

/// A balance-sheet line at the start and end of the period.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinePair {
    pub initial: Money,
    pub end: Money,
}

impl LinePair {
    pub fn new(initial: Money, end: Money) -> Self {
        LinePair { initial, end }
    }

    pub fn change(self) -> Money {
        self.end - self.initial
    }
}

/// Accumulated depreciation is held as a negative (contra-asset) amount.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceSheet {
    pub cash_on_hand: LinePair,
    pub bank_deposits: LinePair,
    pub interest_receivable: LinePair,
    pub accounts_receivable: LinePair,
    pub inventory: LinePair,
    pub total_current_assets: LinePair,
    pub fixed_assets: LinePair,
    pub accumulated_depreciation: LinePair,
    pub net_fixed_assets: LinePair,
    pub total_non_current_assets: LinePair,
    pub total_assets: LinePair,
    pub accounts_payable: LinePair,
    pub taxes_payable: LinePair,
    pub total_current_liabilities: LinePair,
    pub total_liabilities: LinePair,
    pub paid_in_capital: LinePair,
    pub retained_earnings: LinePair,
    pub total_owners_equity: LinePair,
    pub total_liabilities_and_equity: LinePair,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncomeStatement {
    pub main_business_revenue: Money,
    pub total_revenue: Money,
    pub cost_of_goods_sold: Money,
    pub total_cost: Money,
    pub gross_profit: Money,
    pub administrative_expenses: Money,
    pub selling_expenses: Money,
    pub depreciation: Money,
    pub financial_expenses: Money,
    pub total_expenses: Money,
    pub interest_income: Money,
    pub profit_before_tax: Money,
    pub tax_expense: Money,
    pub net_profit: Money,
}

/// Indirect-method cash flow statement. Current-asset deltas are
/// `initial - end`, liability deltas `end - initial`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CashFlowStatement {
    pub net_profit: Money,
    pub depreciation: Money,
    pub delta_accounts_receivable: Money,
    pub delta_interest_receivable: Money,
    pub delta_inventory: Money,
    pub total_delta_current_assets: Money,
    pub delta_accounts_payable: Money,
    pub delta_tax_payable: Money,
    pub total_delta_current_liabilities: Money,
    pub net_operating_cash_flow: Money,
    pub purchase_of_fixed_assets: Money,
    pub net_investing_cash_flow: Money,
    pub beginning_cash_balance: Money,
    pub ending_cash_balance: Money,
    pub net_increase: Money,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementSet {
    pub balance_sheet: BalanceSheet,
    pub income_statement: IncomeStatement,
    pub cash_flow_statement: CashFlowStatement,
    /// SHA-256 of the journal the statements were compiled from.
    pub provenance: String,
}

impl StatementSet {
    /// Apply `f` to every amount in all three statements.
    pub fn map_amounts(&self, f: impl Fn(Money) -> Money) -> StatementSet {
        let mut out = self.clone();
        for line in BsLine::ALL {
            let pair = line.get(&self.balance_sheet);
            *line.get_mut(&mut out.balance_sheet) = LinePair::new(f(pair.initial), f(pair.end));
        }
        for line in IsLine::ALL {
            *line.get_mut(&mut out.income_statement) = f(line.get(&self.income_statement));
        }
        for line in CfLine::ALL {
            *line.get_mut(&mut out.cash_flow_statement) = f(line.get(&self.cash_flow_statement));
        }
        out
    }
}
