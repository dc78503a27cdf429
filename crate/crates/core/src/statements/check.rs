use serde::Serialize;

use crate::money::Money;

use super::{BsLine, CfLine, LinePair, StatementSet};

/// Maximum tolerated discrepancy for any identity or link: one cent.
pub const TOLERANCE: Money = Money::from_minor(1);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// Total assets against its components, or against liabilities + equity.
    BalanceSheetIdentity,
    IncomeStatementIdentity,
    CashFlowIdentity,
    /// Net profit (and depreciation) disagree between income and cash flow statements.
    NetProfitLink,
    RetainedEarningsLink,
    EndingCashLink,
    /// A cash-flow working-capital delta disagrees with the balance sheet.
    WorkingCapitalLink(BsLine),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub description: String,
    /// `left - right` of the failed equality.
    pub discrepancy: Money,
}

fn compare(out: &mut Vec<Violation>, kind: ViolationKind, description: String, left: Money, right: Money) {
    let discrepancy = left - right;
    if discrepancy.abs() > TOLERANCE {
        out.push(Violation {
            kind,
            description,
            discrepancy,
        });
    }
}

/// Within-statement identities for both balance-sheet columns, the income
/// statement and the cash flow statement.
pub fn identity_check(set: &StatementSet) -> Vec<Violation> {
    let mut out = Vec::new();
    let bs = &set.balance_sheet;
    let columns: [(&str, fn(LinePair) -> Money); 2] = [("initial", |p| p.initial), ("end", |p| p.end)];
    for (column, pick) in columns {
        let v = |line: BsLine| pick(line.get(bs));
        let kind = ViolationKind::BalanceSheetIdentity;
        compare(
            &mut out,
            kind.clone(),
            format!("{column}: total current assets = sum of current asset lines"),
            v(BsLine::TotalCurrentAssets),
            v(BsLine::CashOnHand)
                + v(BsLine::BankDeposits)
                + v(BsLine::InterestReceivable)
                + v(BsLine::AccountsReceivable)
                + v(BsLine::Inventory),
        );
        compare(
            &mut out,
            kind.clone(),
            format!("{column}: net fixed assets = fixed assets + accumulated depreciation"),
            v(BsLine::NetFixedAssets),
            v(BsLine::FixedAssets) + v(BsLine::AccumulatedDepreciation),
        );
        compare(
            &mut out,
            kind.clone(),
            format!("{column}: total assets = current + non-current"),
            v(BsLine::TotalAssets),
            v(BsLine::TotalCurrentAssets) + v(BsLine::TotalNonCurrentAssets),
        );
        compare(
            &mut out,
            kind.clone(),
            format!("{column}: total liabilities and equity = liabilities + owner's equity"),
            v(BsLine::TotalLiabilitiesAndEquity),
            v(BsLine::TotalLiabilities) + v(BsLine::TotalOwnersEquity),
        );
        compare(
            &mut out,
            kind,
            format!("{column}: total assets = total liabilities and equity"),
            v(BsLine::TotalAssets),
            v(BsLine::TotalLiabilitiesAndEquity),
        );
    }

    let is = &set.income_statement;
    compare(
        &mut out,
        ViolationKind::IncomeStatementIdentity,
        "gross profit = total revenue - total cost".into(),
        is.gross_profit,
        is.total_revenue - is.total_cost,
    );
    compare(
        &mut out,
        ViolationKind::IncomeStatementIdentity,
        "net profit = profit before tax - tax expense".into(),
        is.net_profit,
        is.profit_before_tax - is.tax_expense,
    );

    let cf = &set.cash_flow_statement;
    compare(
        &mut out,
        ViolationKind::CashFlowIdentity,
        "net increase = operating + investing".into(),
        cf.net_increase,
        cf.net_operating_cash_flow + cf.net_investing_cash_flow,
    );
    compare(
        &mut out,
        ViolationKind::CashFlowIdentity,
        "ending balance = beginning balance + net increase".into(),
        cf.ending_cash_balance,
        cf.beginning_cash_balance + cf.net_increase,
    );
    out
}

/// The links between statements: net profit, retained earnings, ending cash
/// and the working-capital deltas.
pub fn articulation_check(set: &StatementSet) -> Vec<Violation> {
    let mut out = Vec::new();
    let (bs, is, cf) = (&set.balance_sheet, &set.income_statement, &set.cash_flow_statement);
    compare(
        &mut out,
        ViolationKind::NetProfitLink,
        "income statement net profit = cash flow net profit".into(),
        is.net_profit,
        cf.net_profit,
    );
    compare(
        &mut out,
        ViolationKind::NetProfitLink,
        "income statement depreciation = cash flow depreciation".into(),
        is.depreciation,
        cf.depreciation,
    );
    compare(
        &mut out,
        ViolationKind::RetainedEarningsLink,
        "change in retained earnings = net profit".into(),
        bs.retained_earnings.change(),
        is.net_profit,
    );
    compare(
        &mut out,
        ViolationKind::EndingCashLink,
        "ending cash balance = cash on hand + bank deposits at end".into(),
        cf.ending_cash_balance,
        bs.cash_on_hand.end + bs.bank_deposits.end,
    );
    let deltas = [
        (CfLine::DeltaAccountsReceivable, BsLine::AccountsReceivable, true),
        (CfLine::DeltaInterestReceivable, BsLine::InterestReceivable, true),
        (CfLine::DeltaInventory, BsLine::Inventory, true),
        (CfLine::DeltaAccountsPayable, BsLine::AccountsPayable, false),
        (CfLine::DeltaTaxPayable, BsLine::TaxesPayable, false),
    ];
    for (cf_line, bs_line, is_asset) in deltas {
        let change = bs_line.get(bs).change();
        let expected = if is_asset { -change } else { change };
        compare(
            &mut out,
            ViolationKind::WorkingCapitalLink(bs_line),
            format!("cash flow {} = balance sheet change", cf_line.qualified_label()),
            cf_line.get(cf),
            expected,
        );
    }
    out
}
