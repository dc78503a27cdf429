//! The task tables: one row per task, in table order.

use crate::audit::ErrorType;
use crate::indicators::IndicatorId;
use crate::statements::{BsLine, CfLine, IsLine};

use super::{Complexity, Domain, InputKind};

/// Whether a balance-sheet item asks for both columns or only the end value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Span {
    Both,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Item {
    Bs(BsLine, Span),
    Is(IsLine),
    Cf(CfLine),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum StatementTarget {
    Bs(BsLine),
    Is(IsLine),
    Cf(CfLine),
    WholeBs,
    WholeIs,
    WholeCf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Target {
    Literacy(Vec<Item>),
    Statement(StatementTarget),
    /// Errors in output-column order, all planted on one transaction.
    Audit(Vec<ErrorType>),
    /// (name as asked, indicator)
    Indicators(Vec<(&'static str, IndicatorId)>),
}

#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub domain: Domain,
    pub group: &'static str,
    pub name: String,
    pub complexity: Complexity,
    pub inputs: Vec<InputKind>,
    pub target: Target,
}

const fn c(alpha: u32, beta: u32, gamma: u32) -> Complexity {
    Complexity { alpha, beta, gamma }
}

const STATEMENTS: [InputKind; 3] = [
    InputKind::BalanceSheet,
    InputKind::IncomeStatement,
    InputKind::CashFlowStatement,
];

fn literacy(group: &'static str, inputs: &[InputKind], name: &str, k: Complexity, items: Vec<Item>) -> Row {
    Row {
        domain: Domain::FinancialLiteracy,
        group,
        name: format!("Financial Literacy Detection-{name}"),
        complexity: k,
        inputs: inputs.to_vec(),
        target: Target::Literacy(items),
    }
}

fn literacy_rows() -> Vec<Row> {
    use BsLine as B;
    use CfLine as F;
    use IsLine as I;
    use Item::{Cf, Is};
    let both = |l| Item::Bs(l, Span::Both);
    let end = |l| Item::Bs(l, Span::End);
    let mut rows = Vec::new();

    let bs = [InputKind::BalanceSheet];
    for (name, line) in [
        ("Cash on Hand", B::CashOnHand),
        ("Bank Deposits", B::BankDeposits),
        ("Accounts Receivable", B::AccountsReceivable),
        ("Interest Receivable", B::InterestReceivable),
        ("Inventory", B::Inventory),
        ("Fixed Assets", B::FixedAssets),
        ("Accumulated Depreciation", B::AccumulatedDepreciation),
        ("Accounts Payable", B::AccountsPayable),
        ("Taxes Payable", B::TaxesPayable),
        ("Paid-in Capital", B::PaidInCapital),
        ("Retained Earnings", B::RetainedEarnings),
        ("Current Assets", B::TotalCurrentAssets),
        ("Non-current Assets", B::TotalNonCurrentAssets),
        ("Current Liabilities", B::TotalCurrentLiabilities),
        ("Owner's Equity", B::TotalOwnersEquity),
    ] {
        rows.push(literacy("bs", &bs, name, c(2, 1, 2), vec![both(line)]));
    }
    rows.push(literacy(
        "bs",
        &bs,
        "Total Liabilities and Owner's Equity",
        c(5, 1, 5),
        [
            B::TotalLiabilitiesAndEquity,
            B::TotalCurrentLiabilities,
            B::PaidInCapital,
            B::RetainedEarnings,
            B::TotalOwnersEquity,
        ]
        .map(both)
        .to_vec(),
    ));
    rows.push(literacy(
        "bs",
        &bs,
        "Accounts Receivable & Accounts Payable",
        c(2, 1, 2),
        vec![both(B::AccountsReceivable), both(B::AccountsPayable)],
    ));
    rows.push(literacy(
        "bs",
        &bs,
        "Cash on Hand & Fixed Assets & Taxes Payable",
        c(3, 1, 3),
        vec![both(B::CashOnHand), both(B::FixedAssets), both(B::TaxesPayable)],
    ));
    rows.push(literacy(
        "bs",
        &bs,
        "Interest Receivable & Accumulated Depreciation & Taxes Payable & Paid-in Capital",
        c(4, 1, 4),
        [B::InterestReceivable, B::AccumulatedDepreciation, B::TaxesPayable, B::PaidInCapital]
            .map(both)
            .to_vec(),
    ));

    let is = [InputKind::IncomeStatement];
    for (name, line) in [
        ("Cost of Goods Sold", I::CostOfGoodsSold),
        ("Main Business Revenue", I::MainBusinessRevenue),
        ("Gross Profit", I::GrossProfit),
        ("Interest Income", I::InterestIncome),
        ("Administrative Expenses", I::AdministrativeExpenses),
        ("Selling Expenses", I::SellingExpenses),
        ("Financial Expenses", I::FinancialExpenses),
        ("Accumulated Depreciation", I::Depreciation),
        ("Tax Expense", I::TaxExpense),
    ] {
        rows.push(literacy("is", &is, name, c(1, 1, 1), vec![Is(line)]));
    }
    for (name, k, lines) in [
        ("Total Revenue", c(2, 1, 2), vec![I::TotalRevenue, I::MainBusinessRevenue]),
        (
            "Total Expenses",
            c(5, 1, 5),
            vec![
                I::TotalExpenses,
                I::AdministrativeExpenses,
                I::SellingExpenses,
                I::Depreciation,
                I::FinancialExpenses,
            ],
        ),
        (
            "Profit Before Tax",
            c(5, 1, 5),
            vec![I::ProfitBeforeTax, I::TotalRevenue, I::TotalCost, I::TotalExpenses, I::InterestIncome],
        ),
        (
            "Net Profit",
            c(6, 1, 6),
            vec![
                I::NetProfit,
                I::ProfitBeforeTax,
                I::TaxExpense,
                I::GrossProfit,
                I::TotalExpenses,
                I::InterestIncome,
            ],
        ),
        (
            "Main Business Revenue & Cost of Goods Sold",
            c(2, 1, 2),
            vec![I::MainBusinessRevenue, I::CostOfGoodsSold],
        ),
        (
            "Total Revenue & Cost of Goods Sold & Administrative Expenses",
            c(3, 1, 3),
            vec![I::TotalRevenue, I::CostOfGoodsSold, I::AdministrativeExpenses],
        ),
        (
            "Selling Expenses & Depreciation & Financial Expenses & Tax Expense",
            c(4, 1, 4),
            vec![I::SellingExpenses, I::Depreciation, I::FinancialExpenses, I::TaxExpense],
        ),
    ] {
        rows.push(literacy("is", &is, name, k, lines.into_iter().map(Is).collect()));
    }

    let cf = [InputKind::CashFlowStatement];
    for (name, line) in [
        ("Net Profit", F::NetProfit),
        ("Depreciation", F::Depreciation),
        ("Decrease in Accounts Receivable", F::DeltaAccountsReceivable),
        ("Decrease in Inventory", F::DeltaInventory),
        ("Increase in Accounts Payable", F::DeltaAccountsPayable),
        ("Increase in Taxes Payable", F::DeltaTaxPayable),
        ("Purchase of Fixed Assets", F::PurchaseOfFixedAssets),
        ("Beginning Cash and Cash Equivalents Balance", F::BeginningCashBalance),
        ("Ending Cash and Cash Equivalents Balance", F::EndingCashBalance),
    ] {
        rows.push(literacy("cfs", &cf, name, c(1, 1, 1), vec![Cf(line)]));
    }
    for (name, k, lines) in [
        (
            "Net Cash Flow from Operating Activities",
            c(7, 1, 7),
            vec![
                F::NetOperatingCashFlow,
                F::NetProfit,
                F::Depreciation,
                F::DeltaAccountsReceivable,
                F::DeltaInventory,
                F::DeltaAccountsPayable,
                F::DeltaTaxPayable,
            ],
        ),
        (
            "Net Cash Flow from Investing Activities",
            c(2, 1, 2),
            vec![F::NetInvestingCashFlow, F::PurchaseOfFixedAssets],
        ),
        (
            "Net Increase in Cash and Cash Equivalents",
            c(3, 1, 3),
            vec![F::NetIncrease, F::NetOperatingCashFlow, F::NetInvestingCashFlow],
        ),
        (
            "Net Profit & Purchase of Fixed Assets",
            c(2, 1, 2),
            vec![F::NetProfit, F::PurchaseOfFixedAssets],
        ),
        (
            "Increase in Accounts Payable & Purchase of Fixed Assets & Beginning Cash Balance",
            c(3, 1, 3),
            vec![F::DeltaAccountsPayable, F::PurchaseOfFixedAssets, F::BeginningCashBalance],
        ),
        (
            "Depreciation & Decrease in Inventory & Net Cash Flow from Investing & Net Increase",
            c(4, 1, 4),
            vec![F::Depreciation, F::DeltaInventory, F::NetInvestingCashFlow, F::NetIncrease],
        ),
    ] {
        rows.push(literacy("cfs", &cf, name, k, lines.into_iter().map(Cf).collect()));
    }

    let fs = STATEMENTS;
    for (name, item) in [
        ("Interest Receivable", both(B::InterestReceivable)),
        ("Paid-in Capital", both(B::PaidInCapital)),
        ("Cost of Goods Sold", Is(I::CostOfGoodsSold)),
        ("Selling Expenses", Is(I::SellingExpenses)),
        ("Tax Expense", Is(I::TaxExpense)),
        ("Depreciation", Is(I::Depreciation)),
        ("Increase in Accounts Payable", Cf(F::DeltaAccountsPayable)),
        ("Beginning Cash and Cash Equivalents Balance", Cf(F::BeginningCashBalance)),
    ] {
        rows.push(literacy("fs", &fs, name, c(1, 3, 1), vec![item]));
    }
    for (name, k, items) in [
        (
            "Interest Receivable & Net Increase in Cash",
            c(2, 3, 2),
            vec![end(B::InterestReceivable), Cf(F::NetIncrease)],
        ),
        (
            "Bank Deposits & Interest Income",
            c(2, 3, 2),
            vec![end(B::BankDeposits), Is(I::InterestIncome)],
        ),
        (
            "Selling Expenses & Purchase of Fixed Assets",
            c(2, 3, 2),
            vec![Is(I::SellingExpenses), Cf(F::PurchaseOfFixedAssets)],
        ),
        (
            "Accounts Receivable & Financial Expenses & Fixed Assets",
            c(3, 3, 3),
            vec![end(B::AccountsReceivable), Is(I::FinancialExpenses), Cf(F::PurchaseOfFixedAssets)],
        ),
        (
            "Taxes Payable & Revenue & Operating Cash Flow",
            c(3, 3, 3),
            vec![end(B::TaxesPayable), Is(I::TotalRevenue), Cf(F::NetOperatingCashFlow)],
        ),
        (
            "Paid-in Capital & Profit Before Tax & Accounts Payable",
            c(3, 3, 3),
            vec![end(B::PaidInCapital), Is(I::ProfitBeforeTax), Cf(F::DeltaAccountsPayable)],
        ),
    ] {
        rows.push(literacy("fs", &fs, name, k, items));
    }
    rows
}

fn accounting_rows() -> Vec<Row> {
    use StatementTarget as T;
    let row = |group, statement: &str, name: &str, k, target| Row {
        domain: Domain::Accounting,
        group,
        name: format!("{statement}-{name}"),
        complexity: k,
        inputs: vec![InputKind::JournalText],
        target: Target::Statement(target),
    };
    let mut rows = Vec::new();
    for (name, alpha, target) in [
        ("Cash on Hand", 1, T::Bs(BsLine::CashOnHand)),
        ("Bank Deposits", 1, T::Bs(BsLine::BankDeposits)),
        ("Inventory", 1, T::Bs(BsLine::Inventory)),
        ("Accounts Receivable", 1, T::Bs(BsLine::AccountsReceivable)),
        ("Interest Receivable", 1, T::Bs(BsLine::InterestReceivable)),
        ("Current Assets", 5, T::Bs(BsLine::TotalCurrentAssets)),
        ("Accumulated Depreciation", 1, T::Bs(BsLine::AccumulatedDepreciation)),
        ("Fixed Assets net", 1, T::Bs(BsLine::NetFixedAssets)),
        ("Non-current Assets", 2, T::Bs(BsLine::TotalNonCurrentAssets)),
        ("Total Assets", 7, T::Bs(BsLine::TotalAssets)),
        ("Accounts Payable", 1, T::Bs(BsLine::AccountsPayable)),
        ("Taxes Payable", 1, T::Bs(BsLine::TaxesPayable)),
        ("Current Liabilities", 2, T::Bs(BsLine::TotalCurrentLiabilities)),
        ("Total Liabilities", 2, T::Bs(BsLine::TotalLiabilities)),
        ("Paid-in Capital", 1, T::Bs(BsLine::PaidInCapital)),
        ("Retained Earnings", 1, T::Bs(BsLine::RetainedEarnings)),
        ("Total Owner's Equity", 2, T::Bs(BsLine::TotalOwnersEquity)),
        ("Total Liabilities and Owner's Equity", 4, T::Bs(BsLine::TotalLiabilitiesAndEquity)),
        ("Balance Sheet", 37, T::WholeBs),
    ] {
        rows.push(row("bs", "Balance Sheet", name, c(alpha, 1, 2), target));
    }
    for (name, alpha, target) in [
        ("Main Business Revenue", 1, T::Is(IsLine::MainBusinessRevenue)),
        ("Total Revenue", 1, T::Is(IsLine::TotalRevenue)),
        ("Cost of Goods Sold", 1, T::Is(IsLine::CostOfGoodsSold)),
        ("Total Cost", 1, T::Is(IsLine::TotalCost)),
        ("Gross Profit", 2, T::Is(IsLine::GrossProfit)),
        ("Depreciation", 1, T::Is(IsLine::Depreciation)),
        ("Administrative Expenses", 1, T::Is(IsLine::AdministrativeExpenses)),
        ("Sales Expenses", 1, T::Is(IsLine::SellingExpenses)),
        ("Financial Expenses", 1, T::Is(IsLine::FinancialExpenses)),
        ("Total Expenses", 4, T::Is(IsLine::TotalExpenses)),
        ("Interest Income", 1, T::Is(IsLine::InterestIncome)),
        ("Profit Before Tax", 7, T::Is(IsLine::ProfitBeforeTax)),
        ("Tax Expense", 1, T::Is(IsLine::TaxExpense)),
        ("Net Profit", 8, T::Is(IsLine::NetProfit)),
        ("Income Statement", 31, T::WholeIs),
    ] {
        rows.push(row("is", "Income Statement", name, c(alpha, 1, 1), target));
    }
    // The table also lists "Depreciation" here; it duplicates the income
    // statement row (same input, same answer) and is left out.
    for (name, alpha, target) in [
        ("Net profit", 8, T::Cf(CfLine::NetProfit)),
        ("Accounts Receivable", 1, T::Cf(CfLine::DeltaAccountsReceivable)),
        ("Interest Receivable", 1, T::Cf(CfLine::DeltaInterestReceivable)),
        ("Inventory", 1, T::Cf(CfLine::DeltaInventory)),
        (
            "Total (Increase) Decrease in Current Assets",
            1,
            T::Cf(CfLine::TotalDeltaCurrentAssets),
        ),
        ("Accounts Payable", 1, T::Cf(CfLine::DeltaAccountsPayable)),
        ("Tax Payable", 14, T::Cf(CfLine::DeltaTaxPayable)),
        (
            "Total Increase (Decrease) in Current Liabilities",
            1,
            T::Cf(CfLine::TotalDeltaCurrentLiabilities),
        ),
        (
            "Net Cash Flow from Operating Activities",
            1,
            T::Cf(CfLine::NetOperatingCashFlow),
        ),
        ("Purchase of Fixed Assets", 1, T::Cf(CfLine::PurchaseOfFixedAssets)),
        (
            "Net Cash Flows from Investing Activities",
            1,
            T::Cf(CfLine::NetInvestingCashFlow),
        ),
        (
            "Beginning Cash and Cash Equivalents Balance",
            2,
            T::Cf(CfLine::BeginningCashBalance),
        ),
        ("Ending Cash and Cash Equivalents Balance", 2, T::Cf(CfLine::EndingCashBalance)),
        ("Net Increase", 4, T::Cf(CfLine::NetIncrease)),
        ("Cash Flow Statement", 38, T::WholeCf),
    ] {
        rows.push(row("cfs", "Cash Flow Statement", name, c(alpha, 1, 1), target));
    }
    rows
}

fn audit_rows() -> Vec<Row> {
    use ErrorType::*;
    let row = |group, name: String, gamma, errors: Vec<ErrorType>| Row {
        domain: Domain::Auditing,
        group,
        name,
        complexity: c(13, 1, gamma),
        inputs: vec![InputKind::CorruptedJournalText],
        target: Target::Audit(errors),
    };
    let mut rows = Vec::new();
    for e in ErrorType::ALL {
        let prefix = match e.category() {
            crate::audit::ErrorCategory::RecordError => "Find Record Error",
            crate::audit::ErrorCategory::CalculationError => "Find Calculation Error",
            crate::audit::ErrorCategory::ApprovalMismatch => "Find Transaction Approval Mismatch",
        };
        let gamma = match e {
            ProfitCalc | MissingPreparer => 2,
            MissingApprover => 4,
            _ => 3,
        };
        rows.push(row("single", format!("{prefix}-{}", e.name()), gamma, vec![e]));
    }

    // short names used by the later rows of the tables
    let short = |e: ErrorType| match e {
        TaxAmountCalc => "TAX Error",
        UnitPriceRecord => "PRICE ANOMALY Error",
        AmountCalc => "AMOUNT DISCREPANCY Error",
        DateRecord => "RECORDING DELAY Error",
        TypeRecord => "TYPE MISCLASSIFICATION Error",
        QuantityRecord => "QUANTITY MISMATCH Error",
        other => other.name(),
    };
    let short_name = |errors: &[ErrorType]| {
        let parts: Vec<&str> = errors.iter().map(|e| short(*e)).collect();
        format!("Find Error-{}", parts.join(" & "))
    };

    let long = [
        (
            "Find Record Error-Transaction TYPE Record Error & Calculation Error-Transaction TAX_AMOUNT Calculation Error",
            4,
            vec![TaxAmountCalc, TypeRecord],
        ),
        (
            "Find Record Error-Transaction PAYMENT/RECEIPT_STATUS Record Error & Record Error-Transaction QUANTITY Record Error",
            4,
            vec![PaymentReceiptStatusRecord, QuantityRecord],
        ),
        (
            "Find Record Error-Transaction QUANTITY Record Error & Record Error-Transaction TYPE Record Error",
            4,
            vec![QuantityRecord, TypeRecord],
        ),
        (
            "Find Record Error-Transaction PAYMENT/RECEIPT_STATUS Record Error & Calculation Error-Transaction AMOUNT Calculation Error",
            5,
            vec![PaymentReceiptStatusRecord, AmountCalc],
        ),
        (
            "Find Record Error-Transaction RECEIVE_METHOD Record Error & Record Error-Transaction TYPE Record Error",
            7,
            vec![ReceiveMethodRecord, TypeRecord],
        ),
    ];
    for (name, gamma, errors) in long {
        rows.push(row("double", name.to_string(), gamma, errors));
    }
    for errors in [
        vec![TypeRecord, DateRecord],
        vec![TypeRecord, UnitPriceRecord],
        vec![TypeRecord, AmountCalc],
        vec![DateRecord, UnitPriceRecord],
        vec![DateRecord, AmountCalc],
        vec![UnitPriceRecord, AmountCalc],
    ] {
        rows.push(row("double", short_name(&errors), 5, errors));
    }

    rows.push(row(
        "multi",
        "Find Record Error-Transaction PAYMENT/RECEIPT_STATUS Record Error & Record Error-Transaction QUANTITY Record Error & Calculation Error-Transaction PROFIT Calculation Error".to_string(),
        5,
        vec![PaymentReceiptStatusRecord, QuantityRecord, ProfitCalc],
    ));
    for (gamma, errors) in [
        (7, vec![TypeRecord, DateRecord, UnitPriceRecord]),
        (7, vec![TypeRecord, DateRecord, AmountCalc]),
        (7, vec![TypeRecord, UnitPriceRecord, AmountCalc]),
        (7, vec![DateRecord, UnitPriceRecord, AmountCalc]),
        (9, vec![TaxAmountCalc, UnitPriceRecord, AmountCalc, DateRecord]),
        (9, vec![TaxAmountCalc, UnitPriceRecord, AmountCalc, TypeRecord]),
        (9, vec![TaxAmountCalc, UnitPriceRecord, AmountCalc, QuantityRecord]),
        (9, vec![UnitPriceRecord, AmountCalc, DateRecord, QuantityRecord]),
        (11, vec![TaxAmountCalc, UnitPriceRecord, AmountCalc, DateRecord, TypeRecord]),
        (11, vec![TaxAmountCalc, UnitPriceRecord, DateRecord, TypeRecord, QuantityRecord]),
        (11, vec![UnitPriceRecord, AmountCalc, DateRecord, TypeRecord, QuantityRecord]),
    ] {
        rows.push(row("multi", short_name(&errors), gamma, errors));
    }
    rows
}

fn consulting_rows() -> Vec<Row> {
    use IndicatorId::*;
    let row = |group, name: String, k, inputs: &[InputKind], indicators: Vec<(&'static str, IndicatorId)>| Row {
        domain: Domain::Consulting,
        group,
        name,
        complexity: k,
        inputs: inputs.to_vec(),
        target: Target::Indicators(indicators),
    };
    let canonical = |id: IndicatorId| (id.name(), id);
    let bs: &[InputKind] = &[InputKind::BalanceSheet];
    let is: &[InputKind] = &[InputKind::IncomeStatement];
    let cf: &[InputKind] = &[InputKind::CashFlowStatement];
    let fs: &[InputKind] = &STATEMENTS;
    let mut rows = Vec::new();

    for (name, k, inputs, ind) in [
        ("Analyze Balance Sheet-Calculate Current Ratio", c(2, 1, 1), bs, canonical(CurrentRatio)),
        ("Analyze Balance Sheet-calculate Quick Ratio", c(6, 1, 1), bs, canonical(QuickRatio)),
        ("Analyze Balance Sheet-calculate Debt to Asset Ratio", c(2, 1, 1), bs, canonical(DebtToAsset)),
        ("Analyze Balance Sheet-calculate Debt to Equity Ratio", c(2, 1, 1), bs, canonical(DebtToEquity)),
        ("Analyze Income Statement-Gross Profit Margin", c(2, 1, 1), is, canonical(GrossMargin)),
        ("Analyze Income Statement-Net Profit Margin", c(2, 1, 1), is, canonical(NetMargin)),
        ("Analyze Cash Flow Statement-FCF", c(2, 1, 1), cf, canonical(FreeCashFlow)),
        ("Analyze Cash Flow Statement-Net Cash Ratio", c(2, 1, 1), cf, ("Net Cash Ratio", OcfToNetIncome)),
        // one source: ending cash equals cash on hand plus bank deposits on the balance sheet
        ("Analyze Financial Statement-Cash to Current Debt Ratio", c(2, 1, 1), bs, canonical(CashToCurrentDebt)),
        (
            "Analyze Financial Statement-Operating Cash Flow to Current Liabilities Ratio",
            c(3, 3, 1),
            fs,
            canonical(OcfToCurrentLiabilities),
        ),
        ("Analyze Financial Statement-ROA", c(3, 3, 1), fs, canonical(ReturnOnAssets)),
        ("Analyze Financial Statement-ROE", c(3, 3, 1), fs, canonical(ReturnOnEquity)),
        (
            "Analyze Financial Statement-Inventory Turnover Ratio",
            c(3, 3, 1),
            fs,
            canonical(InventoryTurnover),
        ),
        (
            "Analyze Financial Statement-Accounts Receivable Turnover Ratio",
            c(3, 3, 1),
            fs,
            canonical(ReceivablesTurnover),
        ),
        (
            "Analyze Financial Statement-Current Assets Turnover Ratio",
            c(3, 3, 1),
            fs,
            canonical(CurrentAssetsTurnover),
        ),
        (
            "Analyze Financial Statement-Total Asset Turnover Ratio",
            c(3, 3, 1),
            fs,
            canonical(TotalAssetTurnover),
        ),
        (
            "Analyze Financial Statement-Cash Flow to Debt Ratio",
            c(2, 3, 1),
            fs,
            canonical(CashFlowToDebt),
        ),
        (
            "Analyze Financial Statement-Operating Cash Flow Ratio",
            c(2, 3, 1),
            fs,
            canonical(OcfRatio),
        ),
    ] {
        rows.push(row("single", name.to_string(), k, inputs, vec![ind]));
    }

    // (alpha, names as they appear in the row)
    let multi: [(u32, &[&'static str]); 17] = [
        (5, &["Current Ratio", "Inventory Turnover Ratio"]),
        (4, &["Gross Profit Margin", "Operating Cash Flow Ratio"]),
        (5, &["FCF", "Current Assets Turnover Ratio"]),
        (8, &["Quick Ratio", "Net Profit Margin"]),
        (4, &["Gross Profit Margin", "Current Liabilities Ratio"]),
        (4, &["Debt to Asset Ratio", "Net Cash Ratio"]),
        (
            6,
            &["Debt to Equity Ratio", "Net Profit Margin", "Operating Cash Flow to Current Liabilities Ratio"],
        ),
        (7, &["ROE", "Debt to Asset Ratio", "Gross Profit Margin"]),
        (11, &["Net Cash Ratio", "Turnover Ratio", "Quick Ratio"]),
        (6, &["Debt to Asset Ratio", "Gross Profit Margin", "Operating Cash Flow Ratio"]),
        (
            10,
            &["Debt to Equity Ratio", "Net Profit Margin", "ROA", "Accounts Receivable Turnover Ratio"],
        ),
        (
            14,
            &[
                "Current Ratio",
                "Quick Ratio",
                "Debt to Asset Ratio",
                "Debt to Equity Ratio",
                "Cash Flow to Debt Ratio",
            ],
        ),
        (
            12,
            &[
                "Accounts Receivable Turnover Ratio",
                "Operating Cash Flow to Current Liabilities Ratio",
                "Operating Cash Flow Ratio",
                "Total Asset Turnover Ratio",
                "Debt to Equity Ratio",
            ],
        ),
        (
            14,
            &["FCF", "ROA", "ROE", "Net Cash Ratio", "Net Profit Margin", "Gross Profit Margin"],
        ),
        (
            17,
            &[
                "Operating Cash Flow Ratio",
                "Cash Flow to Debt Ratio",
                "Inventory Turnover Ratio",
                "Debt to Equity Ratio",
                "Quick Ratio",
                "Current Ratio",
            ],
        ),
        (
            21,
            &[
                "Operating Cash Flow to Current Liabilities Ratio",
                "Debt to Equity Ratio",
                "Total Asset Turnover Ratio",
                "Quick Ratio",
                "Operating Cash Flow Ratio",
                "ROE",
                "Accounts Receivable Turnover Ratio",
            ],
        ),
        (
            15,
            &[
                "Current Ratio",
                "Gross Profit Margin",
                "Debt to Asset Ratio",
                "Net Profit Margin",
                "Cash to Current Debt Ratio",
                "FCF",
                "ROA",
            ],
        ),
    ];
    for (alpha, names) in multi {
        let indicators = names
            .iter()
            .map(|n| {
                let id = IndicatorId::from_name(n).expect("table names resolve");
                // aliases keep the wording of the row; the rest use the full name
                match *n {
                    "Net Cash Ratio" | "Current Liabilities Ratio" | "Turnover Ratio" => (*n, id),
                    _ => canonical(id),
                }
            })
            .collect::<Vec<_>>();
        let gamma = indicators.len() as u32;
        rows.push(row(
            "multi",
            format!("Analyze Financial Statement-{}", names.join(" & ")),
            c(alpha, 3, gamma),
            &STATEMENTS,
            indicators,
        ));
    }
    rows
}

pub(crate) fn rows() -> Vec<Row> {
    let mut rows = literacy_rows();
    rows.extend(accounting_rows());
    rows.extend(audit_rows());
    rows.extend(consulting_rows());
    rows
}

pub(crate) const RECONCILIATION_NOTE: &str = "The accounting tables list 50 rows (19 balance sheet, 15 income \
statement, 16 cash flow statement) against a stated total of 49. The cash flow statement row \"Depreciation\" \
has the same input and the same answer as the income statement row \"Depreciation\" and is not generated, which \
keeps the catalog at 64 + 49 + 35 + 35 = 183 tasks.";
