use serde::{Deserialize, Serialize};

use crate::money::Money;

use super::{BalanceSheet, CashFlowStatement, IncomeStatement, LinePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StatementKind {
    BalanceSheet,
    IncomeStatement,
    CashFlowStatement,
}

impl StatementKind {
    pub const ALL: [StatementKind; 3] = [
        StatementKind::BalanceSheet,
        StatementKind::IncomeStatement,
        StatementKind::CashFlowStatement,
    ];

    pub fn title(self) -> &'static str {
        match self {
            StatementKind::BalanceSheet => "Balance Sheet",
            StatementKind::IncomeStatement => "Income Statement",
            StatementKind::CashFlowStatement => "Cash Flow Statement",
        }
    }
}

macro_rules! statement_lines {
    (
        $name:ident for $stmt:ty => $value:ty {
            $($variant:ident : $field:ident => $label:literal),+ $(,)?
        }
    ) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            /// Every line in statement order.
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// Line name as printed on the statement.
            pub fn label(self) -> &'static str {
                match self {
                    $($name::$variant => $label),+
                }
            }

            /// Field name in the structured form.
            pub fn key(self) -> &'static str {
                match self {
                    $($name::$variant => stringify!($field)),+
                }
            }

            pub fn get(self, s: &$stmt) -> $value {
                match self {
                    $($name::$variant => s.$field),+
                }
            }

            pub fn get_mut(self, s: &mut $stmt) -> &mut $value {
                match self {
                    $($name::$variant => &mut s.$field),+
                }
            }
        }
    };
}

statement_lines! {
    BsLine for BalanceSheet => LinePair {
        CashOnHand: cash_on_hand => "Cash on Hand",
        BankDeposits: bank_deposits => "Bank Deposits",
        InterestReceivable: interest_receivable => "Interest Receivable",
        AccountsReceivable: accounts_receivable => "Accounts Receivable",
        Inventory: inventory => "Inventory",
        TotalCurrentAssets: total_current_assets => "Total Current Assets",
        FixedAssets: fixed_assets => "Fixed Assets",
        AccumulatedDepreciation: accumulated_depreciation => "Accumulated Depreciation",
        NetFixedAssets: net_fixed_assets => "Net Fixed Assets",
        TotalNonCurrentAssets: total_non_current_assets => "Total Non-Current Assets",
        TotalAssets: total_assets => "Total Assets",
        AccountsPayable: accounts_payable => "Accounts Payable",
        TaxesPayable: taxes_payable => "Taxes Payable",
        TotalCurrentLiabilities: total_current_liabilities => "Total Current Liabilities",
        TotalLiabilities: total_liabilities => "Total Liabilities",
        PaidInCapital: paid_in_capital => "Paid-in Capital",
        RetainedEarnings: retained_earnings => "Retained Earnings",
        TotalOwnersEquity: total_owners_equity => "Total Owner's Equity",
        TotalLiabilitiesAndEquity: total_liabilities_and_equity => "Total Liabilities and Equity",
    }
}

statement_lines! {
    IsLine for IncomeStatement => Money {
        MainBusinessRevenue: main_business_revenue => "Main Business Revenue",
        TotalRevenue: total_revenue => "Total Revenue",
        CostOfGoodsSold: cost_of_goods_sold => "Cost of Goods Sold",
        TotalCost: total_cost => "Total Cost",
        GrossProfit: gross_profit => "Gross Profit",
        AdministrativeExpenses: administrative_expenses => "Administrative Expenses",
        SellingExpenses: selling_expenses => "Selling Expenses",
        Depreciation: depreciation => "Depreciation",
        FinancialExpenses: financial_expenses => "Financial Expenses",
        TotalExpenses: total_expenses => "Total Expenses",
        InterestIncome: interest_income => "Interest Income",
        ProfitBeforeTax: profit_before_tax => "Profit Before Tax",
        TaxExpense: tax_expense => "Tax Expense",
        NetProfit: net_profit => "Net Profit",
    }
}

statement_lines! {
    CfLine for CashFlowStatement => Money {
        NetProfit: net_profit => "Net Profit",
        Depreciation: depreciation => "Depreciation",
        DeltaAccountsReceivable: delta_accounts_receivable => "Accounts Receivable",
        DeltaInterestReceivable: delta_interest_receivable => "Interest Receivable",
        DeltaInventory: delta_inventory => "Inventory",
        TotalDeltaCurrentAssets: total_delta_current_assets => "Total (Increase) Decrease in Current Assets",
        DeltaAccountsPayable: delta_accounts_payable => "Accounts Payable",
        DeltaTaxPayable: delta_tax_payable => "Tax Payable",
        TotalDeltaCurrentLiabilities: total_delta_current_liabilities => "Total Increase (Decrease) in Current Liabilities",
        NetOperatingCashFlow: net_operating_cash_flow => "Net Cash Flow from Operating Activities",
        PurchaseOfFixedAssets: purchase_of_fixed_assets => "Purchase of Fixed Assets",
        NetInvestingCashFlow: net_investing_cash_flow => "Net Cash Flows from Investing Activities",
        BeginningCashBalance: beginning_cash_balance => "Beginning Cash and Cash Equivalents Balance",
        EndingCashBalance: ending_cash_balance => "Ending Cash and Cash Equivalents Balance",
        NetIncrease: net_increase => "Net Increase",
    }
}

impl CfLine {
    /// Unambiguous name: working-capital lines are qualified with their
    /// direction heading, e.g. "(Increase) Decrease in Inventory".
    pub fn qualified_label(self) -> String {
        match self {
            CfLine::DeltaAccountsReceivable | CfLine::DeltaInterestReceivable | CfLine::DeltaInventory => {
                format!("(Increase) Decrease in {}", self.label())
            }
            CfLine::DeltaAccountsPayable | CfLine::DeltaTaxPayable => {
                format!("Increase (Decrease) in {}", self.label())
            }
            _ => self.label().to_string(),
        }
    }
}
