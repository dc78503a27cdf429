//! Item definitions used by the definition-matching literacy tasks. Two
//! entries drop a leading clause that named the item itself.

use crate::statements::{BsLine, CfLine, IsLine};

pub fn balance_sheet(line: BsLine) -> Option<&'static str> {
    use BsLine::*;
    Some(match line {
        CashOnHand => "Cash held by an entity that is available for use in its day-to-day operations.",
        BankDeposits => "Funds deposited into a bank or other financial institution.",
        InterestReceivable => "Amounts of interest accrued but not yet received.",
        AccountsReceivable => "Amounts owed to the entity for goods or services sold or provided on credit.",
        Inventory => {
            "Assets held for sale in the ordinary course of business, in production for such sale, or in the \
             process of being manufactured."
        }
        TotalCurrentAssets => {
            "The total amount of assets that are expected to be realised or intended for sale or consumption in \
             the normal course of the entity's operating cycle."
        }
        FixedAssets => {
            "Tangible items that are held for use in the production or supply of goods or services, for rental \
             to others, or for administrative purposes."
        }
        AccumulatedDepreciation => {
            "The total amount of depreciation recognised as an expense in the statement of profit or loss and \
             other comprehensive income."
        }
        TotalNonCurrentAssets => {
            "The total amount of assets that are not expected to be realised or intended for sale or \
             consumption in the normal course of the entity's operating cycle."
        }
        TotalAssets => {
            "The total present economic resources controlled by the entity as a result of past events, which \
             also means the sum of all assets owned by an entity, both current and non-current, that are \
             expected to bring future economic benefits to the company."
        }
        AccountsPayable => "Amounts owed by the entity for goods or services received or purchased on credit.",
        TaxesPayable => "Amounts of taxes accrued but not yet paid.",
        TotalCurrentLiabilities => {
            "The total amount of liabilities that are expected to be settled in the normal course of the \
             entity's operating cycle."
        }
        PaidInCapital => "The amount of capital contributed by shareholders in exchange for shares.",
        RetainedEarnings => {
            "The amount of profit or loss retained in the entity, rather than being distributed to shareholders."
        }
        TotalOwnersEquity => "The total amount of equity recognised in the statement of financial position.",
        TotalLiabilitiesAndEquity => {
            "The total amount of liabilities and equity recognised in the statement of financial position."
        }
        NetFixedAssets | TotalLiabilities => return None,
    })
}

pub fn income_statement(line: IsLine) -> &'static str {
    use IsLine::*;
    match line {
        MainBusinessRevenue => "Income arising in the course of the entity's core operating activities.",
        TotalRevenue => "Total income arising in the course of an entity’s ordinary activities.",
        CostOfGoodsSold => "Carrying amount of inventories sold during the reporting period.",
        TotalCost => {
            "The aggregate of all expenses incurred by a company to generate its revenues during a specific \
             accounting period."
        }
        GrossProfit => "The difference between sales revenue and the cost of goods sold.",
        AdministrativeExpenses => {
            "The costs of distribution or administrative activities; costs of general management and \
             administration of the entity as a whole."
        }
        SellingExpenses => "Costs incurred to secure customer orders and to deliver the goods and services to customers.",
        Depreciation => "The systematic allocation of the depreciable amount of an asset over its useful life.",
        FinancialExpenses => "Financing costs incurred by an enterprise to raise funds needed for production and operation.",
        TotalExpenses => "The total amount of expenses incurred by an entity during a reporting period.",
        InterestIncome => "Income earned by an entity from financial assets.",
        ProfitBeforeTax => {
            "Profit or loss for a period before deducting tax expense. It represents the company's earnings from \
             all activities—operating and non-operating—before the effects of tax expenses."
        }
        TaxExpense => "Total amount of taxes an entity is expected to pay or recover during a reporting period.",
        NetProfit => {
            "The amount of profit an entity retains after all expenses, including operating costs, interest, \
             taxes, depreciation, and amortization, have been deducted from total revenue."
        }
    }
}

pub fn cash_flow(line: CfLine) -> Option<&'static str> {
    use CfLine::*;
    Some(match line {
        NetProfit => income_statement(IsLine::NetProfit),
        Depreciation => income_statement(IsLine::Depreciation),
        DeltaAccountsReceivable => {
            "The reduction in the amounts owed to the entity for goods or services sold or provided on credit \
             during the period."
        }
        DeltaInterestReceivable => "The reduction in the amount of interest accrued but not yet received during the period.",
        DeltaInventory => {
            "The reduction in the amount of assets held for sale in the ordinary course of business, in \
             production for such sale, or in the process of being manufactured during the period."
        }
        DeltaAccountsPayable => {
            "The addition in the amount owed by the entity for goods or services received or purchased on credit \
             during the period."
        }
        DeltaTaxPayable => "The addition in the amount of taxes accrued but not yet paid during the period.",
        NetOperatingCashFlow => {
            "The total cash generated or used by a company's core business operations after accounting for all \
             cash inflows and outflows within a specific period."
        }
        PurchaseOfFixedAssets => "The acquisition of property, plant and equipment.",
        NetInvestingCashFlow => {
            "The net amount of cash and cash equivalents generated from an entity's activities that are the \
             acquisition and disposal of long-term assets and other investments not included in cash \
             equivalents and the receipt of interest and dividends."
        }
        BeginningCashBalance => "The amount of cash and cash equivalents at the beginning of the period.",
        EndingCashBalance => "The amount of cash and cash equivalents at the end of the period.",
        NetIncrease => "The net addition in the amount of cash and cash equivalents during the period.",
        TotalDeltaCurrentAssets | TotalDeltaCurrentLiabilities => return None,
    })
}
