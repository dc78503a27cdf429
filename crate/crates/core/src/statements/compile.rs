use thiserror::Error;

use crate::money::{Money, Quantity};
use crate::sim::{Journal, Method, OpeningBalances, Transaction, TxType};

use super::{BalanceSheet, CashFlowStatement, IncomeStatement, LinePair, StatementSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("transaction {id} drives {account} negative")]
    NegativeBalance { id: String, account: &'static str },
    #[error("transaction {id} cannot be posted: {reason}")]
    Unpostable { id: String, reason: String },
}

/// Running account balances and period totals accumulated by replay.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ledger {
    pub cash: Money,
    pub bank: Money,
    pub interest_receivable: Money,
    pub accounts_receivable: Money,
    pub inventory_qty: Quantity,
    pub inventory: Money,
    pub fixed_assets: Money,
    pub accumulated_depreciation: Money,
    pub accounts_payable: Money,
    pub taxes_payable: Money,

    pub revenue: Money,
    pub cogs: Money,
    pub administrative: Money,
    pub selling: Money,
    pub financial: Money,
    pub depreciation: Money,
    pub interest_income: Money,
    pub tax_expense: Money,
    pub fixed_asset_purchases: Money,
}

impl Ledger {
    pub fn opening(opening: &OpeningBalances) -> Self {
        Ledger {
            cash: opening.cash,
            bank: opening.bank,
            fixed_assets: opening.fixed_assets,
            ..Default::default()
        }
    }

    fn pay(&mut self, tx: &Transaction) -> Result<(), CompileError> {
        match tx.payment_method {
            Method::Cash => self.cash -= tx.amount,
            Method::BankTransfer => self.bank -= tx.amount,
            Method::Credit if tx.tx_type == TxType::Purchase => self.accounts_payable += tx.amount,
            other => {
                return Err(CompileError::Unpostable {
                    id: tx.id.clone(),
                    reason: format!("{} paid by {other}", tx.tx_type),
                })
            }
        }
        Ok(())
    }

    /// Post one transaction, rejecting it if any asset account goes negative.
    pub fn post(&mut self, tx: &Transaction) -> Result<(), CompileError> {
        match tx.tx_type {
            TxType::Sale => {
                match tx.receive_method {
                    Method::Cash => self.cash += tx.amount,
                    Method::BankTransfer => self.bank += tx.amount,
                    Method::Credit => self.accounts_receivable += tx.amount,
                    Method::NotApplicable => {
                        return Err(CompileError::Unpostable {
                            id: tx.id.clone(),
                            reason: "sale without a receive method".into(),
                        })
                    }
                }
                self.inventory_qty = self.inventory_qty - tx.quantity;
                self.inventory -= tx.cost_amount;
                self.taxes_payable += tx.tax_amount;
                self.revenue += tx.amount;
                self.cogs += tx.cost_amount;
                self.tax_expense += tx.tax_amount;
            }
            TxType::Purchase => {
                self.pay(tx)?;
                self.inventory_qty = self.inventory_qty + tx.quantity;
                self.inventory += tx.amount;
            }
            TxType::FixedAssetPurchase => {
                self.pay(tx)?;
                self.fixed_assets += tx.amount;
                self.fixed_asset_purchases += tx.amount;
            }
            TxType::Depreciation => {
                self.accumulated_depreciation += tx.amount;
                self.depreciation += tx.amount;
            }
            TxType::AdministrativeExpense => {
                self.pay(tx)?;
                self.administrative += tx.amount;
            }
            TxType::SellingExpense => {
                self.pay(tx)?;
                self.selling += tx.amount;
            }
            TxType::FinancialExpense => {
                self.pay(tx)?;
                self.financial += tx.amount;
            }
            TxType::InterestReceivable => {
                self.interest_receivable += tx.amount;
                self.interest_income += tx.amount;
            }
            TxType::BankToCashTransfer => {
                self.bank -= tx.amount;
                self.cash += tx.amount;
            }
            TxType::CashToBankTransfer => {
                self.cash -= tx.amount;
                self.bank += tx.amount;
            }
        }
        let negative = [
            ("cash", self.cash.is_negative()),
            ("bank", self.bank.is_negative()),
            ("inventory quantity", self.inventory_qty.hundredths() < 0),
            ("inventory", self.inventory.is_negative()),
        ];
        if let Some((account, _)) = negative.into_iter().find(|(_, neg)| *neg) {
            return Err(CompileError::NegativeBalance { id: tx.id.clone(), account });
        }
        Ok(())
    }
}

/// Replay the journal from its opening balances.
pub fn replay(journal: &Journal) -> Result<Ledger, CompileError> {
    let mut ledger = Ledger::opening(&journal.opening);
    for tx in &journal.transactions {
        ledger.post(tx)?;
    }
    Ok(ledger)
}

pub fn compile(journal: &Journal) -> Result<StatementSet, CompileError> {
    let ledger = replay(journal)?;
    let opening = &journal.opening;

    let is = {
        let total_revenue = ledger.revenue;
        let total_cost = ledger.cogs;
        let gross_profit = total_revenue - total_cost;
        let total_expenses = ledger.administrative + ledger.selling + ledger.depreciation + ledger.financial;
        let profit_before_tax = gross_profit - total_expenses + ledger.interest_income;
        IncomeStatement {
            main_business_revenue: ledger.revenue,
            total_revenue,
            cost_of_goods_sold: ledger.cogs,
            total_cost,
            gross_profit,
            administrative_expenses: ledger.administrative,
            selling_expenses: ledger.selling,
            depreciation: ledger.depreciation,
            financial_expenses: ledger.financial,
            total_expenses,
            interest_income: ledger.interest_income,
            profit_before_tax,
            tax_expense: ledger.tax_expense,
            net_profit: profit_before_tax - ledger.tax_expense,
        }
    };

    let pair = LinePair::new;
    let zero = Money::ZERO;
    let bs = {
        let tca0 = opening.cash + opening.bank;
        let tca1 = ledger.cash + ledger.bank + ledger.interest_receivable + ledger.accounts_receivable + ledger.inventory;
        let net_fa0 = opening.fixed_assets;
        let net_fa1 = ledger.fixed_assets - ledger.accumulated_depreciation;
        let tcl1 = ledger.accounts_payable + ledger.taxes_payable;
        let equity0 = opening.paid_in_capital;
        let equity1 = opening.paid_in_capital + is.net_profit;
        BalanceSheet {
            cash_on_hand: pair(opening.cash, ledger.cash),
            bank_deposits: pair(opening.bank, ledger.bank),
            interest_receivable: pair(zero, ledger.interest_receivable),
            accounts_receivable: pair(zero, ledger.accounts_receivable),
            inventory: pair(zero, ledger.inventory),
            total_current_assets: pair(tca0, tca1),
            fixed_assets: pair(opening.fixed_assets, ledger.fixed_assets),
            accumulated_depreciation: pair(zero, -ledger.accumulated_depreciation),
            net_fixed_assets: pair(net_fa0, net_fa1),
            total_non_current_assets: pair(net_fa0, net_fa1),
            total_assets: pair(tca0 + net_fa0, tca1 + net_fa1),
            accounts_payable: pair(zero, ledger.accounts_payable),
            taxes_payable: pair(zero, ledger.taxes_payable),
            total_current_liabilities: pair(zero, tcl1),
            total_liabilities: pair(zero, tcl1),
            paid_in_capital: pair(opening.paid_in_capital, opening.paid_in_capital),
            retained_earnings: pair(zero, is.net_profit),
            total_owners_equity: pair(equity0, equity1),
            total_liabilities_and_equity: pair(equity0, tcl1 + equity1),
        }
    };

    let cfs = {
        let d_ar = bs.accounts_receivable.initial - bs.accounts_receivable.end;
        let d_ir = bs.interest_receivable.initial - bs.interest_receivable.end;
        let d_inv = bs.inventory.initial - bs.inventory.end;
        let d_ap = bs.accounts_payable.change();
        let d_tp = bs.taxes_payable.change();
        let total_ca = d_ar + d_ir + d_inv;
        let total_cl = d_ap + d_tp;
        let operating = is.net_profit + is.depreciation + total_ca + total_cl;
        let investing = -ledger.fixed_asset_purchases;
        let beginning = opening.cash + opening.bank;
        let net_increase = operating + investing;
        CashFlowStatement {
            net_profit: is.net_profit,
            depreciation: is.depreciation,
            delta_accounts_receivable: d_ar,
            delta_interest_receivable: d_ir,
            delta_inventory: d_inv,
            total_delta_current_assets: total_ca,
            delta_accounts_payable: d_ap,
            delta_tax_payable: d_tp,
            total_delta_current_liabilities: total_cl,
            net_operating_cash_flow: operating,
            purchase_of_fixed_assets: ledger.fixed_asset_purchases,
            net_investing_cash_flow: investing,
            beginning_cash_balance: beginning,
            ending_cash_balance: beginning + net_increase,
            net_increase,
        }
    };

    Ok(StatementSet {
        balance_sheet: bs,
        income_statement: is,
        cash_flow_statement: cfs,
        provenance: journal.digest(),
    })
}
