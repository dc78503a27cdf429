//! Fixtures shared by the integration tests: the example statements as
//! printed, and an independent evaluator for the indicator formula strings.
#![allow(dead_code)]

use std::collections::HashMap;

use finbench_core::money::{Money, Rational};
use finbench_core::sim::{Journal, Method, Transaction, TxType};
use finbench_core::statements::{LinePair, StatementSet};
use num_traits::Zero;

pub fn m(s: &str) -> Money {
    s.parse().unwrap()
}

pub fn p(initial: &str, end: &str) -> LinePair {
    LinePair::new(m(initial), m(end))
}

/// The example statements as printed, parentheses turned into signs.
pub fn reference_statements() -> StatementSet {
    let mut set = StatementSet::default();
    let bs = &mut set.balance_sheet;
    bs.cash_on_hand = p("3000000", "270005.90");
    bs.bank_deposits = p("5000000", "164645.57");
    bs.interest_receivable = p("0", "2672.87");
    bs.accounts_receivable = p("0", "2429482.13");
    bs.inventory = p("0", "5090000");
    bs.total_current_assets = p("8000000", "7956806.47");
    bs.fixed_assets = p("5000000", "5305354.43");
    bs.accumulated_depreciation = p("0", "-45751.41");
    bs.net_fixed_assets = p("5000000", "5259603.02");
    bs.total_non_current_assets = p("5000000", "5259603.02");
    bs.total_assets = p("13000000", "13216409.49");
    bs.accounts_payable = p("0", "1590000");
    bs.taxes_payable = p("0", "271550.92");
    bs.total_current_liabilities = p("0", "1861550.92");
    bs.total_liabilities = p("0", "1861550.92");
    bs.paid_in_capital = p("13000000", "13000000");
    bs.retained_earnings = p("0", "-1645141.46");
    bs.total_owners_equity = p("13000000", "11354859");
    bs.total_liabilities_and_equity = p("13000000", "13216409");

    let is = &mut set.income_statement;
    is.main_business_revenue = m("5431018.59");
    is.total_revenue = m("5431018.59");
    is.cost_of_goods_sold = m("4410000");
    is.total_cost = m("4410000");
    is.gross_profit = m("1021018.59");
    is.administrative_expenses = m("1425164.20");
    is.selling_expenses = m("493854.67");
    is.depreciation = m("45751.41");
    is.financial_expenses = m("432511.69");
    is.total_expenses = m("2397281.97");
    is.interest_income = m("2672.87");
    is.profit_before_tax = m("-1373590.51");
    is.tax_expense = m("271550.92");
    is.net_profit = m("-1645141.43");

    let cf = &mut set.cash_flow_statement;
    cf.net_profit = m("-1645141.43");
    cf.depreciation = m("45751.41");
    cf.delta_accounts_receivable = m("-2429482.13");
    cf.delta_interest_receivable = m("-2672.87");
    cf.delta_inventory = m("-5090000");
    cf.total_delta_current_assets = m("-7522155");
    cf.delta_accounts_payable = m("1590000");
    cf.delta_tax_payable = m("271550.92");
    cf.total_delta_current_liabilities = m("1861550.92");
    cf.net_operating_cash_flow = m("-7259994.10");
    cf.purchase_of_fixed_assets = m("305354.43");
    cf.net_investing_cash_flow = m("-305354.43");
    cf.beginning_cash_balance = m("8000000");
    cf.ending_cash_balance = m("434651.47");
    cf.net_increase = m("-7565348.53");
    set
}

// --- formula-string oracle ---------------------------------------------------

fn variables(set: &StatementSet) -> HashMap<&'static str, Rational> {
    let (bs, is, cf) = (&set.balance_sheet, &set.income_statement, &set.cash_flow_statement);
    let r = |m: Money| m.to_rational();
    HashMap::from([
        ("Net Cash Flow from Operating Activities", r(cf.net_operating_cash_flow)),
        ("Purchase of Fixed Assets", r(cf.purchase_of_fixed_assets)),
        ("Ending Cash and Cash Equivalents Balance", r(cf.ending_cash_balance)),
        ("Net Profit", r(is.net_profit)),
        ("Revenue", r(is.total_revenue)),
        ("COGS", r(is.cost_of_goods_sold)),
        ("Current Liabilities", r(bs.total_current_liabilities.end)),
        ("Ending Current Liabilities", r(bs.total_current_liabilities.end)),
        ("Current Assets", r(bs.total_current_assets.end)),
        ("Beginning Current Assets", r(bs.total_current_assets.initial)),
        ("Ending Current Assets", r(bs.total_current_assets.end)),
        ("Inventory", r(bs.inventory.end)),
        ("Beginning Inventory", r(bs.inventory.initial)),
        ("Ending Inventory", r(bs.inventory.end)),
        ("Beginning Accounts Receivable", r(bs.accounts_receivable.initial)),
        ("Ending Accounts Receivable", r(bs.accounts_receivable.end)),
        ("Total Assets", r(bs.total_assets.end)),
        ("Beginning Total Assets", r(bs.total_assets.initial)),
        ("Ending Total Assets", r(bs.total_assets.end)),
        ("Total Liabilities", r(bs.total_liabilities.end)),
        ("Owner's Equity", r(bs.total_owners_equity.end)),
        ("Beginning Owner's Equity", r(bs.total_owners_equity.initial)),
        ("Ending Owner's Equity", r(bs.total_owners_equity.end)),
    ])
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Name(String),
    Op(char),
}

fn lex(src: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut Vec<Tok>| {
        let w = word.trim();
        if !w.is_empty() {
            out.push(match w.parse::<i128>() {
                Ok(n) => Tok::Num(Rational::from_integer(n)),
                Err(_) => Tok::Name(w.to_string()),
            });
        }
        word.clear();
    };
    for c in src.chars() {
        if "+-*/()".contains(c) {
            flush(&mut word, &mut out);
            out.push(Tok::Op(c));
        } else {
            word.push(c);
        }
    }
    flush(&mut word, &mut out);
    out
}

struct Eval<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a HashMap<&'static str, Rational>,
}

impl Eval<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Option<Rational> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Some(acc)
    }

    fn term(&mut self) -> Option<Rational> {
        let mut acc = self.atom()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.atom()?;
            if op == '/' && rhs.is_zero() {
                return None;
            }
            acc = if op == '*' { acc * rhs } else { acc / rhs };
        }
        Some(acc)
    }

    fn atom(&mut self) -> Option<Rational> {
        let tok = self.peek().cloned().expect("unexpected end of formula");
        self.pos += 1;
        match tok {
            Tok::Num(n) => Some(n),
            Tok::Name(name) => Some(self.vars.get(name.as_str()).unwrap_or_else(|| panic!("unknown {name}")).clone()),
            Tok::Op('(') => {
                let v = self.expr();
                assert_eq!(self.peek(), Some(&Tok::Op(')')));
                self.pos += 1;
                v
            }
            Tok::Op(c) => panic!("unexpected {c}"),
        }
    }
}

pub fn evaluate(formula: &str, set: &StatementSet) -> Option<Rational> {
    let vars = variables(set);
    let mut e = Eval {
        toks: lex(formula),
        pos: 0,
        vars: &vars,
    };
    let v = e.expr();
    assert_eq!(e.pos, e.toks.len(), "trailing tokens in {formula}");
    v
}


/// Statements rebuilt from the journal by summing each account's lines
/// directly: no running ledger, and cash flow by the direct method.
pub fn resum(journal: &Journal) -> StatementSet {
    let txs = &journal.transactions;
    let open = &journal.opening;
    let sum = |f: &dyn Fn(&Transaction) -> Option<Money>| -> Money { txs.iter().filter_map(f).sum() };
    let of = |ty: TxType| sum(&|t| (t.tx_type == ty).then_some(t.amount));
    let sales = |f: &dyn Fn(&Transaction) -> Money| sum(&|t| (t.tx_type == TxType::Sale).then(|| f(t)));

    // signed movement of a money account: receipts in, payments out, transfers both ways
    let movement = |account: Method| {
        sum(&|t| match t.tx_type {
            TxType::Sale => (t.receive_method == account).then_some(t.amount),
            TxType::Depreciation | TxType::InterestReceivable => None,
            TxType::BankToCashTransfer => Some(if account == Method::Cash { t.amount } else { -t.amount }),
            TxType::CashToBankTransfer => Some(if account == Method::Cash { -t.amount } else { t.amount }),
            _ => (t.payment_method == account).then_some(-t.amount),
        })
    };

    let revenue = of(TxType::Sale);
    let cogs = sales(&|t| t.cost_amount);
    let tax = sales(&|t| t.tax_amount);
    let admin = of(TxType::AdministrativeExpense);
    let selling = of(TxType::SellingExpense);
    let financial = of(TxType::FinancialExpense);
    let depreciation = of(TxType::Depreciation);
    let interest = of(TxType::InterestReceivable);
    let fa_purchases = of(TxType::FixedAssetPurchase);

    let cash = open.cash + movement(Method::Cash);
    let bank = open.bank + movement(Method::BankTransfer);
    let receivable = sales(&|t| if t.receive_method == Method::Credit { t.amount } else { Money::ZERO });
    let payable = sum(&|t| (t.tx_type == TxType::Purchase && t.payment_method == Method::Credit).then_some(t.amount));
    let inventory = of(TxType::Purchase) - cogs;

    let mut set = StatementSet::default();
    let is = &mut set.income_statement;
    is.main_business_revenue = revenue;
    is.total_revenue = revenue;
    is.cost_of_goods_sold = cogs;
    is.total_cost = cogs;
    is.gross_profit = revenue - cogs;
    is.administrative_expenses = admin;
    is.selling_expenses = selling;
    is.depreciation = depreciation;
    is.financial_expenses = financial;
    is.total_expenses = admin + selling + depreciation + financial;
    is.interest_income = interest;
    is.profit_before_tax = revenue - cogs - admin - selling - depreciation - financial + interest;
    is.tax_expense = tax;
    is.net_profit = is.profit_before_tax - tax;
    let net_profit = is.net_profit;

    let z = Money::ZERO;
    let current0 = open.cash + open.bank;
    let current1 = cash + bank + interest + receivable + inventory;
    let fixed1 = open.fixed_assets + fa_purchases - depreciation;
    let bs = &mut set.balance_sheet;
    bs.cash_on_hand = LinePair::new(open.cash, cash);
    bs.bank_deposits = LinePair::new(open.bank, bank);
    bs.interest_receivable = LinePair::new(z, interest);
    bs.accounts_receivable = LinePair::new(z, receivable);
    bs.inventory = LinePair::new(z, inventory);
    bs.total_current_assets = LinePair::new(current0, current1);
    bs.fixed_assets = LinePair::new(open.fixed_assets, open.fixed_assets + fa_purchases);
    bs.accumulated_depreciation = LinePair::new(z, -depreciation);
    bs.net_fixed_assets = LinePair::new(open.fixed_assets, fixed1);
    bs.total_non_current_assets = LinePair::new(open.fixed_assets, fixed1);
    bs.total_assets = LinePair::new(current0 + open.fixed_assets, current1 + fixed1);
    bs.accounts_payable = LinePair::new(z, payable);
    bs.taxes_payable = LinePair::new(z, tax);
    bs.total_current_liabilities = LinePair::new(z, payable + tax);
    bs.total_liabilities = LinePair::new(z, payable + tax);
    bs.paid_in_capital = LinePair::new(open.paid_in_capital, open.paid_in_capital);
    bs.retained_earnings = LinePair::new(z, net_profit);
    bs.total_owners_equity = LinePair::new(open.paid_in_capital, open.paid_in_capital + net_profit);
    bs.total_liabilities_and_equity = LinePair::new(open.paid_in_capital, payable + tax + open.paid_in_capital + net_profit);

    // operating cash: every money movement except asset purchases and internal transfers
    let operating = sum(&|t| match t.tx_type {
        TxType::Sale => (t.receive_method != Method::Credit).then_some(t.amount),
        TxType::Purchase | TxType::AdministrativeExpense | TxType::SellingExpense | TxType::FinancialExpense => {
            (t.payment_method != Method::Credit).then_some(-t.amount)
        }
        _ => None,
    });
    let cf = &mut set.cash_flow_statement;
    cf.net_profit = net_profit;
    cf.depreciation = depreciation;
    cf.delta_accounts_receivable = -receivable;
    cf.delta_interest_receivable = -interest;
    cf.delta_inventory = -inventory;
    cf.total_delta_current_assets = -(receivable + interest + inventory);
    cf.delta_accounts_payable = payable;
    cf.delta_tax_payable = tax;
    cf.total_delta_current_liabilities = payable + tax;
    cf.net_operating_cash_flow = operating;
    cf.purchase_of_fixed_assets = fa_purchases;
    cf.net_investing_cash_flow = -fa_purchases;
    cf.beginning_cash_balance = current0;
    cf.net_increase = operating - fa_purchases;
    cf.ending_cash_balance = cash + bank;
    set
}
