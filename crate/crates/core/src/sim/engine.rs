use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

use crate::date::CalendarDate;
use crate::money::{round_half_up, Money, Quantity, Rate, Rational};
use crate::profile::{Band, CompanyProfile};
use crate::seed::rng_for;

use super::config::{MoneyBand, TARGET_HORIZON_YEARS};
use super::journal::{Journal, OpeningBalances};
use super::types::{transaction_id, Method, Status, Transaction, TxType};
use super::{SimulationConfig, SimulationError};

pub const PREPARERS: [&str; 8] = [
    "Alice Chen",
    "Brian Okafor",
    "Carmen Diaz",
    "David Novak",
    "Elena Rossi",
    "Farid Haddad",
    "Grace Kim",
    "Hugo Martin",
];

pub const APPROVERS: [&str; 8] = [
    "Irene Walsh",
    "James Patel",
    "Katarina Horvat",
    "Liam O'Brien",
    "Maya Singh",
    "Noah Fischer",
    "Olivia Brandt",
    "Pavel Ivanov",
];

const EXPENSE_CYCLE: [TxType; 3] = [
    TxType::AdministrativeExpense,
    TxType::SellingExpense,
    TxType::FinancialExpense,
];

/// Conditions worth surfacing that did not stop the run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SimFlag {
    /// Cash fell below the threshold while the bank was empty.
    CashShortfall { date: CalendarDate, cash: Money },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SimReport {
    pub flags: Vec<SimFlag>,
    pub days_simulated: u32,
}

#[derive(Debug, Clone)]
struct Asset {
    cost: Money,
    depreciated: Money,
}

#[derive(Debug, Clone, Copy)]
enum Event {
    FixedAsset,
    Purchase,
    Sale,
    Expense,
}

/// Fields of a transaction before an id and sign-off names are attached.
struct Draft {
    date: CalendarDate,
    tx_type: TxType,
    quantity: Quantity,
    unit_price: Money,
    amount: Money,
    tax_amount: Money,
    cost_amount: Money,
    status: Status,
    payment_method: Method,
    receive_method: Method,
}

impl Draft {
    fn plain(date: CalendarDate, tx_type: TxType, amount: Money) -> Self {
        Draft {
            date,
            tx_type,
            quantity: Quantity::ZERO,
            unit_price: Money::ZERO,
            amount,
            tax_amount: Money::ZERO,
            cost_amount: Money::ZERO,
            status: Status::NotApplicable,
            payment_method: Method::NotApplicable,
            receive_method: Method::NotApplicable,
        }
    }
}

/// Mutable books of a company mid-simulation.
pub struct SimState {
    profile: CompanyProfile,
    config: SimulationConfig,
    rng: ChaCha8Rng,
    pub cash: Money,
    pub bank: Money,
    pub inventory_qty: Quantity,
    pub inventory_value: Money,
    pub accounts_receivable: Money,
    pub interest_receivable: Money,
    pub accounts_payable: Money,
    pub taxes_payable: Money,
    assets: Vec<Asset>,
    expense_cursor: usize,
    next_sequence: usize,
    pub flags: Vec<SimFlag>,
}

fn uniform(rng: &mut ChaCha8Rng, band: Band) -> f64 {
    let u: f64 = rng.random();
    if band.max <= band.min {
        band.min
    } else {
        band.min + (band.max - band.min) * u
    }
}

fn event_count(rng: &mut ChaCha8Rng, band: Band) -> u64 {
    let rate = uniform(rng, band);
    if rate <= 0.0 {
        return 0;
    }
    let poisson = Poisson::new(rate).expect("positive finite rate");
    poisson.sample(rng) as u64
}

fn log_uniform(rng: &mut ChaCha8Rng, band: MoneyBand) -> Money {
    let u: f64 = rng.random();
    if band.max <= band.min {
        return band.min;
    }
    let (lo, hi) = (libm::log(band.min.to_f64()), libm::log(band.max.to_f64()));
    let sampled = Money::from_f64_rounded(libm::exp(lo + (hi - lo) * u)).unwrap_or(band.max);
    sampled.clamp(band.min, band.max)
}

impl SimState {
    pub fn new(profile: &CompanyProfile, config: &SimulationConfig) -> Self {
        let mut assets = Vec::new();
        if profile.initial_fixed_assets.is_positive() {
            assets.push(Asset {
                cost: profile.initial_fixed_assets,
                depreciated: Money::ZERO,
            });
        }
        SimState {
            profile: profile.clone(),
            config: config.clone(),
            rng: rng_for(config.seed, "finsim"),
            cash: profile.initial_cash,
            bank: profile.initial_bank,
            inventory_qty: Quantity::ZERO,
            inventory_value: Money::ZERO,
            accounts_receivable: Money::ZERO,
            interest_receivable: Money::ZERO,
            accounts_payable: Money::ZERO,
            taxes_payable: Money::ZERO,
            assets,
            expense_cursor: 0,
            next_sequence: 1,
            flags: Vec::new(),
        }
    }

    fn finish(&mut self, draft: Draft) -> Transaction {
        let preparer = PREPARERS[self.rng.random_range(0..PREPARERS.len())];
        let approver = APPROVERS[self.rng.random_range(0..APPROVERS.len())];
        let id = transaction_id(self.next_sequence);
        self.next_sequence += 1;
        let profit = if draft.tx_type == TxType::Sale {
            draft.amount - draft.cost_amount
        } else {
            Money::ZERO
        };
        Transaction {
            id,
            date: draft.date,
            tx_type: draft.tx_type,
            quantity: draft.quantity,
            unit_price: draft.unit_price,
            amount: draft.amount,
            tax_amount: draft.tax_amount,
            total_amount: draft.amount + draft.tax_amount,
            cost_amount: draft.cost_amount,
            profit,
            payment_receipt_status: draft.status,
            payment_method: draft.payment_method,
            receive_method: draft.receive_method,
            preparer: preparer.to_string(),
            approver: approver.to_string(),
        }
    }

    /// Choose cash or bank with equal odds, falling back to the other source;
    /// `None` when neither can cover `amount`.
    fn pay_from(&mut self, amount: Money) -> Option<Method> {
        let prefer_cash = self.rng.random_bool(0.5);
        let order = if prefer_cash {
            [Method::Cash, Method::BankTransfer]
        } else {
            [Method::BankTransfer, Method::Cash]
        };
        let method = order.into_iter().find(|m| match m {
            Method::Cash => self.cash >= amount,
            _ => self.bank >= amount,
        })?;
        match method {
            Method::Cash => self.cash -= amount,
            _ => self.bank -= amount,
        }
        Some(method)
    }

    /// Depreciation of held assets and interest accrual on the bank balance.
    pub fn month_boundary(&mut self, date: CalendarDate) -> Vec<Transaction> {
        debug_assert!(date.is_first_of_month());
        let mut out = Vec::new();
        let months = Rational::from_integer(self.config.depreciation_months as i128);
        let mut charge = Money::ZERO;
        for asset in &mut self.assets {
            let remaining = asset.cost - asset.depreciated;
            if !remaining.is_positive() {
                continue;
            }
            let monthly = round_half_up(&(asset.cost.to_rational() / months.clone()))
                .expect("fraction of asset cost is representable");
            let step = monthly.min(remaining);
            asset.depreciated += step;
            charge += step;
        }
        if charge.is_positive() {
            let draft = Draft::plain(date, TxType::Depreciation, charge);
            out.push(self.finish(draft));
        }
        if self.bank.is_positive() {
            let interest = self
                .bank
                .mul_rational(self.config.monthly_interest_rate.as_rational())
                .expect("interest on a representable balance is representable");
            if interest.is_positive() {
                self.interest_receivable += interest;
                let mut draft = Draft::plain(date, TxType::InterestReceivable, interest);
                draft.status = Status::Outstanding;
                out.push(self.finish(draft));
            }
        }
        out
    }

    /// Draw and post the day's operating events in a shuffled order.
    pub fn step_day(&mut self, date: CalendarDate) -> Vec<Transaction> {
        let mut events = Vec::new();
        let counts = [
            (Event::FixedAsset, self.profile.fixed_asset_purchase_freq),
            (Event::Purchase, self.profile.purchase_freq),
            (Event::Sale, self.profile.sales_freq),
            (Event::Expense, self.profile.expense_freq),
        ];
        for (event, band) in counts {
            let n = event_count(&mut self.rng, band);
            events.extend(std::iter::repeat_n(event, n as usize));
        }
        events.shuffle(&mut self.rng);

        let mut out = Vec::new();
        for event in events {
            let draft = match event {
                Event::FixedAsset => self.fixed_asset_purchase(date),
                Event::Purchase => self.purchase(date),
                Event::Sale => self.sale(date),
                Event::Expense => self.expense(date),
            };
            if let Some(draft) = draft {
                out.push(self.finish(draft));
            }
        }
        out
    }

    fn fixed_asset_purchase(&mut self, date: CalendarDate) -> Option<Draft> {
        let cost = log_uniform(&mut self.rng, self.config.fixed_asset_band);
        let method = self.pay_from(cost)?;
        self.assets.push(Asset {
            cost,
            depreciated: Money::ZERO,
        });
        let mut draft = Draft::plain(date, TxType::FixedAssetPurchase, cost);
        draft.status = Status::Paid;
        draft.payment_method = method;
        Some(draft)
    }

    fn purchase(&mut self, date: CalendarDate) -> Option<Draft> {
        let quantity = self.profile.quantity_per_purchase;
        let unit_price = self.profile.purchase_unit_price;
        let amount = quantity.extend(unit_price).expect("purchase amount representable");
        let on_credit = self.rng.random_bool(self.profile.credit_purchase_ratio);
        let (method, status) = if on_credit {
            self.accounts_payable += amount;
            (Method::Credit, Status::Outstanding)
        } else {
            (self.pay_from(amount)?, Status::Paid)
        };
        self.inventory_qty = self.inventory_qty + quantity;
        self.inventory_value += amount;
        Some(Draft {
            date,
            tx_type: TxType::Purchase,
            quantity,
            unit_price,
            amount,
            tax_amount: Money::ZERO,
            cost_amount: Money::ZERO,
            status,
            payment_method: method,
            receive_method: Method::NotApplicable,
        })
    }

    fn sale(&mut self, date: CalendarDate) -> Option<Draft> {
        let margin = Rate::from_f64(uniform(&mut self.rng, self.profile.profit_margin));
        let on_credit = self.rng.random_bool(self.profile.credit_sales_ratio);
        let to_cash = self.rng.random_bool(0.5);
        let quantity = self.profile.quantity_per_sale.min(self.inventory_qty);
        if quantity.is_zero() {
            return None;
        }
        let markup = Rational::from_integer(1) + margin.as_rational();
        let unit_price = self
            .profile
            .purchase_unit_price
            .mul_rational(&markup)
            .expect("sale price representable");
        let amount = quantity.extend(unit_price).expect("sale amount representable");
        let cost = if quantity == self.inventory_qty {
            self.inventory_value
        } else {
            let share = quantity.to_rational() / self.inventory_qty.to_rational();
            self.inventory_value.mul_rational(&share).expect("cost representable")
        };
        let tax = amount
            .mul_rational(self.config.sales_tax_rate.as_rational())
            .expect("tax representable");
        self.inventory_qty = self.inventory_qty - quantity;
        self.inventory_value -= cost;
        self.taxes_payable += tax;
        let (method, status) = if on_credit {
            self.accounts_receivable += amount;
            (Method::Credit, Status::Outstanding)
        } else if to_cash {
            self.cash += amount;
            (Method::Cash, Status::Received)
        } else {
            self.bank += amount;
            (Method::BankTransfer, Status::Received)
        };
        Some(Draft {
            date,
            tx_type: TxType::Sale,
            quantity,
            unit_price,
            amount,
            tax_amount: tax,
            cost_amount: cost,
            status,
            payment_method: Method::NotApplicable,
            receive_method: method,
        })
    }

    fn expense(&mut self, date: CalendarDate) -> Option<Draft> {
        let amount = log_uniform(&mut self.rng, self.config.expense_band);
        let method = self.pay_from(amount)?;
        let tx_type = EXPENSE_CYCLE[self.expense_cursor % EXPENSE_CYCLE.len()];
        self.expense_cursor += 1;
        let mut draft = Draft::plain(date, tx_type, amount);
        draft.status = Status::Paid;
        draft.payment_method = method;
        Some(draft)
    }

    /// Top cash up from the bank when it falls below the threshold; sweep
    /// anything above the ceiling into the bank.
    pub fn cash_management(&mut self, date: CalendarDate) -> Vec<Transaction> {
        let mut out = Vec::new();
        if self.cash < self.config.cash_threshold {
            let amount = self.config.cash_topup.min(self.bank);
            if amount.is_positive() {
                self.bank -= amount;
                self.cash += amount;
                let mut draft = Draft::plain(date, TxType::BankToCashTransfer, amount);
                draft.payment_method = Method::BankTransfer;
                draft.receive_method = Method::Cash;
                out.push(self.finish(draft));
            } else {
                self.flags.push(SimFlag::CashShortfall { date, cash: self.cash });
            }
        } else if let Some(ceiling) = self.config.cash_ceiling {
            if self.cash > ceiling {
                let amount = self.cash - ceiling;
                self.cash -= amount;
                self.bank += amount;
                let mut draft = Draft::plain(date, TxType::CashToBankTransfer, amount);
                draft.payment_method = Method::Cash;
                draft.receive_method = Method::BankTransfer;
                out.push(self.finish(draft));
            }
        }
        out
    }

    /// Everything that happens on one calendar day, in posting order.
    pub fn advance_day(&mut self, date: CalendarDate) -> Vec<Transaction> {
        let mut out = Vec::new();
        if date.is_first_of_month() {
            out.extend(self.month_boundary(date));
        }
        out.extend(self.step_day(date));
        out.extend(self.cash_management(date));
        out
    }
}

pub fn simulate(profile: &CompanyProfile, config: &SimulationConfig) -> Result<Journal, SimulationError> {
    simulate_with_report(profile, config).map(|(journal, _)| journal)
}

pub fn simulate_with_report(
    profile: &CompanyProfile,
    config: &SimulationConfig,
) -> Result<(Journal, SimReport), SimulationError> {
    profile.validate().map_err(SimulationError::InvalidProfile)?;
    config.validate()?;
    let mut state = SimState::new(profile, config);
    let mut transactions = Vec::new();
    let mut report = SimReport::default();
    let last_day = match config.target_transactions {
        Some(_) => config.start_date.add_years(TARGET_HORIZON_YEARS)?,
        None => config.end_date,
    };
    let mut date = config.start_date;
    while date <= last_day {
        transactions.extend(state.advance_day(date));
        report.days_simulated += 1;
        if let Some(target) = config.target_transactions {
            if transactions.len() >= target {
                transactions.truncate(target);
                break;
            }
        }
        date = date.succ()?;
    }
    if let Some(target) = config.target_transactions {
        if transactions.len() < target {
            return Err(SimulationError::TargetUnreachable {
                target,
                emitted: transactions.len(),
                until: last_day,
            });
        }
    }
    report.flags = std::mem::take(&mut state.flags);
    let journal = Journal {
        profile: profile.clone(),
        config: config.clone(),
        opening: OpeningBalances::from_profile(profile),
        transactions,
    };
    Ok((journal, report))
}
