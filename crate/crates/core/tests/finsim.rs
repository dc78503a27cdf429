use std::collections::BTreeMap;

use finbench_core::date::CalendarDate;
use finbench_core::money::{round_half_up, Money, Quantity};
use finbench_core::profile::{builtin_profile, Band, CompanyKind, CompanyProfile};
use finbench_core::sim::{
    simulate, simulate_with_report, Method, SimState, SimulationConfig, SimulationError, Status, TxType,
};
use proptest::prelude::*;

fn date(s: &str) -> CalendarDate {
    s.parse().unwrap()
}

fn profile(kind: CompanyKind) -> CompanyProfile {
    builtin_profile(kind).unwrap()
}

fn quiet(mut p: CompanyProfile) -> CompanyProfile {
    let zero = Band::new(0.0, 0.0);
    p.fixed_asset_purchase_freq = zero;
    p.purchase_freq = zero;
    p.sales_freq = zero;
    p.expense_freq = zero;
    p
}

#[test]
fn single_quiet_day_yields_no_transactions() {
    let p = quiet(profile(CompanyKind::TypeII));
    let config = SimulationConfig {
        start_date: date("2024-01-15"),
        end_date: date("2024-01-15"),
        ..SimulationConfig::with_seed(1)
    };
    let journal = simulate(&p, &config).unwrap();
    assert!(journal.transactions.is_empty());
    assert_eq!(journal.opening.cash, Money::from_units(3_000_000));
    assert_eq!(journal.opening.bank, Money::from_units(5_000_000));
    assert_eq!(journal.opening.fixed_assets, Money::from_units(5_000_000));
}

#[test]
fn target_is_met_exactly() {
    let journal = simulate(&profile(CompanyKind::TypeII), &SimulationConfig::with_target(42, 200)).unwrap();
    assert_eq!(journal.transactions.len(), 200);
    assert_eq!(journal.transactions[0].id, "T000001");
    assert_eq!(journal.transactions[199].id, "T000200");
}

#[test]
fn serialization_is_byte_identical_across_runs() {
    for kind in CompanyKind::BUILTIN {
        let config = SimulationConfig::with_target(7, 400);
        let a = simulate(&profile(kind), &config).unwrap().to_jsonl();
        let b = simulate(&profile(kind), &config).unwrap().to_jsonl();
        assert_eq!(a, b);
    }
}

#[test]
fn different_seeds_differ() {
    let p = profile(CompanyKind::TypeIII);
    let a = simulate(&p, &SimulationConfig::with_target(1, 100)).unwrap();
    let b = simulate(&p, &SimulationConfig::with_target(2, 100)).unwrap();
    assert_ne!(a.transactions, b.transactions);
}

#[test]
fn depreciation_falls_on_each_first_of_month() {
    for kind in CompanyKind::BUILTIN {
        let p = profile(kind);
        assert!(p.initial_fixed_assets.is_positive());
        let config = SimulationConfig {
            start_date: date("2024-01-01"),
            end_date: date("2024-03-31"),
            ..SimulationConfig::with_seed(11)
        };
        let journal = simulate(&p, &config).unwrap();

        // oracle: walk the calendar independently
        let mut expected = Vec::new();
        let mut d = config.start_date;
        while d <= config.end_date {
            if d.day() == 1 {
                expected.push(d);
            }
            d = d.succ().unwrap();
        }
        let got: Vec<_> = journal
            .transactions
            .iter()
            .filter(|t| t.tx_type == TxType::Depreciation)
            .map(|t| t.date)
            .collect();
        assert_eq!(got, expected, "{kind}");
    }
}

#[test]
fn depreciation_of_one_asset_is_cost_over_months() {
    let mut p = quiet(profile(CompanyKind::TypeII));
    p.initial_fixed_assets = Money::from_units(120_000);
    p.initial_bank = Money::ZERO;
    let config = SimulationConfig {
        cash_ceiling: None,
        ..SimulationConfig::with_seed(3)
    };
    let mut state = SimState::new(&p, &config);
    let txs = state.month_boundary(date("2024-02-01"));
    assert_eq!(txs.len(), 1);
    assert_eq!(txs[0].tx_type, TxType::Depreciation);
    assert_eq!(txs[0].amount, Money::from_units(1_000));
    assert_eq!(txs[0].quantity, Quantity::ZERO);
}

#[test]
fn month_boundary_without_assets_or_bank_is_silent() {
    let mut p = quiet(profile(CompanyKind::TypeII));
    p.initial_fixed_assets = Money::ZERO;
    p.initial_bank = Money::ZERO;
    let mut state = SimState::new(&p, &SimulationConfig::with_seed(3));
    assert!(state.month_boundary(date("2024-02-01")).is_empty());
}

#[test]
fn interest_accrues_on_bank_balance() {
    let mut p = quiet(profile(CompanyKind::TypeII));
    p.initial_fixed_assets = Money::ZERO;
    let mut state = SimState::new(&p, &SimulationConfig::with_seed(3));
    assert_eq!(state.bank, Money::from_units(5_000_000));
    let txs = state.month_boundary(date("2024-02-01"));
    assert_eq!(txs.len(), 1);
    assert_eq!(txs[0].tx_type, TxType::InterestReceivable);
    assert_eq!(txs[0].amount, Money::from_units(2_500));
    assert_eq!(txs[0].payment_receipt_status, Status::Outstanding);
}

fn cash_state(cash: i64, bank: i64) -> SimState {
    let p = quiet(profile(CompanyKind::TypeII));
    let config = SimulationConfig {
        cash_threshold: Money::from_units(50_000),
        cash_topup: Money::from_units(500_000),
        ..SimulationConfig::with_seed(5)
    };
    let mut state = SimState::new(&p, &config);
    state.cash = Money::from_units(cash);
    state.bank = Money::from_units(bank);
    state
}

#[test]
fn cash_at_threshold_is_left_alone() {
    let mut state = cash_state(50_000, 1_000_000);
    assert!(state.cash_management(date("2024-01-02")).is_empty());
}

#[test]
fn cash_below_threshold_is_topped_up() {
    let mut state = cash_state(10_000, 1_000_000);
    let txs = state.cash_management(date("2024-01-02"));
    assert_eq!(txs.len(), 1);
    assert_eq!(txs[0].tx_type, TxType::BankToCashTransfer);
    assert_eq!(txs[0].amount, Money::from_units(500_000));
    assert_eq!(state.cash, Money::from_units(510_000));
    assert_eq!(state.bank, Money::from_units(500_000));
}

#[test]
fn top_up_is_capped_by_bank_balance() {
    let mut state = cash_state(10_000, 100);
    let txs = state.cash_management(date("2024-01-02"));
    assert_eq!(txs.len(), 1);
    assert_eq!(txs[0].amount, Money::from_units(100));
    assert_eq!(state.bank, Money::ZERO);
}

#[test]
fn empty_bank_is_flagged_not_overdrawn() {
    let mut state = cash_state(10_000, 0);
    assert!(state.cash_management(date("2024-01-02")).is_empty());
    assert_eq!(state.flags.len(), 1);
    assert_eq!(state.bank, Money::ZERO);
}

#[test]
fn excess_cash_is_swept_to_bank() {
    let mut state = cash_state(12_000_000, 0);
    let txs = state.cash_management(date("2024-01-02"));
    assert_eq!(txs.len(), 1);
    assert_eq!(txs[0].tx_type, TxType::CashToBankTransfer);
    assert_eq!(txs[0].amount, Money::from_units(2_000_000));
}

#[test]
fn full_credit_sales_are_all_outstanding() {
    let mut p = profile(CompanyKind::TypeI);
    p.credit_sales_ratio = 1.0;
    let journal = simulate(&p, &SimulationConfig::with_target(9, 400)).unwrap();
    let sales: Vec<_> = journal.transactions.iter().filter(|t| t.tx_type == TxType::Sale).collect();
    assert!(!sales.is_empty());
    for s in sales {
        assert_eq!(s.receive_method, Method::Credit);
        assert_eq!(s.payment_receipt_status, Status::Outstanding);
    }
}

#[test]
fn sale_arithmetic_matches_direct_calculation() {
    let qty = Quantity::from_units(5);
    let amount = qty.extend(Money::from_units(100)).unwrap();
    let tax = round_half_up(&(amount.to_rational() * finbench_core::money::Rate::from_f64(0.05).as_rational()))
        .unwrap();
    assert_eq!(amount, Money::from_units(500));
    assert_eq!(tax, Money::from_units(25));
    assert_eq!(amount + tax, Money::from_units(525));
}

#[test]
fn unreachable_target_is_reported() {
    let p = quiet(profile(CompanyKind::TypeII));
    // only month-boundary entries; 30 years cannot hold a million of them
    let err = simulate(&p, &SimulationConfig::with_target(1, 1_000_000)).unwrap_err();
    assert!(matches!(err, SimulationError::TargetUnreachable { .. }), "{err}");
}

#[test]
fn invalid_config_is_rejected() {
    let config = SimulationConfig {
        depreciation_months: 0,
        ..SimulationConfig::with_seed(1)
    };
    assert!(matches!(
        simulate(&profile(CompanyKind::TypeI), &config),
        Err(SimulationError::InvalidConfig { .. })
    ));
}

#[test]
fn report_counts_days() {
    let config = SimulationConfig {
        start_date: date("2024-01-01"),
        end_date: date("2024-01-31"),
        ..SimulationConfig::with_seed(1)
    };
    let (_, report) = simulate_with_report(&profile(CompanyKind::TypeIV), &config).unwrap();
    assert_eq!(report.days_simulated, 31);
}

/// Independent prefix replay over cash, bank and inventory only.
fn assert_non_negative(journal: &finbench_core::sim::Journal) {
    let mut cash = journal.opening.cash;
    let mut bank = journal.opening.bank;
    let mut qty = Quantity::ZERO;
    let mut value = Money::ZERO;
    for t in &journal.transactions {
        let mut debit = |m: Method, a: Money| match m {
            Method::Cash => cash += a,
            Method::BankTransfer => bank += a,
            _ => {}
        };
        match t.tx_type {
            TxType::Sale => {
                debit(t.receive_method, t.amount);
                qty = qty - t.quantity;
                value -= t.cost_amount;
            }
            TxType::Purchase => {
                debit(t.payment_method, -t.amount);
                qty = qty + t.quantity;
                value += t.amount;
            }
            TxType::FixedAssetPurchase
            | TxType::AdministrativeExpense
            | TxType::SellingExpense
            | TxType::FinancialExpense => debit(t.payment_method, -t.amount),
            TxType::BankToCashTransfer => {
                bank -= t.amount;
                cash += t.amount;
            }
            TxType::CashToBankTransfer => {
                cash -= t.amount;
                bank += t.amount;
            }
            TxType::Depreciation | TxType::InterestReceivable => {}
        }
        assert!(!cash.is_negative(), "cash negative after {}", t.id);
        assert!(!bank.is_negative(), "bank negative after {}", t.id);
        assert!(qty >= Quantity::ZERO, "inventory quantity negative after {}", t.id);
        assert!(!value.is_negative(), "inventory value negative after {}", t.id);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generated_journals_are_well_formed(seed in any::<u64>(), k in 0usize..5, long in any::<bool>()) {
        let kind = CompanyKind::BUILTIN[k];
        let target = if long { 400 } else { 200 };
        let journal = simulate(&profile(kind), &SimulationConfig::with_target(seed, target)).unwrap();
        prop_assert_eq!(journal.transactions.len(), target);

        let mut ids = BTreeMap::new();
        let mut last = None;
        for t in &journal.transactions {
            prop_assert!(ids.insert(t.id.clone(), ()).is_none());
            if let Some((d, id)) = &last {
                prop_assert!((t.date, &t.id) > (*d, id));
            }
            last = Some((t.date, t.id.clone()));
            if t.tx_type.is_goods() {
                prop_assert_eq!(t.amount, t.quantity.extend(t.unit_price).unwrap());
            }
            prop_assert_eq!(t.total_amount, t.amount + t.tax_amount);
            if t.tx_type == TxType::Depreciation {
                prop_assert_eq!(t.date.day(), 1);
            }
        }
        assert_non_negative(&journal);
    }
}
