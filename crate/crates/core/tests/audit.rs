use finbench_core::audit::{
    inject, oracle_detect, parse_invoice, render_audit_corpus, render_invoice, AuditField, ErrorCategory, ErrorType,
    InjectionError, InjectionPlan,
};
use finbench_core::money::round_half_up;
use finbench_core::profile::{builtin_profile, CompanyKind};
use finbench_core::sim::{simulate, Journal, SimulationConfig, TxType};
use proptest::prelude::*;

fn journal(seed: u64, kind: usize, n: usize) -> Journal {
    let profile = builtin_profile(CompanyKind::BUILTIN[kind]).unwrap();
    simulate(&profile, &SimulationConfig::with_target(seed, n)).unwrap()
}

#[test]
fn empty_plan_is_a_no_op() {
    let j = journal(1, 1, 200);
    let (out, manifest) = inject(&j, &InjectionPlan::new(9)).unwrap();
    assert_eq!(out, j);
    assert!(manifest.is_empty());
}

#[test]
fn quantity_error_breaks_the_row_arithmetic() {
    let j = journal(2, 1, 200);
    let (out, manifest) = inject(&j, &InjectionPlan::new(4).with(ErrorType::QuantityRecord, 1)).unwrap();
    assert_eq!(manifest.len(), 1);
    let entry = &manifest.entries[0];
    assert_eq!(entry.field, AuditField::Quantity);
    let before = j.get(&entry.transaction_id).unwrap();
    let after = out.get(&entry.transaction_id).unwrap();
    assert_ne!(after.quantity, before.quantity);
    assert_eq!(after.amount, before.quantity.extend(after.unit_price).unwrap());
    assert_ne!(after.amount, after.quantity.extend(after.unit_price).unwrap());
    let changed = j.transactions.iter().zip(&out.transactions).filter(|(a, b)| a != b).count();
    assert_eq!(changed, 1);
}

#[test]
fn five_variants_land_on_five_transactions() {
    let j = journal(3, 2, 400);
    let plan = InjectionPlan::new(5)
        .with(ErrorType::TypeRecord, 1)
        .with(ErrorType::DateRecord, 1)
        .with(ErrorType::UnitPriceRecord, 1)
        .with(ErrorType::TaxAmountCalc, 1)
        .with(ErrorType::MissingApprover, 1);
    let (_, manifest) = inject(&j, &plan).unwrap();
    assert_eq!(manifest.len(), 5);
    let mut ids: Vec<_> = manifest.entries.iter().map(|e| e.transaction_id.clone()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 5);
}

#[test]
fn colocated_errors_share_one_transaction() {
    let j = journal(4, 0, 400);
    let plan = InjectionPlan::new(6)
        .with(ErrorType::TaxAmountCalc, 1)
        .with(ErrorType::UnitPriceRecord, 1)
        .with(ErrorType::AmountCalc, 1)
        .with(ErrorType::DateRecord, 1)
        .colocated();
    let (out, manifest) = inject(&j, &plan).unwrap();
    assert_eq!(manifest.len(), 4);
    let id = &manifest.entries[0].transaction_id;
    assert!(manifest.entries.iter().all(|e| &e.transaction_id == id));
    let fields: Vec<_> = manifest.entries.iter().map(|e| e.field).collect();
    assert_eq!(
        fields,
        [AuditField::Date, AuditField::UnitPrice, AuditField::Amount, AuditField::TaxAmount]
    );
    assert_eq!(oracle_detect(&out, &j).unwrap(), manifest);
}

#[test]
fn infeasible_plan_reports_shortfall() {
    let j = journal(5, 1, 200);
    let sales = j.transactions.iter().filter(|t| t.tx_type == TxType::Sale).count();
    let err = inject(&j, &InjectionPlan::new(1).with(ErrorType::ProfitCalc, sales + 3)).unwrap_err();
    assert_eq!(err.shortfall(), Some(3));
    assert!(matches!(err, InjectionError::Infeasible { error: Some(ErrorType::ProfitCalc), .. }));
    assert!(err.to_string().contains("PROFIT"));
}

#[test]
fn bad_plans_are_rejected() {
    let j = journal(5, 1, 50);
    assert_eq!(
        inject(&j, &InjectionPlan::new(1).with(ErrorType::DateRecord, 0)).unwrap_err(),
        InjectionError::ZeroCount(ErrorType::DateRecord)
    );
    let dup = InjectionPlan::new(1).with(ErrorType::DateRecord, 1).with(ErrorType::DateRecord, 2);
    assert_eq!(inject(&j, &dup).unwrap_err(), InjectionError::Duplicate(ErrorType::DateRecord));
    let uneven = InjectionPlan::new(1)
        .with(ErrorType::DateRecord, 1)
        .with(ErrorType::TypeRecord, 2)
        .colocated();
    assert_eq!(inject(&j, &uneven).unwrap_err(), InjectionError::UnevenColocation);
}

#[test]
fn scope_restricts_targets() {
    let j = journal(6, 3, 400);
    let mut plan = InjectionPlan::new(2).with(ErrorType::DateRecord, 3);
    plan.scope = Some(vec![TxType::Depreciation]);
    let (_, manifest) = inject(&j, &plan).unwrap();
    for e in &manifest.entries {
        assert_eq!(j.get(&e.transaction_id).unwrap().tx_type, TxType::Depreciation);
    }
}

#[test]
fn identical_journals_have_no_diff() {
    let j = journal(7, 4, 200);
    assert!(oracle_detect(&j, &j).unwrap().is_empty());
}

#[test]
fn manual_edit_adds_one_entry() {
    let j = journal(8, 2, 200);
    let (mut out, manifest) = inject(&j, &InjectionPlan::new(3).with(ErrorType::MissingPreparer, 2)).unwrap();
    let untouched = out
        .transactions
        .iter()
        .position(|t| !manifest.entries.iter().any(|e| e.transaction_id == t.id))
        .unwrap();
    out.transactions[untouched].approver = "Somebody Else".into();
    let found = oracle_detect(&out, &j).unwrap();
    assert_eq!(found.len(), manifest.len() + 1);
    assert!(manifest.entries.iter().all(|e| found.entries.contains(e)));
}

#[test]
fn corpus_pairs_invoice_with_record() {
    let j = journal(9, 1, 20);
    let (out, _) = inject(&j, &InjectionPlan::new(3).with(ErrorType::DateRecord, 1)).unwrap();
    let corpus = render_audit_corpus(&j, &out);
    assert_eq!(corpus.matches("Invoice: ").count(), 20);
    assert_eq!(corpus.matches("Record: ").count(), 20);
}

#[test]
fn sale_invoice_wording() {
    let j = journal(10, 1, 400);
    let sale = j.transactions.iter().find(|t| t.tx_type == TxType::Sale).unwrap();
    let text = render_invoice(sale);
    let expected = format!(
        "On {}, an invoice was issued for a sale, consisting of {} units at a unit price of {}",
        sale.date, sale.quantity, sale.unit_price
    );
    assert!(text.contains(&expected), "{text}");
}

fn all_single_errors() -> impl Strategy<Value = Vec<ErrorType>> {
    proptest::sample::subsequence(ErrorType::ALL.to_vec(), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn injection_is_local_detectable_and_recoverable(
        seed in any::<u64>(),
        kind in 0usize..5,
        errors in all_single_errors(),
        colocate in any::<bool>(),
    ) {
        let j = journal(seed, kind, 400);
        let mut plan = InjectionPlan::new(seed ^ 0x5eed);
        for e in &errors {
            plan = plan.with(*e, 1);
        }
        plan.colocate = colocate;
        let (out, manifest) = match inject(&j, &plan) {
            Ok(v) => v,
            Err(InjectionError::Infeasible { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(manifest.len(), errors.len());
        prop_assert_eq!(&oracle_detect(&out, &j).unwrap(), &manifest);

        // determinism
        prop_assert_eq!(inject(&j, &plan).unwrap(), (out.clone(), manifest.clone()));

        let rate = j.config.sales_tax_rate.as_rational().clone();
        for entry in &manifest.entries {
            prop_assert_ne!(&entry.recorded_value, &entry.original_value);
            let t = out.get(&entry.transaction_id).unwrap();
            let consistent = match entry.field {
                AuditField::Amount => t.quantity.extend(t.unit_price).unwrap() == t.amount,
                AuditField::TaxAmount => round_half_up(&(t.amount.to_rational() * &rate)).unwrap() == t.tax_amount,
                AuditField::Profit => t.amount - t.cost_amount == t.profit,
                _ => false,
            };
            let calc = ErrorType::ALL.iter().any(|e| e.field() == entry.field && e.category() == ErrorCategory::CalculationError);
            if calc {
                prop_assert!(!consistent, "{:?} left the row consistent", entry.field);
            }
        }

        // locality: only listed (id, field) pairs change, and nothing else
        for (a, b) in j.transactions.iter().zip(&out.transactions) {
            for field in AuditField::ALL {
                let listed = manifest.entries.iter().any(|e| e.transaction_id == a.id && e.field == field);
                if !listed {
                    prop_assert_eq!(field.value_of(a), field.value_of(b));
                }
            }
            prop_assert_eq!(&a.id, &b.id);
            prop_assert_eq!(a.total_amount, b.total_amount);
            prop_assert_eq!(a.cost_amount, b.cost_amount);
        }

        // every row, clean or corrupted, survives the invoice format
        for t in j.transactions.iter().chain(&out.transactions) {
            prop_assert_eq!(&parse_invoice(&render_invoice(t)).unwrap(), t);
        }
    }
}

#[test]
fn approval_errors_blank_the_name() {
    let j = journal(11, 0, 100);
    let (out, manifest) = inject(&j, &InjectionPlan::new(1).with(ErrorType::MissingApprover, 2)).unwrap();
    for e in &manifest.entries {
        assert_eq!(e.recorded_value, "");
        assert_eq!(out.get(&e.transaction_id).unwrap().approver, "");
    }
}
