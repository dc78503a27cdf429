use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::money::{round_half_up, round_rational_to_scale, Money, Quantity, Rational};
use crate::seed::rng_for;
use crate::sim::{Journal, Method, Status, Transaction, TxType};

use super::{AuditField, ErrorManifest, ErrorType, ManifestEntry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectionPlan {
    pub specs: Vec<(ErrorType, usize)>,
    pub seed: u64,
    /// Restricts every error to these transaction types (on top of each
    /// error's own eligibility). `None` means no restriction.
    pub scope: Option<Vec<TxType>>,
    /// Plant every error type on the same transactions instead of spreading
    /// them over distinct ones. Requires equal counts.
    pub colocate: bool,
}

impl InjectionPlan {
    pub fn new(seed: u64) -> Self {
        InjectionPlan {
            specs: Vec::new(),
            seed,
            scope: None,
            colocate: false,
        }
    }

    pub fn with(mut self, error: ErrorType, count: usize) -> Self {
        self.specs.push((error, count));
        self
    }

    pub fn colocated(mut self) -> Self {
        self.colocate = true;
        self
    }

    fn eligible(&self, error: ErrorType, t: &Transaction) -> bool {
        error.eligible(t) && self.scope.as_ref().is_none_or(|s| s.contains(&t.tx_type))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InjectionError {
    #[error("{0} has a count of zero")]
    ZeroCount(ErrorType),
    #[error("{0} appears more than once in the plan")]
    Duplicate(ErrorType),
    #[error("co-located errors need equal counts")]
    UnevenColocation,
    #[error("not enough eligible transactions for {}: need {needed}, have {available}", .error.map(|e| e.name()).unwrap_or("the co-located group"))]
    Infeasible {
        error: Option<ErrorType>,
        needed: usize,
        available: usize,
    },
}

impl InjectionError {
    /// How many more eligible transactions the plan would need.
    pub fn shortfall(&self) -> Option<usize> {
        match self {
            InjectionError::Infeasible { needed, available, .. } => Some(needed - available),
            _ => None,
        }
    }
}

fn pick<T: Copy + PartialEq>(rng: &mut ChaCha8Rng, options: &[T], not: T) -> T {
    let others: Vec<T> = options.iter().copied().filter(|o| *o != not).collect();
    others[rng.random_range(0..others.len())]
}

/// Multiplicative distortions for record errors: a slipped decimal point,
/// a halving or a doubling.
fn record_factors() -> [Rational; 4] {
    [
        Rational::new(1, 10),
        Rational::new(1, 2),
        Rational::from_integer(2),
        Rational::from_integer(10),
    ]
}

/// Distortions for calculation errors, kept closer to the true value.
fn calc_factors() -> [Rational; 4] {
    [
        Rational::new(1, 2),
        Rational::new(9, 10),
        Rational::new(11, 10),
        Rational::from_integer(2),
    ]
}

/// First candidate (starting at a random factor) that `accept` allows.
fn distort(rng: &mut ChaCha8Rng, base: Money, factors: &[Rational], accept: impl Fn(Money) -> bool) -> Money {
    let start = rng.random_range(0..factors.len());
    for k in 0..factors.len() {
        let f = &factors[(start + k) % factors.len()];
        if let Ok(v) = base.mul_rational(f) {
            if accept(v) {
                return v;
            }
        }
    }
    // every factor collided: shift by one cent more than the base
    let mut v = base + Money::from_minor(1);
    while !accept(v) {
        v += Money::from_minor(1);
    }
    v
}

fn distort_quantity(rng: &mut ChaCha8Rng, q: Quantity) -> Quantity {
    let factors = record_factors();
    let start = rng.random_range(0..factors.len());
    for k in 0..factors.len() {
        let f = &factors[(start + k) % factors.len()];
        let scaled = Rational::from_integer(q.hundredths() as i128) * f;
        if let Some(h) = round_rational_to_scale(&scaled, 1) {
            if h > 0 && h as i64 != q.hundredths() {
                return Quantity::from_hundredths(h as i64);
            }
        }
    }
    Quantity::from_hundredths(q.hundredths() * 2)
}

fn apply(rng: &mut ChaCha8Rng, error: ErrorType, original: &Transaction, c: &mut Transaction, tax_rate: &Rational) {
    match error {
        ErrorType::TypeRecord => c.tx_type = pick(rng, TxType::ALL, original.tx_type),
        ErrorType::DateRecord => {
            let delay = rng.random_range(1..=30);
            c.date = original
                .date
                .add_days(delay)
                .or_else(|_| original.date.add_days(-delay))
                .expect("a date within thirty days is representable");
        }
        ErrorType::PaymentReceiptStatusRecord => {
            c.payment_receipt_status = pick(rng, Status::ALL, original.payment_receipt_status)
        }
        ErrorType::PaymentMethodRecord => c.payment_method = pick(rng, Method::ALL, original.payment_method),
        ErrorType::ReceiveMethodRecord => c.receive_method = pick(rng, Method::ALL, original.receive_method),
        ErrorType::QuantityRecord => c.quantity = distort_quantity(rng, original.quantity),
        ErrorType::UnitPriceRecord => {
            c.unit_price = distort(rng, original.unit_price, &record_factors(), |v| {
                v.is_positive() && v != original.unit_price
            })
        }
        ErrorType::AmountCalc => {
            let implied = c.quantity.extend(c.unit_price).ok();
            c.amount = distort(rng, original.amount, &calc_factors(), |v| {
                v != original.amount && Some(v) != implied
            })
        }
        ErrorType::TaxAmountCalc => {
            let implied = round_half_up(&(c.amount.to_rational() * tax_rate)).ok();
            c.tax_amount = distort(rng, original.tax_amount, &calc_factors(), |v| {
                v != original.tax_amount && Some(v) != implied
            })
        }
        ErrorType::ProfitCalc => {
            let implied = c.amount - c.cost_amount;
            let pct = Rational::new([5, 10, 25][rng.random_range(0..3)], 100);
            let offset = original
                .amount
                .abs()
                .mul_rational(&pct)
                .unwrap_or(Money::ZERO)
                .max(Money::from_units(1));
            let signed = if rng.random_bool(0.5) { offset } else { -offset };
            let mut v = original.profit + signed;
            while v == implied || v == original.profit {
                v += Money::from_minor(1);
            }
            c.profit = v;
        }
        ErrorType::MissingPreparer => c.preparer.clear(),
        ErrorType::MissingApprover => c.approver.clear(),
    }
}

/// Plant the plan's errors; returns the corrupted journal and its manifest.
pub fn inject(journal: &Journal, plan: &InjectionPlan) -> Result<(Journal, ErrorManifest), InjectionError> {
    let mut seen = BTreeSet::new();
    for &(error, count) in &plan.specs {
        if count == 0 {
            return Err(InjectionError::ZeroCount(error));
        }
        if !seen.insert(error) {
            return Err(InjectionError::Duplicate(error));
        }
    }

    let txs = &journal.transactions;
    let mut rng = rng_for(plan.seed, "audit");
    let mut targets: BTreeMap<usize, Vec<ErrorType>> = BTreeMap::new();

    if plan.colocate && !plan.specs.is_empty() {
        let n = plan.specs[0].1;
        if plan.specs.iter().any(|(_, c)| *c != n) {
            return Err(InjectionError::UnevenColocation);
        }
        let pool: Vec<usize> = (0..txs.len())
            .filter(|&i| plan.specs.iter().all(|(e, _)| plan.eligible(*e, &txs[i])))
            .collect();
        if pool.len() < n {
            return Err(InjectionError::Infeasible {
                error: None,
                needed: n,
                available: pool.len(),
            });
        }
        for k in sample(&mut rng, pool.len(), n) {
            targets.insert(pool[k], plan.specs.iter().map(|(e, _)| *e).collect());
        }
    } else {
        // scarcest error first so the greedy draw is least likely to starve
        let mut order: Vec<(ErrorType, usize, usize)> = plan
            .specs
            .iter()
            .map(|&(e, c)| (e, c, txs.iter().filter(|t| plan.eligible(e, t)).count()))
            .collect();
        order.sort_by_key(|&(e, _, avail)| (avail, e));
        for (error, count, _) in order {
            let pool: Vec<usize> = (0..txs.len())
                .filter(|i| !targets.contains_key(i) && plan.eligible(error, &txs[*i]))
                .collect();
            if pool.len() < count {
                return Err(InjectionError::Infeasible {
                    error: Some(error),
                    needed: count,
                    available: pool.len(),
                });
            }
            for k in sample(&mut rng, pool.len(), count) {
                targets.insert(pool[k], vec![error]);
            }
        }
    }

    let tax_rate = journal.config.sales_tax_rate.as_rational().clone();
    let mut corrupted = journal.clone();
    let mut manifest = ErrorManifest::default();
    for (idx, mut errors) in targets {
        // record errors first, so calculation errors are judged against the recorded row
        errors.sort();
        let original = &txs[idx];
        let c = &mut corrupted.transactions[idx];
        for &error in &errors {
            apply(&mut rng, error, original, c, &tax_rate);
        }
        let mut fields: Vec<AuditField> = errors.iter().map(|e| e.field()).collect();
        fields.sort();
        for field in fields {
            manifest.entries.push(ManifestEntry {
                transaction_id: original.id.clone(),
                field,
                recorded_value: field.value_of(c),
                original_value: field.value_of(original),
            });
        }
    }
    Ok((corrupted, manifest))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("transaction {0} is not present in both journals")]
    IdMismatch(String),
    #[error("journals hold {corrupted} and {original} transactions")]
    LengthMismatch { corrupted: usize, original: usize },
    #[error("transaction {id} differs in non-auditable field {field}")]
    Unauditable { id: String, field: &'static str },
}

/// Field-by-field diff of a corrupted journal against its original.
pub fn oracle_detect(corrupted: &Journal, original: &Journal) -> Result<ErrorManifest, OracleError> {
    if corrupted.transactions.len() != original.transactions.len() {
        return Err(OracleError::LengthMismatch {
            corrupted: corrupted.transactions.len(),
            original: original.transactions.len(),
        });
    }
    let by_id: HashMap<&str, &Transaction> = original.transactions.iter().map(|t| (t.id.as_str(), t)).collect();
    let mut manifest = ErrorManifest::default();
    for c in &corrupted.transactions {
        let o = by_id.get(c.id.as_str()).ok_or_else(|| OracleError::IdMismatch(c.id.clone()))?;
        for (name, differs) in [
            ("total_amount", c.total_amount != o.total_amount),
            ("cost_amount", c.cost_amount != o.cost_amount),
        ] {
            if differs {
                return Err(OracleError::Unauditable { id: c.id.clone(), field: name });
            }
        }
        for field in AuditField::ALL {
            let (recorded, originally) = (field.value_of(c), field.value_of(o));
            if recorded != originally {
                manifest.entries.push(ManifestEntry {
                    transaction_id: c.id.clone(),
                    field,
                    recorded_value: recorded,
                    original_value: originally,
                });
            }
        }
    }
    Ok(manifest)
}
