//! Error injection over journals, the invoice text format, and the
//! field-level diff used as ground truth.

mod inject;
mod invoice;

pub use inject::{inject, oracle_detect, InjectionError, InjectionPlan, OracleError};
pub use invoice::{parse_invoice, render_audit_corpus, render_invoice, render_record, InvoiceParseError};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sim::{Transaction, TxType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorCategory {
    RecordError,
    CalculationError,
    ApprovalMismatch,
}

impl ErrorCategory {
    pub fn name(self) -> &'static str {
        match self {
            ErrorCategory::RecordError => "Record Error",
            ErrorCategory::CalculationError => "Calculation Error",
            ErrorCategory::ApprovalMismatch => "Transaction Approval Mismatch",
        }
    }
}

/// The record fields an error can touch, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AuditField {
    Type,
    Date,
    PaymentReceiptStatus,
    PaymentMethod,
    Quantity,
    UnitPrice,
    ReceiveMethod,
    Amount,
    TaxAmount,
    Profit,
    Preparer,
    Approver,
}

impl AuditField {
    pub const ALL: [AuditField; 12] = [
        AuditField::Type,
        AuditField::Date,
        AuditField::PaymentReceiptStatus,
        AuditField::PaymentMethod,
        AuditField::Quantity,
        AuditField::UnitPrice,
        AuditField::ReceiveMethod,
        AuditField::Amount,
        AuditField::TaxAmount,
        AuditField::Profit,
        AuditField::Preparer,
        AuditField::Approver,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AuditField::Type => "Type",
            AuditField::Date => "Date",
            AuditField::PaymentReceiptStatus => "Payment/Receipt Status",
            AuditField::PaymentMethod => "Payment Method",
            AuditField::Quantity => "Quantity",
            AuditField::UnitPrice => "Unit Price",
            AuditField::ReceiveMethod => "Receive Method",
            AuditField::Amount => "Amount",
            AuditField::TaxAmount => "Tax Amount",
            AuditField::Profit => "Profit",
            AuditField::Preparer => "Preparer",
            AuditField::Approver => "Approver",
        }
    }

    /// Canonical string form of this field on `t`.
    pub fn value_of(self, t: &Transaction) -> String {
        match self {
            AuditField::Type => t.tx_type.to_string(),
            AuditField::Date => t.date.to_string(),
            AuditField::PaymentReceiptStatus => t.payment_receipt_status.to_string(),
            AuditField::PaymentMethod => t.payment_method.to_string(),
            AuditField::Quantity => t.quantity.to_string(),
            AuditField::UnitPrice => t.unit_price.to_string(),
            AuditField::ReceiveMethod => t.receive_method.to_string(),
            AuditField::Amount => t.amount.to_string(),
            AuditField::TaxAmount => t.tax_amount.to_string(),
            AuditField::Profit => t.profit.to_string(),
            AuditField::Preparer => t.preparer.clone(),
            AuditField::Approver => t.approver.clone(),
        }
    }
}

impl fmt::Display for AuditField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorType {
    TypeRecord,
    DateRecord,
    PaymentReceiptStatusRecord,
    PaymentMethodRecord,
    QuantityRecord,
    UnitPriceRecord,
    ReceiveMethodRecord,
    AmountCalc,
    TaxAmountCalc,
    ProfitCalc,
    MissingPreparer,
    MissingApprover,
}

impl ErrorType {
    pub const ALL: [ErrorType; 12] = [
        ErrorType::TypeRecord,
        ErrorType::DateRecord,
        ErrorType::PaymentReceiptStatusRecord,
        ErrorType::PaymentMethodRecord,
        ErrorType::QuantityRecord,
        ErrorType::UnitPriceRecord,
        ErrorType::ReceiveMethodRecord,
        ErrorType::AmountCalc,
        ErrorType::TaxAmountCalc,
        ErrorType::ProfitCalc,
        ErrorType::MissingPreparer,
        ErrorType::MissingApprover,
    ];

    pub fn category(self) -> ErrorCategory {
        use ErrorType::*;
        match self {
            TypeRecord | DateRecord | PaymentReceiptStatusRecord | PaymentMethodRecord | QuantityRecord
            | UnitPriceRecord | ReceiveMethodRecord => ErrorCategory::RecordError,
            AmountCalc | TaxAmountCalc | ProfitCalc => ErrorCategory::CalculationError,
            MissingPreparer | MissingApprover => ErrorCategory::ApprovalMismatch,
        }
    }

    pub fn field(self) -> AuditField {
        AuditField::ALL[ErrorType::ALL.iter().position(|e| *e == self).expect("listed")]
    }

    /// Name as used in the error classification, e.g. "Transaction DATE Record Error".
    pub fn name(self) -> &'static str {
        use ErrorType::*;
        match self {
            TypeRecord => "Transaction TYPE Record Error",
            DateRecord => "Transaction DATE Record Error",
            PaymentReceiptStatusRecord => "Transaction PAYMENT/RECEIPT_STATUS Record Error",
            PaymentMethodRecord => "Transaction PAYMENT_METHOD Record Error",
            QuantityRecord => "Transaction QUANTITY Record Error",
            UnitPriceRecord => "Transaction UNIT_PRICE Record Error",
            ReceiveMethodRecord => "Transaction RECEIVE_METHOD Record Error",
            AmountCalc => "Transaction AMOUNT Calculation Error",
            TaxAmountCalc => "Transaction TAX_AMOUNT Calculation Error",
            ProfitCalc => "Transaction PROFIT Calculation Error",
            MissingPreparer => "Transaction Without PREPARER Error",
            MissingApprover => "Transaction Without APPROVER Error",
        }
    }

    /// Whether this error can be planted on `t`.
    pub fn eligible(self, t: &Transaction) -> bool {
        use ErrorType::*;
        match self {
            TypeRecord | DateRecord | PaymentReceiptStatusRecord | PaymentMethodRecord | ReceiveMethodRecord => true,
            QuantityRecord | UnitPriceRecord | AmountCalc => t.tx_type.is_goods() && t.quantity.hundredths() > 0,
            TaxAmountCalc => t.tx_type == TxType::Sale && t.tax_amount.is_positive(),
            ProfitCalc => t.tx_type == TxType::Sale,
            MissingPreparer => !t.preparer.is_empty(),
            MissingApprover => !t.approver.is_empty(),
        }
    }
}

impl fmt::Display for ErrorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub transaction_id: String,
    pub field: AuditField,
    pub recorded_value: String,
    pub original_value: String,
}

/// Ground truth of an injection: one entry per corrupted (transaction, field),
/// in journal order then field order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorManifest {
    pub entries: Vec<ManifestEntry>,
}

impl ErrorManifest {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn for_transaction<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a ManifestEntry> + 'a {
        self.entries.iter().filter(move |e| e.transaction_id == id)
    }
}
