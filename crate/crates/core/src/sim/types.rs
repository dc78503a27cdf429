use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::date::CalendarDate;
use crate::money::{Money, Quantity};

macro_rules! labelled_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $label:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $label)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn label(self) -> &'static str {
                match self {
                    $($name::$variant => $label),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.label())
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let s = s.trim();
                $name::ALL
                    .iter()
                    .copied()
                    .find(|v| v.label().eq_ignore_ascii_case(s))
                    .ok_or_else(|| format!("unknown {} {s:?}", stringify!($name)))
            }
        }
    };
}

labelled_enum! {
    TxType {
        Sale => "Sale",
        Purchase => "Purchase",
        FixedAssetPurchase => "Fixed Asset Purchase",
        Depreciation => "Depreciation",
        AdministrativeExpense => "Administrative Expense",
        SellingExpense => "Selling Expense",
        FinancialExpense => "Financial Expense",
        InterestReceivable => "Interest Receivable",
        BankToCashTransfer => "Bank to Cash Transfer",
        CashToBankTransfer => "Cash to Bank Transfer",
    }
}

labelled_enum! {
    /// How money moved (or will move) for a transaction.
    Method {
        Cash => "Cash",
        BankTransfer => "Bank Transfer",
        Credit => "Credit",
        NotApplicable => "N/A",
    }
}

labelled_enum! {
    Status {
        Paid => "Paid",
        Received => "Received",
        Outstanding => "Outstanding",
        NotApplicable => "N/A",
    }
}

impl TxType {
    pub fn is_expense(self) -> bool {
        matches!(
            self,
            TxType::AdministrativeExpense | TxType::SellingExpense | TxType::FinancialExpense
        )
    }

    pub fn is_goods(self) -> bool {
        matches!(self, TxType::Sale | TxType::Purchase)
    }
}

/// One journal record. Field order is the canonical serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transaction {
    pub id: String,
    pub date: CalendarDate,
    pub tx_type: TxType,
    pub quantity: Quantity,
    pub unit_price: Money,
    pub amount: Money,
    pub tax_amount: Money,
    pub total_amount: Money,
    /// Inventory cost relieved by a sale; zero otherwise.
    pub cost_amount: Money,
    /// `amount - cost_amount` on sales; zero otherwise.
    pub profit: Money,
    pub payment_receipt_status: Status,
    pub payment_method: Method,
    pub receive_method: Method,
    pub preparer: String,
    pub approver: String,
}

pub fn transaction_id(sequence: usize) -> String {
    format!("T{sequence:06}")
}
