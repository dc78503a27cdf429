//! Seeded daily simulation of a company's journal.

mod config;
mod engine;
mod journal;
mod types;

pub use config::{MoneyBand, SimulationConfig, TARGET_HORIZON_YEARS};
pub use engine::{simulate, simulate_with_report, SimFlag, SimReport, SimState, APPROVERS, PREPARERS};
pub use journal::{Journal, JournalFormatError, OpeningBalances};
pub use types::{transaction_id, Method, Status, Transaction, TxType};

use crate::date::{CalendarDate, DateError};
use crate::profile::ProfileError;

#[derive(Debug, thiserror::Error)]
pub enum SimulationError {
    #[error("invalid simulation config field {field}: {reason}")]
    InvalidConfig { field: &'static str, reason: String },
    #[error("invalid profile: {0}")]
    InvalidProfile(#[source] ProfileError),
    #[error("only {emitted} of {target} transactions generated by {until}")]
    TargetUnreachable {
        target: usize,
        emitted: usize,
        until: CalendarDate,
    },
    #[error(transparent)]
    Date(#[from] DateError),
}
