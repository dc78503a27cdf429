use serde::{Deserialize, Serialize};

use crate::money::Money;
use crate::profile::CompanyProfile;
use crate::seed::sha256_hex;

use super::{SimulationConfig, Transaction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpeningBalances {
    pub cash: Money,
    pub bank: Money,
    pub fixed_assets: Money,
    pub paid_in_capital: Money,
}

impl OpeningBalances {
    pub fn from_profile(profile: &CompanyProfile) -> Self {
        OpeningBalances {
            cash: profile.initial_cash,
            bank: profile.initial_bank,
            fixed_assets: profile.initial_fixed_assets,
            paid_in_capital: profile.paid_in_capital(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Journal {
    pub profile: CompanyProfile,
    pub config: SimulationConfig,
    pub opening: OpeningBalances,
    pub transactions: Vec<Transaction>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    profile: CompanyProfile,
    config: SimulationConfig,
    opening: OpeningBalances,
}

#[derive(Debug, thiserror::Error)]
pub enum JournalFormatError {
    #[error("journal is empty; expected a header line")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

impl Journal {
    /// Header line, then one transaction per line, each terminated by `\n`.
    pub fn to_jsonl(&self) -> String {
        let header = Header {
            profile: self.profile.clone(),
            config: self.config.clone(),
            opening: self.opening,
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for tx in &self.transactions {
            out.push_str(&serde_json::to_string(tx).expect("transaction serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, JournalFormatError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(JournalFormatError::MissingHeader)?;
        let header: Header = serde_json::from_str(first).map_err(|e| JournalFormatError::Line {
            line: 1,
            message: e.to_string(),
        })?;
        let transactions = lines
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| JournalFormatError::Line {
                    line: i + 1,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<Transaction>, _>>()?;
        Ok(Journal {
            profile: header.profile,
            config: header.config,
            opening: header.opening,
            transactions,
        })
    }

    /// SHA-256 of the canonical JSON-lines form.
    pub fn digest(&self) -> String {
        sha256_hex(self.to_jsonl().as_bytes())
    }

    pub fn get(&self, id: &str) -> Option<&Transaction> {
        self.transactions.iter().find(|t| t.id == id)
    }
}
