//! Deterministic company-journal simulation and the benchmark built on it.

pub mod audit;
pub mod date;
pub mod eval;
pub mod indicators;
pub mod money;
pub mod profile;
pub mod seed;
pub mod sim;
pub mod statements;
pub mod suite;
pub mod verify;
