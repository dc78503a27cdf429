//! Shared fixtures for the benchmarks.

use finbench_core::profile::{builtin_profile, CompanyKind};
use finbench_core::sim::{simulate, Journal, SimulationConfig};

pub fn journal(kind: CompanyKind, seed: u64, transactions: usize) -> Journal {
    let profile = builtin_profile(kind).expect("builtin profile");
    simulate(&profile, &SimulationConfig::with_target(seed, transactions)).expect("builtin profiles simulate")
}
