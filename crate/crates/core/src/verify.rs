//! The property suite behind `finbench verify`: simulate many journals and
//! check every accounting identity, articulation link and round trip.

use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::audit::{inject, oracle_detect, ErrorType, InjectionError, InjectionPlan};
use crate::profile::{builtin_profile, CompanyKind};
use crate::seed::derive_seed;
use crate::sim::{simulate, Journal, SimulationConfig, TxType};
use crate::statements::{articulation_check, compile, identity_check};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub first_seed: u64,
    pub seeds: u64,
    pub profiles: Vec<CompanyKind>,
    pub sizes: Vec<usize>,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            first_seed: 0,
            seeds: 100,
            profiles: CompanyKind::BUILTIN.to_vec(),
            sizes: vec![200, 400],
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: &'static str,
    pub profile: String,
    pub seed: u64,
    pub transactions: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub check: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// Runs where the check did not apply (e.g. an infeasible injection plan).
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub runs: usize,
    pub checks: Vec<CheckCount>,
    pub findings: Vec<Finding>,
    pub slowest_generation_ms: f64,
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

pub const CHECKS: [&str; 7] = [
    "simulation",
    "transaction-count",
    "identities",
    "articulation",
    "journal-round-trip",
    "determinism",
    "injection-round-trip",
];

/// The `i`-th plan of a fixed sweep: arities cycle 1, 2, 4 error types and
/// the types walk all twelve variants; multi-type plans alternate between
/// spread over distinct transactions and co-located on one sale.
pub fn sample_plan(i: usize, seed: u64) -> InjectionPlan {
    let arity = [1, 2, 4][i % 3];
    let count = 1 + (i / 3) % 2;
    let mut plan = InjectionPlan::new(derive_seed(seed, &format!("plan/{i}")));
    for k in 0..arity {
        plan = plan.with(ErrorType::ALL[(i + 5 * k) % ErrorType::ALL.len()], count);
    }
    if arity > 1 && (i / 3) % 2 == 0 {
        plan.scope = Some(vec![TxType::Sale]);
        plan = plan.colocated();
    }
    plan
}

/// Inject `plan` and check that the oracle diff recovers its manifest
/// exactly. `Ok(false)` when the journal cannot host the plan.
pub fn injection_round_trip(journal: &Journal, plan: &InjectionPlan) -> Result<bool, String> {
    let (corrupted, manifest) = match inject(journal, plan) {
        Ok(v) => v,
        Err(InjectionError::Infeasible { .. }) => return Ok(false),
        Err(e) => return Err(e.to_string()),
    };
    let found = oracle_detect(&corrupted, journal).map_err(|e| e.to_string())?;
    if found != manifest {
        return Err(format!("oracle found {} entries, manifest has {}", found.len(), manifest.len()));
    }
    Ok(true)
}

struct Run {
    kind: CompanyKind,
    seed: u64,
    size: usize,
    index: usize,
}

fn check_run(run: &Run, out: &mut Vec<(&'static str, Result<bool, String>)>) -> f64 {
    let profile = builtin_profile(run.kind).expect("builtin profile");
    let config = SimulationConfig::with_target(run.seed, run.size);
    let started = Instant::now();
    let journal = simulate(&profile, &config);
    let gen_ms = started.elapsed().as_secs_f64() * 1000.0;
    let journal = match journal {
        Ok(j) => j,
        Err(e) => {
            out.push(("simulation", Err(e.to_string())));
            return gen_ms;
        }
    };
    out.push(("simulation", Ok(true)));
    let n = journal.transactions.len();
    out.push((
        "transaction-count",
        if n == run.size { Ok(true) } else { Err(format!("{n} transactions")) },
    ));
    match compile(&journal) {
        Ok(set) => {
            let describe = |v: Vec<crate::statements::Violation>| {
                if v.is_empty() {
                    Ok(true)
                } else {
                    Err(v.iter().map(|v| format!("{} ({})", v.description, v.discrepancy)).collect::<Vec<_>>().join("; "))
                }
            };
            out.push(("identities", describe(identity_check(&set))));
            out.push(("articulation", describe(articulation_check(&set))));
        }
        Err(e) => {
            out.push(("identities", Err(e.to_string())));
            out.push(("articulation", Err(e.to_string())));
        }
    }
    out.push((
        "journal-round-trip",
        match Journal::from_jsonl(&journal.to_jsonl()) {
            Ok(back) if back == journal => Ok(true),
            Ok(_) => Err("journal changed after a JSONL round trip".into()),
            Err(e) => Err(e.to_string()),
        },
    ));
    // one re-run per profile and size is enough to catch drift
    if run.index == 0 {
        out.push((
            "determinism",
            match simulate(&profile, &config) {
                Ok(again) if again.digest() == journal.digest() => Ok(true),
                Ok(_) => Err("second run produced a different journal".into()),
                Err(e) => Err(e.to_string()),
            },
        ));
    }
    let plan = sample_plan(run.index, run.seed);
    out.push(("injection-round-trip", injection_round_trip(&journal, &plan)));
    gen_ms
}

/// Run every check over seeds × profiles × sizes on `threads` workers.
pub fn verify(opts: &VerifyOptions) -> VerifyReport {
    let started = Instant::now();
    let mut runs = Vec::new();
    for &kind in &opts.profiles {
        for &size in &opts.sizes {
            for index in 0..opts.seeds as usize {
                runs.push(Run {
                    kind,
                    seed: opts.first_seed + index as u64,
                    size,
                    index,
                });
            }
        }
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let collected = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..opts.threads.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(run) = runs.get(i) else { break };
                let mut results = Vec::new();
                let ms = check_run(run, &mut results);
                collected.lock().unwrap_or_else(|e| e.into_inner()).push((i, ms, results));
            });
        }
    });
    let mut collected = collected.into_inner().unwrap_or_else(|e| e.into_inner());
    collected.sort_by_key(|(i, ..)| *i);

    let mut checks: Vec<CheckCount> = CHECKS
        .iter()
        .map(|c| CheckCount {
            check: c,
            ..Default::default()
        })
        .collect();
    let mut findings = Vec::new();
    let mut slowest: f64 = 0.0;
    for (i, ms, results) in collected {
        let run = &runs[i];
        slowest = slowest.max(ms);
        for (check, outcome) in results {
            let count = checks.iter_mut().find(|c| c.check == check).expect("known check");
            match outcome {
                Ok(true) => count.checked += 1,
                Ok(false) => count.skipped += 1,
                Err(detail) => {
                    count.checked += 1;
                    count.failed += 1;
                    findings.push(Finding {
                        check,
                        profile: run.kind.slug().to_string(),
                        seed: run.seed,
                        transactions: run.size,
                        detail,
                    });
                }
            }
        }
    }
    VerifyReport {
        runs: runs.len(),
        checks,
        findings,
        slowest_generation_ms: slowest,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    }
}
