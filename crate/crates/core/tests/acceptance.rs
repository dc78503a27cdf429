//! Acceptance run: one PASS/FAIL line per release criterion.
//! `cargo test -p finbench-core --test acceptance`

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use common::{reference_statements, evaluate, m, resum};
use finbench_core::audit::{inject, oracle_detect, AuditField, ErrorType};
use finbench_core::eval::{
    canonical, extract_solution, run, score, Completer, Completion, CompletionError, Failure, Garbage, MockEcho,
    RunOptions, ScoreOptions,
};
use finbench_core::indicators::{compute, IndicatorId};
use finbench_core::money::format_two_decimals;
use finbench_core::profile::{builtin_profile, CompanyKind};
use finbench_core::seed::sha256_hex;
use finbench_core::sim::{simulate, Journal, SimulationConfig};
use finbench_core::statements::{compile, LinePair, StatementSet};
use finbench_core::suite::{
    build_catalog, catalog, ground_truth, inject_audit_suite, render_prompt, write_audit_suite, write_bundle, Answer,
    Domain, TaskBundle, TaskSpec,
};
use finbench_core::verify::{sample_plan, verify, VerifyOptions};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn journal(kind: CompanyKind, seed: u64, n: usize) -> Journal {
    simulate(&builtin_profile(kind).unwrap(), &SimulationConfig::with_target(seed, n)).unwrap()
}

fn bundle() -> &'static TaskBundle {
    static B: OnceLock<TaskBundle> = OnceLock::new();
    B.get_or_init(|| {
        let j = journal(CompanyKind::TypeIII, 11, 400);
        let set = compile(&j).unwrap();
        let audit = inject_audit_suite(&j, 11).unwrap();
        build_catalog(&j, &set, &audit).unwrap()
    })
}

fn task<'a>(tasks: &'a [TaskSpec], name: &str) -> &'a TaskSpec {
    tasks.iter().find(|t| t.name == name).unwrap_or_else(|| panic!("no task {name}"))
}

fn scalar(a: &Answer) -> &str {
    match a {
        Answer::Value(v) => v,
        Answer::Group(_) => panic!("expected a scalar"),
    }
}

fn identity_suite() -> Outcome {
    let report = verify(&VerifyOptions::default());
    ensure!(report.runs == 1000, "{} runs", report.runs);
    if let Some(f) = report.findings.first() {
        return Err(format!(
            "{} findings, first: {} on {} seed {} ({}): {}",
            report.findings.len(),
            f.check,
            f.profile,
            f.seed,
            f.transactions,
            f.detail
        ));
    }
    for c in &report.checks {
        ensure!(c.failed == 0, "{} failed {} times", c.check, c.failed);
    }
    ensure!(report.elapsed_seconds < 60.0, "took {:.1} s", report.elapsed_seconds);
    ensure!(
        report.slowest_generation_ms < 50.0,
        "slowest generation {:.2} ms",
        report.slowest_generation_ms
    );
    println!(
        "    {} runs in {:.1} s, slowest generation {:.2} ms",
        report.runs, report.elapsed_seconds, report.slowest_generation_ms
    );
    Ok(())
}

fn reference_values() -> Outcome {
    let set = reference_statements();
    let (is, cf) = (&set.income_statement, &set.cash_flow_statement);
    ensure!(is.profit_before_tax - is.tax_expense == m("-1645141.43"), "net profit from PBT and tax");
    ensure!(is.net_profit == m("-1645141.43"), "printed net profit");
    ensure!(is.total_revenue - is.total_cost == is.gross_profit, "gross profit identity");
    ensure!(
        is.gross_profit - is.total_expenses + is.interest_income == is.profit_before_tax,
        "profit before tax identity"
    );
    ensure!(
        cf.net_operating_cash_flow + cf.net_investing_cash_flow == m("-7565348.53") && cf.net_increase == m("-7565348.53"),
        "net increase"
    );
    ensure!(
        cf.beginning_cash_balance + cf.net_increase == m("434651.47") && cf.ending_cash_balance == m("434651.47"),
        "ending cash"
    );

    let mut roa = StatementSet::default();
    roa.income_statement.net_profit = m("-1342040.76");
    roa.balance_sheet.total_assets = LinePair::new(m("13000000.00"), m("15086049.65"));
    let t = task(&catalog(), "Analyze Financial Statement-ROA").clone();
    let truth = ground_truth(&t, &roa, &[]).map_err(|e| e.to_string())?;
    ensure!(scalar(&truth["Return on Assets (ROA)"]) == "-9.56%", "ROA {:?}", truth);

    for (id, want) in [
        (IndicatorId::GrossMargin, "18.80%"),
        (IndicatorId::CurrentRatio, "4.27"),
        (IndicatorId::QuickRatio, "1.54"),
        (IndicatorId::FreeCashFlow, "-7565348.53"),
    ] {
        let oracle = evaluate(id.formula(), &set).ok_or(format!("{id} undefined in the oracle"))?;
        let mut shown = format_two_decimals(&oracle).unwrap();
        if id.is_percentage() {
            shown.push('%');
        }
        ensure!(shown == want, "{id}: oracle gives {shown}, expected {want}");
        let got = compute(id, &set).map_err(|e| e.to_string())?.display;
        ensure!(got == want, "{id}: dispatcher gives {got}, expected {want}");
    }
    Ok(())
}

/// Every file under `dir`, relative path to SHA-256.
fn digests(dir: &Path) -> BTreeMap<String, String> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<String, String>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, sha256_hex(&std::fs::read(&path).unwrap()));
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

fn pipeline(dir: &Path) {
    let j = journal(CompanyKind::TypeIV, 21, 400);
    std::fs::write(dir.join("journal.jsonl"), j.to_jsonl()).unwrap();
    let set = compile(&j).unwrap();
    std::fs::write(dir.join("statements.json"), serde_json::to_string_pretty(&set).unwrap()).unwrap();
    let audit = inject_audit_suite(&j, 21).unwrap();
    write_audit_suite(&audit, &dir.join("audit")).unwrap();
    let bundle = build_catalog(&j, &set, &audit).unwrap();
    write_bundle(&bundle, &dir.join("bundle"), true).unwrap();
}

fn determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    pipeline(a.path());
    pipeline(b.path());
    let (da, db) = (digests(a.path()), digests(b.path()));
    for required in ["journal.jsonl", "bundle/ground_truth.json", "bundle/tasks.json"] {
        ensure!(da.contains_key(required), "pipeline did not write {required}");
    }
    ensure!(da.len() > 183, "only {} files written", da.len());
    for (path, digest) in &da {
        ensure!(db.get(path) == Some(digest), "{path} differs between runs");
    }
    ensure!(da.len() == db.len(), "file sets differ");
    println!("    {} files byte-identical", da.len());
    Ok(())
}

/// Transaction JSON keys and the audit field each one is reported under.
const AUDITED: [(&str, AuditField); 12] = [
    ("tx_type", AuditField::Type),
    ("date", AuditField::Date),
    ("payment_receipt_status", AuditField::PaymentReceiptStatus),
    ("payment_method", AuditField::PaymentMethod),
    ("quantity", AuditField::Quantity),
    ("unit_price", AuditField::UnitPrice),
    ("receive_method", AuditField::ReceiveMethod),
    ("amount", AuditField::Amount),
    ("tax_amount", AuditField::TaxAmount),
    ("profit", AuditField::Profit),
    ("preparer", AuditField::Preparer),
    ("approver", AuditField::Approver),
];

fn injection_round_trip() -> Outcome {
    let mut variants = BTreeSet::new();
    let mut arities = BTreeSet::new();
    for i in 0..50 {
        let kind = CompanyKind::BUILTIN[i % 5];
        let clean = journal(kind, 1000 + i as u64, 400);
        let plan = sample_plan(i, i as u64);
        let (corrupted, manifest) = inject(&clean, &plan).map_err(|e| format!("plan {i}: {e}"))?;
        let found = oracle_detect(&corrupted, &clean).map_err(|e| format!("plan {i}: {e}"))?;
        ensure!(found == manifest, "plan {i}: oracle found {} of {} entries", found.len(), manifest.len());
        ensure!(
            manifest.len() == plan.specs.iter().map(|(_, n)| n).sum::<usize>(),
            "plan {i}: {} entries for {:?}",
            manifest.len(),
            plan.specs
        );

        // independent field diff: only manifest fields may change
        let claimed: BTreeSet<(String, AuditField)> =
            manifest.entries.iter().map(|e| (e.transaction_id.clone(), e.field)).collect();
        let mut changed = BTreeSet::new();
        for (c, o) in corrupted.transactions.iter().zip(&clean.transactions) {
            let (cv, ov) = (serde_json::to_value(c).unwrap(), serde_json::to_value(o).unwrap());
            for (key, value) in ov.as_object().unwrap() {
                if cv[key] == *value {
                    continue;
                }
                let field = AUDITED
                    .iter()
                    .find(|(k, _)| k == key)
                    .map(|(_, f)| *f)
                    .ok_or(format!("plan {i}: {} changed unaudited field {key}", o.id))?;
                changed.insert((o.id.clone(), field));
            }
        }
        ensure!(changed == claimed, "plan {i}: changed {changed:?}, manifest {claimed:?}");
        variants.extend(plan.specs.iter().map(|(t, _)| *t));
        arities.insert(plan.specs.len());
    }
    ensure!(variants.len() == ErrorType::ALL.len(), "covered {} variants", variants.len());
    ensure!(arities == BTreeSet::from([1, 2, 4]), "arities {arities:?}");
    Ok(())
}

fn catalog_contract() -> Outcome {
    let b = bundle();
    ensure!(b.tasks.len() == 183, "{} tasks", b.tasks.len());
    let split: Vec<usize> = Domain::ALL.iter().map(|d| b.count(*d)).collect();
    ensure!(split == [64, 49, 35, 35], "split {split:?}");
    for t in &b.tasks {
        ensure!(t.solution_schema.len() == t.complexity.gamma as usize, "{}: outputs != gamma", t.task_id);
        ensure!(t.ground_truth.len() == t.complexity.gamma as usize, "{}: answers != gamma", t.task_id);
        ensure!(t.inputs.len() == t.complexity.beta as usize, "{}: inputs != beta", t.task_id);
        let p = render_prompt(t, b);
        for header in [
            "Task Description:",
            "# Examples:",
            "# Problem to Solve: ",
            "# Instruction:\nNow please solve the above task.",
        ] {
            ensure!(p.contains(header), "{}: missing {header:?}", t.task_id);
        }
        if t.domain == Domain::FinancialLiteracy {
            ensure!(p.contains("# Financial Literacy Task Description:"), "{}: heading", t.task_id);
            // the question sits JSON-escaped inside the problem object
            let escaped = serde_json::to_string(&t.question).unwrap();
            ensure!(p.contains(&escaped), "{}: question not in prompt", t.task_id);
            let term = t.name.trim_start_matches("Financial Literacy Detection-");
            for part in term.split(" & ") {
                ensure!(
                    !t.question.to_lowercase().contains(&part.to_lowercase()),
                    "{}: question names {part}",
                    t.task_id
                );
            }
        }
    }
    let cash = task(&b.tasks, "Financial Literacy Detection-Cash on Hand");
    ensure!(
        render_prompt(cash, b).contains("Cash held by an entity that is available for use in its day-to-day operations"),
        "cash on hand definition missing"
    );
    Ok(())
}

fn scoring_fixtures() -> Outcome {
    let b = bundle();
    let mut roa = task(&b.tasks, "Analyze Financial Statement-ROA").clone();
    roa.ground_truth = [("Return on Assets (ROA)".to_string(), Answer::Value("-9.56%".into()))].into();
    let o = ScoreOptions::default();
    let wrong = extract_solution("```json\n{\"solution\": {\"Return on Assets (ROA)\": \"-9.55%\"}}\n```")
        .map_err(|e| e.to_string())?;
    ensure!(!score(&wrong, &roa, o).task_correct, "-9.55% accepted for -9.56%");
    let right = extract_solution("```json\n{\"solution\": {\"Return on Assets (ROA)\": \"-9.56%\"}}\n```")
        .map_err(|e| e.to_string())?;
    ensure!(score(&right, &roa, o).task_correct, "-9.56% rejected");

    for (a, b) in [("434651.4700", "434651.47"), ("434,651.47", "434651.47"), ("(7,565,348.53)", "-7565348.53"), (" ALICE ", "alice")] {
        ensure!(canonical(a, o) == canonical(b, o), "{a:?} != {b:?}");
    }
    for (a, b) in [("-9.55%", "-9.56%"), ("0.0956", "9.56%")] {
        ensure!(canonical(a, o) != canonical(b, o), "{a:?} == {b:?}");
    }

    let echo = run(b, &MockEcho::new(b), &RunOptions::default()).map_err(|e| e.to_string())?;
    let right = echo.iter().filter(|r| r.task_correct).count();
    ensure!(echo.len() == 183 && right == 183, "mock-echo {right}/{}", echo.len());

    let junk = run(b, &Garbage, &RunOptions::default()).map_err(|e| e.to_string())?;
    ensure!(junk.len() == 183, "garbage produced {} results", junk.len());
    ensure!(junk.iter().all(|r| !r.task_correct), "garbage scored");
    ensure!(
        junk.iter().all(|r| matches!(r.failure, Some(Failure::Parse(_)))),
        "garbage results are not parse failures"
    );

    // crash after 100 records, the last half written
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("results.jsonl");
    let mut text: String = echo[..100].iter().map(|r| serde_json::to_string(r).unwrap() + "\n").collect();
    text.push_str(&serde_json::to_string(&echo[100]).unwrap()[..20]);
    std::fs::write(&path, text).unwrap();
    struct Counting(MockEcho, AtomicUsize);
    impl Completer for Counting {
        fn model(&self) -> &str {
            "counting"
        }
        fn complete(&self, id: &str, prompt: &str) -> Result<Completion, CompletionError> {
            self.1.fetch_add(1, Ordering::SeqCst);
            self.0.complete(id, prompt)
        }
    }
    let c = Counting(MockEcho::new(b), AtomicUsize::new(0));
    let opts = RunOptions {
        results_path: Some(path),
        ..Default::default()
    };
    let resumed = run(b, &c, &opts).map_err(|e| e.to_string())?;
    let calls = c.1.load(Ordering::SeqCst);
    ensure!(calls == 83, "resume re-ran {calls} tasks, expected 83");
    ensure!(resumed.len() == 183 && resumed.iter().all(|r| r.task_correct), "resumed run incomplete");
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let mut journals = 0;
    for n in 1..=50 {
        for (k, kind) in CompanyKind::BUILTIN.iter().enumerate() {
            let j = journal(*kind, (n * 7 + k) as u64, n);
            let mut compiled = compile(&j).map_err(|e| format!("{n} txns: {e}"))?;
            compiled.provenance.clear();
            ensure!(compiled == resum(&j), "{kind:?} with {n} transactions differs from re-summation");
            journals += 1;
        }
    }
    for i in 0..20u64 {
        let kind = CompanyKind::BUILTIN[i as usize % 5];
        let set = compile(&journal(kind, 5000 + i * 977, 200)).unwrap();
        for id in IndicatorId::ALL {
            let oracle = evaluate(id.formula(), &set);
            match compute(id, &set) {
                Ok(v) => ensure!(Some(&v.value) == oracle.as_ref(), "set {i}: {id} {} vs {oracle:?}", v.value),
                Err(e) => ensure!(oracle.is_none(), "set {i}: {id} {e} but oracle gives {oracle:?}"),
            }
        }
    }
    println!("    {journals} journals re-summed, 20 statement sets evaluated");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("accounting-identity suite", identity_suite),
        ("reference-value regression", reference_values),
        ("determinism", determinism),
        ("injection round trip", injection_round_trip),
        ("catalog contract", catalog_contract),
        ("scoring fixtures", scoring_fixtures),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", 7 - failed, 7);
    if failed > 0 {
        std::process::exit(1);
    }
}
