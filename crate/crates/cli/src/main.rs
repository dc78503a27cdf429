mod error;
mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use finbench_core::audit::{inject, render_audit_corpus, InjectionPlan};
use finbench_core::date::CalendarDate;
use finbench_core::eval::{
    aggregate, load_results, run, Completer, EndpointConfig, Garbage, HttpCompleter, MockEcho, PriceTable, Report,
    ReportOptions, RunOptions,
};
use finbench_core::profile::{builtin_profile, load_profile, CompanyKind, CompanyProfile};
use finbench_core::sim::{simulate, Journal, SimulationConfig, SimulationError};
use finbench_core::statements::{articulation_check, compile, identity_check, render, Format};
use finbench_core::suite::{
    build_catalog, inject_audit_suite, read_audit_suite, read_bundle, write_audit_suite, write_bundle, TaskBundle,
};
use finbench_core::verify::{verify, VerifyOptions};

use error::{reading, writing, Class, CliError};
use manifest::RunManifest;

#[derive(Parser)]
#[command(name = "finbench", version, about = "Synthetic company journals, financial statements and benchmark tasks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a company journal.
    Generate(GenerateArgs),
    /// Compile and check the financial statements of a journal.
    Statements(StatementsArgs),
    /// Plant audit errors in a journal, from a plan file or for the whole task suite.
    Inject(InjectArgs),
    /// Build the task bundle from a journal and its audit suite.
    Tasks(TasksArgs),
    /// Run an endpoint over a bundle and score it.
    Eval(EvalArgs),
    /// Aggregate earlier eval results.
    Report(ReportArgs),
    /// Run the property suite over many seeds and all builtin profiles.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Builtin profile (type1..type5) or a profile file.
    #[arg(long, default_value = "type1")]
    profile: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = parse_date)]
    start: Option<CalendarDate>,
    #[arg(long, value_parser = parse_date)]
    end: Option<CalendarDate>,
    /// Stop after exactly this many transactions (ignores --end).
    #[arg(long)]
    target_txns: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StatementsArgs {
    #[arg(long)]
    journal: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InjectArgs {
    #[arg(long)]
    journal: PathBuf,
    /// Injection plan (TOML, or JSON by extension).
    #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
    plan: Option<PathBuf>,
    /// Build one corrupted journal per audit task instead.
    #[arg(long)]
    suite: bool,
    /// Overrides the plan's seed; for --suite defaults to the journal's seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TasksArgs {
    #[arg(long)]
    journal: PathBuf,
    /// Directory written by `inject --suite`.
    #[arg(long)]
    audit: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Leave out ground_truth.json (for handing the bundle to a model).
    #[arg(long)]
    public: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    bundle: PathBuf,
    /// `mock-echo`, `garbage`, or an endpoint TOML file.
    #[arg(long)]
    endpoint: String,
    #[arg(long)]
    out: PathBuf,
    /// Overrides the endpoint's max_parallel.
    #[arg(long)]
    max_parallel: Option<usize>,
    #[arg(long)]
    prices: Option<PathBuf>,
    #[arg(long)]
    exclude_transport_failures: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Bundle directory; repeat together with --results, in the same order.
    #[arg(long, required = true)]
    bundle: Vec<PathBuf>,
    #[arg(long, required = true)]
    results: Vec<PathBuf>,
    #[arg(long)]
    model: String,
    #[arg(long)]
    prices: Option<PathBuf>,
    #[arg(long)]
    exclude_transport_failures: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    /// Transaction targets, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [200, 400])]
    sizes: Vec<usize>,
    /// Builtin profiles, comma separated; all five by default.
    #[arg(long, value_delimiter = ',')]
    profiles: Vec<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Also write the full report to this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_date(s: &str) -> Result<CalendarDate, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Statements(a) => statements(a),
        Command::Inject(a) => inject_cmd(a),
        Command::Tasks(a) => tasks(a),
        Command::Eval(a) => eval(a),
        Command::Report(a) => report(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.class.exit_code() as u8)
        }
    }
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::output(dir, e))
}

fn write_file(path: PathBuf, text: &str, written: &mut Vec<PathBuf>) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        create_dir(parent)?;
    }
    std::fs::write(&path, text).map_err(|e| CliError::output(&path, e))?;
    written.push(path);
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(path, e))
}

fn read_journal(path: &Path, manifest: &mut RunManifest) -> Result<Journal, CliError> {
    let journal = Journal::from_jsonl(&read_text(path)?).map_err(|e| CliError::input(path, e))?;
    manifest.input(path)?;
    Ok(journal)
}

fn resolve_profile(spec: &str) -> Result<CompanyProfile, CliError> {
    if let Ok(kind) = spec.parse::<CompanyKind>() {
        if let Some(p) = builtin_profile(kind) {
            return Ok(p);
        }
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::input(path, "neither a builtin profile (type1..type5) nor a readable file"));
    }
    load_profile(path).map_err(|e| CliError::input(path, e))
}

fn generate(a: GenerateArgs) -> Result<(), CliError> {
    let mut m = RunManifest::start("generate");
    let profile = resolve_profile(&a.profile)?;
    if Path::new(&a.profile).exists() {
        m.input(Path::new(&a.profile))?;
    }
    let mut config = SimulationConfig::with_seed(a.seed);
    if let Some(s) = a.start {
        config.start_date = s;
    }
    if let Some(e) = a.end {
        config.end_date = e;
    }
    config.target_transactions = a.target_txns;
    m.seeds.push(a.seed);
    let journal = simulate(&profile, &config).map_err(|e| match e {
        SimulationError::TargetUnreachable { .. } => CliError::new(Class::Simulation, e.to_string()),
        other => CliError::invalid(other.to_string()),
    })?;
    let mut written = Vec::new();
    write_file(a.out.join("journal.jsonl"), &journal.to_jsonl(), &mut written)?;
    m.outputs(&written)?;
    m.finish(&a.out)?;
    println!(
        "{}",
        serde_json::json!({
            "journal": a.out.join("journal.jsonl"),
            "transactions": journal.transactions.len(),
            "digest": journal.digest(),
        })
    );
    Ok(())
}

fn statements(a: StatementsArgs) -> Result<(), CliError> {
    let mut m = RunManifest::start("statements");
    let journal = read_journal(&a.journal, &mut m)?;
    m.seeds.push(journal.config.seed);
    let set = compile(&journal).map_err(|e| CliError::input(&a.journal, e))?;
    let mut violations = identity_check(&set);
    violations.extend(articulation_check(&set));
    let mut written = Vec::new();
    write_file(a.out.join("statements.json"), &(render(&set, Format::Structured) + "\n"), &mut written)?;
    write_file(a.out.join("statements.txt"), &render(&set, Format::Text), &mut written)?;
    write_file(a.out.join("checks.json"), &to_json(&violations), &mut written)?;
    m.outputs(&written)?;
    m.finish(&a.out)?;
    if !violations.is_empty() {
        return Err(CliError::new(
            Class::Violation,
            format!("{} identity or articulation violations; see checks.json", violations.len()),
        ));
    }
    println!("{}", serde_json::json!({ "statements": a.out.join("statements.json"), "violations": 0 }));
    Ok(())
}

fn read_plan(path: &Path) -> Result<InjectionPlan, CliError> {
    let text = read_text(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text).map_err(|e| CliError::input(path, e))
    } else {
        toml::from_str(&text).map_err(|e| CliError::input(path, e))
    }
}

fn inject_cmd(a: InjectArgs) -> Result<(), CliError> {
    let mut m = RunManifest::start("inject");
    let journal = read_journal(&a.journal, &mut m)?;
    let mut written = Vec::new();
    let summary = if a.suite {
        let seed = a.seed.unwrap_or(journal.config.seed);
        m.seeds.push(seed);
        let cases = inject_audit_suite(&journal, seed)?;
        written = write_audit_suite(&cases, &a.out.join("audit")).map_err(writing)?;
        serde_json::json!({ "audit_suite": a.out.join("audit"), "tasks": cases.len() })
    } else {
        let path = a.plan.expect("clap requires --plan without --suite");
        let mut plan = read_plan(&path)?;
        m.input(&path)?;
        if let Some(seed) = a.seed {
            plan.seed = seed;
        }
        m.seeds.push(plan.seed);
        let (corrupted, errors) = inject(&journal, &plan).map_err(|e| CliError::new(Class::Infeasible, e.to_string()))?;
        write_file(a.out.join("corrupted.jsonl"), &corrupted.to_jsonl(), &mut written)?;
        write_file(a.out.join("errors.json"), &to_json(&errors), &mut written)?;
        write_file(a.out.join("audit_corpus.txt"), &render_audit_corpus(&journal, &corrupted), &mut written)?;
        serde_json::json!({ "corrupted": a.out.join("corrupted.jsonl"), "errors": errors.len() })
    };
    m.outputs(&written)?;
    m.finish(&a.out)?;
    println!("{summary}");
    Ok(())
}

fn tasks(a: TasksArgs) -> Result<(), CliError> {
    let mut m = RunManifest::start("tasks");
    let journal = read_journal(&a.journal, &mut m)?;
    m.seeds.push(journal.config.seed);
    let audit = read_audit_suite(&a.audit).map_err(reading)?;
    m.input(&a.audit.join("index.json"))?;
    for c in &audit {
        m.input(&a.audit.join(format!("{}.jsonl", c.task_id)))?;
    }
    let set = compile(&journal).map_err(|e| CliError::input(&a.journal, e))?;
    let bundle = build_catalog(&journal, &set, &audit)?;
    let written = write_bundle(&bundle, &a.out, !a.public).map_err(writing)?;
    m.outputs(&written)?;
    m.finish(&a.out)?;
    println!(
        "{}",
        serde_json::json!({ "bundle": a.out, "tasks": bundle.tasks.len(), "ground_truth": !a.public })
    );
    Ok(())
}

fn load_prices(path: Option<&PathBuf>, m: &mut RunManifest) -> Result<Option<PriceTable>, CliError> {
    let Some(path) = path else { return Ok(None) };
    let table = PriceTable::from_toml(&read_text(path)?).map_err(|e| CliError::input(path, e))?;
    m.input(path)?;
    Ok(Some(table))
}

fn read_full_bundle(dir: &Path) -> Result<TaskBundle, CliError> {
    let bundle = read_bundle(dir).map_err(reading)?;
    if bundle.tasks.iter().any(|t| t.ground_truth.is_empty()) {
        let path = dir.join("ground_truth.json");
        return Err(CliError::input(&path, "bundle has no ground truth; rebuild it without --public"));
    }
    Ok(bundle)
}

fn write_report(report: &Report, out: &Path, written: &mut Vec<PathBuf>) -> Result<(), CliError> {
    write_file(out.join("report.json"), &report.to_json(), written)?;
    write_file(out.join("report.csv"), &report.to_csv(), written)?;
    write_file(out.join("leaderboard.txt"), &(report.leaderboard_row() + "\n"), written)
}

fn eval(a: EvalArgs) -> Result<(), CliError> {
    let mut m = RunManifest::start("eval");
    let bundle = read_full_bundle(&a.bundle)?;
    m.seeds.push(bundle.seed);
    m.input(&a.bundle.join("tasks.json"))?;
    let prices = load_prices(a.prices.as_ref(), &mut m)?;
    let (completer, parallel): (Box<dyn Completer>, usize) = match a.endpoint.as_str() {
        "mock-echo" => (Box::new(MockEcho::new(&bundle)), 1),
        "garbage" => (Box::new(Garbage), 1),
        file => {
            let path = Path::new(file);
            let config = EndpointConfig::from_toml(&read_text(path)?).map_err(|e| CliError::input(path, e))?;
            m.input(path)?;
            if std::env::var_os(&config.credential_env_var).is_none() {
                return Err(CliError::invalid(format!(
                    "environment variable {} (named in {}) is not set",
                    config.credential_env_var,
                    path.display()
                )));
            }
            let parallel = config.max_parallel;
            let client = HttpCompleter::new(config).map_err(|e| CliError::input(path, e))?;
            (Box::new(client), parallel)
        }
    };
    let max_parallel = a.max_parallel.unwrap_or(parallel);
    if max_parallel == 0 {
        return Err(CliError::invalid("--max-parallel must be at least 1"));
    }
    create_dir(&a.out)?;
    let results_path = a.out.join("results.jsonl");
    let opts = RunOptions {
        max_parallel,
        results_path: Some(results_path.clone()),
        ..Default::default()
    };
    let results = run(&bundle, completer.as_ref(), &opts).map_err(|e| CliError::new(Class::Output, e.to_string()))?;
    let report = aggregate(
        completer.model(),
        &[(&bundle, &results)],
        prices.as_ref(),
        ReportOptions {
            exclude_transport_failures: a.exclude_transport_failures,
        },
    );
    let mut written = vec![results_path];
    write_report(&report, &a.out, &mut written)?;
    m.outputs(&written)?;
    m.finish(&a.out)?;
    println!("{}", report.leaderboard_row());
    Ok(())
}

fn report(a: ReportArgs) -> Result<(), CliError> {
    if a.bundle.len() != a.results.len() {
        return Err(CliError::invalid("give one --results file per --bundle"));
    }
    let mut m = RunManifest::start("report");
    let prices = load_prices(a.prices.as_ref(), &mut m)?;
    let mut loaded = Vec::new();
    for (dir, path) in a.bundle.iter().zip(&a.results) {
        let bundle = read_full_bundle(dir)?;
        if !path.exists() {
            return Err(CliError::input(path, "results file not found"));
        }
        let results = load_results(path).map_err(|e| CliError::input(path, e))?;
        m.input(path)?;
        m.seeds.push(bundle.seed);
        loaded.push((bundle, results));
    }
    let runs: Vec<_> = loaded.iter().map(|(b, r)| (b, r.as_slice())).collect();
    let report = aggregate(
        &a.model,
        &runs,
        prices.as_ref(),
        ReportOptions {
            exclude_transport_failures: a.exclude_transport_failures,
        },
    );
    let mut written = Vec::new();
    write_report(&report, &a.out, &mut written)?;
    m.outputs(&written)?;
    m.finish(&a.out)?;
    println!("{}", report.leaderboard_row());
    Ok(())
}

fn verify_cmd(a: VerifyArgs) -> Result<(), CliError> {
    let mut opts = VerifyOptions {
        first_seed: a.first_seed,
        seeds: a.seeds,
        sizes: a.sizes,
        ..Default::default()
    };
    if !a.profiles.is_empty() {
        opts.profiles = a
            .profiles
            .iter()
            .map(|p| match p.parse::<CompanyKind>() {
                Ok(k) if k != CompanyKind::Custom => Ok(k),
                _ => Err(CliError::invalid(format!("unknown builtin profile {p:?}"))),
            })
            .collect::<Result<_, _>>()?;
    }
    if let Some(t) = a.threads {
        opts.threads = t.max(1);
    }
    if opts.seeds == 0 || opts.sizes.is_empty() {
        return Err(CliError::invalid("nothing to verify: need --seeds > 0 and at least one size"));
    }
    let report = verify(&opts);
    if let Some(out) = &a.out {
        let mut m = RunManifest::start("verify");
        m.seeds = (opts.first_seed..opts.first_seed + opts.seeds).collect();
        let mut written = Vec::new();
        write_file(out.join("verify.json"), &to_json(&report), &mut written)?;
        m.outputs(&written)?;
        m.finish(out)?;
    }
    let summary = serde_json::json!({
        "runs": report.runs,
        "checks": report.checks,
        "failures": report.findings.len(),
        "slowest_generation_ms": report.slowest_generation_ms,
        "elapsed_seconds": report.elapsed_seconds,
    });
    println!("{summary}");
    if !report.passed() {
        let first = &report.findings[0];
        return Err(CliError::new(
            Class::Violation,
            format!(
                "{} violations; first: {} on {} seed {} ({} txns): {}",
                report.findings.len(),
                first.check,
                first.profile,
                first.seed,
                first.transactions,
                first.detail
            ),
        ));
    }
    Ok(())
}
