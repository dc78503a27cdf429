//! The benchmark catalog: 183 tasks over one simulated company, their
//! prompts, and exact answers computed from the statements, indicators and
//! injected-error manifests.

mod catalog;
mod definitions;
mod io;
mod prompt;

pub use io::{read_audit_suite, read_bundle, write_audit_suite, write_bundle, BundleError};
pub use prompt::{problem, render_prompt, solution_skeleton};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::{inject, render_audit_corpus, render_invoice, AuditField, ErrorManifest, InjectionError, InjectionPlan};
use crate::indicators::compute;
use crate::profile::CompanyKind;
use crate::seed::derive_seed;
use crate::sim::{simulate, Journal, SimulationConfig, SimulationError, TxType};
use crate::statements::{compile, render_statement_text, BsLine, CfLine, CompileError, IsLine, StatementKind, StatementSet};

use catalog::{Item, Row, Span, StatementTarget, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Domain {
    FinancialLiteracy,
    Accounting,
    Auditing,
    Consulting,
}

impl Domain {
    pub const ALL: [Domain; 4] = [
        Domain::FinancialLiteracy,
        Domain::Accounting,
        Domain::Auditing,
        Domain::Consulting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Domain::FinancialLiteracy => "Financial Literacy",
            Domain::Accounting => "Accounting",
            Domain::Auditing => "Auditing",
            Domain::Consulting => "Consulting",
        }
    }

    fn slug(self) -> &'static str {
        match self {
            Domain::FinancialLiteracy => "literacy",
            Domain::Accounting => "accounting",
            Domain::Auditing => "audit",
            Domain::Consulting => "consulting",
        }
    }

    /// Number of tasks the catalog holds for this domain.
    pub fn task_count(self) -> usize {
        match self {
            Domain::FinancialLiteracy => 64,
            Domain::Accounting => 49,
            Domain::Auditing | Domain::Consulting => 35,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InputKind {
    BalanceSheet,
    IncomeStatement,
    CashFlowStatement,
    JournalText,
    CorruptedJournalText,
}

impl InputKind {
    /// Key of this input inside a task's problem object.
    pub fn title(self) -> &'static str {
        match self {
            InputKind::BalanceSheet => "Balance Sheet",
            InputKind::IncomeStatement => "Income Statement",
            InputKind::CashFlowStatement => "Cash Flow Statement",
            InputKind::JournalText => "Transactions",
            InputKind::CorruptedJournalText => "Invoices and Records",
        }
    }
}

/// ⟨α, β, γ⟩: data items involved, input sources, outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Complexity {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.alpha, self.beta, self.gamma)
    }
}

/// One output field. Composite fields carry named parts, e.g. `Initial` and
/// `Final` for a balance-sheet line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaField {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<String>,
}

impl SchemaField {
    fn scalar(name: impl Into<String>) -> Self {
        SchemaField {
            name: name.into(),
            parts: Vec::new(),
        }
    }

    fn composite(name: impl Into<String>, parts: &[&str]) -> Self {
        SchemaField {
            name: name.into(),
            parts: parts.iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Answer {
    Value(String),
    Group(IndexMap<String, String>),
}

pub type Solution = IndexMap<String, Answer>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub task_id: String,
    pub domain: Domain,
    /// Table within the domain, e.g. `bs` or `multi`.
    pub group: String,
    pub name: String,
    pub complexity: Complexity,
    pub inputs: Vec<InputKind>,
    pub solution_schema: Vec<SchemaField>,
    /// The question text; attachments are added when the prompt is built.
    pub question: String,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub ground_truth: Solution,
}

/// A corrupted copy of the journal made for one audit task.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditCase {
    pub task_id: String,
    pub plan: InjectionPlan,
    pub corrupted: Journal,
    pub manifest: ErrorManifest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkedExample {
    pub problem: IndexMap<String, String>,
    pub solution: Solution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskBundle {
    pub company: CompanyKind,
    pub seed: u64,
    pub journal_digest: String,
    pub tasks: Vec<TaskSpec>,
    /// Rendered inputs by file name, e.g. `balance_sheet.txt`.
    pub attachments: BTreeMap<String, String>,
    pub examples: BTreeMap<String, WorkedExample>,
    pub notes: Vec<String>,
}

impl TaskBundle {
    pub fn task(&self, task_id: &str) -> Option<&TaskSpec> {
        self.tasks.iter().find(|t| t.task_id == task_id)
    }

    pub fn count(&self, domain: Domain) -> usize {
        self.tasks.iter().filter(|t| t.domain == domain).count()
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown task {0}")]
    UnknownTask(String),
    #[error("no corrupted journal supplied for audit task {0}")]
    MissingAuditCase(String),
    #[error("audit task {task_id}: {reason}")]
    AuditMismatch { task_id: String, reason: String },
    #[error("task {task_id} is infeasible: {reason}")]
    Infeasible { task_id: String, reason: String },
    #[error("task {task_id} has {got} outputs, expected {expected}")]
    Arity { task_id: String, expected: usize, got: usize },
    #[error("audit task {task_id}: {source}")]
    Injection {
        task_id: String,
        #[source]
        source: InjectionError,
    },
    #[error("no feasible worked-example scenario after {0} attempts")]
    NoExample(usize),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

fn indexed_rows() -> &'static [(String, Row)] {
    static ROWS: OnceLock<Vec<(String, Row)>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let mut counters: BTreeMap<(Domain, &str), usize> = BTreeMap::new();
        catalog::rows()
            .into_iter()
            .map(|row| {
                let n = counters.entry((row.domain, row.group)).or_default();
                *n += 1;
                (format!("{}-{}-{:02}", row.domain.slug(), row.group, n), row)
            })
            .collect()
    })
}

fn row(task_id: &str) -> Result<&'static Row, SuiteError> {
    indexed_rows()
        .iter()
        .find(|(id, _)| id == task_id)
        .map(|(_, r)| r)
        .ok_or_else(|| SuiteError::UnknownTask(task_id.to_string()))
}

/// Merged record/original pair, or extra context, in an audit answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AuditSlot {
    Id,
    Recorded(AuditField),
    Original(AuditField),
    Pair(AuditField),
    Context(AuditField),
}

/// Fields used to pad an audit answer up to γ, most useful first.
const PAD_ORDER: [AuditField; 12] = [
    AuditField::Preparer,
    AuditField::Approver,
    AuditField::Date,
    AuditField::Type,
    AuditField::Amount,
    AuditField::PaymentMethod,
    AuditField::ReceiveMethod,
    AuditField::PaymentReceiptStatus,
    AuditField::Quantity,
    AuditField::UnitPrice,
    AuditField::TaxAmount,
    AuditField::Profit,
];

/// `ID` plus a recorded/original pair per error; trailing pairs merge into
/// one composite field while there are more than γ, and context fields of
/// the corrupted record pad the answer when there are fewer.
fn audit_slots(errors: &[crate::audit::ErrorType], gamma: usize) -> Vec<AuditSlot> {
    let fields: Vec<AuditField> = errors.iter().map(|e| e.field()).collect();
    let base = 1 + 2 * fields.len();
    let mut slots = vec![AuditSlot::Id];
    if base >= gamma {
        let merged = (base - gamma).min(fields.len());
        let split = fields.len() - merged;
        for (i, f) in fields.iter().enumerate() {
            if i < split {
                slots.push(AuditSlot::Recorded(*f));
                slots.push(AuditSlot::Original(*f));
            } else {
                slots.push(AuditSlot::Pair(*f));
            }
        }
    } else {
        for f in &fields {
            slots.push(AuditSlot::Recorded(*f));
            slots.push(AuditSlot::Original(*f));
        }
        let pad = PAD_ORDER.iter().filter(|f| !fields.contains(f)).take(gamma - base);
        slots.extend(pad.map(|f| AuditSlot::Context(*f)));
    }
    slots
}

impl AuditSlot {
    fn field(self) -> SchemaField {
        match self {
            AuditSlot::Id => SchemaField::scalar("ID"),
            AuditSlot::Recorded(f) | AuditSlot::Context(f) => SchemaField::scalar(format!("Recorded {}", f.label())),
            AuditSlot::Original(f) => SchemaField::scalar(format!("Original {}", f.label())),
            AuditSlot::Pair(f) => SchemaField::composite(f.label(), &["Recorded", "Original"]),
        }
    }
}

const INITIAL_FINAL: [&str; 2] = ["Initial", "Final"];

fn literacy_flat(items: &[Item], gamma: u32) -> bool {
    matches!(items, [Item::Bs(_, Span::Both)]) && gamma == 2
}

fn schema(row: &Row) -> Vec<SchemaField> {
    match &row.target {
        Target::Literacy(items) if literacy_flat(items, row.complexity.gamma) => {
            INITIAL_FINAL.iter().map(|p| SchemaField::scalar(*p)).collect()
        }
        Target::Literacy(items) => items
            .iter()
            .enumerate()
            .map(|(i, item)| match item {
                Item::Bs(_, Span::Both) => SchemaField::composite(format!("Item {}", i + 1), &INITIAL_FINAL),
                _ => SchemaField::scalar(format!("Item {}", i + 1)),
            })
            .collect(),
        Target::Statement(t) => match t {
            StatementTarget::Bs(_) => INITIAL_FINAL.iter().map(|p| SchemaField::scalar(*p)).collect(),
            StatementTarget::WholeBs => {
                let lines: Vec<&str> = BsLine::ALL.iter().map(|l| l.label()).collect();
                INITIAL_FINAL.iter().map(|p| SchemaField::composite(*p, &lines)).collect()
            }
            StatementTarget::Is(line) => vec![SchemaField::scalar(line.label())],
            StatementTarget::Cf(line) => vec![SchemaField::scalar(line.qualified_label())],
            StatementTarget::WholeIs => {
                let lines: Vec<&str> = IsLine::ALL.iter().map(|l| l.label()).collect();
                vec![SchemaField::composite("Income Statement", &lines)]
            }
            StatementTarget::WholeCf => {
                let labels: Vec<String> = CfLine::ALL.iter().map(|l| l.qualified_label()).collect();
                let lines: Vec<&str> = labels.iter().map(String::as_str).collect();
                vec![SchemaField::composite("Cash Flow Statement", &lines)]
            }
        },
        Target::Audit(errors) => audit_slots(errors, row.complexity.gamma as usize)
            .into_iter()
            .map(AuditSlot::field)
            .collect(),
        Target::Indicators(list) => list.iter().map(|(name, _)| SchemaField::scalar(*name)).collect(),
    }
}

fn item_definition(item: Item) -> &'static str {
    match item {
        Item::Bs(line, _) => definitions::balance_sheet(line).expect("literacy items have definitions"),
        Item::Is(line) => definitions::income_statement(line),
        Item::Cf(line) => definitions::cash_flow(line).expect("literacy items have definitions"),
    }
}

fn question(row: &Row) -> String {
    match &row.target {
        Target::Literacy(items) => {
            let mut q = String::from(
                "Find the line item in the attached statements that matches each definition below and give its value.",
            );
            for (i, item) in items.iter().enumerate() {
                let wanted = match item {
                    Item::Bs(_, Span::Both) => "Report the initial and the final value.",
                    Item::Bs(_, Span::End) => "Report the end-of-period value.",
                    _ => "Report the value for the period.",
                };
                q.push_str(&format!("\nItem {}: {} {wanted}", i + 1, item_definition(*item)));
            }
            q
        }
        Target::Statement(t) => match t {
            StatementTarget::Bs(line) => format!(
                "Compile the balance sheet from the opening balances and the transactions, and report {} at the \
                 start (Initial) and at the end (Final) of the period.",
                line.label()
            ),
            StatementTarget::WholeBs => "Compile the complete balance sheet from the opening balances and the \
                 transactions, giving every line at the start (Initial) and at the end (Final) of the period."
                .to_string(),
            StatementTarget::Is(line) => format!(
                "Compile the income statement for the period from the transactions and report {}.",
                line.label()
            ),
            StatementTarget::WholeIs => {
                "Compile the complete income statement for the period from the transactions, giving every line."
                    .to_string()
            }
            StatementTarget::Cf(line) => format!(
                "Compile the cash flow statement for the period (indirect method) from the opening balances and \
                 the transactions, and report {}.",
                line.qualified_label()
            ),
            StatementTarget::WholeCf => "Compile the complete cash flow statement for the period (indirect \
                 method) from the opening balances and the transactions, giving every line."
                .to_string(),
        },
        Target::Audit(errors) => {
            let names: Vec<&str> = errors.iter().map(|e| e.name()).collect();
            if errors.len() == 1 {
                format!(
                    "Exactly one record contains a {}. Find that transaction and report its ID together with the \
                     recorded and the original values.",
                    names[0]
                )
            } else {
                format!(
                    "Exactly one record contains all of the following errors: {}. Find that transaction and \
                     report its ID together with the recorded and the original value of each erroneous field.",
                    names.join("; ")
                )
            }
        }
        Target::Indicators(list) => {
            let mut q = String::from("Calculate the following indicators from the attached statements:");
            for (name, id) in list {
                q.push_str(&format!("\n- {name} = {}", id.formula()));
            }
            q.push_str(
                "\nBalance-sheet names without Beginning or Ending refer to the end of the period. Give ratios to \
                 two decimals; for percentages append a % sign.",
            );
            q
        }
    }
}

/// The catalog without answers: every task's id, metadata, schema and question.
pub fn catalog() -> Vec<TaskSpec> {
    indexed_rows()
        .iter()
        .map(|(id, row)| TaskSpec {
            task_id: id.clone(),
            domain: row.domain,
            group: row.group.to_string(),
            name: row.name.clone(),
            complexity: row.complexity,
            inputs: row.inputs.clone(),
            solution_schema: schema(row),
            question: question(row),
            ground_truth: Solution::new(),
        })
        .collect()
}

fn both(pair: crate::statements::LinePair) -> Answer {
    Answer::Group(IndexMap::from([
        ("Initial".to_string(), pair.initial.to_string()),
        ("Final".to_string(), pair.end.to_string()),
    ]))
}

fn value(s: impl ToString) -> Answer {
    Answer::Value(s.to_string())
}

/// The exact answer to `task` on the given statements and audit cases.
pub fn ground_truth(task: &TaskSpec, statements: &StatementSet, audit: &[AuditCase]) -> Result<Solution, SuiteError> {
    let row = row(&task.task_id)?;
    let (bs, is, cf) = (
        &statements.balance_sheet,
        &statements.income_statement,
        &statements.cash_flow_statement,
    );
    let fields = schema(row);
    let answers: Vec<Answer> = match &row.target {
        Target::Literacy(items) if literacy_flat(items, row.complexity.gamma) => {
            let Item::Bs(line, _) = items[0] else { unreachable!() };
            let pair = line.get(bs);
            vec![value(pair.initial), value(pair.end)]
        }
        Target::Literacy(items) => items
            .iter()
            .map(|item| match *item {
                Item::Bs(line, Span::Both) => both(line.get(bs)),
                Item::Bs(line, Span::End) => value(line.get(bs).end),
                Item::Is(line) => value(line.get(is)),
                Item::Cf(line) => value(line.get(cf)),
            })
            .collect(),
        Target::Statement(t) => match *t {
            StatementTarget::Bs(line) => {
                let pair = line.get(bs);
                vec![value(pair.initial), value(pair.end)]
            }
            StatementTarget::WholeBs => {
                let column = |end: bool| {
                    Answer::Group(
                        BsLine::ALL
                            .iter()
                            .map(|l| {
                                let p = l.get(bs);
                                (l.label().to_string(), if end { p.end } else { p.initial }.to_string())
                            })
                            .collect(),
                    )
                };
                vec![column(false), column(true)]
            }
            StatementTarget::Is(line) => vec![value(line.get(is))],
            StatementTarget::Cf(line) => vec![value(line.get(cf))],
            StatementTarget::WholeIs => vec![Answer::Group(
                IsLine::ALL
                    .iter()
                    .map(|l| (l.label().to_string(), l.get(is).to_string()))
                    .collect(),
            )],
            StatementTarget::WholeCf => vec![Answer::Group(
                CfLine::ALL
                    .iter()
                    .map(|l| (l.qualified_label(), l.get(cf).to_string()))
                    .collect(),
            )],
        },
        Target::Audit(errors) => {
            let case = audit
                .iter()
                .find(|c| c.task_id == task.task_id)
                .ok_or_else(|| SuiteError::MissingAuditCase(task.task_id.clone()))?;
            check_case(&task.task_id, errors, case)?;
            let id = &case.manifest.entries[0].transaction_id;
            let entry = |f: AuditField| {
                case.manifest
                    .entries
                    .iter()
                    .find(|e| e.field == f)
                    .expect("checked against the plan")
            };
            let record = case.corrupted.get(id).expect("manifest ids come from the journal");
            audit_slots(errors, row.complexity.gamma as usize)
                .into_iter()
                .map(|slot| match slot {
                    AuditSlot::Id => value(id),
                    AuditSlot::Recorded(f) => value(&entry(f).recorded_value),
                    AuditSlot::Original(f) => value(&entry(f).original_value),
                    AuditSlot::Pair(f) => Answer::Group(IndexMap::from([
                        ("Recorded".to_string(), entry(f).recorded_value.clone()),
                        ("Original".to_string(), entry(f).original_value.clone()),
                    ])),
                    AuditSlot::Context(f) => value(f.value_of(record)),
                })
                .collect()
        }
        Target::Indicators(list) => list
            .iter()
            .map(|(_, id)| {
                compute(*id, statements)
                    .map(|v| value(v.display))
                    .map_err(|e| SuiteError::Infeasible {
                        task_id: task.task_id.clone(),
                        reason: e.to_string(),
                    })
            })
            .collect::<Result<_, _>>()?,
    };
    if answers.len() != fields.len() || fields.len() != row.complexity.gamma as usize {
        return Err(SuiteError::Arity {
            task_id: task.task_id.clone(),
            expected: row.complexity.gamma as usize,
            got: answers.len(),
        });
    }
    Ok(fields.into_iter().map(|f| f.name).zip(answers).collect())
}

fn check_case(task_id: &str, errors: &[crate::audit::ErrorType], case: &AuditCase) -> Result<(), SuiteError> {
    let mismatch = |reason: String| SuiteError::AuditMismatch {
        task_id: task_id.to_string(),
        reason,
    };
    let mut expected: Vec<AuditField> = errors.iter().map(|e| e.field()).collect();
    expected.sort();
    let found: Vec<AuditField> = case.manifest.entries.iter().map(|e| e.field).collect();
    if found != expected {
        return Err(mismatch(format!("manifest fields {found:?}, expected {expected:?}")));
    }
    let first = &case.manifest.entries[0].transaction_id;
    if case.manifest.entries.iter().any(|e| &e.transaction_id != first) {
        return Err(mismatch("errors are spread over several transactions".into()));
    }
    Ok(())
}

/// Injection plans for the audit tasks: one error per single-error task,
/// co-located errors on a sale for the double- and multi-error tasks.
pub fn audit_plans(seed: u64) -> Vec<(String, InjectionPlan)> {
    indexed_rows()
        .iter()
        .filter_map(|(id, row)| match &row.target {
            Target::Audit(errors) => {
                let mut plan = InjectionPlan::new(derive_seed(seed, id));
                for e in errors {
                    plan = plan.with(*e, 1);
                }
                if errors.len() > 1 {
                    plan = plan.colocated();
                    plan.scope = Some(vec![TxType::Sale]);
                }
                Some((id.clone(), plan))
            }
            _ => None,
        })
        .collect()
}

/// Run every audit plan against `journal`.
pub fn inject_audit_suite(journal: &Journal, seed: u64) -> Result<Vec<AuditCase>, SuiteError> {
    audit_plans(seed)
        .into_iter()
        .map(|(task_id, plan)| {
            let (corrupted, manifest) = inject(journal, &plan).map_err(|source| SuiteError::Injection {
                task_id: task_id.clone(),
                source,
            })?;
            Ok(AuditCase {
                task_id,
                plan,
                corrupted,
                manifest,
            })
        })
        .collect()
}

/// File name of the attachment that feeds `input` to `task`.
pub fn attachment_key(task_id: &str, input: InputKind) -> String {
    match input {
        InputKind::BalanceSheet => "balance_sheet.txt".into(),
        InputKind::IncomeStatement => "income_statement.txt".into(),
        InputKind::CashFlowStatement => "cash_flow_statement.txt".into(),
        InputKind::JournalText => "journal.txt".into(),
        InputKind::CorruptedJournalText => format!("audit/{task_id}.txt"),
    }
}

/// Opening balances followed by one invoice per line.
pub fn render_journal_text(journal: &Journal) -> String {
    let o = &journal.opening;
    let mut out = format!(
        "Opening balances: Cash on Hand {}; Bank Deposits {}; Fixed Assets {}; Paid-in Capital {}.\n",
        o.cash, o.bank, o.fixed_assets, o.paid_in_capital
    );
    for t in &journal.transactions {
        out.push_str(&render_invoice(t));
        out.push('\n');
    }
    out
}

fn attachments(journal: &Journal, statements: &StatementSet, audit: &[AuditCase]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (kind, input) in [
        (StatementKind::BalanceSheet, InputKind::BalanceSheet),
        (StatementKind::IncomeStatement, InputKind::IncomeStatement),
        (StatementKind::CashFlowStatement, InputKind::CashFlowStatement),
    ] {
        out.insert(attachment_key("", input), render_statement_text(statements, kind));
    }
    out.insert(attachment_key("", InputKind::JournalText), render_journal_text(journal));
    for case in audit {
        out.insert(
            attachment_key(&case.task_id, InputKind::CorruptedJournalText),
            render_audit_corpus(journal, &case.corrupted),
        );
    }
    out
}

/// Target size of the scenario behind the worked examples.
pub const EXAMPLE_TRANSACTIONS: usize = 40;
const EXAMPLE_ATTEMPTS: usize = 16;

struct ExampleData {
    statements: StatementSet,
    audit: Vec<AuditCase>,
    attachments: BTreeMap<String, String>,
}

/// A small scenario from the same company on a derived seed, so examples
/// never reveal an answer. Seeds are tried in order until every task is
/// answerable.
fn example_data(journal: &Journal, tasks: &[TaskSpec]) -> Result<ExampleData, SuiteError> {
    for attempt in 0..EXAMPLE_ATTEMPTS {
        let seed = derive_seed(journal.config.seed, &format!("example/{attempt}"));
        let config = SimulationConfig {
            seed,
            target_transactions: Some(EXAMPLE_TRANSACTIONS),
            ..journal.config.clone()
        };
        let small = simulate(&journal.profile, &config)?;
        let statements = compile(&small)?;
        let Ok(audit) = inject_audit_suite(&small, seed) else { continue };
        if tasks.iter().all(|t| ground_truth(t, &statements, &audit).is_ok()) {
            let attachments = attachments(&small, &statements, &audit);
            return Ok(ExampleData {
                statements,
                audit,
                attachments,
            });
        }
    }
    Err(SuiteError::NoExample(EXAMPLE_ATTEMPTS))
}

/// Assemble the full catalog over one journal, its statements and the
/// audit cases made from it. Any task that cannot be answered exactly
/// rejects the whole bundle.
pub fn build_catalog(journal: &Journal, statements: &StatementSet, audit: &[AuditCase]) -> Result<TaskBundle, SuiteError> {
    let mut tasks = catalog();
    for task in &mut tasks {
        task.ground_truth = ground_truth(task, statements, audit)?;
    }
    let example = example_data(journal, &tasks)?;
    let mut examples = BTreeMap::new();
    for task in &tasks {
        examples.insert(
            task.task_id.clone(),
            WorkedExample {
                problem: problem(task, &example.attachments),
                solution: ground_truth(task, &example.statements, &example.audit)?,
            },
        );
    }
    Ok(TaskBundle {
        company: journal.profile.kind,
        seed: journal.config.seed,
        journal_digest: journal.digest(),
        tasks,
        attachments: attachments(journal, statements, audit),
        examples,
        notes: vec![catalog::RECONCILIATION_NOTE.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::ErrorType;

    #[test]
    fn audit_slot_rules() {
        let names = |errors: &[ErrorType], gamma| {
            audit_slots(errors, gamma)
                .into_iter()
                .map(|s| s.field().name)
                .collect::<Vec<_>>()
        };
        assert_eq!(
            names(&[ErrorType::MissingApprover], 4),
            ["ID", "Recorded Approver", "Original Approver", "Recorded Preparer"]
        );
        assert_eq!(names(&[ErrorType::MissingPreparer], 2), ["ID", "Preparer"]);
        assert_eq!(
            names(&[ErrorType::TaxAmountCalc, ErrorType::TypeRecord], 4),
            ["ID", "Recorded Tax Amount", "Original Tax Amount", "Type"]
        );
        assert_eq!(
            names(&[ErrorType::ReceiveMethodRecord, ErrorType::TypeRecord], 7).len(),
            7
        );
    }

    #[test]
    fn definitions_do_not_name_their_item() {
        for (_, row) in indexed_rows() {
            if let Target::Literacy(items) = &row.target {
                for item in items {
                    let label = match item {
                        Item::Bs(l, _) => l.label(),
                        Item::Is(l) => l.label(),
                        Item::Cf(l) => l.label(),
                    };
                    let def = item_definition(*item).to_lowercase();
                    assert!(!def.contains(&label.to_lowercase()), "{label}: {def}");
                }
            }
        }
    }
}
