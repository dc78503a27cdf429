use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::suite::{Domain, TaskBundle};

use super::run::{EvalResult, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Price {
    /// Currency units per million prompt tokens.
    pub prompt: f64,
    /// Currency units per million completion tokens.
    pub completion: f64,
}

/// Model name → price, loaded from TOML:
///
/// ```toml
/// currency = "USD"
/// [models.gpt-4o-mini]
/// prompt = 0.15
/// completion = 0.60
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceTable {
    #[serde(default = "usd")]
    pub currency: String,
    pub models: BTreeMap<String, Price>,
}

fn usd() -> String {
    "USD".into()
}

#[derive(Debug, Error)]
pub enum PriceError {
    #[error("price for {0} must be a non-negative number")]
    Negative(String),
    #[error("invalid price file: {0}")]
    Toml(#[from] toml::de::Error),
}

impl PriceTable {
    pub fn from_toml(text: &str) -> Result<Self, PriceError> {
        let table: PriceTable = toml::from_str(text)?;
        for (model, p) in &table.models {
            if !(p.prompt >= 0.0 && p.completion >= 0.0 && p.prompt.is_finite() && p.completion.is_finite()) {
                return Err(PriceError::Negative(model.clone()));
            }
        }
        Ok(table)
    }

    pub fn cost(&self, model: &str, prompt_tokens: u64, completion_tokens: u64) -> Option<f64> {
        let p = self.models.get(model)?;
        Some((prompt_tokens as f64 * p.prompt + completion_tokens as f64 * p.completion) / 1_000_000.0)
    }
}

/// How transport failures enter accuracy. By default they count as wrong
/// answers; with `exclude_transport_failures` they leave the denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub exclude_transport_failures: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bucket {
    pub key: String,
    pub tasks: usize,
    /// Tasks counted in the accuracy denominator.
    pub scored: usize,
    pub correct: usize,
    /// Percentage, `correct / scored * 100`; 0 when nothing was scored.
    pub accuracy: f64,
    pub mean_prompt_tokens: f64,
    pub mean_completion_tokens: f64,
}

#[derive(Default)]
struct Tally {
    tasks: usize,
    scored: usize,
    correct: usize,
    prompt: u64,
    completion: u64,
}

impl Tally {
    fn add(&mut self, r: &EvalResult, counted: bool) {
        self.tasks += 1;
        self.prompt += r.prompt_tokens;
        self.completion += r.completion_tokens;
        if counted {
            self.scored += 1;
            self.correct += r.task_correct as usize;
        }
    }

    fn bucket(&self, key: String) -> Bucket {
        let mean = |n: u64| if self.tasks == 0 { 0.0 } else { n as f64 / self.tasks as f64 };
        Bucket {
            key,
            tasks: self.tasks,
            scored: self.scored,
            correct: self.correct,
            accuracy: accuracy(self.correct, self.scored),
            mean_prompt_tokens: mean(self.prompt),
            mean_completion_tokens: mean(self.completion),
        }
    }
}

pub fn accuracy(correct: usize, scored: usize) -> f64 {
    if scored == 0 {
        0.0
    } else {
        correct as f64 / scored as f64 * 100.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub overall: Bucket,
    pub by_domain: Vec<Bucket>,
    pub by_complexity: Vec<Bucket>,
    pub by_company: Vec<Bucket>,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    pub transport_failures: usize,
    pub parse_failures: usize,
    pub transport_failures_excluded: bool,
    /// `company/task_id` of every task without a result.
    pub missing: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<Cost>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cost {
    pub amount: f64,
    pub currency: String,
}

/// Summarise the results of one model over one or more bundles (one per
/// company). Missing results are listed, not silently dropped.
pub fn aggregate(
    model: &str,
    runs: &[(&TaskBundle, &[EvalResult])],
    prices: Option<&PriceTable>,
    opts: ReportOptions,
) -> Report {
    let mut overall = Tally::default();
    let mut by_domain: BTreeMap<usize, Tally> = BTreeMap::new();
    let mut by_complexity: BTreeMap<(u32, u32, u32), Tally> = BTreeMap::new();
    let mut by_company: BTreeMap<String, Tally> = BTreeMap::new();
    let mut missing = Vec::new();
    let (mut transport, mut parse) = (0, 0);

    for (bundle, results) in runs {
        let company = bundle.company.slug().to_string();
        let by_id: HashMap<&str, &EvalResult> = results.iter().map(|r| (r.task_id.as_str(), r)).collect();
        let tally = by_company.entry(company.clone()).or_default();
        for task in &bundle.tasks {
            let Some(r) = by_id.get(task.task_id.as_str()) else {
                missing.push(format!("{company}/{}", task.task_id));
                continue;
            };
            let counted = match &r.failure {
                Some(Failure::Transport(_)) => {
                    transport += 1;
                    !opts.exclude_transport_failures
                }
                Some(Failure::Parse(_)) => {
                    parse += 1;
                    true
                }
                None => true,
            };
            let d = Domain::ALL.iter().position(|d| *d == task.domain).unwrap_or_default();
            let k = &task.complexity;
            overall.add(r, counted);
            tally.add(r, counted);
            by_domain.entry(d).or_default().add(r, counted);
            by_complexity.entry((k.alpha, k.beta, k.gamma)).or_default().add(r, counted);
        }
    }
    missing.sort();

    let cost = prices.and_then(|p| {
        p.cost(model, overall.prompt, overall.completion).map(|amount| Cost {
            amount,
            currency: p.currency.clone(),
        })
    });
    Report {
        model: model.to_string(),
        overall: overall.bucket("overall".into()),
        by_domain: by_domain
            .iter()
            .map(|(d, t)| t.bucket(Domain::ALL[*d].name().to_string()))
            .collect(),
        by_complexity: by_complexity
            .iter()
            .map(|((a, b, g), t)| t.bucket(format!("{{{a},{b},{g}}}")))
            .collect(),
        by_company: by_company.iter().map(|(c, t)| t.bucket(c.clone())).collect(),
        prompt_tokens: overall.prompt,
        completion_tokens: overall.completion,
        transport_failures: transport,
        parse_failures: parse,
        transport_failures_excluded: opts.exclude_transport_failures,
        missing,
        cost,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One row per bucket: `group,key,tasks,scored,correct,accuracy,...`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "group",
            "key",
            "tasks",
            "scored",
            "correct",
            "accuracy",
            "mean_prompt_tokens",
            "mean_completion_tokens",
        ])
        .expect("in-memory write");
        let groups = [
            ("overall", std::slice::from_ref(&self.overall)),
            ("domain", self.by_domain.as_slice()),
            ("complexity", self.by_complexity.as_slice()),
            ("company", self.by_company.as_slice()),
        ];
        for (group, buckets) in groups {
            for b in buckets {
                w.write_record([
                    group.to_string(),
                    b.key.clone(),
                    b.tasks.to_string(),
                    b.scored.to_string(),
                    b.correct.to_string(),
                    format!("{:.2}", b.accuracy),
                    format!("{:.1}", b.mean_prompt_tokens),
                    format!("{:.1}", b.mean_completion_tokens),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    /// `model | overall | literacy | accounting | auditing | consulting | tokens | cost`
    pub fn leaderboard_row(&self) -> String {
        let mut cols = vec![self.model.clone(), format!("{:.2}", self.overall.accuracy)];
        for d in Domain::ALL {
            let acc = self.by_domain.iter().find(|b| b.key == d.name()).map(|b| b.accuracy);
            cols.push(acc.map_or("-".into(), |a| format!("{a:.2}")));
        }
        cols.push(format!("{}+{}", self.prompt_tokens, self.completion_tokens));
        cols.push(
            self.cost
                .as_ref()
                .map_or("-".into(), |c| format!("{:.2} {}", c.amount, c.currency)),
        );
        cols.join(" | ")
    }
}
