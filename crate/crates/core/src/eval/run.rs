use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::suite::{render_prompt, Solution, TaskBundle};

use super::endpoint::{Completer, CompletionError};
use super::parse::extract_solution;
use super::score::{score, ScoreOptions};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "message", rename_all = "snake_case")]
pub enum Failure {
    /// The endpoint never produced a response.
    Transport(String),
    /// A response arrived but held no usable solution block.
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub task_id: String,
    pub raw_response: String,
    pub parsed_solution: Option<Solution>,
    pub per_field_correct: IndexMap<String, bool>,
    pub task_correct: bool,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    /// Wall-clock seconds including retries.
    pub latency: f64,
    pub attempt: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("max_parallel must be at least 1")]
    Parallelism,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub max_parallel: usize,
    /// Append-only JSON-lines sink; tasks already recorded there are skipped.
    pub results_path: Option<PathBuf>,
    pub score: ScoreOptions,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_parallel: 1,
            results_path: None,
            score: ScoreOptions::default(),
        }
    }
}

/// Read a results file. Lines that do not parse (a record cut short by a
/// crash) are dropped so their tasks run again.
pub fn load_results(path: &Path) -> Result<Vec<EvalResult>, RunError> {
    let io = |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io(e)),
    };
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        if let Ok(r) = serde_json::from_str::<EvalResult>(&line.map_err(io)?) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Prompt, parse and score one task.
pub fn evaluate(completer: &dyn Completer, bundle: &TaskBundle, task_id: &str, opts: ScoreOptions) -> EvalResult {
    let task = bundle.task(task_id).expect("task ids come from the bundle");
    let prompt = render_prompt(task, bundle);
    let started = Instant::now();
    let outcome = completer.complete(task_id, &prompt);
    let latency = started.elapsed().as_secs_f64();
    let failed = |failure, attempt| EvalResult {
        task_id: task_id.to_string(),
        raw_response: String::new(),
        parsed_solution: None,
        per_field_correct: task.ground_truth.keys().map(|k| (k.clone(), false)).collect(),
        task_correct: false,
        prompt_tokens: 0,
        completion_tokens: 0,
        latency,
        attempt,
        failure: Some(failure),
    };
    let completion = match outcome {
        Ok(c) => c,
        Err(e @ CompletionError::BadResponse(_)) => return failed(Failure::Parse(e.to_string()), e.attempts()),
        Err(e) => return failed(Failure::Transport(e.to_string()), e.attempts()),
    };
    let mut result = failed(Failure::Parse(String::new()), completion.attempts);
    result.raw_response = completion.text;
    result.prompt_tokens = completion.usage.prompt_tokens;
    result.completion_tokens = completion.usage.completion_tokens;
    match extract_solution(&result.raw_response) {
        Ok(parsed) => {
            let s = score(&parsed, task, opts);
            result.per_field_correct = s.per_field;
            result.task_correct = s.task_correct;
            result.parsed_solution = Some(parsed);
            result.failure = None;
        }
        Err(e) => result.failure = Some(Failure::Parse(e.to_string())),
    }
    result
}

/// Evaluate every task of `bundle` not already present in the results file,
/// with up to `max_parallel` requests in flight. Returns all results (earlier
/// and new) sorted by task id.
pub fn run(bundle: &TaskBundle, completer: &dyn Completer, opts: &RunOptions) -> Result<Vec<EvalResult>, RunError> {
    if opts.max_parallel == 0 {
        return Err(RunError::Parallelism);
    }
    let known: Vec<EvalResult> = match &opts.results_path {
        Some(p) => load_results(p)?
            .into_iter()
            .filter(|r| bundle.task(&r.task_id).is_some())
            .collect(),
        None => Vec::new(),
    };
    let done: BTreeSet<&str> = known.iter().map(|r| r.task_id.as_str()).collect();
    let pending: Vec<&str> = bundle
        .tasks
        .iter()
        .map(|t| t.task_id.as_str())
        .filter(|id| !done.contains(id))
        .collect();

    let sink = match &opts.results_path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|source| RunError::Io {
                    path: parent.to_path_buf(),
                    source,
                })?;
            }
            let io = |source| RunError::Io {
                path: p.clone(),
                source,
            };
            let mut file = OpenOptions::new().create(true).append(true).open(p).map_err(io)?;
            // a record cut short by a crash must not swallow the next one
            if std::fs::read(p).map_err(io)?.last().is_some_and(|b| *b != b'\n') {
                file.write_all(b"\n").map_err(io)?;
            }
            Some((p.clone(), Mutex::new(file)))
        }
        None => None,
    };

    let next = AtomicUsize::new(0);
    let fresh = Mutex::new(Vec::with_capacity(pending.len()));
    let sink_error = Mutex::new(None);
    std::thread::scope(|s| {
        for _ in 0..opts.max_parallel.min(pending.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(id) = pending.get(i) else { break };
                let result = evaluate(completer, bundle, id, opts.score);
                if let Some((path, file)) = &sink {
                    let line = serde_json::to_string(&result).expect("results serialize") + "\n";
                    let mut f = file.lock().unwrap_or_else(|e| e.into_inner());
                    if let Err(source) = f.write_all(line.as_bytes()).and_then(|_| f.flush()) {
                        sink_error.lock().unwrap_or_else(|e| e.into_inner()).get_or_insert(RunError::Io {
                            path: path.clone(),
                            source,
                        });
                    }
                }
                fresh.lock().unwrap_or_else(|e| e.into_inner()).push(result);
            });
        }
    });
    if let Some(e) = sink_error.into_inner().unwrap_or_else(|e| e.into_inner()) {
        return Err(e);
    }
    let mut all = known;
    all.extend(fresh.into_inner().unwrap_or_else(|e| e.into_inner()));
    all.sort_by(|a, b| a.task_id.cmp(&b.task_id));
    all.dedup_by(|a, b| a.task_id == b.task_id);
    Ok(all)
}
