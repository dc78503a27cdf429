//! On-disk bundle layout:
//!
//! ```text
//! bundle.json          company, seed, counts, notes, worked examples
//! tasks.json           task specs without answers
//! prompts/<id>.txt     rendered prompts
//! attachments/...      rendered statements, journal and audit corpora
//! ground_truth.json    answers by task id (optional)
//! ```
//!
//! Audit suites (one corrupted journal per audit task) live apart from the
//! bundle, since they are inputs to it:
//!
//! ```text
//! index.json              task ids and injection plans
//! <task_id>.jsonl         corrupted journal
//! <task_id>.errors.json   error manifest
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::CompanyKind;

use crate::audit::InjectionPlan;
use crate::sim::Journal;

use super::{render_prompt, AuditCase, Domain, Solution, TaskBundle, TaskSpec, WorkedExample};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Journal {
        path: PathBuf,
        #[source]
        source: crate::sim::JournalFormatError,
    },
    #[error("attachment name {0:?} escapes the bundle directory")]
    BadAttachmentName(String),
}

#[derive(Serialize, Deserialize)]
struct Meta {
    company: CompanyKind,
    seed: u64,
    journal_digest: String,
    total: usize,
    counts: IndexMap<String, usize>,
    notes: Vec<String>,
    attachments: Vec<String>,
    examples: BTreeMap<String, WorkedExample>,
}

fn write(path: &Path, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), BundleError> {
    let io = |source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io)?;
    }
    fs::write(path, contents).map_err(io)?;
    written.push(path.to_path_buf());
    Ok(())
}

fn to_json<T: Serialize>(path: &Path, value: &T) -> Result<String, BundleError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|source| BundleError::Json {
            path: path.to_path_buf(),
            source,
        })
}

fn safe_name(name: &str) -> Result<(), BundleError> {
    let ok = !name.is_empty()
        && !name.starts_with('/')
        && Path::new(name)
            .components()
            .all(|c| matches!(c, std::path::Component::Normal(_)));
    if ok {
        Ok(())
    } else {
        Err(BundleError::BadAttachmentName(name.to_string()))
    }
}

/// Write `bundle` under `dir`; returns every file written, in write order.
/// Without `with_ground_truth` the directory is safe to hand to a model.
pub fn write_bundle(bundle: &TaskBundle, dir: &Path, with_ground_truth: bool) -> Result<Vec<PathBuf>, BundleError> {
    let mut written = Vec::new();
    let meta = Meta {
        company: bundle.company,
        seed: bundle.seed,
        journal_digest: bundle.journal_digest.clone(),
        total: bundle.tasks.len(),
        counts: Domain::ALL
            .iter()
            .map(|d| (d.name().to_string(), bundle.count(*d)))
            .collect(),
        notes: bundle.notes.clone(),
        attachments: bundle.attachments.keys().cloned().collect(),
        examples: bundle.examples.clone(),
    };
    let path = dir.join("bundle.json");
    write(&path, &to_json(&path, &meta)?, &mut written)?;

    let bare: Vec<TaskSpec> = bundle
        .tasks
        .iter()
        .map(|t| TaskSpec {
            ground_truth: Solution::new(),
            ..t.clone()
        })
        .collect();
    let path = dir.join("tasks.json");
    write(&path, &to_json(&path, &bare)?, &mut written)?;

    for task in &bundle.tasks {
        let path = dir.join("prompts").join(format!("{}.txt", task.task_id));
        write(&path, &render_prompt(task, bundle), &mut written)?;
    }
    for (name, text) in &bundle.attachments {
        safe_name(name)?;
        write(&dir.join("attachments").join(name), text, &mut written)?;
    }
    if with_ground_truth {
        let truth: IndexMap<&str, &Solution> = bundle
            .tasks
            .iter()
            .map(|t| (t.task_id.as_str(), &t.ground_truth))
            .collect();
        let path = dir.join("ground_truth.json");
        write(&path, &to_json(&path, &truth)?, &mut written)?;
    }
    Ok(written)
}

fn read(path: &Path) -> Result<String, BundleError> {
    fs::read_to_string(path).map_err(|source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn from_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, BundleError> {
    serde_json::from_str(&read(path)?).map_err(|source| BundleError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Load a bundle written by [`write_bundle`]. Ground truth is merged in when
/// `ground_truth.json` is present.
pub fn read_bundle(dir: &Path) -> Result<TaskBundle, BundleError> {
    let meta: Meta = from_json(&dir.join("bundle.json"))?;
    let mut tasks: Vec<TaskSpec> = from_json(&dir.join("tasks.json"))?;
    let truth_path = dir.join("ground_truth.json");
    if truth_path.exists() {
        let mut truth: IndexMap<String, Solution> = from_json(&truth_path)?;
        for t in &mut tasks {
            if let Some(s) = truth.swap_remove(&t.task_id) {
                t.ground_truth = s;
            }
        }
    }
    let mut attachments = BTreeMap::new();
    for name in meta.attachments {
        safe_name(&name)?;
        let text = read(&dir.join("attachments").join(&name))?;
        attachments.insert(name, text);
    }
    Ok(TaskBundle {
        company: meta.company,
        seed: meta.seed,
        journal_digest: meta.journal_digest,
        tasks,
        attachments,
        examples: meta.examples,
        notes: meta.notes,
    })
}

#[derive(Serialize, Deserialize)]
struct AuditIndexEntry {
    task_id: String,
    plan: InjectionPlan,
}

pub fn write_audit_suite(cases: &[AuditCase], dir: &Path) -> Result<Vec<PathBuf>, BundleError> {
    let mut written = Vec::new();
    let index: Vec<AuditIndexEntry> = cases
        .iter()
        .map(|c| AuditIndexEntry {
            task_id: c.task_id.clone(),
            plan: c.plan.clone(),
        })
        .collect();
    let path = dir.join("index.json");
    write(&path, &to_json(&path, &index)?, &mut written)?;
    for c in cases {
        safe_name(&c.task_id)?;
        write(&dir.join(format!("{}.jsonl", c.task_id)), &c.corrupted.to_jsonl(), &mut written)?;
        let path = dir.join(format!("{}.errors.json", c.task_id));
        write(&path, &to_json(&path, &c.manifest)?, &mut written)?;
    }
    Ok(written)
}

/// Load an audit suite written by [`write_audit_suite`]. A missing file is
/// reported with its path.
pub fn read_audit_suite(dir: &Path) -> Result<Vec<AuditCase>, BundleError> {
    let index: Vec<AuditIndexEntry> = from_json(&dir.join("index.json"))?;
    let mut cases = Vec::with_capacity(index.len());
    for entry in index {
        safe_name(&entry.task_id)?;
        let path = dir.join(format!("{}.jsonl", entry.task_id));
        let corrupted = Journal::from_jsonl(&read(&path)?).map_err(|source| BundleError::Journal { path, source })?;
        let manifest = from_json(&dir.join(format!("{}.errors.json", entry.task_id)))?;
        cases.push(AuditCase {
            task_id: entry.task_id,
            plan: entry.plan,
            corrupted,
            manifest,
        });
    }
    Ok(cases)
}
