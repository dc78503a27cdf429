use std::collections::HashMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::suite::{Solution, TaskBundle};

/// A chat-completion endpoint, usually loaded from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointConfig {
    /// Either the API root (`https://host/v1`) or the full
    /// `.../chat/completions` URL.
    pub base_url: String,
    pub model_name: String,
    /// Name of the environment variable that holds the API key.
    pub credential_env_var: String,
    #[serde(default = "one")]
    pub max_parallel: usize,
    /// Per-request timeout in seconds.
    #[serde(default = "default_timeout")]
    pub timeout: f64,
    #[serde(default = "default_retries")]
    pub retries: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    /// First retry delay in seconds; doubles on every further retry.
    #[serde(default = "default_backoff")]
    pub backoff: f64,
}

fn one() -> usize {
    1
}
fn default_timeout() -> f64 {
    120.0
}
fn default_retries() -> u32 {
    2
}
fn default_backoff() -> f64 {
    1.0
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("max_parallel must be at least 1")]
    Parallelism,
    #[error("timeout must be a positive number of seconds")]
    Timeout,
    #[error("backoff must be a non-negative number of seconds")]
    Backoff,
    #[error("invalid endpoint file: {0}")]
    Toml(#[from] toml::de::Error),
}

impl EndpointConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_parallel == 0 {
            return Err(ConfigError::Parallelism);
        }
        if !(self.timeout.is_finite() && self.timeout > 0.0) {
            return Err(ConfigError::Timeout);
        }
        if !(self.backoff.is_finite() && self.backoff >= 0.0) {
            return Err(ConfigError::Backoff);
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: EndpointConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn url(&self) -> String {
        let base = self.base_url.trim_end_matches('/');
        if base.ends_with("/chat/completions") {
            base.to_string()
        } else {
            format!("{base}/chat/completions")
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Usage {
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
}

impl Usage {
    /// Fallback when the endpoint reports no usage: one token per
    /// whitespace-separated word of the prompt and of the response.
    pub fn estimate(prompt: &str, response: &str) -> Usage {
        Usage {
            prompt_tokens: prompt.split_whitespace().count() as u64,
            completion_tokens: response.split_whitespace().count() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    pub text: String,
    pub usage: Usage,
    /// 1-based number of the request that succeeded.
    pub attempts: u32,
}

#[derive(Debug, Error)]
pub enum CompletionError {
    #[error("environment variable {0} is not set")]
    MissingCredential(String),
    #[error("transport failure after {attempts} attempts: {message}")]
    Transport { attempts: u32, message: String },
    #[error("unusable response: {0}")]
    BadResponse(String),
}

impl CompletionError {
    pub fn attempts(&self) -> u32 {
        match self {
            CompletionError::MissingCredential(_) => 0,
            CompletionError::Transport { attempts, .. } => *attempts,
            CompletionError::BadResponse(_) => 1,
        }
    }
}

/// Anything that can answer a prompt. `task_id` is only a hint for test
/// doubles; real endpoints see the prompt alone.
pub trait Completer: Sync {
    fn model(&self) -> &str;
    fn complete(&self, task_id: &str, prompt: &str) -> Result<Completion, CompletionError>;
}

enum Attempt<T> {
    Retry(String),
    Fatal(CompletionError),
    Done(T),
}

/// Run `f` up to `retries + 1` times, sleeping `backoff * 2^k` between tries.
fn with_retries<T>(
    retries: u32,
    backoff: Duration,
    mut f: impl FnMut(u32) -> Attempt<T>,
) -> Result<(T, u32), CompletionError> {
    let mut last = String::new();
    for attempt in 1..=retries + 1 {
        match f(attempt) {
            Attempt::Done(v) => return Ok((v, attempt)),
            Attempt::Fatal(e) => return Err(e),
            Attempt::Retry(msg) => last = msg,
        }
        if attempt <= retries {
            std::thread::sleep(backoff * 2u32.saturating_pow(attempt - 1));
        }
    }
    Err(CompletionError::Transport {
        attempts: retries + 1,
        message: last,
    })
}

pub struct HttpCompleter {
    config: EndpointConfig,
    client: reqwest::blocking::Client,
}

impl HttpCompleter {
    pub fn new(config: EndpointConfig) -> Result<Self, CompletionError> {
        config
            .validate()
            .map_err(|e| CompletionError::BadResponse(e.to_string()))?;
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs_f64(config.timeout))
            .build()
            .map_err(|e| CompletionError::BadResponse(e.to_string()))?;
        Ok(HttpCompleter { config, client })
    }

    pub fn config(&self) -> &EndpointConfig {
        &self.config
    }

    fn body(&self, prompt: &str) -> Value {
        let mut body = json!({
            "model": self.config.model_name,
            "messages": [{ "role": "user", "content": prompt }],
        });
        if let Some(t) = self.config.temperature {
            body["temperature"] = json!(t);
        }
        body
    }
}

/// `choices[0].message.content` and, if present, `usage.prompt_tokens` /
/// `usage.completion_tokens`.
pub fn parse_chat_response(body: &Value) -> Result<(String, Option<Usage>), CompletionError> {
    let text = body
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| CompletionError::BadResponse("missing choices[0].message.content".into()))?;
    let usage = match (
        body.pointer("/usage/prompt_tokens").and_then(Value::as_u64),
        body.pointer("/usage/completion_tokens").and_then(Value::as_u64),
    ) {
        (Some(p), Some(c)) => Some(Usage {
            prompt_tokens: p,
            completion_tokens: c,
        }),
        _ => None,
    };
    Ok((text.to_string(), usage))
}

impl Completer for HttpCompleter {
    fn model(&self) -> &str {
        &self.config.model_name
    }

    fn complete(&self, _task_id: &str, prompt: &str) -> Result<Completion, CompletionError> {
        let key = std::env::var(&self.config.credential_env_var)
            .map_err(|_| CompletionError::MissingCredential(self.config.credential_env_var.clone()))?;
        let url = self.config.url();
        let body = self.body(prompt);
        let ((text, usage), attempts) =
            with_retries(self.config.retries, Duration::from_secs_f64(self.config.backoff), |_| {
                let resp = match self.client.post(&url).bearer_auth(&key).json(&body).send() {
                    Ok(r) => r,
                    Err(e) => return Attempt::Retry(e.to_string()),
                };
                let status = resp.status();
                if status.as_u16() == 429 || status.is_server_error() {
                    return Attempt::Retry(format!("HTTP {status}"));
                }
                if !status.is_success() {
                    return Attempt::Fatal(CompletionError::BadResponse(format!("HTTP {status}")));
                }
                match resp.json::<Value>() {
                    Ok(v) => match parse_chat_response(&v) {
                        Ok(parsed) => Attempt::Done(parsed),
                        Err(e) => Attempt::Fatal(e),
                    },
                    Err(e) => Attempt::Retry(e.to_string()),
                }
            })?;
        let usage = usage.unwrap_or_else(|| Usage::estimate(prompt, &text));
        Ok(Completion { text, usage, attempts })
    }
}

/// Test double that answers every task with its ground truth in a fenced
/// block, as a perfect model would.
pub struct MockEcho {
    answers: HashMap<String, Solution>,
}

impl MockEcho {
    pub fn new(bundle: &TaskBundle) -> Self {
        MockEcho {
            answers: bundle
                .tasks
                .iter()
                .map(|t| (t.task_id.clone(), t.ground_truth.clone()))
                .collect(),
        }
    }
}

impl Completer for MockEcho {
    fn model(&self) -> &str {
        "mock-echo"
    }

    fn complete(&self, task_id: &str, prompt: &str) -> Result<Completion, CompletionError> {
        let solution = self.answers.get(task_id).cloned().unwrap_or_default();
        let text = format!(
            "Working through the statements step by step.\n```json\n{}\n```\n",
            serde_json::to_string_pretty(&json!({ "solution": solution })).expect("solutions serialize")
        );
        Ok(Completion {
            usage: Usage::estimate(prompt, &text),
            text,
            attempts: 1,
        })
    }
}

/// Test double whose answers never parse.
pub struct Garbage;

impl Completer for Garbage {
    fn model(&self) -> &str {
        "garbage"
    }

    fn complete(&self, _task_id: &str, prompt: &str) -> Result<Completion, CompletionError> {
        let text = "I am not sure. The answer might be 42, or {\"solution\": maybe}.".to_string();
        Ok(Completion {
            usage: Usage::estimate(prompt, &text),
            text,
            attempts: 1,
        })
    }
}
