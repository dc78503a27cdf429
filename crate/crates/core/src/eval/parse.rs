use std::sync::OnceLock;

use indexmap::IndexMap;
use regex::Regex;
use serde_json::Value;
use thiserror::Error;

use crate::suite::{Answer, Solution};

/// Key under which a bare scalar `"solution": "..."` is stored.
pub const SCALAR_KEY: &str = "solution";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no fenced code block in the response")]
    NoBlock,
    #[error("no fenced block holds a JSON object with a \"solution\" key")]
    NoSolution,
    #[error("\"solution\" holds {0}, expected an object or a scalar")]
    Malformed(&'static str),
}

fn fences() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?s)```[A-Za-z0-9_+-]*[ \t]*\r?\n?(.*?)```").expect("valid regex"))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some(String::new()),
        _ => None,
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Array(_) => "an array",
        Value::Object(_) => "a nested object",
        _ => "a scalar",
    }
}

fn answer(v: &Value) -> Result<Answer, ParseError> {
    if let Some(s) = scalar(v) {
        return Ok(Answer::Value(s));
    }
    match v {
        Value::Object(map) => {
            let mut parts = IndexMap::new();
            for (k, v) in map {
                parts.insert(k.clone(), scalar(v).ok_or(ParseError::Malformed(kind(v)))?);
            }
            Ok(Answer::Group(parts))
        }
        other => Err(ParseError::Malformed(kind(other))),
    }
}

/// Pull the answer out of a model response: the last fenced code block whose
/// content is a JSON object with a top-level `"solution"` key. Values are kept
/// as written (numbers become their JSON text); canonicalisation happens at
/// scoring time.
pub fn extract_solution(raw: &str) -> Result<Solution, ParseError> {
    let mut saw_block = false;
    for cap in fences().captures_iter(raw).collect::<Vec<_>>().into_iter().rev() {
        saw_block = true;
        let Ok(Value::Object(obj)) = serde_json::from_str::<Value>(cap[1].trim()) else {
            continue;
        };
        let Some(solution) = obj.get("solution") else {
            continue;
        };
        return match solution {
            Value::Object(fields) => fields
                .iter()
                .map(|(k, v)| Ok((k.clone(), answer(v)?)))
                .collect(),
            Value::Array(_) => Err(ParseError::Malformed("an array")),
            v => Ok(IndexMap::from([(SCALAR_KEY.to_string(), answer(v)?)])),
        };
    }
    Err(if saw_block { ParseError::NoSolution } else { ParseError::NoBlock })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &Solution, k: &str) -> String {
        match &s[k] {
            Answer::Value(v) => v.clone(),
            Answer::Group(_) => panic!(),
        }
    }

    #[test]
    fn takes_the_last_solution_block() {
        let raw = "first try\n```json\n{\"solution\": {\"A\": \"1\"}}\n```\nno wait\n```\n{\"solution\": {\"A\": 2.50}}\n```\n```python\nprint(1)\n```";
        assert_eq!(v(&extract_solution(raw).unwrap(), "A"), "2.5");
    }

    #[test]
    fn failures() {
        assert_eq!(extract_solution("the answer is 5"), Err(ParseError::NoBlock));
        assert_eq!(extract_solution("```json\n{\"answer\": 5}\n```"), Err(ParseError::NoSolution));
        assert_eq!(extract_solution("```json\n{\"solution\": 5\n```"), Err(ParseError::NoSolution));
        assert_eq!(
            extract_solution("```json\n{\"solution\": [1]}\n```"),
            Err(ParseError::Malformed("an array"))
        );
    }

    #[test]
    fn scalar_and_group_answers() {
        let s = extract_solution("```\n{\"solution\": \"12.00\"}\n```").unwrap();
        assert_eq!(v(&s, SCALAR_KEY), "12.00");
        let s = extract_solution("```json\n{\"solution\": {\"Cash\": {\"Initial\": 1, \"Final\": \"2\"}}}```").unwrap();
        assert_eq!(
            s["Cash"],
            Answer::Group(IndexMap::from([("Initial".into(), "1".into()), ("Final".into(), "2".into())]))
        );
    }
}
