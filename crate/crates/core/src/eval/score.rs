use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::money::{format_two_decimals, parse_decimal};
use crate::suite::{Answer, Solution, TaskSpec};

use super::parse::SCALAR_KEY;

/// Notations accepted on the model side in addition to plain `-1234.50`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreOptions {
    /// `1,234.50`
    pub thousands_separators: bool,
    /// `(1234.50)` for a negative amount
    pub parentheses: bool,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            thousands_separators: true,
            parentheses: true,
        }
    }
}

/// A value reduced to the form answers are compared in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Canonical {
    /// Rounded half-up to two decimals, e.g. `-9.56%`, `434651.47`.
    Number { display: String, percent: bool },
    /// Trimmed, whitespace-collapsed, lower-cased.
    Text(String),
}

impl std::fmt::Display for Canonical {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Canonical::Number { display, percent } => write!(f, "{display}{}", if *percent { "%" } else { "" }),
            Canonical::Text(t) => f.write_str(t),
        }
    }
}

fn number(text: &str, opts: ScoreOptions) -> Option<Canonical> {
    let (body, percent) = match text.strip_suffix('%') {
        Some(b) => (b.trim_end(), true),
        None => (text, false),
    };
    let (body, negated) = match body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        Some(inner) if opts.parentheses => (inner.trim(), true),
        _ => (body, false),
    };
    let plain;
    let body = if opts.thousands_separators && body.contains(',') {
        let (sign, digits) = body.strip_prefix('-').map_or(("", body), |d| ("-", d));
        let whole = digits.split('.').next().unwrap_or_default();
        let groups: Vec<&str> = whole.split(',').collect();
        let well_formed = !groups[0].is_empty()
            && groups[0].len() <= 3
            && groups[1..].iter().all(|g| g.len() == 3);
        if !well_formed {
            return None;
        }
        plain = format!("{sign}{}", digits.replace(',', ""));
        plain.as_str()
    } else {
        body
    };
    if negated && body.starts_with(['-', '+']) {
        return None;
    }
    let mut value = parse_decimal(body)?;
    if negated {
        value = -value;
    }
    let mut display = format_two_decimals(&value)?;
    if display == "-0.00" {
        display = "0.00".into();
    }
    Some(Canonical::Number { display, percent })
}

pub fn canonical(text: &str, opts: ScoreOptions) -> Canonical {
    let text = text.trim();
    number(text, opts).unwrap_or_else(|| Canonical::Text(text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()))
}

fn lookup<'a, V>(map: &'a IndexMap<String, V>, key: &str) -> Option<&'a V> {
    map.get(key).or_else(|| {
        let want = key.trim().to_lowercase();
        map.iter().find(|(k, _)| k.trim().to_lowercase() == want).map(|(_, v)| v)
    })
}

fn same(got: &str, want: &str, opts: ScoreOptions) -> bool {
    canonical(got, opts) == canonical(want, opts)
}

fn field_correct(got: Option<&Answer>, want: &Answer, opts: ScoreOptions) -> bool {
    match (got, want) {
        (Some(Answer::Value(g)), Answer::Value(w)) => same(g, w, opts),
        (Some(Answer::Group(g)), Answer::Group(w)) => w
            .iter()
            .all(|(part, w)| lookup(g, part).is_some_and(|g| same(g, w, opts))),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub per_field: IndexMap<String, bool>,
    pub task_correct: bool,
}

/// Compare a parsed answer with the task's ground truth field by field.
/// Extra fields are ignored, missing ones are wrong, and a composite field
/// is right only if all of its parts are.
pub fn score(parsed: &Solution, task: &TaskSpec, opts: ScoreOptions) -> Score {
    let single = task.ground_truth.len() == 1;
    let per_field: IndexMap<String, bool> = task
        .ground_truth
        .iter()
        .map(|(field, want)| {
            let mut got = lookup(parsed, field);
            if got.is_none() && single {
                got = parsed.get(SCALAR_KEY);
            }
            (field.clone(), field_correct(got, want, opts))
        })
        .collect();
    let task_correct = !per_field.is_empty() && per_field.values().all(|ok| *ok);
    Score { per_field, task_correct }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> String {
        canonical(s, ScoreOptions::default()).to_string()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(c("434651.4700"), "434651.47");
        assert_eq!(c(" -9.555 % "), "-9.56%");
        assert_eq!(c("(1,234.5)"), "-1234.50");
        assert_eq!(c("1,234,567"), "1234567.00");
        assert_eq!(c("-0.001"), "0.00");
        assert_eq!(c("12,34"), "12,34");
        assert_eq!(c("  Bank  Transfer "), "bank transfer");
        assert_eq!(c("2023-01-05"), "2023-01-05");
    }

    #[test]
    fn strict_options() {
        let strict = ScoreOptions {
            thousands_separators: false,
            parentheses: false,
        };
        assert!(!same("1,234.00", "1234.00", strict));
        assert!(!same("(5.00)", "-5.00", strict));
        assert!(same("1,234.00", "1234.00", ScoreOptions::default()));
    }

    #[test]
    fn percent_must_match() {
        let o = ScoreOptions::default();
        assert!(!same("-9.56", "-9.56%", o));
        assert!(!same("4.27%", "4.27", o));
        assert!(same("-9.56 %", "-9.56%", o));
    }
}
