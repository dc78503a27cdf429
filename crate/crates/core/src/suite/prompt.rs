use std::collections::BTreeMap;

use indexmap::IndexMap;
use serde_json::{json, Value};

use super::{attachment_key, Domain, TaskBundle, TaskSpec};

/// The problem object: the question followed by each input, keyed by its title.
pub fn problem(task: &TaskSpec, attachments: &BTreeMap<String, String>) -> IndexMap<String, String> {
    let mut out = IndexMap::new();
    out.insert("question".to_string(), task.question.clone());
    for input in &task.inputs {
        let text = attachments
            .get(&attachment_key(&task.task_id, *input))
            .cloned()
            .unwrap_or_default();
        out.insert(input.title().to_string(), text);
    }
    out
}

/// `{"solution": ...}` with `___` in place of every value.
pub fn solution_skeleton(task: &TaskSpec) -> Value {
    let mut fields = serde_json::Map::new();
    for f in &task.solution_schema {
        let v = if f.parts.is_empty() {
            json!("___")
        } else {
            Value::Object(f.parts.iter().map(|p| (p.clone(), json!("___"))).collect())
        };
        fields.insert(f.name.clone(), v);
    }
    json!({ "solution": Value::Object(fields) })
}

fn description(task: &TaskSpec) -> &'static str {
    match task.domain {
        Domain::FinancialLiteracy => {
            "You are given one or more financial statements of a company and the definitions of some of their \
             line items. Match each definition to the line item it describes and read off that line's value. \
             Give amounts as plain numbers with two decimals and no thousands separators; write negative \
             amounts with a leading minus sign even where the statement shows them in parentheses."
        }
        Domain::Accounting => {
            "You are given a company's opening balances and every transaction of the period as invoice text. \
             Post the transactions and compile the requested financial statement figures. Give amounts as \
             plain numbers with two decimals and no thousands separators, negatives with a leading minus sign."
        }
        Domain::Auditing => {
            "Each transaction is listed twice: the invoice that was issued for it, and the record that was \
             entered into the books from that invoice. The invoices are correct; some records contain errors. \
             Compare every record with its invoice and with its own arithmetic to find the erroneous \
             transaction. Report values exactly as they appear in the records and invoices."
        }
        Domain::Consulting => {
            "You are given a company's financial statements. Calculate the requested financial indicators \
             using the formulas given, rounding half up to two decimals."
        }
    }
}

/// The full prompt for `task`: description, one worked example, the problem
/// and the answer format.
pub fn render_prompt(task: &TaskSpec, bundle: &TaskBundle) -> String {
    let heading = match task.domain {
        // the item name would give the answer away
        Domain::FinancialLiteracy => task.domain.name(),
        _ => task.name.as_str(),
    };
    let mut out = format!("\n# {heading} Task Description:\n{}\n\n# Examples:\n", description(task));
    if let Some(example) = bundle.examples.get(&task.task_id) {
        out.push_str(&format!(
            "{}\n{}\n",
            json!({ "problem": example.problem }),
            json!({ "solution": example.solution })
        ));
    }
    out.push_str(&format!(
        "# Problem to Solve: \n{}\n\n",
        json!({ "problem": problem(task, &bundle.attachments) })
    ));
    out.push_str(
        "# Instruction:\nNow please solve the above task. Reason step by step and present your answer in the \
         \"solution\" field in the following json format:\n```json\n",
    );
    out.push_str(&solution_skeleton(task).to_string());
    out.push_str("\n```\n");
    out
}
