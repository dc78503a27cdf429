use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::OnceLock;

use indexmap::IndexMap;
use regex::Regex;
use thiserror::Error;

use crate::money::{Money, Quantity};
use crate::sim::{Journal, Method, Status, Transaction, TxType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvoiceParseError {
    #[error("text does not match the invoice envelope")]
    Envelope,
    #[error("body matches no invoice template")]
    UnknownTemplate,
    #[error("bad value {value:?} for {field}")]
    Value { field: String, value: String },
    #[error("unknown detail {0:?}")]
    UnknownDetail(String),
}

/// One template per transaction type. `{slot}` marks a field value.
const TEMPLATES: &[(TxType, &str)] = &[
    (
        TxType::Sale,
        "On {date}, an invoice was issued for a sale, consisting of {quantity} units at a unit price of \
         {unit_price}, totaling {amount}. Cost of goods: {cost_amount}; profit: {profit}; tax: {tax_amount}; \
         total due: {total_amount}. Status: {status}; received via {receive_method}.",
    ),
    (
        TxType::Purchase,
        "On {date}, an invoice was issued for a purchase, consisting of {quantity} units at a unit price of \
         {unit_price}, totaling {amount}. Tax: {tax_amount}; total due: {total_amount}. Status: {status}; \
         paid via {payment_method}.",
    ),
    (
        TxType::FixedAssetPurchase,
        "On {date}, an invoice was issued for a fixed asset purchase, totaling {amount}. Status: {status}; \
         paid via {payment_method}.",
    ),
    (
        TxType::AdministrativeExpense,
        "On {date}, an invoice was issued for an administrative expense, totaling {amount}. Status: {status}; \
         paid via {payment_method}.",
    ),
    (
        TxType::SellingExpense,
        "On {date}, an invoice was issued for a selling expense, totaling {amount}. Status: {status}; \
         paid via {payment_method}.",
    ),
    (
        TxType::FinancialExpense,
        "On {date}, an invoice was issued for a financial expense, totaling {amount}. Status: {status}; \
         paid via {payment_method}.",
    ),
    (TxType::Depreciation, "On {date}, a notice was issued for a Depreciation of {amount}."),
    (
        TxType::InterestReceivable,
        "On {date}, a notice was issued for interest receivable of {amount}. Status: {status}.",
    ),
    (
        TxType::BankToCashTransfer,
        "On {date}, a transfer slip was issued moving {amount} from the bank account to cash on hand. \
         Paid via {payment_method}; received via {receive_method}.",
    ),
    (
        TxType::CashToBankTransfer,
        "On {date}, a transfer slip was issued moving {amount} from cash on hand to the bank account. \
         Paid via {payment_method}; received via {receive_method}.",
    ),
];

/// Fields that may be omitted from a template; shown under "Further details"
/// when they differ from their default.
const OPTIONAL: [&str; 9] = [
    "quantity",
    "unit_price",
    "tax_amount",
    "total_amount",
    "cost_amount",
    "profit",
    "status",
    "payment_method",
    "receive_method",
];

fn template(tx_type: TxType) -> &'static str {
    TEMPLATES.iter().find(|(t, _)| *t == tx_type).expect("every type has a template").1
}

fn slot_value(t: &Transaction, slot: &str) -> String {
    match slot {
        "date" => t.date.to_string(),
        "quantity" => t.quantity.to_string(),
        "unit_price" => t.unit_price.to_string(),
        "amount" => t.amount.to_string(),
        "tax_amount" => t.tax_amount.to_string(),
        "total_amount" => t.total_amount.to_string(),
        "cost_amount" => t.cost_amount.to_string(),
        "profit" => t.profit.to_string(),
        "status" => t.payment_receipt_status.to_string(),
        "payment_method" => t.payment_method.to_string(),
        "receive_method" => t.receive_method.to_string(),
        other => unreachable!("unknown slot {other}"),
    }
}

fn set_slot(t: &mut Transaction, slot: &str, value: &str) -> Result<(), InvoiceParseError> {
    fn parse<T: FromStr>(slot: &str, value: &str) -> Result<T, InvoiceParseError> {
        value.parse().map_err(|_| InvoiceParseError::Value {
            field: slot.to_string(),
            value: value.to_string(),
        })
    }
    match slot {
        "date" => t.date = parse(slot, value)?,
        "quantity" => t.quantity = parse::<Quantity>(slot, value)?,
        "unit_price" => t.unit_price = parse::<Money>(slot, value)?,
        "amount" => t.amount = parse(slot, value)?,
        "tax_amount" => t.tax_amount = parse(slot, value)?,
        "total_amount" => t.total_amount = parse(slot, value)?,
        "cost_amount" => t.cost_amount = parse(slot, value)?,
        "profit" => t.profit = parse(slot, value)?,
        "status" => t.payment_receipt_status = parse::<Status>(slot, value)?,
        "payment_method" => t.payment_method = parse::<Method>(slot, value)?,
        "receive_method" => t.receive_method = parse::<Method>(slot, value)?,
        other => return Err(InvoiceParseError::UnknownDetail(other.to_string())),
    }
    Ok(())
}

fn slot_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\{([a-z_]+)\}").expect("valid pattern"))
}

fn slots(body: &str) -> Vec<&str> {
    slot_regex().captures_iter(body).map(|c| c.get(1).expect("group").as_str()).collect()
}

/// Defaults for fields a template leaves out.
fn blank(tx_type: TxType) -> Transaction {
    Transaction {
        id: String::new(),
        date: "2000-01-01".parse().expect("valid date"),
        tx_type,
        quantity: Quantity::ZERO,
        unit_price: Money::ZERO,
        amount: Money::ZERO,
        tax_amount: Money::ZERO,
        total_amount: Money::ZERO,
        cost_amount: Money::ZERO,
        profit: Money::ZERO,
        payment_receipt_status: Status::NotApplicable,
        payment_method: Method::NotApplicable,
        receive_method: Method::NotApplicable,
        preparer: String::new(),
        approver: String::new(),
    }
}

fn default_value(t: &Transaction, slot: &str) -> String {
    if slot == "total_amount" {
        return (t.amount + t.tax_amount).to_string();
    }
    slot_value(&blank(t.tx_type), slot)
}

/// Invoice-style text for one transaction.
pub fn render_invoice(t: &Transaction) -> String {
    let body = template(t.tx_type);
    let shown = slots(body);
    let text = slot_regex().replace_all(body, |c: &regex::Captures| slot_value(t, &c[1]));
    let details: Vec<String> = OPTIONAL
        .iter()
        .filter(|s| !shown.contains(s))
        .filter_map(|s| {
            let v = slot_value(t, s);
            (v != default_value(t, s)).then(|| format!("{}={v}", s.replace('_', " ")))
        })
        .collect();
    let mut out = format!("Transaction {}: {text}", t.id);
    if !details.is_empty() {
        let _ = write!(out, " Further details: {}.", details.join("; "));
    }
    let _ = write!(out, " Prepared by: {}; approved by: {}.", t.preparer, t.approver);
    out
}

struct Compiled {
    tx_type: TxType,
    regex: Regex,
    slots: Vec<&'static str>,
}

fn compiled() -> &'static [Compiled] {
    static ALL: OnceLock<Vec<Compiled>> = OnceLock::new();
    ALL.get_or_init(|| {
        TEMPLATES
            .iter()
            .map(|&(tx_type, body)| {
                let mut pattern = String::from("^");
                let mut last = 0;
                for m in slot_regex().find_iter(body) {
                    pattern.push_str(&regex::escape(&body[last..m.start()]));
                    pattern.push_str("(.*?)");
                    last = m.end();
                }
                pattern.push_str(&regex::escape(&body[last..]));
                pattern.push('$');
                Compiled {
                    tx_type,
                    regex: Regex::new(&pattern).expect("template compiles"),
                    slots: slots(body),
                }
            })
            .collect()
    })
}

fn envelope() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^Transaction (?P<id>\S+): (?P<body>.*?)(?: Further details: (?P<details>.*?)\.)? Prepared by: (?P<preparer>[^;]*); approved by: (?P<approver>.*)\.$",
        )
        .expect("valid pattern")
    })
}

/// Inverse of [`render_invoice`].
pub fn parse_invoice(text: &str) -> Result<Transaction, InvoiceParseError> {
    let caps = envelope().captures(text.trim()).ok_or(InvoiceParseError::Envelope)?;
    let body = &caps["body"];
    let (tmpl, body_caps) = compiled()
        .iter()
        .find_map(|c| c.regex.captures(body).map(|caps| (c, caps)))
        .ok_or(InvoiceParseError::UnknownTemplate)?;
    let mut t = blank(tmpl.tx_type);
    t.id = caps["id"].to_string();
    t.preparer = caps["preparer"].to_string();
    t.approver = caps["approver"].to_string();
    let mut total_given = tmpl.slots.contains(&"total_amount");
    for (i, slot) in tmpl.slots.iter().enumerate() {
        set_slot(&mut t, slot, &body_caps[i + 1])?;
    }
    if let Some(details) = caps.name("details") {
        for item in details.as_str().split("; ") {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| InvoiceParseError::UnknownDetail(item.to_string()))?;
            let slot = key.replace(' ', "_");
            if !OPTIONAL.contains(&slot.as_str()) {
                return Err(InvoiceParseError::UnknownDetail(key.to_string()));
            }
            total_given |= slot == "total_amount";
            set_slot(&mut t, &slot, value)?;
        }
    }
    if !total_given {
        t.total_amount = t.amount + t.tax_amount;
    }
    Ok(t)
}

/// The recorded row as a JSON object with labelled fields.
pub fn render_record(t: &Transaction) -> String {
    let mut row: IndexMap<&str, String> = IndexMap::new();
    row.insert("ID", t.id.clone());
    row.insert("Date", t.date.to_string());
    row.insert("Type", t.tx_type.to_string());
    row.insert("Quantity", t.quantity.to_string());
    row.insert("Unit Price", t.unit_price.to_string());
    row.insert("Amount", t.amount.to_string());
    row.insert("Tax Amount", t.tax_amount.to_string());
    row.insert("Total Amount", t.total_amount.to_string());
    row.insert("Cost Amount", t.cost_amount.to_string());
    row.insert("Profit", t.profit.to_string());
    row.insert("Payment/Receipt Status", t.payment_receipt_status.to_string());
    row.insert("Payment Method", t.payment_method.to_string());
    row.insert("Receive Method", t.receive_method.to_string());
    row.insert("Preparer", t.preparer.clone());
    row.insert("Approver", t.approver.clone());
    serde_json::to_string(&row).expect("row serializes")
}

/// Audit input: each transaction's invoice, taken from the original journal,
/// followed by its row as recorded in the (possibly corrupted) journal.
pub fn render_audit_corpus(original: &Journal, recorded: &Journal) -> String {
    let mut out = String::new();
    for (o, r) in original.transactions.iter().zip(&recorded.transactions) {
        let _ = writeln!(out, "Invoice: {}", render_invoice(o));
        let _ = writeln!(out, "Record: {}", render_record(r));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sale() -> Transaction {
        let mut t = blank(TxType::Sale);
        t.id = "T000007".into();
        t.date = "2024-03-05".parse().unwrap();
        t.quantity = Quantity::from_units(5);
        t.unit_price = Money::from_units(100);
        t.amount = Money::from_units(500);
        t.tax_amount = Money::from_units(25);
        t.total_amount = Money::from_units(525);
        t.cost_amount = Money::from_units(400);
        t.profit = Money::from_units(100);
        t.payment_receipt_status = Status::Received;
        t.receive_method = Method::Cash;
        t.preparer = "Ann Lee".into();
        t.approver = "Bo Chen".into();
        t
    }

    #[test]
    fn sale_opening_words() {
        let text = render_invoice(&sale());
        assert!(text.starts_with(
            "Transaction T000007: On 2024-03-05, an invoice was issued for a sale, consisting of 5.00 units at a unit price of 100.00"
        ));
        assert!(!text.contains("Further details"));
        assert_eq!(parse_invoice(&text).unwrap(), sale());
    }

    #[test]
    fn depreciation_is_a_bare_notice() {
        let mut t = blank(TxType::Depreciation);
        t.id = "T000001".into();
        t.date = "2024-02-01".parse().unwrap();
        t.amount = Money::from_minor(4_166_667);
        t.total_amount = t.amount;
        t.preparer = "A".into();
        t.approver = "B".into();
        let text = render_invoice(&t);
        assert_eq!(
            text,
            "Transaction T000001: On 2024-02-01, a notice was issued for a Depreciation of 41666.67. Prepared by: A; approved by: B."
        );
        assert_eq!(parse_invoice(&text).unwrap(), t);
    }

    #[test]
    fn odd_fields_round_trip_through_details() {
        let mut t = sale();
        t.tx_type = TxType::Depreciation;
        t.preparer.clear();
        t.total_amount = Money::from_units(1);
        let text = render_invoice(&t);
        assert!(text.contains("Further details: "));
        assert_eq!(parse_invoice(&text).unwrap(), t);
    }
}
