//! Running a model over a task bundle: prompting through an endpoint,
//! pulling the fenced answer out of the response, scoring it against ground
//! truth and summarising the results.

mod endpoint;
mod parse;
mod report;
mod run;
mod score;

pub use endpoint::{
    parse_chat_response, Completer, Completion, CompletionError, ConfigError, EndpointConfig, Garbage, HttpCompleter,
    MockEcho, Usage,
};
pub use parse::{extract_solution, ParseError, SCALAR_KEY};
pub use report::{accuracy, aggregate, Bucket, Cost, Price, PriceError, PriceTable, Report, ReportOptions};
pub use run::{evaluate, load_results, run, EvalResult, Failure, RunError, RunOptions};
pub use score::{canonical, score, Canonical, Score, ScoreOptions};
