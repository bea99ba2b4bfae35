//! Output formats shared by every subcommand.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A rendered document plus whether it records a verification failure.
pub struct Output {
    pub body: String,
    pub failed: bool,
}

impl Output {
    pub fn ok(body: String) -> Self {
        Output { body, failed: false }
    }

    pub fn checked(body: String, passed: bool) -> Self {
        Output { body, failed: !passed }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Quotes a CSV field when it contains a separator or quote.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Closing line of every text report.
pub fn verdict(passed: bool) -> &'static str {
    if passed {
        "ALL CHECKS PASSED\n"
    } else {
        "CHECKS FAILED\n"
    }
}
