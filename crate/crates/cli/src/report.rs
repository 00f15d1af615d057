use serde::Serialize;
use serde_json::Value;

use recipdim::{Error, ErrorClass};

use crate::exit;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default, Serialize)]
pub struct InputEcho {
    pub polys: Vec<String>,
    pub vars: Vec<String>,
    pub field: String,
    pub assume_irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_degree: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorEcho {
    pub class: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, input: InputEcho) -> Report {
        Report {
            schema: SCHEMA,
            tool: "recipdim",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            input,
            result: Value::Null,
            error: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    pub text: String,
    /// Where the report should be written (`-` for stdout).
    pub json: Option<std::path::PathBuf>,
}

impl Outcome {
    pub fn message(code: i32, text: String) -> Outcome {
        Outcome { code, report: None, text, json: None }
    }
}

pub fn class_name(c: ErrorClass) -> &'static str {
    match c {
        ErrorClass::Parse => "parse",
        ErrorClass::Unsupported => "unsupported",
        ErrorClass::Internal => "internal",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Parse => exit::PARSE,
        ErrorClass::Unsupported => exit::UNSUPPORTED,
        ErrorClass::Internal => exit::INTERNAL,
    }
}
