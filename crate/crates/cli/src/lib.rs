//! Command implementations behind the `strongid` binary.
//!
//! Each command returns an [`Outcome`] (standard output text and exit code)
//! or a [`CliError`]; `main` only prints and exits. Exit codes: 0 success,
//! 1 domain infeasibility, 2 input error.

pub mod commands;
pub mod experiment;
pub mod source;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "strongid/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    pub fn json<T: Serialize>(value: &T, exit: i32) -> Self {
        let mut stdout = serde_json::to_string(value).expect("serializable");
        stdout.push('\n');
        Self { stdout, exit }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed files. Exit 2.
    #[error("{message}")]
    Input { kind: String, message: String },
    /// Well-formed request with no solution. Exit 1.
    #[error("{message}")]
    Domain { kind: String, message: String, detail: Value },
}

impl CliError {
    pub fn input(kind: &str, message: impl Into<String>) -> Self {
        Self::Input { kind: kind.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input { .. } => 2,
            Self::Domain { .. } => 1,
        }
    }

    /// Machine-readable form written to standard error.
    pub fn to_json(&self) -> String {
        let body = match self {
            Self::Input { kind, message } => json!({ "kind": kind, "message": message }),
            Self::Domain { kind, message, detail } => {
                let mut v = json!({ "kind": kind, "message": message });
                if let (Value::Object(m), Value::Object(extra)) = (&mut v, detail) {
                    m.extend(extra.clone());
                }
                v
            }
        };
        serde_json::to_string(&json!({ "schema": SCHEMA, "error": body })).expect("serializable")
    }
}

impl From<strongid::Error> for CliError {
    fn from(e: strongid::Error) -> Self {
        use strongid::Error as E;
        let message = e.to_string();
        let domain = |kind: &str, detail: Value| CliError::Domain { kind: kind.into(), message: message.clone(), detail };
        match &e {
            E::NotRStrong { achieved, required } => domain(
                "NotRStrong",
                json!({ "achieved_strong_index": achieved, "required": required }),
            ),
            E::TooLargeForExact { n, cap } => domain("TooLargeForExact", json!({ "n": n, "cap": cap })),
            E::InfeasibleP { n, y, p } => domain("InfeasibleP", json!({ "n": n, "y": y, "p": p })),
            E::GenerationFailed { block, verdict } => {
                domain("GenerationFailed", json!({ "block": block, "last_verdict": verdict }))
            }
            E::ChainVerification(_) => domain("ChainVerification", json!({})),
            E::TooSmall(n) => domain("TooSmall", json!({ "n": n })),
            E::Parse { .. } => CliError::input("ParseError", message),
            other => CliError::input(variant_name(other), message),
        }
    }
}

fn variant_name(e: &strongid::Error) -> &'static str {
    use strongid::Error as E;
    match e {
        E::InvalidEdge(..) => "InvalidEdge",
        E::SelfLoop(_) => "SelfLoop",
        E::InvalidVertex(..) => "InvalidVertex",
        E::SameVertex(_) => "SameVertex",
        E::EmptyGraph => "EmptyGraph",
        E::ZeroIndex => "ZeroIndex",
        E::InvalidParams { .. } => "InvalidParams",
        E::DegreeTooSmall(_) => "DegreeTooSmall",
        E::InvalidProbability(_) => "InvalidProbability",
        E::InvalidEpsilon(_) => "InvalidEpsilon",
        E::InvalidSize(_) => "InvalidSize",
        _ => "Error",
    }
}
