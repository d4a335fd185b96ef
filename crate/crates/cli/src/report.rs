//! One report per command, printed as text or as a single JSON line.

use cg_core::Error;
use serde_json::{json, Map, Value as Json};

pub const SCHEMA_VERSION: u64 = 1;

pub enum Outcome {
    Ok { text: String, result: Json },
    Err(Error),
}

pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub context: String,
    pub line: Option<usize>,
    pub seed: Option<u64>,
    pub outcome: Outcome,
    pub timing_ms: Option<f64>,
    /// Set by commands that succeed but still signal failure through the exit code.
    pub failed: bool,
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Alphabet { .. } => "alphabet",
        Error::WordTooLong { .. } => "word_too_long",
        Error::Overlap { .. } => "overlap",
        Error::Gap { .. } => "gap",
        Error::Index { .. } => "index",
        Error::SizeMismatch(_) => "size_mismatch",
        Error::NotAGroup(_) => "not_a_group",
        Error::Parse { .. } => "parse",
        Error::Containment { .. } => "containment",
        Error::ActionMismatch(_) => "action_mismatch",
        Error::NotFull(_) => "not_full",
        Error::EmptyTarget => "empty_target",
        Error::ShiftZeroIdentity(_) => "shift_zero_identity",
        Error::UnknownCentrality(_) => "unknown_centrality",
        Error::UnknownSuite(_) => "unknown_suite",
        Error::Io(_) => "io",
    }
}

impl Report {
    pub fn is_error(&self) -> bool {
        matches!(self.outcome, Outcome::Err(_))
    }

    pub fn to_json(&self) -> Json {
        let mut m = Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(self.command));
        m.insert("args".into(), json!(self.args));
        m.insert("context".into(), json!(self.context));
        if let Some(line) = self.line {
            m.insert("line".into(), json!(line));
        }
        if let Some(seed) = self.seed {
            m.insert("seed".into(), json!(seed));
        }
        match &self.outcome {
            Outcome::Ok { result, .. } => {
                m.insert("result".into(), result.clone());
            }
            Outcome::Err(e) => {
                let mut err = json!({ "kind": error_kind(e), "message": e.to_string() });
                if let Error::Parse { pos, .. } = e {
                    err["position"] = json!(pos);
                }
                m.insert("error".into(), err);
            }
        }
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t));
        }
        Json::Object(m)
    }

    /// Text for stdout and for stderr.
    pub fn render_text(&self) -> (Option<String>, Option<String>) {
        let timing = self.timing_ms.map(|t| format!("time: {t:.3} ms"));
        match &self.outcome {
            Outcome::Ok { text, .. } => {
                let out = match timing {
                    Some(t) => format!("{text}\n{t}"),
                    None => text.clone(),
                };
                (Some(out), None)
            }
            Outcome::Err(e) => {
                let at = self.line.map(|l| format!("line {l}: ")).unwrap_or_default();
                (timing, Some(format!("error: {at}{e}")))
            }
        }
    }
}
