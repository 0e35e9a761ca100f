use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use polyclone::Term;

use crate::json::to_canonical;

/// A term both as a tree and in prefix notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedTerm {
    pub text: String,
    pub tree: Term,
}

impl From<&Term> for RenderedTerm {
    fn from(t: &Term) -> Self {
        RenderedTerm {
            text: t.to_string(),
            tree: t.clone(),
        }
    }
}

/// What every command prints in JSON mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub trusted: bool,
    pub payload: Value,
}

/// A finished command: its envelope, a human rendering, and the verdict
/// `--assert` looks at.
pub struct Outcome {
    pub envelope: ReportEnvelope,
    pub human: String,
    pub verdict: Option<bool>,
}

impl Outcome {
    pub fn new<P: Serialize>(
        command: &str,
        parameters: Map<String, Value>,
        trusted: bool,
        verdict: Option<bool>,
        payload: &P,
        human: String,
    ) -> Self {
        Outcome {
            envelope: ReportEnvelope {
                command: command.to_string(),
                parameters,
                trusted,
                payload: serde_json::to_value(payload).expect("payload serializes"),
            },
            human,
            verdict,
        }
    }

    pub fn json(&self) -> String {
        to_canonical(&self.envelope)
    }

    pub fn table(&self) -> String {
        let mut out = format!("# {}\n", self.envelope.command);
        for (k, v) in &self.envelope.parameters {
            out.push_str(&format!("{k:>14}: {}\n", serde_json::to_string(v).unwrap()));
        }
        out.push_str(&format!("{:>14}: {}\n", "trusted", self.envelope.trusted));
        out.push_str(&self.human);
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}

/// Build a parameter map from `(name, value)` pairs, skipping `None`s.
#[macro_export]
macro_rules! params {
    ($($key:literal => $value:expr),* $(,)?) => {{
        let mut m = serde_json::Map::new();
        $(
            let v = serde_json::to_value(&$value).unwrap();
            if !v.is_null() {
                m.insert($key.to_string(), v);
            }
        )*
        m
    }};
}
