//! Machine-checkable records of verified claims.
//!
//! A certificate serializes to
//! `{"claim", "status", "parameters", "witness", "stats", "notes", "metadata"}`.
//! Everything except `metadata` is a deterministic function of the inputs;
//! `metadata` holds wall-clock timings and is excluded from comparisons.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Verified,
    Failed,
    InfeasibleCertified,
    Inconclusive,
}

impl Status {
    /// Exit code used by the command-line frontend.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified | Status::InfeasibleCertified => 0,
            Status::Failed => 1,
            Status::Inconclusive => 4,
        }
    }

    pub fn is_success(self) -> bool {
        matches!(self, Status::Verified | Status::InfeasibleCertified)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Verified => "VERIFIED",
            Status::Failed => "FAILED",
            Status::InfeasibleCertified => "INFEASIBLE_CERTIFIED",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub status: Status,
    pub parameters: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub stats: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>) -> Self {
        Certificate {
            claim: claim.into(),
            status: Status::Verified,
            parameters: BTreeMap::new(),
            witness: None,
            stats: BTreeMap::new(),
            notes: Vec::new(),
            metadata: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn stat(&mut self, key: &str, value: impl Into<Value>) {
        self.stats.insert(key.to_owned(), value.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Marks the certificate failed and records the offending witness.
    pub fn fail(&mut self, witness: Value) {
        self.status = Status::Failed;
        self.witness = Some(witness);
    }

    pub fn timed(mut self, start: std::time::Instant) -> Self {
        self.metadata = Some(Metadata {
            elapsed_ms: start.elapsed().as_millis(),
        });
        self
    }

    pub fn is_success(&self) -> bool {
        self.status.is_success()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates are always serializable")
    }

    /// Human-readable summary; the witness is left out.
    pub fn to_markdown(&self) -> String {
        use std::fmt::Write as _;
        let mut out = format!("# {}\n\nStatus: **{}**\n", self.claim, self.status);
        for (title, map) in [("Parameters", &self.parameters), ("Statistics", &self.stats)] {
            if map.is_empty() {
                continue;
            }
            let _ = write!(out, "\n## {title}\n\n| key | value |\n|---|---|\n");
            for (k, v) in map {
                let _ = writeln!(out, "| {k} | {v} |");
            }
        }
        if !self.notes.is_empty() {
            out.push_str("\n## Notes\n\n");
            for n in &self.notes {
                let _ = writeln!(out, "- {n}");
            }
        }
        if self.witness.is_some() {
            out.push_str("\nWitness omitted here; it is included in the JSON output.\n");
        }
        out
    }

    /// Copy with `metadata` stripped, for reproducibility comparisons.
    pub fn without_metadata(&self) -> Self {
        Certificate {
            metadata: None,
            ..self.clone()
        }
    }
}
