//! Serializable pass/fail reports shared by all checkers.

use serde::{Deserialize, Serialize};

/// Version tag carried by every JSON artifact.
pub const SCHEMA: &str = "band-kernel/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub property: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub check: String,
    pub subject: String,
    pub pass: bool,
    pub seed: Option<u64>,
    pub checked: usize,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, subject: impl Into<String>, seed: Option<u64>) -> Self {
        CheckReport {
            schema: SCHEMA.to_string(),
            check: check.into(),
            subject: subject.into(),
            pass: true,
            seed,
            checked: 0,
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Records the first failure; later failures are ignored.
    pub fn fail(&mut self, property: impl Into<String>, detail: impl Into<String>) {
        if self.pass {
            self.pass = false;
            self.witness = Some(Witness { property: property.into(), detail: detail.into() });
        }
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = subject.into();
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
