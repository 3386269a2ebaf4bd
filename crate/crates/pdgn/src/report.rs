//! Machine-readable reports shared by the CLI commands.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

/// A command report: one entry per check, failing exactly when a
/// counterexample is attached.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub checks: Vec<Check>,
    pub timings_ms: BTreeMap<String, u128>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        let mut hasher = Sha256::new();
        for chunk in inputs {
            hasher.update((chunk.len() as u64).to_le_bytes());
            hasher.update(chunk);
        }
        Self {
            command: command.to_string(),
            inputs_digest: hex(&hasher.finalize()),
            checks: Vec::new(),
            timings_ms: BTreeMap::new(),
            notices: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(Check { name: name.to_string(), pass: true, counterexample: None });
    }

    pub fn fail(&mut self, name: &str, counterexample: serde_json::Value) {
        self.checks.push(Check {
            name: name.to_string(),
            pass: false,
            counterexample: Some(counterexample),
        });
    }

    pub fn check(&mut self, name: &str, counterexample: Option<serde_json::Value>) {
        match counterexample {
            None => self.pass(name),
            Some(c) => self.fail(name, c),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms.insert(name.to_string(), start.elapsed().as_millis());
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
