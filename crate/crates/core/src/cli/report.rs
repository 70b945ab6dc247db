//! Machine-readable command reports. The text output of every command is
//! rendered from the same data.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::{AxiomVerdict, Witness};
use crate::event::StateSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    /// The verdict this witness belongs to.
    pub verdict: String,
    /// The clause that failed.
    pub clause: String,
    pub events: Vec<String>,
}

impl WitnessEntry {
    pub fn from_axiom(verdict: &str, witness: &Witness, space: &StateSpace) -> Self {
        WitnessEntry {
            verdict: verdict.to_string(),
            clause: witness.axiom.name().to_string(),
            events: witness
                .events
                .iter()
                .map(|&e| space.format_event(e))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let labels = ["A", "B", "C"];
        let parts: Vec<String> = self
            .events
            .iter()
            .enumerate()
            .map(|(i, e)| format!("{}={e}", labels.get(i).copied().unwrap_or("X")))
            .collect();
        format!("{} witness: {}", self.clause, parts.join(", "))
    }
}

/// `{command, inputs, verdicts, witnesses, seed?}` plus an optional payload.
/// Wall time goes to stderr so equal invocations give equal reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<WitnessEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Command-specific result: a relation or distribution file, a
    /// classification, a theorem report.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            seed: None,
            output: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: Option<String>) {
        self.verdicts.push(Verdict {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub fn axiom(&mut self, verdict: &AxiomVerdict, space: &StateSpace) {
        let name = verdict.axiom.name();
        let detail = match (&verdict.witness, verdict.pass) {
            (Some(w), _) if w.axiom != verdict.axiom => Some(format!("{} fails", w.axiom.name())),
            (None, false) => Some("singleton restriction is not a basic relation".to_string()),
            _ => None,
        };
        self.verdict(name, verdict.pass, detail);
        if let Some(w) = &verdict.witness {
            self.witnesses
                .push(WitnessEntry::from_axiom(name, w, space));
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }
}
