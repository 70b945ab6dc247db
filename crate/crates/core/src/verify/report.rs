//! Theorem reports: what was scanned, what failed, what the controls caught.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::checks::{CheckKey, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sampled" => Ok(Mode::Sampled),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// A replayable failure: re-evaluating `check` on `instance` reproduces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: CheckKey,
    pub instance: Instance,
    pub detail: String,
}

/// One check family within a report and how it fared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: CheckKey,
    pub mode: Mode,
    /// Instances the check was evaluated on, including excluded ones.
    pub evaluated: u64,
    /// Instances that met the premise.
    pub qualifying: u64,
    pub failures: u64,
}

/// A known-bad instance the harness must reject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Control {
    pub label: String,
    pub check: CheckKey,
    pub instance: Instance,
    pub expect: Expectation,
    pub caught: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    /// The conclusion must fail on the instance.
    Violated,
    /// The instance must not meet the premise.
    Excluded,
}

/// Counterexamples kept in full; the rest are only counted.
pub const KEPT_COUNTEREXAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub statement: String,
    pub search_space: String,
    pub mode: Mode,
    pub n: usize,
    /// Size of the primary corpus.
    pub instances: u64,
    /// Total failures across all checks.
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub taxonomy: BTreeMap<String, u64>,
    pub controls: Vec<Control>,
    /// Wall time; kept out of the serialized form so reruns are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn new(theorem: &str, statement: &str, mode: Mode, n: usize, seed: Option<u64>) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            statement: statement.to_string(),
            search_space: String::new(),
            mode,
            n,
            instances: 0,
            counterexample_count: 0,
            counterexamples: Vec::new(),
            seed,
            checks: Vec::new(),
            taxonomy: BTreeMap::new(),
            controls: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// No counterexamples and every control caught.
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0 && self.controls.iter().all(|c| c.caught)
    }

    pub(crate) fn check_mut(&mut self, key: CheckKey, mode: Mode) -> &mut Check {
        if let Some(i) = self
            .checks
            .iter()
            .position(|c| c.check == key && c.mode == mode)
        {
            return &mut self.checks[i];
        }
        self.checks.push(Check {
            check: key,
            mode,
            evaluated: 0,
            qualifying: 0,
            failures: 0,
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub(crate) fn tally(&mut self, key: &str, by: u64) {
        *self.taxonomy.entry(key.to_string()).or_insert(0) += by;
    }

    pub(crate) fn record_failure(&mut self, cx: Counterexample) {
        self.counterexample_count += 1;
        self.counterexamples.push(cx);
    }

    /// Sorts counterexamples canonically and trims to the kept prefix.
    pub(crate) fn finish(&mut self, elapsed: Duration) {
        self.counterexamples.sort_by_cached_key(|c| {
            (
                c.check,
                serde_json::to_string(&c.instance).expect("instances serialize"),
                c.detail.clone(),
            )
        });
        self.counterexamples.dedup();
        self.counterexamples.truncate(KEPT_COUNTEREXAMPLES);
        self.elapsed = elapsed;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "theorem {}: {}", self.theorem, self.statement);
        let _ = writeln!(out, "search space: {}", self.search_space);
        let _ = writeln!(out, "mode: {}, n = {}", self.mode, self.n);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(
            out,
            "instances: {}, counterexamples: {}",
            self.instances, self.counterexample_count
        );
        let _ = writeln!(out, "checks:");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {} [{}]: {} evaluated, {} qualifying, {} failed",
                c.check, c.mode, c.evaluated, c.qualifying, c.failures
            );
        }
        if !self.taxonomy.is_empty() {
            let _ = writeln!(out, "taxonomy:");
            for (k, v) in &self.taxonomy {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        if !self.controls.is_empty() {
            let _ = writeln!(out, "controls:");
            for c in &self.controls {
                let status = if c.caught { "caught" } else { "MISSED" };
                let _ = write!(
                    out,
                    "  {} ({}, expect {:?}): {status}",
                    c.label, c.check, c.expect
                );
                if let Some(d) = &c.detail {
                    let _ = write!(out, " ({d})");
                }
                out.push('\n');
            }
        }
        for cx in &self.counterexamples {
            let _ = writeln!(out, "counterexample {}: {}", cx.check, cx.detail);
            let _ = writeln!(
                out,
                "  instance: {}",
                serde_json::to_string(&cx.instance).expect("instances serialize")
            );
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}
