use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::plan::{BaseModel, Fault, LabelModel};

/// Stated at the top of every report.
pub const REPORT_NOTE: &str = "Homotopy-equivalence and quasifibration claims are audited only \
through their exactly checkable consequences (identities, containments, multiset equalities) \
on finitely many sampled inputs and times.";

/// Everything needed to re-run one failing check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub suite: String,
    pub property: String,
    pub base: BaseModel,
    pub labels: LabelModel,
    pub fault: Option<Fault>,
    pub input: serde_json::Value,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub suite: String,
    pub property: String,
    /// The statement being checked.
    pub anchor: String,
    pub base: BaseModel,
    pub labels: LabelModel,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    /// Sampled inputs the property did not apply to.
    pub skipped: usize,
    pub witness: Option<Witness>,
}

impl PropertyResult {
    pub fn is_vacuous(&self) -> bool {
        self.checked == 0
    }

    pub fn is_pass(&self) -> bool {
        self.failed == 0
    }

    /// Merges counts of the same property; the earlier witness wins.
    pub fn absorb(&mut self, other: PropertyResult) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub suite: String,
    pub note: String,
    pub seed: u64,
    pub trials: usize,
    pub fault: Option<Fault>,
    pub properties: Vec<PropertyResult>,
}

impl AuditReport {
    pub fn new(suite: &str, seed: u64, trials: usize, fault: Option<Fault>) -> Self {
        AuditReport {
            suite: suite.to_string(),
            note: REPORT_NOTE.to_string(),
            seed,
            trials,
            fault,
            properties: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::is_pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.is_pass())
    }

    pub fn property<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a PropertyResult> {
        self.properties.iter().filter(move |p| p.property == name)
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.properties.iter().find_map(|p| p.witness.as_ref())
    }

    /// Joins two reports; the result names both suites if they differ.
    pub fn merge(mut self, other: AuditReport) -> AuditReport {
        if self.suite != other.suite {
            self.suite = format!("{}+{}", self.suite, other.suite);
        }
        self.properties.extend(other.properties);
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let fault = self.fault.map(|f| format!(", fault {f}")).unwrap_or_default();
        let _ = writeln!(out, "suite {} (seed {}, {} trials{fault})", self.suite, self.seed, self.trials);
        let _ = writeln!(out, "note: {}", self.note);
        for p in &self.properties {
            let status = if !p.is_pass() {
                "FAIL"
            } else if p.is_vacuous() {
                "VACUOUS"
            } else {
                "PASS"
            };
            let _ = writeln!(
                out,
                "{status:7} {}/{} [{} x {}] checked {} passed {} failed {} skipped {}",
                p.suite, p.property, p.base, p.labels, p.checked, p.passed, p.failed, p.skipped
            );
            let _ = writeln!(out, "        {}", p.anchor);
            if let Some(w) = &p.witness {
                let _ = writeln!(out, "        witness: {}", w.message);
                let _ = writeln!(
                    out,
                    "        replay: {}",
                    serde_json::to_string(w).unwrap_or_else(|e| e.to_string())
                );
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "result: pass" } else { "result: FAIL" });
        out
    }
}
