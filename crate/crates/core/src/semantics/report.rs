use super::TriBool;
use serde::{Deserialize, Serialize};

/// One compared pair in a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub input: String,
    pub expected: TriBool,
    pub got: TriBool,
    /// `true` when both sides are decided and agree, `false` when both are
    /// decided and differ, `unknown` otherwise.
    pub verdict: TriBool,
}

/// Outcome of a check suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub fuel: u64,
    pub fuel_used: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    /// Rendered inputs shared by the instances, in input order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subjects: Vec<String>,
    pub instances: Vec<Instance>,
}

impl CheckReport {
    pub fn new(check: &str, fuel: u64) -> Self {
        CheckReport {
            check: check.to_string(),
            pass: true,
            fuel,
            fuel_used: 0,
            flags: Vec::new(),
            subjects: Vec::new(),
            instances: Vec::new(),
        }
    }

    pub fn push(&mut self, input: impl Into<String>, expected: TriBool, got: TriBool) {
        let verdict =
            if expected.is_decided() && got.is_decided() { TriBool::from(expected == got) } else { TriBool::Unknown };
        if verdict == TriBool::False {
            self.pass = false;
        }
        self.instances.push(Instance { input: input.into(), expected, got, verdict });
    }

    pub fn flag(&mut self, flag: &str) {
        if !self.flags.iter().any(|f| f == flag) {
            self.flags.push(flag.to_string());
        }
    }

    pub fn use_fuel(&mut self, used: u64) {
        self.fuel_used = self.fuel_used.max(used);
    }

    /// Instances whose verdict is `false`.
    pub fn mismatches(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| i.verdict == TriBool::False)
    }

    pub fn unknowns(&self) -> usize {
        self.instances.iter().filter(|i| i.verdict == TriBool::Unknown).count()
    }

    /// Folds `other` into `self` under a combined name.
    pub fn merge(&mut self, other: CheckReport) {
        self.pass &= other.pass;
        self.fuel_used = self.fuel_used.max(other.fuel_used);
        for f in &other.flags {
            self.flag(f);
        }
        self.subjects.extend(other.subjects);
        self.instances.extend(other.instances);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Invalid(format!("report JSON: {e}")))
    }
}
