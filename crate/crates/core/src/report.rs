//! Check reports shared by the Vénéreau and slice-kernel pipelines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Undetermined,
    Fail,
}

impl Verdict {
    /// Combines verdicts: any failure wins, then any undetermined.
    pub fn worst(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().max().unwrap_or(Verdict::Pass)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undetermined => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub check: String,
    pub subject: String,
    pub verdict: Verdict,
    pub witnesses: BTreeMap<String, Value>,
    pub stats: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn new(check: &str, subject: &str, verdict: Verdict) -> Self {
        CheckReport {
            schema: REPORT_SCHEMA,
            check: check.to_string(),
            subject: subject.to_string(),
            verdict,
            witnesses: BTreeMap::new(),
            stats: BTreeMap::new(),
        }
    }

    pub fn witness(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.witnesses.insert(key.to_string(), value.into());
        self
    }

    pub fn stat(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.stats.insert(key.to_string(), value.into());
        self
    }

    /// One JSON line; key order is fixed so identical inputs give identical bytes.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
