//! Pass/fail reports for identity replays, emitted as JSON lines and as a
//! plain-text summary table.

use serde::{Deserialize, Serialize};

use crate::series::Caps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The comparison could not be carried out to the requested exponent
    /// (completeness horizon or resource limit); never counted as a pass.
    Inconclusive,
}

/// First discrepant coefficient of a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub u: u32,
    pub v: u32,
    pub n: u32,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub caps: Caps,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReplayReport {
    pub fn pass(id: impl Into<String>, k: Option<u32>, caps: Caps) -> ReplayReport {
        ReplayReport { id: id.into(), k, caps, status: Status::Pass, witness: None, note: None }
    }

    pub fn fail(id: impl Into<String>, k: Option<u32>, caps: Caps, witness: Witness) -> ReplayReport {
        ReplayReport {
            id: id.into(),
            k,
            caps,
            status: Status::Fail,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn inconclusive(id: impl Into<String>, k: Option<u32>, caps: Caps, note: impl Into<String>) -> ReplayReport {
        ReplayReport {
            id: id.into(),
            k,
            caps,
            status: Status::Inconclusive,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> ReplayReport {
        self.note = Some(note.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn summary_line(&self) -> String {
        let k = self.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
        };
        let mut line = format!("{:<16} k={:<3} [{}]  {}", self.id, k, self.caps, status);
        if let Some(w) = &self.witness {
            line.push_str(&format!(
                "  first discrepancy at (u={}, v={}, n={}): {} vs {}",
                w.u, w.v, w.n, w.lhs, w.rhs
            ));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!("  ({n})"));
        }
        line
    }
}

/// Plain-text summary: one line per report plus a trailing tally.
pub fn summarize(reports: &[ReplayReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.summary_line());
        out.push('\n');
    }
    let pass = reports.iter().filter(|r| r.status == Status::Pass).count();
    let fail = reports.iter().filter(|r| r.status == Status::Fail).count();
    let inc = reports.iter().filter(|r| r.status == Status::Inconclusive).count();
    out.push_str(&format!("{pass} passed, {fail} failed, {inc} inconclusive\n"));
    out
}

/// Exit status contract: 0 all pass, 1 any fail, otherwise 2 when anything
/// was inconclusive.
pub fn exit_code(reports: &[ReplayReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        2
    } else {
        0
    }
}
