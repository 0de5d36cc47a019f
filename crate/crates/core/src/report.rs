//! Machine-readable run reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Residual, witness or diff summary.
    pub detail: String,
    /// Display the check is tied to.
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub timestamp: Option<String>,
    pub records: Vec<CheckRecord>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(command: Vec<String>, timestamp: Option<String>) -> Self {
        RunReport {
            command,
            timestamp,
            records: Vec::new(),
            exit_status: 0,
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
        anchor: impl Into<String>,
    ) {
        self.records.push(CheckRecord {
            name: name.into(),
            status: Status::from_bool(ok),
            detail: detail.into(),
            anchor: anchor.into(),
        });
        self.exit_status = if self.all_pass() { 0 } else { 1 };
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One line per record.
    pub fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&format!("{} {}", r.status, r.name));
            if !r.detail.is_empty() {
                s.push_str(&format!(": {}", r.detail));
            }
            s.push('\n');
        }
        s
    }
}

/// `SOURCE_DATE_EPOCH` when set; otherwise the wall clock only if asked.
pub fn report_timestamp(wall_clock: bool) -> Option<String> {
    if let Ok(v) = std::env::var("SOURCE_DATE_EPOCH") {
        return Some(v);
    }
    wall_clock.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_exit_status() {
        let mut r = RunReport::new(vec!["derive".into()], None);
        r.push("a", true, "", "eq:ppp");
        assert_eq!(r.exit_status, 0);
        r.push("b", false, "witness kk", "eq:ppp");
        assert_eq!(r.exit_status, 1);
        let back = RunReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.text(), "PASS a\nFAIL b: witness kk\n");
    }
}
