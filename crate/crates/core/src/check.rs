//! Pass/fail records with human-readable certificates.

use serde::Serialize;

/// How many certificates a single check keeps verbatim.
pub const CERTIFICATE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub status: Status,
    /// Total number of violations found, including those not kept.
    pub failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            status: Status::Pass,
            failures: 0,
            certificates: vec![],
            note: None,
        }
    }

    pub fn skipped(note: impl Into<String>) -> Self {
        Check {
            status: Status::Skipped,
            failures: 0,
            certificates: vec![],
            note: Some(note.into()),
        }
    }

    pub fn from_failures(failures: Vec<String>) -> Self {
        let mut c = Check::pass();
        for f in failures {
            c.record(f);
        }
        c
    }

    pub fn record(&mut self, certificate: impl Into<String>) {
        self.status = Status::Fail;
        self.failures += 1;
        if self.certificates.len() < CERTIFICATE_LIMIT {
            self.certificates.push(certificate.into());
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Pass or skipped.
    pub fn ok(&self) -> bool {
        self.status != Status::Fail
    }
}
