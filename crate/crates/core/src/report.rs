//! Reports produced by randomized identity suites and lifting certificates.

use serde::{Deserialize, Serialize};

/// Outcome of one identity family in an axiom run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityTally {
    /// Name of the identity.
    pub name: String,
    /// Number of trials where the identity held.
    pub passed: usize,
    /// Number of trials where it failed.
    pub failed: usize,
    /// Description of the first failing input.
    pub first_counterexample: Option<String>,
}

/// Per-identity tallies from a randomized axiom run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// What was checked.
    pub subject: String,
    /// Number of random trials.
    pub trials: usize,
    /// One entry per identity.
    pub identities: Vec<IdentityTally>,
}

impl AxiomReport {
    /// Empty report.
    pub fn new(subject: impl Into<String>, trials: usize) -> Self {
        AxiomReport { subject: subject.into(), trials, identities: Vec::new() }
    }

    /// Records one trial of the named identity.
    pub fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        let idx = match self.identities.iter().position(|t| t.name == name) {
            Some(i) => i,
            None => {
                self.identities.push(IdentityTally {
                    name: name.to_string(),
                    passed: 0,
                    failed: 0,
                    first_counterexample: None,
                });
                self.identities.len() - 1
            }
        };
        let t = &mut self.identities[idx];
        if ok {
            t.passed += 1;
        } else {
            t.failed += 1;
            if t.first_counterexample.is_none() {
                t.first_counterexample = Some(witness());
            }
        }
    }

    /// True when no identity failed.
    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|t| t.failed == 0)
    }

    /// Tally for a named identity.
    pub fn tally(&self, name: &str) -> Option<&IdentityTally> {
        self.identities.iter().find(|t| t.name == name)
    }
}


/// Status of one identity inside a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertEntry {
    /// Name of the identity.
    pub identity: String,
    /// `"pass"` or `"fail"`.
    pub status: String,
}

/// Ordered list of identities checked for one construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Checked identities in order.
    pub entries: Vec<CertEntry>,
}

impl Certificate {
    /// Empty certificate.
    pub fn new() -> Self {
        Certificate::default()
    }

    /// Records an identity check.
    pub fn check(&mut self, identity: impl Into<String>, ok: bool) -> bool {
        self.entries.push(CertEntry {
            identity: identity.into(),
            status: if ok { "pass" } else { "fail" }.to_string(),
        });
        ok
    }

    /// True when every recorded identity passed.
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == "pass")
    }

    /// Names of the failing identities.
    pub fn failures(&self) -> Vec<String> {
        self.entries.iter().filter(|e| e.status != "pass").map(|e| e.identity.clone()).collect()
    }

    /// Appends another certificate, prefixing its identity names.
    pub fn absorb(&mut self, prefix: &str, other: Certificate) {
        for e in other.entries {
            self.entries.push(CertEntry { identity: format!("{prefix}: {}", e.identity), status: e.status });
        }
    }

    /// Converts a failing certificate into an error naming the failures.
    pub fn into_result(self) -> crate::error::Result<Self> {
        if self.all_passed() {
            Ok(self)
        } else {
            Err(crate::error::Error::IdentityFailed(self.failures().join("; ")))
        }
    }
}
