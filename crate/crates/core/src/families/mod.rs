//! The Γ_p family over Q(sin 2π/p) and the (2,3,7) algebra over Q(ζ_7)^+,
//! with verifiers for their checkable properties.

mod elkies;
mod gamma;

#[cfg(test)]
mod tests;

pub use elkies::{elkies, elkies_ramification, verify_elkies, ElkiesData, ELKIES_SIGMA};
pub use gamma::{gamma_p, gamma_p_variant, verify_gamma_p, GammaPData, GammaVariant, DEFAULT_Q_LIST};

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Undetermined,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub outcome: Outcome,
    pub detail: Value,
}

impl Check {
    pub fn new(id: &str, claim: impl Into<String>, outcome: Outcome, detail: Value) -> Self {
        Check {
            id: id.to_string(),
            claim: claim.into(),
            outcome,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn new(subject: impl Into<String>) -> Self {
        Verification {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail).collect()
    }

    pub fn undetermined(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.outcome == Outcome::Undetermined)
            .collect()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == Outcome::Pass)
    }
}
