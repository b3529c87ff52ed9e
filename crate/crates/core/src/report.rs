//! Law-check reports.
//!
//! Checkers never panic on bad mathematics: every violated law is recorded
//! together with the witnessing data, and a report is empty exactly when all
//! checked laws hold.

use serde::Serialize;

/// One violated law with its witness.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

/// Outcome of a batch of law checks.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub title: String,
    /// Number of individual checks that ran.
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: 0,
            violations: Vec::new(),
        }
    }

    pub fn check(&mut self, law: &str, witness: impl FnOnce() -> String, ok: bool) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                law: law.to_string(),
                witness: witness(),
            });
        }
    }

    pub fn push(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.checks += 1;
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.into(),
        });
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {} checks, {} violation(s)\n",
            self.title,
            self.checks,
            self.violations.len()
        ));
        for v in &self.violations {
            out.push_str(&format!("  [{}] {}\n", v.law, v.witness));
        }
        out
    }
}
