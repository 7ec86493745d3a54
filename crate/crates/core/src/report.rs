//! Violation lists produced by the structural validators.

use std::fmt;

use serde::Serialize;

/// Upper bound on the number of violations stored verbatim; the rest are counted.
const MAX_RECORDED: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

/// Outcome of a validator. Empty iff the checked structure satisfies every law.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    violations: Vec<Violation>,
    total: usize,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rule: &'static str, detail: impl Into<String>) {
        self.total += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation { rule, detail: detail.into() });
        }
    }

    /// Appends every violation of `other`, prefixing details with `context`.
    pub fn absorb(&mut self, context: &str, other: ValidationReport) {
        let dropped = other.total - other.violations.len();
        for v in other.violations {
            self.push(v.rule, format!("{context}: {}", v.detail));
        }
        self.total += dropped;
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Number of violations found, including those not stored.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Whether some recorded violation is tagged with `rule`.
    pub fn has(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        write!(f, "{} violation(s)", self.total)?;
        for v in self.violations.iter().take(8) {
            write!(f, "; [{}] {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

/// Outcome of a probe or suite instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// FAIL dominates INCONCLUSIVE, which dominates PASS.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}
