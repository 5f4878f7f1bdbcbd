//! Check reports shared by the verification routines.

use serde::Serialize;

/// Outcome of a single conditional statement "premises ⇒ conclusion".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    NotApplicable,
    Fails(String),
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub case: String,
    pub detail: String,
}

/// Tally of one named check over many cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub not_applicable: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> CheckReport {
        CheckReport {
            name: name.into(),
            passed: true,
            cases: 0,
            not_applicable: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.cases += 1;
    }

    pub fn fail(&mut self, case: impl Into<String>, detail: impl Into<String>) {
        self.cases += 1;
        self.passed = false;
        self.violations.push(Violation {
            case: case.into(),
            detail: detail.into(),
        });
    }

    /// Records `ok` as a pass or a failure with the given description.
    pub fn expect(&mut self, ok: bool, case: impl Into<String>, detail: impl Into<String>) {
        if ok {
            self.pass();
        } else {
            self.fail(case, detail);
        }
    }

    pub fn record(&mut self, case: impl Into<String>, verdict: &Verdict) {
        match verdict {
            Verdict::Holds => self.pass(),
            Verdict::NotApplicable => self.not_applicable += 1,
            Verdict::Fails(w) => self.fail(case, w.clone()),
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.passed &= other.passed;
        self.cases += other.cases;
        self.not_applicable += other.not_applicable;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}
