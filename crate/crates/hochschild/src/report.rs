//! Pass/fail reports with exact witnesses.
//!
//! Every verification suite produces a [`VerificationReport`]: a list of named
//! checks. A failing check always carries a witness recording the input tuple
//! and both evaluated sides as exact scalar strings, so a reader can replay
//! the violation by hand.

use serde::Serialize;

/// The data needed to replay a failed identity by hand.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    /// Human-readable description of the inputs (basis tuple, degree, ...).
    pub inputs: Vec<String>,
    pub left: String,
    pub right: String,
}

impl Witness {
    pub fn new(inputs: Vec<String>, left: impl Into<String>, right: impl Into<String>) -> Self {
        Witness { inputs, left: left.into(), right: right.into() }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Sign convention or other run-time parameter the check depends on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            convention: None,
            note: None,
            witness: None,
        });
    }

    pub fn pass_note(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            convention: None,
            note: Some(note.into()),
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Witness) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            convention: None,
            note: None,
            witness: Some(witness),
        });
    }

    pub fn fail_note(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            convention: None,
            note: Some(note.into()),
            witness: None,
        });
    }

    /// Records an identity check: passes iff `left == right`.
    pub fn check_eq<T: PartialEq>(
        &mut self,
        name: impl Into<String>,
        inputs: Vec<String>,
        left: &T,
        right: &T,
        show: impl Fn(&T) -> String,
    ) {
        if left == right {
            self.pass(name);
        } else {
            self.fail(name, Witness::new(inputs, show(left), show(right)));
        }
    }

    pub fn set_convention(&mut self, convention: &str) {
        for c in &mut self.checks {
            if c.convention.is_none() {
                c.convention = Some(convention.to_string());
            }
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Stable output order for serialized reports.
    pub fn sort_by_name(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check, `PASS <name>` or `FAIL <name>: lhs != rhs @ inputs`.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}", c.name));
            if let Some(conv) = &c.convention {
                out.push_str(&format!(" [{conv}]"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(
                    ": {} != {} @ ({})",
                    w.left,
                    w.right,
                    w.inputs.join(", ")
                ));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!(" -- {n}"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_checks_carry_witnesses() {
        let mut r = VerificationReport::new();
        r.pass("a");
        r.check_eq("b", vec!["x".into()], &1, &2, |v| v.to_string());
        assert!(!r.all_passed());
        let failed = r.failed();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].witness.is_some());
        assert!(r.render_lines().contains("FAIL b: 1 != 2 @ (x)"));
    }
}
