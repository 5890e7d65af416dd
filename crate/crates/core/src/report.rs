//! Check-report structures shared by the library self-checks and the
//! command-line `verify` subcommand. Serialized to JSON by the CLI.

use serde::Serialize;

/// One named numerical check: an observed value against a target with a
/// tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// Human-readable parameter summary, e.g. "alpha=0.5, r=1".
    pub params: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, params: &str, value: f64, target: f64, tolerance: f64) -> Self {
        let pass = (value - target).abs() <= tolerance;
        Check {
            name: name.to_string(),
            params: params.to_string(),
            value,
            target,
            tolerance,
            pass,
        }
    }
}

/// A named suite of checks; `pass` is the conjunction.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.to_string(), checks, pass }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_pass_logic() {
        assert!(Check::new("a", "", 1.0, 1.0 + 5e-7, 1e-6).pass);
        assert!(!Check::new("a", "", 1.0, 1.1, 1e-6).pass);
    }

    #[test]
    fn suite_conjunction() {
        let s = SuiteReport::new(
            "s",
            vec![
                Check::new("x", "", 0.0, 0.0, 1e-9),
                Check::new("y", "", 1.0, 2.0, 1e-9),
            ],
        );
        assert!(!s.pass);
    }
}
