use std::fmt::Display;

use serde::Serialize;

/// One verified identity: expected and actual rendered exactly, pass
/// means exact equality (or exact sign match for sign checks).
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn exact<T: Display + PartialEq>(name: impl Into<String>, expected: &T, actual: &T) -> Check {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass: expected == actual,
        }
    }

    pub fn named(
        name: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) -> Check {
        Check {
            name: name.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
