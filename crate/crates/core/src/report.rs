//! Check records and JSON reports.

use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: &str = "1";

/// One verified relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub reference: String,
    /// Non-finite values are written as `null` and read back as infinity.
    #[serde(deserialize_with = "residual_or_inf")]
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn residual_or_inf<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl Check {
    /// Passes when `residual <= tolerance` (NaN fails).
    pub fn residual(name: impl Into<String>, reference: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            reference: reference.to_string(),
            // adding zero turns -0 into +0
            residual: residual + 0.0,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// Exact comparison of integers; the residual is `|found - expected|`.
    pub fn exact(name: impl Into<String>, reference: &str, found: i64, expected: i64) -> Self {
        let r = (found - expected).unsigned_abs() as f64;
        Check {
            name: format!("{} ({found} vs {expected})", name.into()),
            reference: reference.to_string(),
            residual: r,
            tolerance: 0.0,
            pass: r == 0.0,
        }
    }

    /// Boolean condition; residual 0 or 1.
    pub fn holds(name: impl Into<String>, reference: &str, ok: bool) -> Self {
        Check {
            name: name.into(),
            reference: reference.to_string(),
            residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
        }
    }

    /// A failed check carrying an error message.
    pub fn error(name: impl Into<String>, reference: &str, err: &dyn std::fmt::Display) -> Self {
        Check {
            name: format!("{}: {err}", name.into()),
            reference: reference.to_string(),
            residual: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub info: serde_json::Map<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            version: REPORT_VERSION.to_string(),
            command: command.into(),
            seed,
            info: serde_json::Map::new(),
            checks: Vec::new(),
            pass: true,
            timing: Timing::default(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }

    pub fn info(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.info.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain table: one line per check.
    pub fn to_human(&self) -> String {
        let mut out = format!("{} (seed {})\n", self.command, self.seed);
        for (k, v) in &self.info {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<58} residual {:>10.3e}  tol {:>8.1e}  ({})\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance,
                c.reference
            ));
        }
        out.push_str(&format!(
            "{} in {:.2} s\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.timing.seconds
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_fails_and_pass_is_conjunction() {
        let mut r = Report::new("t", 1);
        r.push(Check::residual("a", "x", 1e-13, 1e-12));
        assert!(r.pass);
        r.push(Check::residual("b", "x", f64::NAN, 1e-12));
        assert!(!r.pass);
        // non-finite residuals serialize as null
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert!(back.checks[1].residual.is_infinite());
    }
}
