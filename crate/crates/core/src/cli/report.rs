//! Command reports: a verdict, the exact residual, the oracle flag and the
//! conventions in force.

use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Error;
use crate::superfield::{Chart, Coord, VectorField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    McZero,
    McNonzero,
}

impl Verdict {
    pub fn from_mc(zero: bool) -> Self {
        if zero {
            Verdict::McZero
        } else {
            Verdict::McNonzero
        }
    }

    pub fn from_check(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_success(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::McZero)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::McZero => "mc-zero",
            Verdict::McNonzero => "mc-nonzero",
        })
    }
}

/// `coeff · monomial · ∂component`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualTerm {
    pub component: String,
    pub monomial: String,
    pub coeff: String,
}

pub fn residual_terms(v: &VectorField, chart: &Chart) -> Vec<ResidualTerm> {
    v.terms()
        .map(|(c, m, q)| ResidualTerm {
            component: match c {
                Coord::Even(i) => format!("∂{}", chart.even[i].name),
                Coord::Odd(k) => format!("∂ξ{}", chart.odd[k].name),
            },
            monomial: {
                let s = crate::superfield::monomial_string(m, chart);
                if s.is_empty() {
                    "1".into()
                } else {
                    s
                }
            },
            coeff: q.to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Vec<ResidualTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    pub conventions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, instance: Option<&str>, verdict: Verdict) -> Self {
        Report {
            command: command.to_string(),
            instance: instance.map(str::to_string),
            verdict,
            residual: None,
            oracle_agrees: None,
            details: Map::new(),
            conventions: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn residual(mut self, v: &VectorField, chart: &Chart) -> Self {
        self.residual = Some(residual_terms(v, chart));
        self
    }

    pub fn oracle(mut self, agrees: bool) -> Self {
        self.oracle_agrees = Some(agrees);
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn convention(mut self, c: &str) -> Self {
        self.conventions.push(c.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict.is_success() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.instance {
            Some(n) => writeln!(f, "{} [{}]: {}", self.command, n, self.verdict)?,
            None => writeln!(f, "{}: {}", self.command, self.verdict)?,
        }
        if let Some(r) = &self.residual {
            if r.is_empty() {
                writeln!(f, "  residual: 0")?;
            } else {
                writeln!(f, "  residual:")?;
                for t in r {
                    writeln!(f, "    ({}) · {} · {}", t.coeff, t.monomial, t.component)?;
                }
            }
        }
        if let Some(o) = self.oracle_agrees {
            writeln!(f, "  oracle agrees: {o}")?;
        }
        for (k, v) in &self.details {
            writeln!(f, "  {k}: {v}")?;
        }
        for c in &self.conventions {
            writeln!(f, "  convention: {c}")?;
        }
        if let Some(t) = self.timing_ms {
            writeln!(f, "  time: {t:.1} ms")?;
        }
        Ok(())
    }
}

/// Exit status for an error: 3 for internal inconsistencies, 2 otherwise.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistency(_) => 3,
        _ => 2,
    }
}
