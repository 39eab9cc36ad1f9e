use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::params::ParamSet;
use crate::rational::ExactRational;

/// Which computation disagreed with the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Direct binomial summation of the left side.
    Direct,
    /// The operator-calculus route.
    Operator,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Operator => "operator",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(Counterexample),
    Skipped(String),
    /// Evaluation itself failed (for instance a zero denominator inside a
    /// closed form). Treated like a failure by the CLI.
    Error(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Fail(_) | Status::Error(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail(_) => "fail",
            Status::Skipped(_) => "skipped",
            Status::Error(_) => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity_id: String,
    pub params: ParamSet,
    pub n_min: usize,
    pub n_max: usize,
    pub status: Status,
}

#[derive(Serialize)]
struct MachineLine<'a> {
    id: &'a str,
    params: BTreeMap<&'a str, String>,
    n_min: usize,
    n_max: usize,
    status: &'static str,
    reason: Option<&'a str>,
    #[serde(rename = "counterexample.n")]
    cx_n: Option<usize>,
    #[serde(rename = "counterexample.lhs")]
    cx_lhs: Option<String>,
    #[serde(rename = "counterexample.rhs")]
    cx_rhs: Option<String>,
    #[serde(rename = "counterexample.route")]
    cx_route: Option<&'static str>,
}

impl VerificationReport {
    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.status {
            Status::Fail(cx) => Some(cx),
            _ => None,
        }
    }

    /// One JSON object on a single line. Rationals are `"p/q"` strings and
    /// absent fields are `null`.
    pub fn to_machine_line(&self) -> String {
        let cx = self.counterexample();
        let reason = match &self.status {
            Status::Skipped(r) | Status::Error(r) => Some(r.as_str()),
            _ => None,
        };
        let line = MachineLine {
            id: &self.identity_id,
            params: self.params.iter().map(|(k, v)| (k, v.to_string())).collect(),
            n_min: self.n_min,
            n_max: self.n_max,
            status: self.status.label(),
            reason,
            cx_n: cx.map(|c| c.n),
            cx_lhs: cx.map(|c| c.lhs.to_string()),
            cx_rhs: cx.map(|c| c.rhs.to_string()),
            cx_route: cx.map(|c| c.route.as_str()),
        };
        serde_json::to_string(&line).expect("report serialization cannot fail")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.status.label().to_uppercase();
        write!(f, "{tag:<7} {:<26} {:<22} n={}..{}", self.identity_id, self.params.to_string(), self.n_min, self.n_max)?;
        match &self.status {
            Status::Pass => Ok(()),
            Status::Fail(cx) => write!(
                f,
                "  first mismatch at n={}: {} {} != {}",
                cx.n,
                cx.route.as_str(),
                cx.lhs,
                cx.rhs
            ),
            Status::Skipped(r) | Status::Error(r) => write!(f, "  ({r})"),
        }
    }
}
