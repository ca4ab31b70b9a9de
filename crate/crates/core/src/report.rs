//! Verification reports produced by every identity checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bijection::BijectionError;
use crate::partition::PartitionError;
use crate::qseries::{SeriesError, Window};
use crate::sets::SetsError;
use crate::trapezoid::TrapezoidError;

/// The first point at which two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Where the disagreement was found, e.g. `"t^1 q^5"` or `"k=3"`.
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of checking one named identity at one parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, i64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    pub cases_checked: u64,
    pub headline: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn new(identity: &str) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            pass: true,
            window: None,
            cases_checked: 0,
            headline: String::new(),
            counterexample: None,
            details: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Into<String>) {
        self.details.insert(key.to_string(), value.into());
    }

    /// Marks the report failed, keeping only the first counterexample.
    pub fn record_failure(&mut self, cex: Counterexample) {
        self.pass = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(cex);
        }
    }

    /// One-line human-readable rendering, stable across runs.
    pub fn text_line(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let mut line = if params.is_empty() {
            format!("{}: ", self.identity)
        } else {
            format!("{} {}: ", self.identity, params)
        };
        line.push_str(if self.pass { "PASS" } else { "FAIL" });
        if !self.headline.is_empty() {
            line.push_str(&format!(" ({})", self.headline));
        }
        if let Some(cex) = &self.counterexample {
            line.push_str(&format!(
                "; first mismatch at {}: lhs={} rhs={}",
                cex.location, cex.lhs, cex.rhs
            ));
        }
        line
    }
}

/// Errors surfaced by the verification drivers.
#[derive(Debug)]
pub enum VerifyError {
    Partition(PartitionError),
    Trapezoid(TrapezoidError),
    Sets(SetsError),
    Bijection(BijectionError),
    Series(SeriesError),
    BadRequest(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Partition(e) => write!(f, "{e}"),
            VerifyError::Trapezoid(e) => write!(f, "{e}"),
            VerifyError::Sets(e) => write!(f, "{e}"),
            VerifyError::Bijection(e) => write!(f, "{e}"),
            VerifyError::Series(e) => write!(f, "{e}"),
            VerifyError::BadRequest(msg) => write!(f, "{msg}"),
        }
    }
}

macro_rules! impl_from_verify_error {
    ($variant:ident, $ty:ty) => {
        impl From<$ty> for VerifyError {
            fn from(e: $ty) -> Self {
                VerifyError::$variant(e)
            }
        }
    };
}

impl_from_verify_error!(Partition, PartitionError);
impl_from_verify_error!(Trapezoid, TrapezoidError);
impl_from_verify_error!(Sets, SetsError);
impl_from_verify_error!(Bijection, BijectionError);
impl_from_verify_error!(Series, SeriesError);

impl std::error::Error for VerifyError {}
