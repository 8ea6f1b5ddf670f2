//! Suite parameters, check accumulation and the JSON report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polymap::PolyMap;
use crate::scalar::{Mode, Semiring};

/// Deliberate defects used to show that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The canonical flip is replaced by the identity.
    IdentityFlip,
    /// The vertical lift copies `u` into its zero block: `ℓ(u,x) = (u,0,u,x)`.
    DroppedZeroBlock,
    /// The standard fibre bundle's lift keeps the fibre point: `λ(x,a) = (0,a,x,a)`.
    CorruptedLambda,
}

impl Fault {
    pub const ALL: [Fault; 3] = [Fault::IdentityFlip, Fault::DroppedZeroBlock, Fault::CorruptedLambda];

    pub fn as_str(self) -> &'static str {
        match self {
            Fault::IdentityFlip => "identity-flip",
            Fault::DroppedZeroBlock => "dropped-zero-block",
            Fault::CorruptedLambda => "corrupted-lambda",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown fault `{s}`")))
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub mode: Mode,
    pub max_dim: usize,
    pub max_degree: u32,
    pub instances: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context_dim: Option<usize>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            mode: Mode::Rational,
            max_dim: 3,
            max_degree: 3,
            instances: 50,
            seed: 0,
            fault: None,
            context_dim: None,
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        if self.max_dim == 0 || self.max_dim > 6 {
            return Err(Error::InvalidParams(format!("max-dim must be in 1..=6, got {}", self.max_dim)));
        }
        if self.max_degree > 6 {
            return Err(Error::InvalidParams(format!("max-degree must be at most 6, got {}", self.max_degree)));
        }
        if self.instances == 0 {
            return Err(Error::InvalidParams("instances must be positive".into()));
        }
        if self.context_dim.is_some_and(|c| c > 4) {
            return Err(Error::InvalidParams("context-dim must be at most 4".into()));
        }
        Ok(())
    }

    /// Coefficient bound: `[0,5]` over the naturals, `[-5,5]` over the rationals.
    pub fn coeff_bound(&self) -> u64 {
        5
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: Params,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub duration_ms: u64,
}

impl Report {
    pub fn success(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the wall time zeroed, for determinism comparisons.
    pub fn to_json_without_time(&self) -> String {
        let mut r = self.clone();
        r.duration_ms = 0;
        r.to_json()
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    /// Merge another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.recount();
    }

    fn recount(&mut self) {
        self.failed = self.checks.iter().filter(|c| c.status != Status::Pass).count();
        self.passed = self.checks.len() - self.failed;
    }
}

/// Values that identity checks can compare and print.
pub trait Comparable: PartialEq {
    fn render(&self) -> String;

    /// `lhs - rhs` when the scalars allow subtraction.
    fn residual(&self, _other: &Self) -> Option<String> {
        None
    }
}

impl<C: Semiring> Comparable for PolyMap<C> {
    fn render(&self) -> String {
        format!("[{}->{}] {}", self.dom(), self.cod(), self)
    }

    fn residual(&self, other: &Self) -> Option<String> {
        if C::MODE != Mode::Rational {
            return None;
        }
        self.sub(other).map(|d| d.to_string())
    }
}

/// Accumulates per-check outcomes across instances.
///
/// A check passes iff every instance passed; the first non-passing instance
/// is kept as the counterexample.
#[derive(Default)]
pub struct Checks {
    records: BTreeMap<String, CheckRecord>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    fn record(&mut self, name: &str, outcome: Option<(Status, Counterexample)>) {
        let rec = self.records.entry(name.to_string()).or_insert_with(|| CheckRecord {
            name: name.to_string(),
            status: Status::Pass,
            instances: 0,
            counterexample: None,
        });
        rec.instances += 1;
        if let Some((status, cx)) = outcome {
            if rec.status == Status::Pass {
                rec.status = status;
                rec.counterexample = Some(cx);
            }
        }
    }

    fn error_outcome(instance: String, e: &Error) -> Option<(Status, Counterexample)> {
        Some((Status::Error, Counterexample { instance, message: Some(e.to_string()), ..Default::default() }))
    }

    /// Exact identity `lhs = rhs`.
    pub fn eq<T: Comparable>(
        &mut self,
        name: &str,
        instance: impl FnOnce() -> String,
        lhs: Result<T>,
        rhs: Result<T>,
    ) -> bool {
        let outcome = match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => None,
            (Ok(l), Ok(r)) => Some((
                Status::Fail,
                Counterexample {
                    instance: instance(),
                    residual: l.residual(&r),
                    lhs: Some(l.render()),
                    rhs: Some(r.render()),
                    message: None,
                },
            )),
            (Err(e), _) | (_, Err(e)) => Self::error_outcome(instance(), &e),
        };
        let ok = outcome.is_none();
        self.record(name, outcome);
        ok
    }

    /// A boolean property; `message` explains a failure.
    pub fn holds(
        &mut self,
        name: &str,
        instance: impl FnOnce() -> String,
        ok: Result<bool>,
        message: impl FnOnce() -> String,
    ) -> bool {
        let outcome = match ok {
            Ok(true) => None,
            Ok(false) => Some((
                Status::Fail,
                Counterexample { instance: instance(), message: Some(message()), ..Default::default() },
            )),
            Err(e) => Self::error_outcome(instance(), &e),
        };
        let ok = outcome.is_none();
        self.record(name, outcome);
        ok
    }

    /// A numeric error that must not exceed `tol`.
    pub fn within(&mut self, name: &str, instance: impl FnOnce() -> String, value: Result<f64>, tol: f64) -> bool {
        let outcome = match value {
            Ok(v) if v <= tol => None,
            Ok(v) => Some((
                Status::Fail,
                Counterexample {
                    instance: instance(),
                    residual: Some(format!("{v:e}")),
                    message: Some(format!("relative error {v:e} exceeds tolerance {tol:e}")),
                    ..Default::default()
                },
            )),
            Err(e) => Self::error_outcome(instance(), &e),
        };
        let ok = outcome.is_none();
        self.record(name, outcome);
        ok
    }

    /// An operation that must succeed.
    pub fn ok<T>(&mut self, name: &str, instance: impl FnOnce() -> String, r: &Result<T>) -> bool {
        let outcome = match r {
            Ok(_) => None,
            Err(e) => Some((
                Status::Fail,
                Counterexample { instance: instance(), message: Some(e.to_string()), ..Default::default() },
            )),
        };
        let ok = outcome.is_none();
        self.record(name, outcome);
        ok
    }

    /// Merge checks from another accumulator under a prefix.
    pub fn merge(&mut self, prefix: &str, other: Checks) {
        for (name, rec) in other.records {
            let full = if prefix.is_empty() { name } else { format!("{prefix}/{name}") };
            match self.records.get_mut(&full) {
                Some(existing) => {
                    existing.instances += rec.instances;
                    if existing.status == Status::Pass && rec.status != Status::Pass {
                        existing.status = rec.status;
                        existing.counterexample = rec.counterexample;
                    }
                }
                None => {
                    self.records.insert(full.clone(), CheckRecord { name: full, ..rec });
                }
            }
        }
    }

    pub fn finish(self, suite: &str, params: &Params, started: Instant) -> Report {
        let checks: Vec<CheckRecord> = self.records.into_values().collect();
        let failed = checks.iter().filter(|c| c.status != Status::Pass).count();
        Report {
            suite: suite.to_string(),
            params: params.clone(),
            passed: checks.len() - failed,
            failed,
            checks,
            duration_ms: started.elapsed().as_millis() as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Natural, Rational};

    #[test]
    fn first_failure_is_kept() {
        let mut c = Checks::new();
        let id = PolyMap::<Rational>::identity(1);
        let z = PolyMap::<Rational>::zero(1, 1);
        c.eq("a", || "i0".into(), Ok(id.clone()), Ok(id.clone()));
        c.eq("a", || "i1".into(), Ok(id.clone()), Ok(z.clone()));
        c.eq("a", || "i2".into(), Ok(z), Ok(id));
        let r = c.finish("s", &Params::default(), Instant::now());
        let rec = r.check("a").unwrap();
        assert_eq!(rec.status, Status::Fail);
        assert_eq!(rec.instances, 3);
        let cx = rec.counterexample.as_ref().unwrap();
        assert_eq!(cx.instance, "i1");
        assert_eq!(cx.residual.as_deref(), Some("x0"));
        assert_eq!((r.passed, r.failed), (0, 1));
    }

    #[test]
    fn natural_failures_print_both_sides() {
        let mut c = Checks::new();
        let a = PolyMap::<Natural>::identity(1);
        let b = PolyMap::<Natural>::zero(1, 1);
        c.eq("n", String::new, Ok(a), Ok(b));
        let r = c.finish("s", &Params::default(), Instant::now());
        let cx = r.checks[0].counterexample.as_ref().unwrap();
        assert!(cx.residual.is_none());
        assert_eq!(cx.lhs.as_deref(), Some("[1->1] x0"));
        assert_eq!(cx.rhs.as_deref(), Some("[1->1] 0"));
    }

    #[test]
    fn errors_are_recorded() {
        let mut c = Checks::new();
        c.eq::<PolyMap<Rational>>("e", || "i".into(), Err(Error::NotInvertible("x".into())), Ok(PolyMap::identity(1)));
        let r = c.finish("s", &Params::default(), Instant::now());
        assert_eq!(r.checks[0].status, Status::Error);
        assert!(!r.success());
    }

    #[test]
    fn report_json_is_sorted_and_stable() {
        let mut c = Checks::new();
        c.holds("zeta", String::new, Ok(true), String::new);
        c.holds("alpha", String::new, Ok(true), String::new);
        let r = c.finish("s", &Params::default(), Instant::now());
        assert_eq!(r.checks[0].name, "alpha");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["suite", "params", "checks", "passed", "failed", "duration_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["params"]["mode"], "rational");
    }

    #[test]
    fn faults_parse() {
        for f in Fault::ALL {
            assert_eq!(f.as_str().parse::<Fault>().unwrap(), f);
        }
        assert!("nope".parse::<Fault>().is_err());
    }
}
