//! Executable property suites.
//!
//! Every suite returns one [`CheckResult`] per property, in a fixed order,
//! with the first counterexample (in enumeration order) when a property
//! fails. Output is identical under sequential and parallel execution.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Execution;

mod dqp_suite;
mod hopf;
mod internal_suite;
mod nondegeneracy;
mod pairing_suite;
mod preorder_suite;
mod tableaux_suite;
pub mod tables;
mod words_suite;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub statement: String,
    pub cases: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl CheckResult {
    /// Runs `f` on every item; a failing item reports its counterexample.
    pub(crate) fn over<T, F>(id: &str, statement: &str, items: &[T], exec: Execution, f: F) -> Self
    where
        T: Sync,
        F: Fn(&T) -> Outcome + Sync + Send,
    {
        let counterexample = exec.find_map_first(items, |t| f(t).err());
        CheckResult {
            id: id.to_string(),
            statement: statement.to_string(),
            cases: items.len() as u64,
            passed: counterexample.is_none(),
            counterexample,
        }
    }

    /// Like [`CheckResult::over`] for index ranges.
    pub(crate) fn over_range<F>(
        id: &str,
        statement: &str,
        len: usize,
        exec: Execution,
        f: F,
    ) -> Self
    where
        F: Fn(usize) -> Outcome + Sync + Send,
    {
        let counterexample = exec.find_first_in_range(len, |i| f(i).err());
        CheckResult {
            id: id.to_string(),
            statement: statement.to_string(),
            cases: len as u64,
            passed: counterexample.is_none(),
            counterexample,
        }
    }

    pub(crate) fn single(id: &str, statement: &str, cases: u64, outcome: Outcome) -> Self {
        let counterexample = outcome.err();
        CheckResult {
            id: id.to_string(),
            statement: statement.to_string(),
            cases,
            passed: counterexample.is_none(),
            counterexample,
        }
    }
}

/// `Err` carries the counterexample.
pub(crate) type Outcome = std::result::Result<(), String>;

pub(crate) fn ensure(ok: bool, message: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// Library errors raised inside a check count as failures.
pub(crate) fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("error: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Preorder,
    Dqp,
    Hopf,
    Pairing,
    Nondegeneracy,
    Internal,
    Words,
    Tableaux,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Preorder,
        Suite::Dqp,
        Suite::Hopf,
        Suite::Pairing,
        Suite::Nondegeneracy,
        Suite::Internal,
        Suite::Words,
        Suite::Tableaux,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Preorder => "preorder",
            Suite::Dqp => "dqp",
            Suite::Hopf => "hopf",
            Suite::Pairing => "pairing",
            Suite::Nondegeneracy => "nondegeneracy",
            Suite::Internal => "internal",
            Suite::Words => "words",
            Suite::Tableaux => "tableaux",
        }
    }

    /// A suite name, or `all` for every suite.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .map(|s| vec![s])
            .ok_or_else(|| Error::Parse(format!("unknown suite {name:?}")))
    }

    /// The size used when no `max_n` is given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Preorder | Suite::Words => 4,
            Suite::Dqp | Suite::Hopf | Suite::Pairing | Suite::Nondegeneracy | Suite::Internal => 3,
            Suite::Tableaux => 6,
        }
    }

    /// The largest accepted `max_n`.
    pub fn max_n_limit(self) -> usize {
        match self {
            Suite::Preorder | Suite::Words => 5,
            Suite::Dqp | Suite::Hopf => 4,
            Suite::Pairing | Suite::Nondegeneracy | Suite::Internal => 3,
            Suite::Tableaux => 6,
        }
    }

    pub fn run(self, max_n: Option<usize>, exec: Execution) -> Result<SuiteReport> {
        let max_n = max_n.unwrap_or(self.default_max_n());
        Error::check_limit(self.name(), max_n, self.max_n_limit())?;
        let checks = match self {
            Suite::Preorder => preorder_suite::run(max_n, exec)?,
            Suite::Dqp => dqp_suite::run(max_n, exec)?,
            Suite::Hopf => hopf::run(max_n, exec)?,
            Suite::Pairing => pairing_suite::run(max_n, exec)?,
            Suite::Nondegeneracy => nondegeneracy::run(max_n, exec)?,
            Suite::Internal => internal_suite::run(max_n, exec)?,
            Suite::Words => words_suite::run(max_n, exec)?,
            Suite::Tableaux => tableaux_suite::run(max_n, exec)?,
        };
        Ok(SuiteReport {
            suite: self.name().to_string(),
            max_n,
            checks,
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_size_two() {
        for suite in Suite::ALL {
            let report = suite.run(Some(2), Execution::Parallel).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "{suite}: {failures:#?}");
        }
    }

    #[test]
    fn reports_do_not_depend_on_execution() {
        for suite in [Suite::Dqp, Suite::Internal, Suite::Words] {
            let seq = suite.run(Some(2), Execution::Sequential).unwrap();
            let par = suite.run(Some(2), Execution::Parallel).unwrap();
            assert_eq!(seq, par, "{suite}");
        }
    }

    #[test]
    fn selection_and_limits() {
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 8);
        assert_eq!(Suite::parse_selection("hopf").unwrap(), vec![Suite::Hopf]);
        assert!(Suite::parse_selection("nope").is_err());
        assert!(matches!(
            Suite::Pairing.run(Some(4), Execution::Sequential),
            Err(Error::SizeLimit { .. })
        ));
    }
}
