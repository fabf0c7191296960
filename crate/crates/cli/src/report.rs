//! Serialized report records.
//!
//! Suite records follow `schema/report.schema.json`.

use pigroups_core::suites::{Status, SuiteOutcome};
use pigroups_core::{Group, Subgroup};
use serde::{Deserialize, Serialize};

use crate::parse::{parse_subgroup, ArgError};

/// A subgroup by a minimal generating set and its order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub generators: Vec<String>,
    pub order: usize,
}

impl SubgroupRecord {
    pub fn new(s: &Subgroup) -> SubgroupRecord {
        SubgroupRecord {
            generators: s.canonical_generators().iter().map(|g| g.to_cycle_string()).collect(),
            order: s.order(),
        }
    }

    /// Regenerates the subgroup inside `group`.
    pub fn resolve(&self, group: &Group) -> Result<Subgroup, ArgError> {
        parse_subgroup(group, &self.generators.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusRecord {
    Pass,
    Fail,
    SkippedHypothesis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScopeRecord {
    pub group: String,
    pub pi: String,
    pub class: Option<String>,
}

/// One suite outcome. A failure lists its witnesses; a skip names the
/// hypothesis that does not hold as its only witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub scope: ScopeRecord,
    pub status: StatusRecord,
    pub witnesses: Vec<String>,
    pub timing_ms: Option<u64>,
}

impl SuiteRecord {
    pub fn new(outcome: SuiteOutcome, timing_ms: Option<u64>) -> SuiteRecord {
        let (status, witnesses) = match outcome.status {
            Status::Pass => (StatusRecord::Pass, outcome.witnesses),
            Status::Fail => (StatusRecord::Fail, outcome.witnesses),
            Status::Skipped(why) => (StatusRecord::SkippedHypothesis, vec![why]),
        };
        SuiteRecord {
            suite: outcome.suite.to_string(),
            scope: ScopeRecord {
                group: outcome.scope.group,
                pi: outcome.scope.pi.to_string(),
                class: outcome.scope.class,
            },
            status,
            witnesses,
            timing_ms,
        }
    }

    pub fn text(&self) -> String {
        let status = match self.status {
            StatusRecord::Pass => "pass",
            StatusRecord::Fail => "FAIL",
            StatusRecord::SkippedHypothesis => "skip",
        };
        let mut out = format!("{status:<4} {:<28} {:<7} pi={}", self.suite, self.scope.group, self.scope.pi);
        if let Some(class) = &self.scope.class {
            out.push_str(&format!(" [{class}]"));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!(" {ms}ms"));
        }
        for w in &self.witnesses {
            out.push_str("\n     ");
            out.push_str(w);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[SuiteRecord]) -> Summary {
        records.iter().fold(Summary::default(), |mut s, r| {
            match r.status {
                StatusRecord::Pass => s.pass += 1,
                StatusRecord::Fail => s.fail += 1,
                StatusRecord::SkippedHypothesis => s.skipped += 1,
            }
            s
        })
    }
}
