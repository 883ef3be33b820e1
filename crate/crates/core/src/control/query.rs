//! Controllability queries and their JSON file form.
//!
//! ```json
//! {
//!   "source": ["GF", "RTK"],
//!   "target": "{Pro}",
//!   "targets": ["Pro", "uPro"],
//!   "pin_source": true,
//!   "constraint": {"kind": "allowed_set", "I": ["GF", "iPI3K"]},
//!   "initial_mode": "given",
//!   "depth_limit": 16,
//!   "max_visited": 1000000
//! }
//! ```
//!
//! Sets are name arrays or set literals; a string starting with `@` names a
//! state supplied by the caller. `constraint.kind` is `max_cardinality` (with
//! `n`) or `allowed_set` (with `I`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::control::constraint::ContextConstraint;
use crate::error::{Error, Result};
use crate::format::context::parse_set;
use crate::species::{SpeciesSet, SpeciesTable};

/// Default cap on distinct states visited by a witness search.
pub const DEFAULT_MAX_VISITED: usize = 1_000_000;

/// How the source is installed as the first state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartMode {
    /// `D_0` is the source and `C_0` is exempt from the constraint.
    #[default]
    Given,
    /// `D_0 = ∅`, so the first context is the first state and must be admitted.
    Context,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlQuery {
    pub source: SpeciesSet,
    pub target: SpeciesSet,
    /// Target set `T`; `None` means full-state controllability.
    pub targets: Option<SpeciesSet>,
    /// Install the source exactly instead of every state that agrees with it on `T`.
    pub pin_source: bool,
    pub constraint: ContextConstraint,
    pub start_mode: StartMode,
    /// Largest hit index searched.
    pub depth_limit: usize,
    pub max_visited: usize,
}

impl ControlQuery {
    /// Full-state query in given mode with no depth limit.
    pub fn new(source: SpeciesSet, target: SpeciesSet, constraint: ContextConstraint) -> Self {
        ControlQuery {
            source,
            target,
            targets: None,
            pin_source: false,
            constraint,
            start_mode: StartMode::Given,
            depth_limit: usize::MAX,
            max_visited: DEFAULT_MAX_VISITED,
        }
    }

    pub fn with_targets(mut self, targets: SpeciesSet) -> Self {
        self.targets = Some(targets);
        self
    }

    pub fn pinned(mut self) -> Self {
        self.pin_source = true;
        self
    }

    pub fn with_start_mode(mut self, mode: StartMode) -> Self {
        self.start_mode = mode;
        self
    }

    pub fn with_depth_limit(mut self, depth: usize) -> Self {
        self.depth_limit = depth;
        self
    }

    pub fn with_max_visited(mut self, max: usize) -> Self {
        self.max_visited = max;
        self
    }

    pub fn validate(&self, table: &SpeciesTable) -> Result<()> {
        table.check(&self.source)?;
        table.check(&self.target)?;
        self.constraint.validate(table)?;
        if self.depth_limit == 0 {
            return Err(Error::InvalidQuery("depth limit must be at least 1".into()));
        }
        if let Some(t) = &self.targets {
            table.check(t)?;
            if !self.target.is_subset(t) {
                return Err(Error::InvalidQuery("target must be a subset of the target set".into()));
            }
            if !self.pin_source && !self.source.is_subset(t) {
                return Err(Error::InvalidQuery(
                    "source must be a subset of the target set unless pin_source is set".into(),
                ));
            }
        }
        Ok(())
    }

    /// Whether `state` meets the end condition.
    pub fn is_hit(&self, state: &SpeciesSet) -> bool {
        match &self.targets {
            None => *state == self.target,
            Some(t) => &(state & t) == &self.target,
        }
    }

    /// Whether `state` is an admissible first state in the sense of the start condition.
    pub fn is_start(&self, state: &SpeciesSet) -> bool {
        match (&self.targets, self.pin_source) {
            (Some(t), false) => &(state & t) == &self.source,
            _ => *state == self.source,
        }
    }

    pub fn from_json(text: &str, table: &SpeciesTable, named: &BTreeMap<String, SpeciesSet>) -> Result<Self> {
        let file: QueryFile = serde_json::from_str(text)?;
        file.resolve(table, named)
    }

    pub fn to_json(&self, table: &SpeciesTable) -> String {
        let names = |s: &SpeciesSet| SetSpec::Names(table.names_of(s));
        let file = QueryFile {
            source: names(&self.source),
            target: names(&self.target),
            targets: self.targets.as_ref().map(names),
            pin_source: self.pin_source,
            constraint: match &self.constraint {
                ContextConstraint::MaxCardinality(n) => ConstraintSpec {
                    kind: "max_cardinality".into(),
                    n: Some(*n),
                    i: None,
                },
                ContextConstraint::AllowedSet(i) => ConstraintSpec {
                    kind: "allowed_set".into(),
                    n: None,
                    i: Some(names(i)),
                },
            },
            initial_mode: self.start_mode,
            depth_limit: (self.depth_limit != usize::MAX).then_some(self.depth_limit),
            max_visited: Some(self.max_visited),
        };
        serde_json::to_string_pretty(&file).expect("query serializes") + "\n"
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum SetSpec {
    Names(Vec<String>),
    Text(String),
}

impl SetSpec {
    fn resolve(&self, table: &SpeciesTable, named: &BTreeMap<String, SpeciesSet>) -> Result<SpeciesSet> {
        match self {
            SetSpec::Names(v) => table.set_from_names(v),
            SetSpec::Text(s) => match s.trim().strip_prefix('@') {
                Some(name) => named
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::InvalidQuery(format!("unknown named state @{name}"))),
                None => parse_set(s.trim(), table),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintSpec {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, rename = "I", skip_serializing_if = "Option::is_none")]
    i: Option<SetSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QueryFile {
    source: SetSpec,
    target: SetSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    targets: Option<SetSpec>,
    #[serde(default)]
    pin_source: bool,
    constraint: ConstraintSpec,
    #[serde(default)]
    initial_mode: StartMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    depth_limit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_visited: Option<usize>,
}

impl QueryFile {
    fn resolve(&self, table: &SpeciesTable, named: &BTreeMap<String, SpeciesSet>) -> Result<ControlQuery> {
        let constraint = match (self.constraint.kind.as_str(), &self.constraint.n, &self.constraint.i) {
            ("max_cardinality", Some(n), None) => ContextConstraint::MaxCardinality(*n),
            ("allowed_set", None, Some(i)) => ContextConstraint::AllowedSet(i.resolve(table, named)?),
            (kind, _, _) => {
                return Err(Error::InvalidConstraint(format!(
                    "kind {kind:?} needs exactly its own field (max_cardinality: n, allowed_set: I)"
                )))
            }
        };
        let query = ControlQuery {
            source: self.source.resolve(table, named)?,
            target: self.target.resolve(table, named)?,
            targets: self.targets.as_ref().map(|t| t.resolve(table, named)).transpose()?,
            pin_source: self.pin_source,
            constraint,
            start_mode: self.initial_mode,
            depth_limit: self.depth_limit.unwrap_or(usize::MAX),
            max_visited: self.max_visited.unwrap_or(DEFAULT_MAX_VISITED),
        };
        query.validate(table)?;
        Ok(query)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> SpeciesTable {
        SpeciesTable::new(["GF", "Pro", "uPro", "iPI3K"]).unwrap()
    }

    #[test]
    fn parses_all_fields() {
        let t = table();
        let mut named = BTreeMap::new();
        named.insert("S19".to_string(), t.set_from_names(["uPro"]).unwrap());
        let text = r#"{
            "source": "@S19",
            "target": ["Pro"],
            "targets": "{Pro, uPro}",
            "pin_source": true,
            "constraint": {"kind": "allowed_set", "I": ["GF", "iPI3K"]},
            "initial_mode": "given",
            "depth_limit": 6
        }"#;
        let q = ControlQuery::from_json(text, &t, &named).unwrap();
        assert_eq!(q.source, t.set_from_names(["uPro"]).unwrap());
        assert_eq!(q.targets, Some(t.set_from_names(["Pro", "uPro"]).unwrap()));
        assert_eq!(q.depth_limit, 6);
        assert_eq!(q.max_visited, DEFAULT_MAX_VISITED);
        let again = ControlQuery::from_json(&q.to_json(&t), &t, &named).unwrap();
        assert_eq!(again, q);
    }

    #[test]
    fn rejects_bad_queries() {
        let t = table();
        let named = BTreeMap::new();
        let bad = [
            r#"{"source": [], "target": [], "constraint": {"kind": "max_cardinality"}}"#,
            r#"{"source": [], "target": [], "constraint": {"kind": "max_cardinality", "n": 9}}"#,
            r#"{"source": ["GF"], "target": [], "targets": ["Pro"], "constraint": {"kind": "max_cardinality", "n": 0}}"#,
            r#"{"source": [], "target": ["X"], "constraint": {"kind": "max_cardinality", "n": 0}}"#,
            r#"{"source": [], "target": [], "constraint": {"kind": "max_cardinality", "n": 0}, "bogus": 1}"#,
            r#"{"source": "@nope", "target": [], "constraint": {"kind": "max_cardinality", "n": 0}}"#,
        ];
        for text in bad {
            assert!(ControlQuery::from_json(text, &t, &named).is_err(), "{text}");
        }
    }

    #[test]
    fn start_and_end_conditions() {
        let t = table();
        let tset = t.set_from_names(["Pro", "uPro"]).unwrap();
        let q = ControlQuery::new(t.empty_set(), t.set_from_names(["Pro"]).unwrap(), ContextConstraint::MaxCardinality(0))
            .with_targets(tset);
        assert!(q.is_hit(&t.set_from_names(["GF", "Pro"]).unwrap()));
        assert!(!q.is_hit(&t.set_from_names(["Pro", "uPro"]).unwrap()));
        assert!(q.is_start(&t.set_from_names(["GF"]).unwrap()));
        assert!(!q.clone().pinned().is_start(&t.set_from_names(["GF"]).unwrap()));
    }
}
