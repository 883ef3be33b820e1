//! Context constraints and the context universes they admit.

use crate::error::{Error, Result};
use crate::reaction::ReactionSystem;
use crate::species::{SpeciesSet, SpeciesTable};
use crate::subsets::{canonical_subsets, count_subsets};

/// Default cap on the number of allowed contexts materialised by a search.
pub const DEFAULT_CONTEXT_LIMIT: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextConstraint {
    /// Contexts of at most `n` species, `n < |S|`.
    MaxCardinality(usize),
    /// Contexts that are subsets of `I`.
    AllowedSet(SpeciesSet),
}

impl ContextConstraint {
    pub fn admits(&self, context: &SpeciesSet) -> bool {
        match self {
            ContextConstraint::MaxCardinality(n) => context.len() <= *n,
            ContextConstraint::AllowedSet(i) => context.is_subset(i),
        }
    }

    pub fn validate(&self, table: &SpeciesTable) -> Result<()> {
        match self {
            ContextConstraint::MaxCardinality(n) => {
                if *n > 0 && *n >= table.len() {
                    return Err(Error::InvalidConstraint(format!(
                        "n = {n} must be below |S| = {}",
                        table.len()
                    )));
                }
                Ok(())
            }
            ContextConstraint::AllowedSet(i) => table.check(i),
        }
    }

    /// Size of the admitted context universe.
    pub fn universe_size(&self, table: &SpeciesTable) -> u128 {
        match self {
            ContextConstraint::MaxCardinality(n) => count_subsets(table.len(), *n),
            ContextConstraint::AllowedSet(i) => count_subsets(i.len(), i.len()),
        }
    }

    /// Why `context` is rejected at step `k`, if it is.
    pub fn violation(&self, context: &SpeciesSet, k: usize) -> Option<String> {
        if self.admits(context) {
            return None;
        }
        Some(match self {
            ContextConstraint::MaxCardinality(n) => {
                format!("context has more than {n} species at step {k}")
            }
            ContextConstraint::AllowedSet(_) => format!("context not ⊆ I at step {k}"),
        })
    }

    pub fn describe(&self, table: &SpeciesTable) -> String {
        match self {
            ContextConstraint::MaxCardinality(n) => format!("|C| <= {n}"),
            ContextConstraint::AllowedSet(i) => format!("C ⊆ {}", table.format_set(i)),
        }
    }
}

/// Every admitted context in canonical order, refusing universes above `limit`.
pub fn allowed_contexts(
    system: &ReactionSystem,
    constraint: &ContextConstraint,
    limit: u128,
) -> Result<Vec<SpeciesSet>> {
    let table = system.species();
    constraint.validate(table)?;
    let count = constraint.universe_size(table);
    if count > limit {
        return Err(Error::TooManyContexts { count, limit });
    }
    Ok(match constraint {
        ContextConstraint::MaxCardinality(n) => canonical_subsets(&table.full_set(), *n).collect(),
        ContextConstraint::AllowedSet(i) => canonical_subsets(i, i.len()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(names: &[&str]) -> ReactionSystem {
        ReactionSystem::new(SpeciesTable::new(names.iter().copied()).unwrap(), vec![]).unwrap()
    }

    #[test]
    fn zero_cardinality_and_empty_set() {
        let sys = system(&["a", "b", "c"]);
        let t = sys.species();
        assert_eq!(
            allowed_contexts(&sys, &ContextConstraint::MaxCardinality(0), DEFAULT_CONTEXT_LIMIT).unwrap(),
            vec![t.empty_set()]
        );
        assert_eq!(
            allowed_contexts(&sys, &ContextConstraint::AllowedSet(t.empty_set()), DEFAULT_CONTEXT_LIMIT).unwrap(),
            vec![t.empty_set()]
        );
    }

    #[test]
    fn allowed_set_order() {
        let sys = system(&["GF", "x", "iPI3K"]);
        let t = sys.species();
        let i = t.set_from_names(["GF", "iPI3K"]).unwrap();
        let got = allowed_contexts(&sys, &ContextConstraint::AllowedSet(i), DEFAULT_CONTEXT_LIMIT).unwrap();
        let want: Vec<SpeciesSet> = [&[][..], &["GF"], &["iPI3K"], &["GF", "iPI3K"]]
            .iter()
            .map(|n| t.set_from_names(n.iter().copied()).unwrap())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn refusals() {
        let sys = system(&["a", "b", "c"]);
        assert!(matches!(
            allowed_contexts(&sys, &ContextConstraint::MaxCardinality(3), DEFAULT_CONTEXT_LIMIT),
            Err(Error::InvalidConstraint(_))
        ));
        assert!(matches!(
            allowed_contexts(&sys, &ContextConstraint::MaxCardinality(2), 6),
            Err(Error::TooManyContexts { count: 7, limit: 6 })
        ));
    }

    #[test]
    fn violation_reason() {
        let t = SpeciesTable::new(["a", "b"]).unwrap();
        let c = ContextConstraint::AllowedSet(t.set_from_names(["a"]).unwrap());
        assert_eq!(c.violation(&t.full_set(), 3).unwrap(), "context not ⊆ I at step 3");
        assert!(c.violation(&t.empty_set(), 0).is_none());
    }
}
