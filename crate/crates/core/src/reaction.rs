//! Reactions, reaction systems, and the result function.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::species::{SpeciesSet, SpeciesTable};

/// A reaction `(R, I, P)`: fires on `T` iff `R ⊆ T` and `I ∩ T = ∅`, producing `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reaction {
    label: Option<String>,
    reactants: SpeciesSet,
    inhibitors: SpeciesSet,
    products: SpeciesSet,
}

impl Reaction {
    /// Builds a reaction, rejecting `R ∩ I ≠ ∅`, empty products, and mixed tables.
    pub fn new(
        label: Option<String>,
        reactants: SpeciesSet,
        inhibitors: SpeciesSet,
        products: SpeciesSet,
    ) -> Result<Self> {
        let r = Reaction::unchecked(label, reactants, inhibitors, products);
        let problems = r.problems();
        if problems.is_empty() {
            Ok(r)
        } else {
            Err(Error::InvalidSystem(problems))
        }
    }

    /// Builds a reaction without checking its invariants; see [`validate_system`].
    pub fn unchecked(
        label: Option<String>,
        reactants: SpeciesSet,
        inhibitors: SpeciesSet,
        products: SpeciesSet,
    ) -> Self {
        Reaction {
            label,
            reactants,
            inhibitors,
            products,
        }
    }

    fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.reactants.same_table(&self.inhibitors) || !self.reactants.same_table(&self.products) {
            out.push("reaction sets use different species tables".to_string());
            return out;
        }
        let overlap = &self.reactants & &self.inhibitors;
        if !overlap.is_empty() {
            out.push(format!("reactants and inhibitors overlap: {}", IndexList(&overlap)));
        }
        if self.products.is_empty() {
            out.push("empty product set".to_string());
        }
        out
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn reactants(&self) -> &SpeciesSet {
        &self.reactants
    }

    pub fn inhibitors(&self) -> &SpeciesSet {
        &self.inhibitors
    }

    pub fn products(&self) -> &SpeciesSet {
        &self.products
    }

    /// `R ∪ I`.
    pub fn resources(&self) -> SpeciesSet {
        &self.reactants | &self.inhibitors
    }

    pub fn enabled(&self, state: &SpeciesSet) -> Result<bool> {
        self.reactants.check_compatible(state)?;
        Ok(self.is_enabled_in(state))
    }

    /// `P` if enabled in `state`, else `∅`.
    pub fn result(&self, state: &SpeciesSet) -> Result<SpeciesSet> {
        Ok(if self.enabled(state)? {
            self.products.clone()
        } else {
            &self.products - &self.products
        })
    }

    pub(crate) fn is_enabled_in(&self, state: &SpeciesSet) -> bool {
        self.reactants.is_subset(state) && self.inhibitors.is_disjoint(state)
    }
}

// Renders indices only; names need the table.
struct IndexList<'a>(&'a SpeciesSet);

impl fmt::Display for IndexList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|k| format!("#{k}")).collect();
        f.write_str(&items.join(", "))
    }
}

/// One violated invariant found by [`validate_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Position of the offending reaction, if the violation is about one.
    pub reaction: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reaction {
            Some(k) => write!(f, "reaction {}: {}", k + 1, self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// A reaction system `(S, A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionSystem {
    species: SpeciesTable,
    reactions: Vec<Reaction>,
}

impl ReactionSystem {
    /// Builds a system and rejects it if [`validate_system`] reports anything.
    pub fn new(species: SpeciesTable, reactions: Vec<Reaction>) -> Result<Self> {
        let system = ReactionSystem::from_parts_unchecked(species, reactions);
        let report = system.validate();
        if report.is_empty() {
            Ok(system)
        } else {
            Err(Error::InvalidSystem(report.iter().map(|v| v.to_string()).collect()))
        }
    }

    pub fn from_parts_unchecked(species: SpeciesTable, reactions: Vec<Reaction>) -> Self {
        ReactionSystem { species, reactions }
    }

    pub fn species(&self) -> &SpeciesTable {
        &self.species
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_system(self)
    }

    /// `rsc(A)`, the union of all reactant and inhibitor sets.
    pub fn resources(&self) -> SpeciesSet {
        let mut out = self.species.empty_set();
        for r in &self.reactions {
            out.union_with(r.reactants());
            out.union_with(r.inhibitors());
        }
        out
    }

    /// `res_A(T)`: union of the products of every reaction enabled in `state`.
    pub fn result_all(&self, state: &SpeciesSet) -> Result<SpeciesSet> {
        self.species.check(state)?;
        Ok(self.res(state))
    }

    /// Next full state `W' = context ∪ res_A(state)`.
    pub fn step(&self, state: &SpeciesSet, context: &SpeciesSet) -> Result<SpeciesSet> {
        self.species.check(state)?;
        self.species.check(context)?;
        Ok(self.next(state, context))
    }

    /// Indices of the reactions enabled in `state`.
    pub fn enabled_reactions(&self, state: &SpeciesSet) -> Result<Vec<usize>> {
        self.species.check(state)?;
        Ok(self.fired(state))
    }

    pub(crate) fn res(&self, state: &SpeciesSet) -> SpeciesSet {
        let mut out = self.species.empty_set();
        for r in &self.reactions {
            if r.is_enabled_in(state) {
                out.union_with(&r.products);
            }
        }
        out
    }

    pub(crate) fn next(&self, state: &SpeciesSet, context: &SpeciesSet) -> SpeciesSet {
        let mut out = self.res(state);
        out.union_with(context);
        out
    }

    pub(crate) fn fired(&self, state: &SpeciesSet) -> Vec<usize> {
        self.reactions
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_enabled_in(state))
            .map(|(k, _)| k)
            .collect()
    }
}

/// Reports every violated invariant of `system`; an empty report means valid.
pub fn validate_system(system: &ReactionSystem) -> Vec<Violation> {
    let table = &system.species;
    let mut report = Vec::new();
    let mut labels = HashSet::new();
    for (k, r) in system.reactions.iter().enumerate() {
        let sets = [&r.reactants, &r.inhibitors, &r.products];
        if sets.iter().any(|s| table.check(s).is_err()) {
            report.push(Violation {
                reaction: Some(k),
                message: "unknown species: reaction sets do not belong to the system's species table"
                    .to_string(),
            });
            continue;
        }
        let overlap = &r.reactants & &r.inhibitors;
        if !overlap.is_empty() {
            report.push(Violation {
                reaction: Some(k),
                message: format!(
                    "reactants and inhibitors overlap: {}",
                    table.names_of(&overlap).join(", ")
                ),
            });
        }
        if r.products.is_empty() {
            report.push(Violation {
                reaction: Some(k),
                message: "empty product set".to_string(),
            });
        }
        if let Some(label) = &r.label {
            if !labels.insert(label.as_str()) {
                report.push(Violation {
                    reaction: Some(k),
                    message: format!("duplicate label: {label}"),
                });
            }
        }
    }
    report
}
