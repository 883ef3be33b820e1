//! Orbits and attractors under a constant context.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::reaction::ReactionSystem;
use crate::species::SpeciesSet;

/// The deterministic trajectory `W ↦ c ∪ res(W)`, split at the first recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub transient: Vec<SpeciesSet>,
    /// Starts at the first state that recurs; never empty.
    pub cycle: Vec<SpeciesSet>,
    pub context: SpeciesSet,
}

impl Orbit {
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// All states in visit order.
    pub fn states(&self) -> impl Iterator<Item = &SpeciesSet> {
        self.transient.iter().chain(&self.cycle)
    }

    /// Replays every transition with `system`; `false` if one disagrees.
    pub fn verify(&self, system: &ReactionSystem) -> bool {
        let states: Vec<&SpeciesSet> = self.states().collect();
        let n = states.len();
        let t = self.transient.len();
        (0..n).all(|i| {
            let next = if i + 1 < n { states[i + 1] } else { states[t] };
            system.next(states[i], &self.context) == *next
        })
    }
}

/// Iterates from `W_0 = start ∪ context` for at most `max_steps` steps.
pub fn orbit(
    system: &ReactionSystem,
    start: &SpeciesSet,
    context: &SpeciesSet,
    max_steps: usize,
) -> Result<Orbit> {
    let table = system.species();
    table.check(start)?;
    table.check(context)?;
    if max_steps == 0 {
        return Err(Error::InvalidQuery("max_steps must be at least 1".into()));
    }
    let mut seen: HashMap<SpeciesSet, usize> = HashMap::new();
    let mut states = vec![start | context];
    seen.insert(states[0].clone(), 0);
    for _ in 0..max_steps {
        let next = system.next(states.last().expect("non-empty"), context);
        if let Some(&j) = seen.get(&next) {
            let cycle = states.split_off(j);
            return Ok(Orbit {
                transient: states,
                cycle,
                context: context.clone(),
            });
        }
        seen.insert(next.clone(), states.len());
        states.push(next);
    }
    Err(Error::NoRecurrence(max_steps))
}

/// For each marker, the number of cycle states that contain it.
pub fn attractor_report(orbit: &Orbit, markers: &[SpeciesSet]) -> Vec<usize> {
    markers
        .iter()
        .map(|m| orbit.cycle.iter().filter(|w| m.is_subset(w)).count())
        .collect()
}
