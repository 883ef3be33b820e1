//! Interactive processes driven by context sequences.

use crate::error::{Error, Result};
use crate::reaction::ReactionSystem;
use crate::species::SpeciesSet;

/// A non-empty sequence of context sets `C_0 … C_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSequence(Vec<SpeciesSet>);

impl ContextSequence {
    pub fn new(contexts: Vec<SpeciesSet>) -> Result<Self> {
        if contexts.is_empty() {
            return Err(Error::EmptyContextSequence);
        }
        Ok(ContextSequence(contexts))
    }

    /// `context` repeated `n` times.
    pub fn constant(context: SpeciesSet, n: usize) -> Result<Self> {
        ContextSequence::new(vec![context; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[SpeciesSet] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<SpeciesSet> {
        self.0
    }
}

/// How the first state of a process is formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Initial {
    /// `D_0 = ∅`, so `W_0 = C_0`.
    Context,
    /// `D_0` is supplied, so `W_0 = C_0 ∪ D_0`.
    Given(SpeciesSet),
}

/// Aligned context, result, and state sequences of an interactive process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessTrace {
    pub contexts: Vec<SpeciesSet>,
    pub results: Vec<SpeciesSet>,
    pub states: Vec<SpeciesSet>,
}

impl ProcessTrace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last_state(&self) -> &SpeciesSet {
        self.states.last().expect("trace is never empty")
    }

    /// Replays `D_{i+1} = res(W_i)` and `W_i = C_i ∪ D_i`; returns the first index that disagrees.
    pub fn first_incoherence(&self, system: &ReactionSystem) -> Option<usize> {
        if self.contexts.len() != self.results.len() || self.results.len() != self.states.len() {
            return Some(0);
        }
        for i in 0..self.states.len() {
            if self.states[i] != &self.contexts[i] | &self.results[i] {
                return Some(i);
            }
            if i > 0 && self.results[i] != system.res(&self.states[i - 1]) {
                return Some(i);
            }
        }
        None
    }
}

/// Runs the interactive process defined by `contexts`.
pub fn run_process(
    system: &ReactionSystem,
    contexts: &ContextSequence,
    initial: &Initial,
) -> Result<ProcessTrace> {
    let table = system.species();
    for c in contexts.as_slice() {
        table.check(c)?;
    }
    let d0 = match initial {
        Initial::Context => table.empty_set(),
        Initial::Given(d) => {
            table.check(d)?;
            d.clone()
        }
    };
    let n = contexts.len();
    let mut trace = ProcessTrace {
        contexts: contexts.as_slice().to_vec(),
        results: Vec::with_capacity(n),
        states: Vec::with_capacity(n),
    };
    let mut d = d0;
    for c in contexts.as_slice() {
        let w = c | &d;
        let next = system.res(&w);
        trace.results.push(d);
        trace.states.push(w);
        d = next;
    }
    Ok(trace)
}
