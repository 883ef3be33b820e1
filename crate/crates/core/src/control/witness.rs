//! Breadth-first witness search, witness replay, and the trivial witness `X, S, Y`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::control::constraint::{allowed_contexts, DEFAULT_CONTEXT_LIMIT};
use crate::control::query::{ControlQuery, StartMode};
use crate::error::{Error, Result};
use crate::format::trace::TraceJson;
use crate::process::{run_process, ContextSequence, Initial, ProcessTrace};
use crate::reaction::ReactionSystem;
use crate::species::{SpeciesSet, SpeciesTable};
use crate::subsets::{canonical_subsets, count_subsets};

/// Default cap on the size of a start frontier.
pub const DEFAULT_FRONTIER_LIMIT: u128 = 1 << 20;

/// A context sequence whose process meets the end condition at `hit_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlWitness {
    pub contexts: ContextSequence,
    pub initial: Initial,
    pub trace: ProcessTrace,
    pub hit_index: usize,
}

impl ControlWitness {
    pub fn start_state(&self) -> &SpeciesSet {
        &self.trace.states[0]
    }

    pub fn to_json(&self, table: &SpeciesTable) -> String {
        #[derive(Serialize)]
        struct WitnessJson {
            hit_index: usize,
            initial_mode: StartMode,
            initial_result: Vec<String>,
            trace: TraceJson,
        }
        let (mode, d0) = match &self.initial {
            Initial::Context => (StartMode::Context, table.empty_set()),
            Initial::Given(d) => (StartMode::Given, d.clone()),
        };
        let doc = WitnessJson {
            hit_index: self.hit_index,
            initial_mode: mode,
            initial_result: table.names_of(&d0),
            trace: TraceJson::new(&self.trace, table, None),
        };
        serde_json::to_string_pretty(&doc).expect("witness serializes") + "\n"
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub context_limit: u128,
    pub frontier_limit: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            context_limit: DEFAULT_CONTEXT_LIMIT,
            frontier_limit: DEFAULT_FRONTIER_LIMIT,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub witness: Option<ControlWitness>,
    pub visited: usize,
    /// Deepest layer generated.
    pub depth: usize,
    /// Every reachable state was visited, so absence of a witness is definitive.
    pub exhausted: bool,
}

/// Start states in canonical order, paired with their first context.
fn start_frontier(
    system: &ReactionSystem,
    query: &ControlQuery,
    contexts: &[SpeciesSet],
    options: &SearchOptions,
) -> Result<Vec<(SpeciesSet, SpeciesSet)>> {
    let table = system.species();
    match query.start_mode {
        StartMode::Given => match (&query.targets, query.pin_source) {
            (Some(t), false) => {
                let free = &table.full_set() - t;
                let size = count_subsets(free.len(), free.len());
                if size > options.frontier_limit {
                    return Err(Error::FrontierTooLarge {
                        size,
                        limit: options.frontier_limit,
                    });
                }
                let mut starts: Vec<SpeciesSet> =
                    canonical_subsets(&free, free.len()).map(|z| &z | &query.source).collect();
                starts.sort();
                Ok(starts.into_iter().map(|w| (table.empty_set(), w)).collect())
            }
            _ => Ok(vec![(table.empty_set(), query.source.clone())]),
        },
        StartMode::Context => Ok(contexts
            .iter()
            .filter(|c| query.is_start(c))
            .map(|c| (c.clone(), c.clone()))
            .collect()),
    }
}

struct Node {
    state: SpeciesSet,
    parent: Option<usize>,
    context: SpeciesSet,
}

/// Shortest witness, ties broken by start order and then canonical context order.
pub fn search_witness(system: &ReactionSystem, query: &ControlQuery, options: &SearchOptions) -> Result<SearchReport> {
    let table = system.species();
    query.validate(table)?;
    let contexts = allowed_contexts(system, &query.constraint, options.context_limit)?;
    let starts = start_frontier(system, query, &contexts, options)?;

    let mut nodes: Vec<Node> = Vec::new();
    let mut visited: HashMap<SpeciesSet, usize> = HashMap::new();
    let mut layer = Vec::new();
    for (c0, w0) in starts {
        if visited.contains_key(&w0) {
            continue;
        }
        if visited.len() >= query.max_visited {
            return Err(Error::BudgetExhausted(query.max_visited));
        }
        visited.insert(w0.clone(), nodes.len());
        layer.push(nodes.len());
        nodes.push(Node {
            state: w0,
            parent: None,
            context: c0,
        });
        if query.is_hit(&nodes.last().expect("pushed").state) {
            return finish(system, query, &nodes, nodes.len() - 1, 0, visited.len());
        }
    }

    let mut expanded: HashSet<SpeciesSet> = HashSet::new();
    let mut depth = 0;
    while !layer.is_empty() && depth < query.depth_limit {
        let results: Vec<SpeciesSet> = layer.par_iter().map(|&i| system.res(&nodes[i].state)).collect();
        let mut next = Vec::new();
        for (&i, d) in layer.iter().zip(results) {
            // Successors depend on the state only through its result set.
            if !expanded.insert(d.clone()) {
                continue;
            }
            for c in &contexts {
                let w = &d | c;
                if visited.contains_key(&w) {
                    continue;
                }
                if visited.len() >= query.max_visited {
                    return Err(Error::BudgetExhausted(query.max_visited));
                }
                let k = nodes.len();
                visited.insert(w.clone(), k);
                let hit = query.is_hit(&w);
                nodes.push(Node {
                    state: w,
                    parent: Some(i),
                    context: c.clone(),
                });
                if hit {
                    return finish(system, query, &nodes, k, depth + 1, visited.len());
                }
                next.push(k);
            }
        }
        layer = next;
        depth += 1;
    }
    Ok(SearchReport {
        witness: None,
        visited: visited.len(),
        depth,
        exhausted: layer.is_empty(),
    })
}

fn finish(
    system: &ReactionSystem,
    query: &ControlQuery,
    nodes: &[Node],
    hit: usize,
    depth: usize,
    visited: usize,
) -> Result<SearchReport> {
    let mut path = vec![hit];
    while let Some(p) = nodes[*path.last().expect("non-empty")].parent {
        path.push(p);
    }
    path.reverse();
    let contexts = ContextSequence::new(path.iter().map(|&k| nodes[k].context.clone()).collect())?;
    let initial = match query.start_mode {
        StartMode::Given => Initial::Given(nodes[path[0]].state.clone()),
        StartMode::Context => Initial::Context,
    };
    let trace = run_process(system, &contexts, &initial)?;
    debug_assert_eq!(trace.last_state(), &nodes[hit].state);
    Ok(SearchReport {
        witness: Some(ControlWitness {
            contexts,
            initial,
            trace,
            hit_index: path.len() - 1,
        }),
        visited,
        depth,
        exhausted: false,
    })
}

pub fn find_witness(system: &ReactionSystem, query: &ControlQuery) -> Result<Option<ControlWitness>> {
    Ok(search_witness(system, query, &SearchOptions::default())?.witness)
}

/// Outcome of replaying a candidate witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub hit_index: Option<usize>,
    pub reason: Option<String>,
}

impl WitnessCheck {
    pub fn ok(&self) -> bool {
        self.reason.is_none()
    }

    fn fail(reason: String) -> Self {
        WitnessCheck {
            hit_index: None,
            reason: Some(reason),
        }
    }
}

/// Replays `contexts` from the query's source.
pub fn verify_witness(system: &ReactionSystem, query: &ControlQuery, contexts: &ContextSequence) -> WitnessCheck {
    let start = match query.start_mode {
        StartMode::Given => Some(query.source.clone()),
        StartMode::Context => None,
    };
    verify_witness_from(system, query, start.as_ref(), contexts)
}

/// Replays `contexts` with `D_0 = initial_result` (given mode) or `D_0 = ∅` (context mode, pass `None`).
pub fn verify_witness_from(
    system: &ReactionSystem,
    query: &ControlQuery,
    initial_result: Option<&SpeciesSet>,
    contexts: &ContextSequence,
) -> WitnessCheck {
    let table = system.species();
    if let Err(e) = query.validate(table) {
        return WitnessCheck::fail(format!("invalid query: {e}"));
    }
    let initial = match (query.start_mode, initial_result) {
        (StartMode::Given, Some(d)) => Initial::Given(d.clone()),
        (StartMode::Given, None) => return WitnessCheck::fail("given mode needs an initial result".into()),
        (StartMode::Context, None) => Initial::Context,
        (StartMode::Context, Some(_)) => {
            return WitnessCheck::fail("context mode starts from an empty result".into())
        }
    };
    let trace = match run_process(system, contexts, &initial) {
        Ok(t) => t,
        Err(e) => return WitnessCheck::fail(e.to_string()),
    };
    let first_constrained = match query.start_mode {
        StartMode::Given => 1,
        StartMode::Context => 0,
    };
    for (k, c) in contexts.as_slice().iter().enumerate().skip(first_constrained) {
        if let Some(reason) = query.constraint.violation(c, k) {
            return WitnessCheck::fail(reason);
        }
    }
    let start_ok = match &initial {
        Initial::Given(d) => query.is_start(d),
        Initial::Context => query.is_start(&trace.states[0]),
    };
    if !start_ok {
        return WitnessCheck::fail(format!(
            "start state {} does not match the source",
            table.format_set(&trace.states[0])
        ));
    }
    match trace.states.iter().position(|w| query.is_hit(w)) {
        Some(r) if r <= query.depth_limit => WitnessCheck {
            hit_index: Some(r),
            reason: None,
        },
        Some(r) => WitnessCheck::fail(format!("end condition first met at step {r}, beyond the depth limit")),
        None => WitnessCheck::fail("end condition not met".into()),
    }
}

/// The sequence `X, S, Y` from `D_0 = ∅`; refused unless its replay ends in `Y`.
pub fn trivial_witness(system: &ReactionSystem, x: &SpeciesSet, y: &SpeciesSet) -> Result<ControlWitness, String> {
    let table = system.species();
    table.check(x).map_err(|e| e.to_string())?;
    table.check(y).map_err(|e| e.to_string())?;
    let contexts = ContextSequence::new(vec![x.clone(), table.full_set(), y.clone()]).expect("non-empty");
    let trace = run_process(system, &contexts, &Initial::Context).map_err(|e| e.to_string())?;
    if trace.states[1] != table.full_set() {
        return Err(format!("state 1 is {}, expected S", table.format_set(&trace.states[1])));
    }
    if trace.states[2] != *y {
        return Err(format!(
            "state 2 is {}, expected {}; res(S) = {}",
            table.format_set(&trace.states[2]),
            table.format_set(y),
            table.format_set(&trace.results[2])
        ));
    }
    Ok(ControlWitness {
        contexts,
        initial: Initial::Context,
        trace,
        hit_index: 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::ContextConstraint;
    use crate::reaction::Reaction;

    fn t1() -> ReactionSystem {
        let t = SpeciesTable::new(["a", "b", "c"]).unwrap();
        let s = |n: &[&str]| t.set_from_names(n.iter().copied()).unwrap();
        let rs = vec![
            Reaction::new(None, s(&["a"]), s(&["b"]), s(&["c"])).unwrap(),
            Reaction::new(None, s(&["b"]), s(&[]), s(&["b"])).unwrap(),
        ];
        ReactionSystem::new(t, rs).unwrap()
    }

    fn set(sys: &ReactionSystem, n: &[&str]) -> SpeciesSet {
        sys.species().set_from_names(n.iter().copied()).unwrap()
    }

    #[test]
    fn toy_single_step() {
        let sys = t1();
        let q = ControlQuery::new(set(&sys, &["a"]), set(&sys, &["c"]), ContextConstraint::MaxCardinality(0));
        let w = find_witness(&sys, &q).unwrap().unwrap();
        assert_eq!(w.hit_index, 1);
        assert_eq!(w.contexts.as_slice(), &[set(&sys, &[]), set(&sys, &[])]);
        assert!(verify_witness(&sys, &q, &w.contexts).ok());
    }

    #[test]
    fn source_equals_target() {
        let sys = t1();
        let q = ControlQuery::new(set(&sys, &["b"]), set(&sys, &["b"]), ContextConstraint::MaxCardinality(0));
        let w = find_witness(&sys, &q).unwrap().unwrap();
        assert_eq!(w.hit_index, 0);
        assert_eq!(w.trace.len(), 1);
    }

    #[test]
    fn unreachable_is_definitive() {
        let sys = t1();
        let q = ControlQuery::new(set(&sys, &["b"]), set(&sys, &["c"]), ContextConstraint::AllowedSet(set(&sys, &[])));
        let r = search_witness(&sys, &q, &SearchOptions::default()).unwrap();
        assert!(r.witness.is_none() && r.exhausted);
    }

    #[test]
    fn target_mode_two_steps() {
        // T = {c}, X = {}, Y = {c}, I = {a}: context {a} then anything.
        let sys = t1();
        let q = ControlQuery::new(set(&sys, &[]), set(&sys, &["c"]), ContextConstraint::AllowedSet(set(&sys, &["a"])))
            .with_targets(set(&sys, &["c"]));
        let w = find_witness(&sys, &q).unwrap().unwrap();
        assert_eq!(w.hit_index, 1);
        assert_eq!(w.start_state(), &set(&sys, &["a"]));
        let from = match &w.initial {
            Initial::Given(d) => d.clone(),
            Initial::Context => unreachable!(),
        };
        assert!(verify_witness_from(&sys, &q, Some(&from), &w.contexts).ok());
        let pinned = q.clone().pinned();
        let w = find_witness(&sys, &pinned).unwrap().unwrap();
        assert_eq!(w.hit_index, 2);
        assert_eq!(w.contexts.as_slice()[1], set(&sys, &["a"]));
    }

    #[test]
    fn context_mode_requires_admitted_source() {
        let sys = t1();
        let q = ControlQuery::new(set(&sys, &["a"]), set(&sys, &["c"]), ContextConstraint::AllowedSet(set(&sys, &[])))
            .with_start_mode(StartMode::Context);
        let r = search_witness(&sys, &q, &SearchOptions::default()).unwrap();
        assert!(r.witness.is_none() && r.exhausted);
    }

    #[test]
    fn verify_reports_constraint_step() {
        let sys = t1();
        let q = ControlQuery::new(set(&sys, &[]), set(&sys, &["c"]), ContextConstraint::AllowedSet(set(&sys, &[])));
        let seq = ContextSequence::new(vec![set(&sys, &[]), set(&sys, &["a"]), set(&sys, &[])]).unwrap();
        let check = verify_witness(&sys, &q, &seq);
        assert_eq!(check.reason.as_deref(), Some("context not ⊆ I at step 1"));
    }

    #[test]
    fn budget() {
        let sys = t1();
        let q = ControlQuery::new(set(&sys, &[]), set(&sys, &["b", "c"]), ContextConstraint::MaxCardinality(2))
            .with_max_visited(2);
        assert!(matches!(find_witness(&sys, &q), Err(Error::BudgetExhausted(2))));
    }

    #[test]
    fn trivial_witness_needs_inhibited_reactions() {
        let sys = t1();
        // ({b}, {}, {b}) fires on S, so res(S) = {b}.
        let err = trivial_witness(&sys, &set(&sys, &["a"]), &set(&sys, &["c"])).unwrap_err();
        assert!(err.contains("state 2"), "{err}");
        assert!(trivial_witness(&sys, &set(&sys, &["a"]), &set(&sys, &["b"])).is_ok());
    }
}
