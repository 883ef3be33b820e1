//! Controllability decisions over all pairs, and minimal-n / minimal-I searches.
//!
//! Exhaustive mode works on `u64` masks. Every state `W` leads to the
//! states `C ∪ res(W)`, so reachability only depends on result sets: the
//! engine builds the graph `D → res(C ∪ D)` over the image of `res`,
//! condenses it into strongly connected components, and propagates the set
//! of reachable projections `W ∩ T` bottom-up.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::control::constraint::{allowed_contexts, ContextConstraint, DEFAULT_CONTEXT_LIMIT};
use crate::control::query::{ControlQuery, DEFAULT_MAX_VISITED};
use crate::control::witness::{search_witness, SearchOptions, DEFAULT_FRONTIER_LIMIT};
use crate::dynamics::image::projected_image_membership;
use crate::error::{Error, Result};
use crate::mask::MaskSystem;
use crate::reaction::ReactionSystem;
use crate::species::SpeciesSet;
use crate::subsets::canonical_subsets;

/// Default largest `|S|` for exhaustive decisions.
pub const DEFAULT_EXHAUSTIVE_CEILING: usize = 16;
/// `|S|` above which exhaustive decisions are refused under any ceiling.
pub const EXHAUSTIVE_HARD_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    /// `k` random pairs drawn from `seed`.
    Sampled { k: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct DecideOptions {
    pub ceiling: usize,
    pub context_limit: u128,
    pub frontier_limit: u128,
    /// Per-pair witness-search budget in sampled mode.
    pub max_visited: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            ceiling: DEFAULT_EXHAUSTIVE_CEILING,
            context_limit: DEFAULT_CONTEXT_LIMIT,
            frontier_limit: DEFAULT_FRONTIER_LIMIT,
            max_visited: DEFAULT_MAX_VISITED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllabilityVerdict {
    pub decision: bool,
    /// First pair `(X, Y)` without a witness.
    pub counterexample: Option<(SpeciesSet, SpeciesSet)>,
    /// Pairs that passed the reachability proviso and were examined.
    pub pairs_checked: u64,
    /// `false` when only sampled pairs were examined.
    pub exhaustive: bool,
}

pub fn decide_controllable(
    system: &ReactionSystem,
    constraint: &ContextConstraint,
    scope: Scope,
    options: &DecideOptions,
) -> Result<ControllabilityVerdict> {
    decide_target_controllable(system, &system.species().full_set(), constraint, scope, options)
}

/// Pairs range over `X, Y ⊆ T`, `X ≠ Y`, with `Y = V ∩ T` for some `V` in the image of `res`.
pub fn decide_target_controllable(
    system: &ReactionSystem,
    targets: &SpeciesSet,
    constraint: &ContextConstraint,
    scope: Scope,
    options: &DecideOptions,
) -> Result<ControllabilityVerdict> {
    let table = system.species();
    table.check(targets)?;
    constraint.validate(table)?;
    match scope {
        Scope::Exhaustive => exhaustive(system, targets, constraint, options),
        Scope::Sampled { k, seed } => sampled(system, targets, constraint, k, seed, options),
    }
}

fn pair_bound(t: usize) -> u128 {
    1u128.checked_shl(2 * t as u32).unwrap_or(u128::MAX)
}

fn exhaustive(
    system: &ReactionSystem,
    targets: &SpeciesSet,
    constraint: &ContextConstraint,
    options: &DecideOptions,
) -> Result<ControllabilityVerdict> {
    let table = system.species();
    let n = table.len();
    let ceiling = options.ceiling.min(EXHAUSTIVE_HARD_LIMIT);
    if n > ceiling {
        return Err(Error::ExhaustiveRefused {
            species: n,
            ceiling,
            pairs: pair_bound(targets.len()),
        });
    }
    let ms = MaskSystem::compile(system).expect("within the hard limit");
    let contexts: Vec<u64> = allowed_contexts(system, constraint, options.context_limit)?
        .iter()
        .map(|c| c.to_mask().expect("fits a word"))
        .collect();
    let t_mask = targets.to_mask().expect("fits a word");
    let t_bits: Vec<u32> = targets.iter().map(|k| k as u32).collect();
    let project = |m: u64| -> usize {
        t_bits
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &b)| acc | (((m >> b) & 1) as usize) << j)
    };

    let res_of: Vec<u64> = (0..1u64 << n).into_par_iter().map(|m| ms.res(m)).collect();
    let mut image: Vec<u64> = res_of.clone();
    image.par_sort_unstable();
    image.dedup();
    let id_of: HashMap<u64, u32> = image.iter().enumerate().map(|(k, &d)| (d, k as u32)).collect();

    let adj: Vec<Vec<u32>> = image
        .par_iter()
        .map(|&d| {
            let mut succ: Vec<u32> = contexts.iter().map(|&c| id_of[&res_of[(c | d) as usize]]).collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect();
    let (comp_of, comps) = tarjan(&adj);

    let words = (1usize << t_bits.len()).div_ceil(64);
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); comps];
    for (v, &c) in comp_of.iter().enumerate() {
        members[c as usize].push(v as u32);
    }
    // Components are numbered successors-first, so each successor row is final when read.
    let mut reach: Vec<Vec<u64>> = Vec::with_capacity(comps);
    for group in &members {
        let me = reach.len() as u32;
        let mut row = vec![0u64; words];
        for &v in group {
            let d = image[v as usize];
            for &c in &contexts {
                let p = project(c | d);
                row[p / 64] |= 1 << (p % 64);
            }
            for &w in &adj[v as usize] {
                let cw = comp_of[w as usize];
                if cw != me {
                    for (a, b) in row.iter_mut().zip(&reach[cw as usize]) {
                        *a |= *b;
                    }
                }
            }
        }
        reach.push(row);
    }

    let mut provisional = vec![false; 1usize << t_bits.len()];
    for &d in &image {
        provisional[project(d)] = true;
    }
    let subsets: Vec<u64> = canonical_subsets(targets, targets.len())
        .map(|s| s.to_mask().expect("fits a word"))
        .collect();
    let ys: Vec<(u64, usize)> = subsets
        .iter()
        .map(|&y| (y, project(y)))
        .filter(|&(_, p)| provisional[p])
        .collect();
    let free = ms.full() & !t_mask;

    // Per X: number of proviso pairs examined and the first failing Y, if any.
    let per_x: Vec<(u64, Option<u64>)> = subsets
        .par_iter()
        .map(|&x| {
            let mut comps_seen: Vec<u32> = crate::mask::submasks(free)
                .map(|z| comp_of[id_of[&res_of[(x | z) as usize]] as usize])
                .collect();
            comps_seen.sort_unstable();
            comps_seen.dedup();
            let mut row = vec![0u64; words];
            for c in comps_seen {
                for (a, b) in row.iter_mut().zip(&reach[c as usize]) {
                    *a |= *b;
                }
            }
            let mut checked = 0u64;
            for &(y, p) in &ys {
                if y == x {
                    continue;
                }
                checked += 1;
                if row[p / 64] >> (p % 64) & 1 == 0 {
                    return (checked, Some(y));
                }
            }
            (checked, None)
        })
        .collect();

    let mut pairs_checked = 0;
    for (&x, (checked, fail)) in subsets.iter().zip(per_x) {
        pairs_checked += checked;
        if let Some(y) = fail {
            return Ok(ControllabilityVerdict {
                decision: false,
                counterexample: Some((table.set_from_mask(x), table.set_from_mask(y))),
                pairs_checked,
                exhaustive: true,
            });
        }
    }
    Ok(ControllabilityVerdict {
        decision: true,
        counterexample: None,
        pairs_checked,
        exhaustive: true,
    })
}

/// Strongly connected components, numbered so that every edge goes to an
/// equal or smaller component number.
fn tarjan(adj: &[Vec<u32>]) -> (Vec<u32>, usize) {
    const UNSEEN: u32 = u32::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut next = 0u32;
    let mut comps = 0usize;
    let mut call: Vec<(u32, usize)> = Vec::new();
    for s in 0..n as u32 {
        if index[s as usize] != UNSEEN {
            continue;
        }
        index[s as usize] = next;
        low[s as usize] = next;
        next += 1;
        stack.push(s);
        on_stack[s as usize] = true;
        call.push((s, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let vu = v as usize;
            if *pos < adj[vu].len() {
                let w = adj[vu][*pos];
                *pos += 1;
                let wu = w as usize;
                if index[wu] == UNSEEN {
                    index[wu] = next;
                    low[wu] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[wu] = true;
                    call.push((w, 0));
                } else if on_stack[wu] {
                    low[vu] = low[vu].min(index[wu]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u as usize] = low[u as usize].min(low[vu]);
                }
                if low[vu] == index[vu] {
                    loop {
                        let x = stack.pop().expect("v is on the stack");
                        on_stack[x as usize] = false;
                        comp[x as usize] = comps as u32;
                        if x == v {
                            break;
                        }
                    }
                    comps += 1;
                }
            }
        }
    }
    (comp, comps)
}

fn sampled(
    system: &ReactionSystem,
    targets: &SpeciesSet,
    constraint: &ContextConstraint,
    k: usize,
    seed: u64,
    options: &DecideOptions,
) -> Result<ControllabilityVerdict> {
    let table = system.species();
    let full = targets.len() == table.len();
    let elems: Vec<usize> = targets.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut s = table.empty_set();
        for &e in &elems {
            if rng.gen::<bool>() {
                s.insert(e);
            }
        }
        s
    };
    let mut proviso: HashMap<SpeciesSet, bool> = HashMap::new();
    let mut pairs = Vec::with_capacity(k);
    let attempts = k.saturating_mul(64).saturating_add(1000);
    for _ in 0..attempts {
        if pairs.len() == k {
            break;
        }
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        if x == y {
            continue;
        }
        let ok = *proviso
            .entry(y.clone())
            .or_insert_with(|| projected_image_membership(system, &y, targets).is_some());
        if ok {
            pairs.push((x, y));
        }
    }
    let search = SearchOptions {
        context_limit: options.context_limit,
        frontier_limit: options.frontier_limit,
    };
    let found: Vec<Result<bool>> = pairs
        .par_iter()
        .map(|(x, y)| {
            let mut q = ControlQuery::new(x.clone(), y.clone(), constraint.clone()).with_max_visited(options.max_visited);
            if !full {
                q = q.with_targets(targets.clone());
            }
            Ok(search_witness(system, &q, &search)?.witness.is_some())
        })
        .collect();
    for (i, r) in found.into_iter().enumerate() {
        if !r? {
            return Ok(ControllabilityVerdict {
                decision: false,
                counterexample: Some(pairs[i].clone()),
                pairs_checked: i as u64 + 1,
                exhaustive: false,
            });
        }
    }
    Ok(ControllabilityVerdict {
        decision: true,
        counterexample: None,
        pairs_checked: pairs.len() as u64,
        exhaustive: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalNReport {
    pub minimal: Option<usize>,
    /// Verdicts for `n = 0, 1, …` in scan order.
    pub verdicts: Vec<(usize, ControllabilityVerdict)>,
}

/// Scans `n = 0 … |S| − 1` (or `n = 0` alone when `|S| ≤ 1`).
pub fn minimal_n(
    system: &ReactionSystem,
    targets: Option<&SpeciesSet>,
    scope: Scope,
    options: &DecideOptions,
    stop_at_first: bool,
) -> Result<MinimalNReport> {
    let full = system.species().full_set();
    let t = targets.unwrap_or(&full);
    let top = system.species().len().saturating_sub(1);
    let mut report = MinimalNReport {
        minimal: None,
        verdicts: Vec::new(),
    };
    for n in 0..=top {
        let v = decide_target_controllable(system, t, &ContextConstraint::MaxCardinality(n), scope, options)?;
        let ok = v.decision;
        report.verdicts.push((n, v));
        if ok && report.minimal.is_none() {
            report.minimal = Some(n);
            if stop_at_first {
                break;
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalIReport {
    pub minimal: Option<SpeciesSet>,
    pub start_verdict: ControllabilityVerdict,
    /// Each tried removal in order: candidate set and its decision.
    pub trials: Vec<(SpeciesSet, bool)>,
}

/// One greedy pass dropping elements of `start` in ascending index order;
/// the result is inclusion-minimal because verdicts are monotone in `I`.
pub fn minimal_i(
    system: &ReactionSystem,
    targets: Option<&SpeciesSet>,
    start: &SpeciesSet,
    scope: Scope,
    options: &DecideOptions,
) -> Result<MinimalIReport> {
    let full = system.species().full_set();
    let t = targets.unwrap_or(&full);
    let decide = |i: &SpeciesSet| {
        decide_target_controllable(system, t, &ContextConstraint::AllowedSet(i.clone()), scope, options)
    };
    let start_verdict = decide(start)?;
    let mut report = MinimalIReport {
        minimal: None,
        start_verdict,
        trials: Vec::new(),
    };
    if !report.start_verdict.decision {
        return Ok(report);
    }
    let mut current = start.clone();
    for e in start.iter() {
        let candidate = current.without(e);
        let ok = decide(&candidate)?.decision;
        report.trials.push((candidate.clone(), ok));
        if ok {
            current = candidate;
        }
    }
    report.minimal = Some(current);
    Ok(report)
}
