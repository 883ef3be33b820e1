//! Random toy systems and brute-force oracles over plain `u32` masks.
//!
//! Nothing here calls the library's semantics; systems are converted to the
//! library form only so both sides see the same reactions.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rscontrol::control::StartMode;
use rscontrol::{Reaction, ReactionSystem, SpeciesSet, SpeciesTable};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Reactions as `(R, I, P)` masks over species `s0 … s{n-1}`.
#[derive(Debug, Clone)]
pub struct Toy {
    pub n: usize,
    pub reactions: Vec<(u32, u32, u32)>,
}

impl Toy {
    pub fn res(&self, w: u32) -> u32 {
        let mut out = 0;
        for &(r, i, p) in &self.reactions {
            if w & r == r && w & i == 0 {
                out |= p;
            }
        }
        out
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn table(&self) -> SpeciesTable {
        SpeciesTable::new((0..self.n).map(|k| format!("s{k}"))).unwrap()
    }

    pub fn system(&self) -> ReactionSystem {
        let t = self.table();
        let rs = self
            .reactions
            .iter()
            .map(|&(r, i, p)| Reaction::new(None, set(&t, r), set(&t, i), set(&t, p)).unwrap())
            .collect();
        ReactionSystem::new(t, rs).unwrap()
    }

    /// The set of all results `res(U)`.
    pub fn image(&self) -> BTreeSet<u32> {
        (0..=self.full()).map(|u| self.res(u)).collect()
    }
}

pub fn set(t: &SpeciesTable, mask: u32) -> SpeciesSet {
    t.set_from_mask(mask as u64)
}

pub fn mask(s: &SpeciesSet) -> u32 {
    s.to_mask().unwrap() as u32
}

/// A random system with 1 to `max_m` reactions: each species is absent, a
/// reactant, or an inhibitor of each reaction; products are non-empty.
pub fn random_toy(rng: &mut ChaCha8Rng, n: usize, max_m: usize) -> Toy {
    let m = rng.gen_range(1..=max_m);
    let mut reactions = Vec::with_capacity(m);
    for _ in 0..m {
        let (mut r, mut i, mut p) = (0, 0, 0);
        for k in 0..n {
            match rng.gen_range(0..10) {
                0..=1 => r |= 1 << k,
                2..=3 => i |= 1 << k,
                _ => {}
            }
            if rng.gen_bool(0.35) {
                p |= 1 << k;
            }
        }
        if p == 0 {
            p = 1 << rng.gen_range(0..n);
        }
        reactions.push((r, i, p));
    }
    Toy { n, reactions }
}

/// Subsets of `base` by size, then by mask value.
pub fn canonical(base: u32) -> Vec<u32> {
    let mut v: Vec<u32> = (0..=base).filter(|s| s & !base == 0).collect();
    v.sort_by_key(|&s| (s.count_ones(), s));
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Card(usize),
    Within(u32),
}

impl Bound {
    pub fn admits(self, c: u32) -> bool {
        match self {
            Bound::Card(n) => c.count_ones() as usize <= n,
            Bound::Within(i) => c & !i == 0,
        }
    }

    pub fn contexts(self, full: u32) -> Vec<u32> {
        (0..=full).filter(|&c| self.admits(c)).collect()
    }

    pub fn random(rng: &mut ChaCha8Rng, n: usize) -> Bound {
        if rng.gen_bool(0.5) {
            Bound::Card(rng.gen_range(0..n.max(1)))
        } else {
            Bound::Within(rng.gen_range(0..1u32 << n))
        }
    }

    pub fn constraint(self, t: &SpeciesTable) -> rscontrol::control::ContextConstraint {
        use rscontrol::control::ContextConstraint;
        match self {
            Bound::Card(n) => ContextConstraint::MaxCardinality(n),
            Bound::Within(i) => ContextConstraint::AllowedSet(set(t, i)),
        }
    }
}

/// Least `k ≤ max_len` such that some process of `k` steps from one of
/// `starts` ends in a state satisfying `hit`. Layers are the exact sets of
/// states after `k` steps, one per sequence length.
pub fn min_hit(toy: &Toy, starts: &[u32], contexts: &[u32], hit: impl Fn(u32) -> bool, max_len: usize) -> Option<usize> {
    let mut layer: BTreeSet<u32> = starts.iter().copied().collect();
    for k in 0..=max_len {
        if layer.iter().any(|&w| hit(w)) {
            return Some(k);
        }
        layer = layer
            .iter()
            .flat_map(|&w| {
                let d = toy.res(w);
                contexts.iter().map(move |&c| c | d)
            })
            .collect();
    }
    None
}

/// Every state reachable in any number of steps from `starts`, starts included.
pub fn closure(toy: &Toy, starts: &[u32], contexts: &[u32]) -> BTreeSet<u32> {
    let mut seen: BTreeSet<u32> = starts.iter().copied().collect();
    let mut todo: Vec<u32> = seen.iter().copied().collect();
    while let Some(w) = todo.pop() {
        let d = toy.res(w);
        for &c in contexts {
            if seen.insert(c | d) {
                todo.push(c | d);
            }
        }
    }
    seen
}

#[derive(Debug, Clone, Copy)]
/// A witness query over masks; `t` is the target set, `None` for full states.
pub struct Case {
    pub x: u32,
    pub y: u32,
    pub t: Option<u32>,
    pub pinned: bool,
    pub bound: Bound,
    pub mode: StartMode,
}

pub fn random_case(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let all = 1u32 << n;
    let t = rng.gen_bool(0.35).then(|| rng.gen_range(0..all));
    let pinned = t.is_some() && rng.gen_bool(0.3);
    let within = |rng: &mut ChaCha8Rng, base: u32| rng.gen_range(0..all) & base;
    let y = within(rng, t.unwrap_or(all - 1));
    let x = if t.is_some() && !pinned {
        within(rng, t.unwrap())
    } else {
        rng.gen_range(0..all)
    };
    Case {
        x,
        y,
        t,
        pinned,
        bound: Bound::random(rng, n),
        mode: if rng.gen_bool(0.75) {
            StartMode::Given
        } else {
            StartMode::Context
        },
    }
}

/// Minimal hit index by layered enumeration of every context sequence.
pub fn oracle_hit(toy: &Toy, c: &Case) -> Option<usize> {
    let contexts = c.bound.contexts(toy.full());
    let unpinned = c.t.filter(|_| !c.pinned);
    let starts: Vec<u32> = match c.mode {
        StartMode::Given => match unpinned {
            Some(t) => canonical(toy.full() & !t).into_iter().map(|z| c.x | z).collect(),
            None => vec![c.x],
        },
        StartMode::Context => contexts
            .iter()
            .copied()
            .filter(|&w| match unpinned {
                Some(t) => w & t == c.x,
                None => w == c.x,
            })
            .collect(),
    };
    let hit = |w: u32| match c.t {
        Some(t) => w & t == c.y,
        None => w == c.y,
    };
    min_hit(toy, &starts, &contexts, hit, 1 << toy.n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable {
    pub decision: bool,
    pub counterexample: Option<(u32, u32)>,
    pub pairs_checked: u64,
}

/// Every pair `X ≠ Y ⊆ T` with `Y = V ∩ T` for some result `V`, in
/// canonical order; `X` is installed as every `X ∪ Z`, `Z ⊆ S ∖ T`.
pub fn pair_table(toy: &Toy, t: u32, bound: Bound) -> PairTable {
    let contexts = bound.contexts(toy.full());
    let image = toy.image();
    let free = toy.full() & !t;
    let mut checked = 0;
    for x in canonical(t) {
        let starts: Vec<u32> = canonical(free).into_iter().map(|z| x | z).collect();
        let reached: BTreeSet<u32> = closure(toy, &starts, &contexts).into_iter().map(|w| w & t).collect();
        for y in canonical(t) {
            if y == x || !image.iter().any(|v| v & t == y) {
                continue;
            }
            checked += 1;
            if !reached.contains(&y) {
                return PairTable {
                    decision: false,
                    counterexample: Some((x, y)),
                    pairs_checked: checked,
                };
            }
        }
    }
    PairTable {
        decision: true,
        counterexample: None,
        pairs_checked: checked,
    }
}

/// A random DNF network over `n` variables, as text plus its truth function.
#[derive(Debug, Clone)]
pub struct RandomNet {
    pub n: usize,
    /// Per variable: `None` for inputs, else conjunctions of `(variable, positive)`.
    pub updates: Vec<Option<Vec<Vec<(usize, bool)>>>>,
}

impl RandomNet {
    pub fn generate(rng: &mut ChaCha8Rng, n: usize) -> RandomNet {
        let updates = (0..n)
            .map(|_| {
                if rng.gen_bool(0.15) {
                    return None;
                }
                let terms = rng.gen_range(1..=3);
                Some(
                    (0..terms)
                        .map(|_| {
                            let mut lits: Vec<(usize, bool)> = Vec::new();
                            for _ in 0..rng.gen_range(1..=3) {
                                let v = rng.gen_range(0..n);
                                if lits.iter().all(|(u, _)| *u != v) {
                                    lits.push((v, rng.gen_bool(0.6)));
                                }
                            }
                            lits
                        })
                        .collect(),
                )
            })
            .collect();
        RandomNet { n, updates }
    }

    pub fn name(k: usize) -> String {
        format!("v{k}")
    }

    pub fn text(&self) -> String {
        let inputs: Vec<String> = (0..self.n)
            .filter(|&k| self.updates[k].is_none())
            .map(Self::name)
            .collect();
        let mut s = String::new();
        if !inputs.is_empty() {
            s += &format!("@input {}\n", inputs.join(", "));
        }
        for (k, u) in self.updates.iter().enumerate() {
            let Some(terms) = u else { continue };
            let body: Vec<String> = terms
                .iter()
                .map(|lits| {
                    let l: Vec<String> = lits
                        .iter()
                        .map(|&(v, pos)| format!("{}{}", if pos { "" } else { "!" }, Self::name(v)))
                        .collect();
                    format!("({})", l.join(" & "))
                })
                .collect();
            s += &format!("{} = {}\n", Self::name(k), body.join(" | "));
        }
        s
    }

    /// Next value of every updated variable; `None` for inputs.
    pub fn step(&self, x: &[bool]) -> Vec<Option<bool>> {
        self.updates
            .iter()
            .map(|u| {
                u.as_ref()
                    .map(|terms| terms.iter().any(|lits| lits.iter().all(|&(v, pos)| x[v] == pos)))
            })
            .collect()
    }
}
