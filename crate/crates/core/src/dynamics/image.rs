//! Image membership: is `V = res(U)` for some state `U`?
//!
//! The search picks, for each species that must be produced, an enabling
//! reaction (fixing its reactants present and inhibitors absent), then
//! satisfies the remaining "must stay disabled" clauses with a small DPLL.
//! Unassigned species are left out of the certificate.

use crate::reaction::ReactionSystem;
use crate::species::SpeciesSet;

/// A witness `preimage` with `res(preimage) = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageCertificate {
    pub target: SpeciesSet,
    pub preimage: SpeciesSet,
    /// Exactly the reactions enabled in `preimage`, by index.
    pub fired: Vec<usize>,
}

impl PreimageCertificate {
    pub fn verify(&self, system: &ReactionSystem) -> bool {
        system.res(&self.preimage) == self.target && system.fired(&self.preimage) == self.fired
    }
}

/// A certificate for `res(U) = v` exactly, if one exists.
pub fn image_membership(system: &ReactionSystem, v: &SpeciesSet) -> Option<PreimageCertificate> {
    system.species().check(v).ok()?;
    projected_image_membership(system, v, &system.species().full_set())
}

/// A certificate for some `res(U) ⊇ y`, if one exists.
pub fn superset_image_membership(system: &ReactionSystem, y: &SpeciesSet) -> Option<PreimageCertificate> {
    system.species().check(y).ok()?;
    search(system, y, &[])
}

/// A certificate for some `res(U)` with `res(U) ∩ t = y`, if one exists.
pub fn projected_image_membership(
    system: &ReactionSystem,
    y: &SpeciesSet,
    t: &SpeciesSet,
) -> Option<PreimageCertificate> {
    let table = system.species();
    table.check(y).ok()?;
    table.check(t).ok()?;
    if !y.is_subset(t) {
        return None;
    }
    let forbidden: Vec<usize> = system
        .reactions()
        .iter()
        .enumerate()
        .filter(|(_, r)| !(r.products() & t).is_subset(y))
        .map(|(k, _)| k)
        .collect();
    search(system, y, &forbidden)
}

/// Partial assignment: `on` must be present, `off` must be absent; disjoint.
#[derive(Clone)]
struct Assignment {
    on: SpeciesSet,
    off: SpeciesSet,
}

impl Assignment {
    /// Forces reaction `(R, I)` enabled; `None` on conflict.
    fn enable(&self, reactants: &SpeciesSet, inhibitors: &SpeciesSet) -> Option<Assignment> {
        if reactants.intersects(&self.off) || inhibitors.intersects(&self.on) {
            return None;
        }
        Some(Assignment {
            on: &self.on | reactants,
            off: &self.off | inhibitors,
        })
    }
}

fn search(system: &ReactionSystem, cover: &SpeciesSet, forbidden: &[usize]) -> Option<PreimageCertificate> {
    let table = system.species();
    let reactions = system.reactions();
    let is_forbidden = {
        let mut f = vec![false; reactions.len()];
        for &k in forbidden {
            f[k] = true;
        }
        f
    };
    // A forbidden reaction with R = I = ∅ can never be disabled.
    if forbidden
        .iter()
        .any(|&k| reactions[k].reactants().is_empty() && reactions[k].inhibitors().is_empty())
    {
        return None;
    }
    let producers: Vec<Vec<usize>> = cover
        .iter()
        .map(|s| {
            (0..reactions.len())
                .filter(|&k| !is_forbidden[k] && reactions[k].products().contains(s))
                .collect()
        })
        .collect();
    if producers.iter().any(Vec::is_empty) {
        return None;
    }
    let clauses: Vec<(&SpeciesSet, &SpeciesSet)> = forbidden
        .iter()
        .map(|&k| (reactions[k].reactants(), reactions[k].inhibitors()))
        .collect();
    let start = Assignment {
        on: table.empty_set(),
        off: table.empty_set(),
    };
    let cover_order: Vec<usize> = cover.iter().collect();
    let found = cover_search(system, &cover_order, &producers, 0, &table.empty_set(), start, &clauses)?;
    let preimage = found.on;
    Some(PreimageCertificate {
        target: system.res(&preimage),
        fired: system.fired(&preimage),
        preimage,
    })
}

/// Chooses an enabling reaction for each not-yet-covered species in order.
fn cover_search(
    system: &ReactionSystem,
    order: &[usize],
    producers: &[Vec<usize>],
    next: usize,
    covered: &SpeciesSet,
    assignment: Assignment,
    clauses: &[(&SpeciesSet, &SpeciesSet)],
) -> Option<Assignment> {
    let mut i = next;
    while i < order.len() && covered.contains(order[i]) {
        i += 1;
    }
    if i == order.len() {
        return dpll(assignment, clauses);
    }
    for &k in &producers[i] {
        let r = &system.reactions()[k];
        let Some(a) = assignment.enable(r.reactants(), r.inhibitors()) else {
            continue;
        };
        if clauses.iter().any(|c| falsified(&a, c)) {
            continue;
        }
        if let Some(done) = cover_search(system, order, producers, i + 1, &(covered | r.products()), a, clauses) {
            return Some(done);
        }
    }
    None
}

/// Clause "`(R, I)` is disabled": some `x ∈ R` absent or some `y ∈ I` present.
fn satisfied(a: &Assignment, (r, i): &(&SpeciesSet, &SpeciesSet)) -> bool {
    r.intersects(&a.off) || i.intersects(&a.on)
}

fn falsified(a: &Assignment, (r, i): &(&SpeciesSet, &SpeciesSet)) -> bool {
    r.is_subset(&a.on) && i.is_subset(&a.off)
}

fn dpll(mut a: Assignment, clauses: &[(&SpeciesSet, &SpeciesSet)]) -> Option<Assignment> {
    let Some(clause) = clauses.iter().find(|c| !satisfied(&a, c)) else {
        return Some(a);
    };
    let (r, i) = clause;
    let free_r: Vec<usize> = r.iter().filter(|&x| !a.on.contains(x)).collect();
    let free_i: Vec<usize> = i.iter().filter(|&y| !a.off.contains(y)).collect();
    // Branch on each free literal; after a branch fails, its negation holds.
    for x in free_r {
        let mut b = a.clone();
        b.off.insert(x);
        if let Some(done) = dpll(b, clauses) {
            return Some(done);
        }
        a.on.insert(x);
        if clauses.iter().any(|c| falsified(&a, c)) {
            return None;
        }
    }
    for y in free_i {
        let mut b = a.clone();
        b.on.insert(y);
        if let Some(done) = dpll(b, clauses) {
            return Some(done);
        }
        a.off.insert(y);
        if clauses.iter().any(|c| falsified(&a, c)) {
            return None;
        }
    }
    None
}
