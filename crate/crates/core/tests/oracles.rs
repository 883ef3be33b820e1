mod common;

use std::collections::BTreeSet;

use common::*;
use rand::Rng;
use rscontrol::control::{
    decide_controllable, decide_target_controllable, minimal_i, minimal_n, search_witness, verify_witness_from,
    ContextConstraint, ControlQuery, DecideOptions, Scope, SearchOptions,
};
use rscontrol::dynamics::{
    context_graph, image_membership, orbit, projected_image_membership, superset_image_membership, EdgeSemantics,
    GraphOptions,
};
use rscontrol::Initial;

fn library_hit(toy: &Toy, c: &Case) -> Option<usize> {
    let sys = toy.system();
    let t = sys.species();
    let mut q = ControlQuery::new(set(t, c.x), set(t, c.y), c.bound.constraint(t)).with_start_mode(c.mode);
    if let Some(ts) = c.t {
        q = q.with_targets(set(t, ts));
    }
    if c.pinned {
        q = q.pinned();
    }
    let report = search_witness(&sys, &q, &SearchOptions::default()).unwrap();
    let w = report.witness?;
    let d0 = match &w.initial {
        Initial::Given(d) => Some(d),
        Initial::Context => None,
    };
    let check = verify_witness_from(&sys, &q, d0, &w.contexts);
    assert!(check.ok(), "{c:?}: {:?}", check.reason);
    assert_eq!(check.hit_index, Some(w.hit_index));
    Some(w.hit_index)
}

#[test]
fn shortest_witnesses_match_sequence_enumeration() {
    let mut rng = rng(11);
    for round in 0..150 {
        let n = rng.gen_range(1..=5);
        let toy = random_toy(&mut rng, n, 6);
        for _ in 0..6 {
            let case = random_case(&mut rng, n);
            assert_eq!(library_hit(&toy, &case), oracle_hit(&toy, &case), "round {round}: {toy:?} {case:?}");
        }
    }
}

#[test]
fn image_membership_matches_scan() {
    let mut rng = rng(12);
    for _ in 0..60 {
        let n = rng.gen_range(1..=9);
        let toy = random_toy(&mut rng, n, 8);
        let sys = toy.system();
        let t = sys.species();
        let image = toy.image();
        let tmask = rng.gen_range(0..1u32 << n);
        for v in 0..=toy.full() {
            let exact = image_membership(&sys, &set(t, v));
            assert_eq!(exact.is_some(), image.contains(&v), "{toy:?} {v:b}");
            if let Some(cert) = exact {
                assert!(cert.verify(&sys));
                assert_eq!(toy.res(mask(&cert.preimage)), v);
            }
            let sup = superset_image_membership(&sys, &set(t, v));
            assert_eq!(sup.is_some(), image.iter().any(|w| w & v == v));
            if let Some(cert) = sup {
                assert_eq!(toy.res(mask(&cert.preimage)) & v, v);
            }
            let y = v & tmask;
            let proj = projected_image_membership(&sys, &set(t, y), &set(t, tmask));
            assert_eq!(proj.is_some(), image.iter().any(|w| w & tmask == y));
            if let Some(cert) = proj {
                assert_eq!(toy.res(mask(&cert.preimage)) & tmask, y);
            }
        }
    }
}

#[test]
fn decisions_match_pair_tables() {
    let mut rng = rng(13);
    let options = DecideOptions::default();
    for _ in 0..150 {
        let n = rng.gen_range(1..=4);
        let toy = random_toy(&mut rng, n, 5);
        let sys = toy.system();
        let t = sys.species();
        let bound = Bound::random(&mut rng, n);
        let tmask = if rng.gen_bool(0.5) {
            toy.full()
        } else {
            rng.gen_range(0..=toy.full())
        };
        let want = pair_table(&toy, tmask, bound);
        let got = decide_target_controllable(&sys, &set(t, tmask), &bound.constraint(t), Scope::Exhaustive, &options)
            .unwrap();
        assert_eq!(got.decision, want.decision, "{toy:?} {bound:?} T={tmask:b}");
        assert_eq!(got.counterexample.as_ref().map(|(x, y)| (mask(x), mask(y))), want.counterexample);
        assert_eq!(got.pairs_checked, want.pairs_checked);
        if tmask == toy.full() {
            let plain = decide_controllable(&sys, &bound.constraint(t), Scope::Exhaustive, &options).unwrap();
            assert_eq!(plain, got);
        }
    }
}

#[test]
fn three_species_full_pair_table() {
    // Every system over three species with two reactions drawn from a fixed pool.
    let pool = [(0b001, 0b010, 0b100), (0b010, 0, 0b010), (0, 0b100, 0b001), (0b100, 0b001, 0b011), (0b011, 0, 0b100)];
    let options = DecideOptions::default();
    for a in 0..pool.len() {
        for b in a..pool.len() {
            let toy = Toy {
                n: 3,
                reactions: vec![pool[a], pool[b]],
            };
            let sys = toy.system();
            let t = sys.species();
            for bound in (0..3).map(Bound::Card).chain((0..8).map(Bound::Within)) {
                let want = pair_table(&toy, 0b111, bound);
                let got = decide_controllable(&sys, &bound.constraint(t), Scope::Exhaustive, &options).unwrap();
                assert_eq!(got.decision, want.decision);
                assert_eq!(got.counterexample.as_ref().map(|(x, y)| (mask(x), mask(y))), want.counterexample);
            }
        }
    }
}

#[test]
fn minimal_searches_match_oracle() {
    let mut rng = rng(14);
    let options = DecideOptions::default();
    for _ in 0..40 {
        let n = rng.gen_range(2..=4);
        let toy = random_toy(&mut rng, n, 5);
        let sys = toy.system();
        let t = sys.species();

        let scan = minimal_n(&sys, None, Scope::Exhaustive, &options, false).unwrap();
        let oracle: Vec<bool> = (0..n).map(|k| pair_table(&toy, toy.full(), Bound::Card(k)).decision).collect();
        let got: Vec<bool> = scan.verdicts.iter().map(|(_, v)| v.decision).collect();
        assert_eq!(got, oracle);
        assert_eq!(scan.minimal, oracle.iter().position(|&d| d));

        let report = minimal_i(&sys, None, &t.full_set(), Scope::Exhaustive, &options).unwrap();
        let full_ok = pair_table(&toy, toy.full(), Bound::Within(toy.full())).decision;
        assert_eq!(report.minimal.is_some(), full_ok);
        if let Some(i) = report.minimal {
            let i = mask(&i);
            assert!(pair_table(&toy, toy.full(), Bound::Within(i)).decision);
            for k in 0..n {
                if i >> k & 1 == 1 {
                    assert!(!pair_table(&toy, toy.full(), Bound::Within(i & !(1 << k))).decision);
                }
            }
        }
    }
}

#[test]
fn sampled_counterexamples_are_genuine() {
    let mut rng = rng(15);
    let options = DecideOptions::default();
    for seed in 0..40 {
        let n = rng.gen_range(2..=5);
        let toy = random_toy(&mut rng, n, 5);
        let sys = toy.system();
        let t = sys.species();
        let bound = Bound::random(&mut rng, n);
        let v = decide_controllable(&sys, &bound.constraint(t), Scope::Sampled { k: 30, seed }, &options).unwrap();
        assert!(!v.exhaustive);
        if let Some((x, y)) = v.counterexample {
            let (x, y) = (mask(&x), mask(&y));
            assert!(toy.image().contains(&y));
            assert!(!closure(&toy, &[x], &bound.contexts(toy.full())).contains(&y));
            assert!(!pair_table(&toy, toy.full(), bound).decision);
        }
    }
}

#[test]
fn context_graphs_match_edge_enumeration() {
    let mut rng = rng(16);
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let toy = random_toy(&mut rng, n, 5);
        let sys = toy.system();
        let t = sys.species();
        let i = rng.gen_range(0..=toy.full());
        let seeds: Vec<_> = (0..=toy.full()).map(|w| set(t, w)).collect();
        for semantics in [EdgeSemantics::Step, EdgeSemantics::Result] {
            let options = GraphOptions {
                semantics,
                ..GraphOptions::default()
            };
            let g = context_graph(&sys, &set(t, i), &seeds, &options).unwrap();
            assert!(!g.truncated);
            let got: BTreeSet<(u32, u32, u32)> = g.edge_triples().map(|(a, c, b)| (mask(a), mask(c), mask(b))).collect();
            let mut want = BTreeSet::new();
            for x in 0..=toy.full() {
                for c in canonical(i) {
                    let to = match semantics {
                        EdgeSemantics::Step => c | toy.res(x),
                        EdgeSemantics::Result => toy.res(x | c),
                    };
                    want.insert((x, c, to));
                }
            }
            assert_eq!(got, want);
            assert_eq!(g.nodes.len(), 1 << n);
        }
    }
}

#[test]
fn toy_context_graph_from_empty_seed() {
    let toy = Toy {
        n: 3,
        reactions: vec![(0b001, 0b010, 0b100), (0b010, 0, 0b010)],
    };
    let sys = toy.system();
    let t = sys.species();
    let g = context_graph(&sys, &set(t, 0b001), &[set(t, 0)], &GraphOptions::default()).unwrap();
    let nodes: BTreeSet<u32> = g.nodes.iter().map(mask).collect();
    assert_eq!(nodes, BTreeSet::from([0b000, 0b001, 0b100, 0b101]));
    let edges: BTreeSet<(u32, u32, u32)> = g.edge_triples().map(|(a, c, b)| (mask(a), mask(c), mask(b))).collect();
    let want: BTreeSet<(u32, u32, u32)> = [0b000u32, 0b001, 0b100, 0b101]
        .iter()
        .flat_map(|&x| [0u32, 1].map(|c| (x, c, c | toy.res(x))))
        .collect();
    assert_eq!(edges, want);
}

#[test]
fn orbits_match_iteration() {
    let mut rng = rng(17);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let toy = random_toy(&mut rng, n, 8);
        let sys = toy.system();
        let t = sys.species();
        let (start, c) = (rng.gen_range(0..=toy.full()), rng.gen_range(0..=toy.full()));
        let mut seq = vec![start | c];
        let (mu, period) = loop {
            let next = c | toy.res(*seq.last().unwrap());
            if let Some(j) = seq.iter().position(|&w| w == next) {
                break (j, seq.len() - j);
            }
            seq.push(next);
        };
        let o = orbit(&sys, &set(t, start), &set(t, c), 1 << n).unwrap();
        assert_eq!(o.transient.len(), mu);
        assert_eq!(o.period(), period);
        assert_eq!(o.states().map(mask).collect::<Vec<_>>(), seq);
        assert!(o.verify(&sys));
    }
}

#[test]
fn allowed_empty_constraint_on_unreachable_target() {
    let toy = Toy {
        n: 3,
        reactions: vec![(0b001, 0b010, 0b100), (0b010, 0, 0b010)],
    };
    let sys = toy.system();
    let t = sys.species();
    // b persists, so {} is never reached again from {b}.
    let q = ControlQuery::new(set(t, 0b010), set(t, 0), ContextConstraint::AllowedSet(set(t, 0)));
    let r = search_witness(&sys, &q, &SearchOptions::default()).unwrap();
    assert!(r.witness.is_none() && r.exhausted);
    assert_eq!(min_hit(&toy, &[0b010], &[0], |w| w == 0, 8), None);
}
